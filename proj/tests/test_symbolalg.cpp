#include "eds/symbol_algebra.hpp"

#include "eds/cartan.hpp"

#include <doctest.h>

#include <random>

using namespace eds;

namespace {

RationalPoint chart_sample(const Chart& c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  RationalPoint pt;
  for (int i = 0; i < c.dim(); ++i) pt.values[c.var(i)] = Rat(num(rng), 3);
  return pt;
}

}  // namespace

TEST_CASE("model algebras satisfy the graded axioms") {
  for (const GradedAlgebra& g : {model_f0(), model_f1()}) {
    CHECK(g.total_dim() == 7);
    CHECK(g.jacobi_ok());
    CHECK(generating_check(g));
  }
  ModelMatch m0 = match_model(model_f0());
  CHECK(m0.model == SymbolModel::f0);
  CHECK(m0.k_invariant == 0);
  CHECK(m0.table_match);
  ModelMatch m1 = match_model(model_f1());
  CHECK(m1.model == SymbolModel::f1);
  CHECK(m1.k_invariant == 1);
  CHECK(m1.table_match);
}

TEST_CASE("generating condition fails on a constructed counterexample") {
  GradedAlgebra g;
  g.dims = {2, 1, 1};
  g.table[{0, 1}] = {Rat(1)};  // [e0, e1] spans grade -2
  // grade -3 unreachable from brackets with grade -1
  CHECK_FALSE(generating_check(g));
  // abelian with the right dims is neither model
  GradedAlgebra abelian;
  abelian.dims = {3, 1, 2, 1};
  ModelMatch m = match_model(abelian);
  CHECK(m.model == SymbolModel::neither);
  CHECK(m.k_invariant == 2);
}

TEST_CASE("abelian filtration has zero structure constants") {
  Chart c({"x", "y", "z"});
  std::vector<PfaffSystem> stages;
  stages.emplace_back(c, std::vector<Form>{Form::differential(c, "z")});
  stages.emplace_back(c, std::vector<Form>{});
  Filtration f(std::move(stages));
  std::vector<VectorField> frame = {VectorField::coordinate(c, 0),
                                    VectorField::coordinate(c, 1),
                                    VectorField::coordinate(c, 2)};
  RationalPoint pt = RationalPoint::of({{"x", 1}, {"y", 2}, {"z", 3}});
  GradedAlgebra g = graded_symbol(f, pt, frame);
  CHECK(g.dims == std::vector<int>{2, 1});
  CHECK(g.table.empty());
}

TEST_CASE("symbol algebra on the open stratum matches the first model") {
  StratumModel sm = stratum_model(true);
  std::mt19937_64 rng{4242};
  for (int i = 0; i < 10; ++i) {
    RationalPoint pt = chart_sample(sm.chart.chart, rng);
    GradedAlgebra g = graded_symbol(sm.filtration, pt, sm.frame);
    CHECK(g.dims == std::vector<int>{3, 1, 2, 1});
    CHECK(g.jacobi_ok());
    CHECK(generating_check(g));
    ModelMatch m = match_model(g);
    CHECK(m.model == SymbolModel::f0);
    CHECK(m.k_invariant == 0);
    CHECK(m.table_match);
  }
  // the frozen bracket table at one point
  RationalPoint pt = chart_sample(sm.chart.chart, rng);
  GradedAlgebra g = graded_symbol(sm.filtration, pt, sm.frame);
  CHECK(g.bracket(1, 2) == std::vector<Rat>{Rat(-1)});          // [X_omega2, X_a]
  CHECK(g.bracket(1, 3) == std::vector<Rat>{Rat(0), Rat(-1)});  // [X_omega2, X_pi]
  CHECK(g.bracket(0, 4) == std::vector<Rat>{Rat(-1)});          // [X_omega1, X_1]
  CHECK(g.bracket(1, 5) == std::vector<Rat>{Rat(-1)});          // [X_omega2, X_2]
}

TEST_CASE("symbol algebra on the singular stratum matches the second model") {
  StratumModel sm = stratum_model(false);
  std::mt19937_64 rng{9575};
  for (int i = 0; i < 10; ++i) {
    RationalPoint pt = chart_sample(sm.chart.chart, rng);
    pt.set("b", 0);  // the singular stratum of the nontransversal chart
    GradedAlgebra g = graded_symbol(sm.filtration, pt, sm.frame);
    CHECK(g.dims == std::vector<int>{3, 1, 2, 1});
    CHECK(g.jacobi_ok());
    CHECK(generating_check(g));
    ModelMatch m = match_model(g);
    CHECK(m.model == SymbolModel::f1);
    CHECK(m.k_invariant == 1);
    CHECK(m.table_match);
  }
  // away from b = 0 the same chart carries the open-stratum symbol
  RationalPoint pt = chart_sample(sm.chart.chart, rng);
  pt.set("b", Rat(2));
  GradedAlgebra g = graded_symbol(sm.filtration, pt, sm.frame);
  ModelMatch m = match_model(g);
  CHECK(m.model == SymbolModel::f0);
}

TEST_CASE("structure constants do not depend on the frame extension") {
  StratumModel sm = stratum_model(true);
  std::mt19937_64 rng{30317};
  RationalPoint pt = chart_sample(sm.chart.chart, rng);
  GradedAlgebra base = graded_symbol(sm.filtration, pt, sm.frame);
  // multiply each frame field by a unit that is 1 at the point
  std::vector<VectorField> perturbed;
  for (std::size_t i = 0; i < sm.frame.size(); ++i) {
    Expr x = Expr::variable("x");
    Expr unit = Expr(1) + Expr(Rat(static_cast<int>(i))) * (x - Expr(pt.at(var_intern("x"))));
    perturbed.push_back(unit * sm.frame[i]);
  }
  GradedAlgebra again = graded_symbol(sm.filtration, pt, perturbed);
  CHECK(base.dims == again.dims);
  CHECK(base.table == again.table);
}

TEST_CASE("the explicit filtration refines differently from the weak derived flag") {
  // The worked filtration inserts {contact0 = 0} as its third stage; the
  // weak derived flag instead grows one rank at a time. The two agree up
  // to the derived system and then genuinely part ways.
  for (bool transversal : {true, false}) {
    StratumModel sm = stratum_model(transversal);
    DerivedFlag flag = weak_derived_flag(sm.chart.pfaff());
    CHECK(flag.ranks == std::vector<int>{3, 4, 5, 6, 7});
    CHECK(sm.filtration.stage_ranks() == std::vector<int>{3, 4, 6, 7});
    // agreement through the derived system
    for (std::size_t k = 0; k < 2; ++k)
      for (const auto& gen : sm.filtration.stages[k].generators)
        for (const auto& f : flag.stage_frames[k])
          CHECK(evaluate(gen, f).is_zero());
    // the rank-6 flag stage is not {contact0 = 0}: contact0 sees it
    const Form& contact0 = sm.filtration.stages[2].generators[0];
    bool contact0_vanishes = true;
    for (const auto& f : flag.stage_frames[3])
      contact0_vanishes = contact0_vanishes && evaluate(contact0, f).is_zero();
    CHECK_FALSE(contact0_vanishes);
  }
}

TEST_CASE("graded dimensions exhaust the chart dimension") {
  for (bool transversal : {true, false}) {
    StratumModel sm = stratum_model(transversal);
    std::mt19937_64 rng{77};
    RationalPoint pt = chart_sample(sm.chart.chart, rng);
    GradedAlgebra g = graded_symbol(sm.filtration, pt, sm.frame);
    CHECK(g.total_dim() == sm.chart.chart.dim());
  }
}
