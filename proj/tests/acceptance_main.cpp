// Acceptance suite: one check per shipped guarantee, one line of output
// per check. Everything is exact rational arithmetic; there are no
// tolerances anywhere.
#include "eds/cartan.hpp"
#include "eds/json_io.hpp"

#include <functional>
#include <iostream>
#include <random>
#include <vector>

using namespace eds;

namespace {

Expr E(const char* s) { return parse_expr(s); }

struct Check {
  const char* name;
  std::function<void()> run;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

RationalPoint base_point(const SolvedSystem& sys, Rat param) {
  RationalPoint pt =
      RationalPoint::of({{"x", 0}, {"y", 0}, {"z", 0}, {"p", 0}, {"q", 0}});
  pt.values[var_intern(sys.parameter)] = std::move(param);
  return pt;
}

SolvedSystem sys_crossed() { return SolvedSystem({{"r", Expr{}}, {"t", Expr{}}}, "s"); }
SolvedSystem sys_diagonal() { return SolvedSystem({{"r", E("t")}, {"s", Expr{}}}, "t"); }
SolvedSystem sys_torsion() { return SolvedSystem({{"r", E("q")}, {"s", Expr{}}}, "t"); }

// ---- 1: classification table -------------------------------------------

void check_classification() {
  auto label = [](const SolvedSystem& sys, Rat param) {
    return classify_type(build_chart(sys), base_point(sys, std::move(param))).label.kind;
  };
  require(label(cartan_system(), 1) == TypeKind::I, "cartan system must be type I");
  require(label(sys_crossed(), 1) == TypeKind::II, "r = t = 0 must be type II");
  require(label(sys_diagonal(), 1) == TypeKind::III, "r = t, s = 0 must be type III");
  require(label(sys_torsion(), 1) == TypeKind::IV, "r = q, s = 0 must be type IV at t = 1");
  // cross-validation of the finite types against their normal forms
  {
    EquationChart ii = build_chart(sys_crossed());
    std::vector<Form> ideal = {ii.contact0, ii.contact1, ii.contact2};
    Form o1 = Form::differential(ii.chart, "x");
    Form o2 = Form::differential(ii.chart, "y");
    Form pi = Form::differential(ii.chart, "s");
    require(reduce_modulo(exterior_derivative(ii.contact1) - wedge(o2, pi), ideal).is_zero(),
            "crossed system fails d contact1 = omega2 ^ pi");
    require(reduce_modulo(exterior_derivative(ii.contact2) - wedge(o1, pi), ideal).is_zero(),
            "crossed system fails d contact2 = omega1 ^ pi");
  }
  {
    EquationChart iii = build_chart(sys_diagonal());
    std::vector<Form> ideal = {iii.contact0, iii.contact1, iii.contact2};
    Form o1 = Form::differential(iii.chart, "x");
    Form o2 = Form::differential(iii.chart, "y");
    Form pi = Form::differential(iii.chart, "t");
    require(reduce_modulo(exterior_derivative(iii.contact1) - wedge(o1, pi), ideal).is_zero(),
            "diagonal system fails d contact1 = omega1 ^ pi");
    require(reduce_modulo(exterior_derivative(iii.contact2) - wedge(o2, pi), ideal).is_zero(),
            "diagonal system fails d contact2 = omega2 ^ pi");
  }
}

// ---- 2: fiber topology ---------------------------------------------------

void check_fiber_topology() {
  EquationChart cartan = cartan_chart();
  std::mt19937_64 rng{90125};
  std::uniform_int_distribution<int> num(-9, 9);
  for (int i = 0; i < 20; ++i) {
    RationalPoint pt = RationalPoint::of({{"x", Rat(num(rng), 2)},
                                          {"y", Rat(num(rng), 3)},
                                          {"z", Rat(num(rng))},
                                          {"p", Rat(num(rng), 4)},
                                          {"q", Rat(num(rng), 5)},
                                          {"t", Rat(num(rng), 3)}});
    FiberDescriptor f = fiber_at(cartan, pt);
    require(f.kernel_dim == 2, "involutive fiber must be a pencil");
    require(f.has_transversal && f.has_nontransversal,
            "pencil must contain both element kinds");
  }
  for (const auto& sys : {sys_crossed(), sys_diagonal()}) {
    FiberDescriptor f = fiber_at(build_chart(sys), base_point(sys, 1));
    require(f.kernel_dim == 1 && f.basis_transversal[0],
            "finite types must have exactly one transversal element");
  }
  FiberDescriptor f = fiber_at(build_chart(sys_torsion()), base_point(sys_torsion(), 1));
  require(f.kernel_dim == 1 && !f.basis_transversal[0],
          "torsion type must have exactly one non-transversal element");
}

// ---- 3: transversal versus full prolongation ------------------------------

void check_prolongation_difference() {
  auto equal_fibers = [](const SolvedSystem& sys) {
    EquationChart eq = build_chart(sys);
    RationalPoint pt = base_point(sys, 1);
    FiberDescriptor fiber = fiber_at(eq, pt);
    TransversalFiber tf = transversal_fiber(eq, pt);
    // the transversal part equals the full fiber iff the fiber is a single
    // transversal element
    bool full_is_single_transversal = fiber.kernel_dim == 1 && fiber.basis_transversal[0];
    bool transversal_is_all =
        (tf == TransversalFiber::point && full_is_single_transversal) ||
        (tf == TransversalFiber::line && fiber.kernel_dim == 2 && !fiber.has_nontransversal);
    return transversal_is_all;
  };
  require(equal_fibers(sys_crossed()), "crossed: transversal part must be the whole fiber");
  require(equal_fibers(sys_diagonal()), "diagonal: transversal part must be the whole fiber");
  require(!equal_fibers(cartan_system()), "involutive: fibers must differ");
  require(!equal_fibers(sys_torsion()), "torsion: fibers must differ");
}

// ---- 4: prolongation charts and transition --------------------------------

void check_prolongation_charts() {
  EquationChart eq = cartan_chart();
  Prolongation pr = prolong(eq, base_point(cartan_system(), 1));
  require(pr.charts.has_value(), "involutive system must prolong to two charts");
  const Chart& c0 = pr.charts->first.chart;
  Form expected_t = Form::differential(c0, "t") - E("t*a") * Form::differential(c0, "x") -
                    E("a") * Form::differential(c0, "y");
  require(pr.charts->first.theta == expected_t,
          "transversal chart form must be dt - t a dx - a dy");
  const Chart& c1 = pr.charts->second.chart;
  Form expected_y = Form::differential(c1, "y") + E("t") * Form::differential(c1, "x") -
                    E("b") * Form::differential(c1, "t");
  require(pr.charts->second.theta == expected_y,
          "nontransversal chart form must be dy + t dx - b dt");
  TransitionReport rep = transition_check(pr.charts->first, pr.charts->second, *pr.transition);
  require(rep.generators_closed && rep.residues.empty(),
          "transition must pull the canonical system into itself with zero residue");
  require(rep.composite_identity, "fiber inversion must be an involution");
}

// ---- 5: tower -------------------------------------------------------------

void check_tower() {
  EquationChart eq = cartan_chart();
  auto levels = tower(eq, 3, base_point(cartan_system(), 1), 5);
  require(levels.size() == 3, "tower must reach depth 3");
  for (std::size_t k = 1; k < levels.size(); ++k)
    for (const auto& dims : levels[k].fiber_kernel_dims) {
      require(dims.size() == 5, "five samples per chart");
      for (int d : dims)
        require(d == 2, "iterated prolongation fibers must stay one-dimensional pencils");
    }
}

// ---- 6: symbol algebras ----------------------------------------------------

void check_symbols() {
  std::mt19937_64 rng{613};
  std::uniform_int_distribution<int> num(-6, 6);
  for (bool transversal : {true, false}) {
    StratumModel sm = stratum_model(transversal);
    for (int i = 0; i < 10; ++i) {
      RationalPoint pt;
      for (int j = 0; j < sm.chart.chart.dim(); ++j)
        pt.values[sm.chart.chart.var(j)] = Rat(num(rng), 3);
      if (!transversal) pt.values[var_intern(sm.chart.fiber_var)] = 0;
      GradedAlgebra g = graded_symbol(sm.filtration, pt, sm.frame);
      require(g.dims == std::vector<int>{3, 1, 2, 1}, "graded dims must be (3,1,2,1)");
      ModelMatch m = match_model(g);
      if (transversal) {
        require(m.model == SymbolModel::f0 && m.k_invariant == 0,
                "open stratum symbol must be the first model");
      } else {
        require(m.model == SymbolModel::f1 && m.k_invariant == 1,
                "singular stratum symbol must be the second model");
      }
      require(m.table_match, "structure constants must match the model table up to signs");
    }
  }
}

// ---- 7: Cauchy reduction ----------------------------------------------------

void check_cauchy_reduction() {
  EquationChart eq = cartan_chart();
  auto ch = cauchy_characteristics(eq.pfaff());
  require(ch.rank == 1, "characteristic system must have rank 1");
  std::vector<Expr> expected = {Expr(1),     E("-t"),     E("p - t*q"),
                                E("-t^3/6"), E("-t^2/2"), Expr{}};
  require(ch.fields[0] == VectorField(eq.chart, expected),
          "characteristic generator must match the worked field exactly");
  LeafChart lc = leaf_chart();
  for (const auto& f : lc.quotient.components())
    require(ch.fields[0].apply(f).is_zero(), "leaf functions must be first integrals");
  PfaffSystem db = db_system();
  require(weak_derived_flag(db).ranks == std::vector<int>{2, 3, 5},
          "leaf system must have growth (2,3,5)");
  require(cauchy_characteristics(db).rank == 0,
          "leaf system must have no characteristics");
  Form a1 = pullback(lc.quotient, db.generators[0]);
  Form a2 = pullback(lc.quotient, db.generators[1]);
  Form a3 = pullback(lc.quotient, db.generators[2]);
  require(eq.contact0 == a1 + E("x") * a2, "contact0 relation must hold exactly");
  require(eq.contact1 == a2 - E("t") * a3, "contact1 relation must hold exactly");
  require(eq.contact2 == -a3, "contact2 relation must hold exactly");
}

// ---- 8: singular solutions ---------------------------------------------------

void check_singular_solutions() {
  for (const char* y0 : {"0", "t^2", "t^3 + 2*t^2", "t^4"}) {
    SolutionSurface s = solve_i(E(y0));
    SolutionReport rep = verify_solution(s);
    require(rep.pullbacks_zero, std::string("pullbacks must vanish for y0 = ") + y0);
    require(rep.prolongation_pullback_zero,
            std::string("the chart form must vanish for y0 = ") + y0);
    Expr locus = Expr(normalize_primitive((E("x") - E(y0).derivative("t")).num()));
    require(rep.nonimmersion_locus == locus,
            std::string("nonimmersion ideal must be generated by x - y0' for y0 = ") + y0);
    Expr dy0_at0 = E(y0).derivative("t").substitute({{var_intern("t"), Expr{}}});
    require(rep.through_origin == dy0_at0.is_zero(),
            std::string("origin membership must track y0'(0) for y0 = ") + y0);
  }
}

// ---- 9: approach equality ------------------------------------------------------

void check_approach_equality() {
  std::mt19937_64 rng{271828};
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  for (int draw = 0; draw < 10; ++draw) {
    Expr y0{Rat(num(rng), den(rng))};
    for (unsigned d = 2; d <= 6; ++d)
      y0 = y0 + Expr(Rat(num(rng), den(rng))) * pow(E("t"), d);
    require(compare_solutions(y0), "the two constructions must produce equal surfaces");
  }
}

// ---- 10: calculus property suites ------------------------------------------------

struct CalcGen {
  std::mt19937_64 rng{5040};
  Chart chart = Chart({"x", "y", "z", "t"});

  Expr coeff() {
    std::uniform_int_distribution<int> c(-3, 3);
    std::uniform_int_distribution<int> d(0, 2);
    Expr e{c(rng)};
    for (int i = 0; i < chart.dim(); ++i)
      e = e * pow(Expr::variable(chart.coord(i)), static_cast<unsigned>(d(rng)));
    return e + Expr{c(rng)};
  }

  Form form(int degree) {
    Form f(chart, degree);
    std::uniform_int_distribution<int> idx(0, chart.dim() - 1);
    for (int n = 0; n < 3; ++n) {
      std::vector<int> indices;
      for (int k = 0; k < degree; ++k) indices.push_back(idx(rng));
      f.add_term(std::move(indices), coeff());
    }
    return f;
  }

  VectorField field() {
    std::vector<Expr> comps;
    for (int i = 0; i < chart.dim(); ++i) comps.push_back(coeff());
    return VectorField(chart, std::move(comps));
  }

  PfaffSystem system() {
    std::uniform_int_distribution<int> dim_d(3, 5);
    int n = dim_d(rng);
    std::uniform_int_distribution<int> gens_d(1, n - 2);
    int s = gens_d(rng);
    std::vector<std::string> coords;
    for (int i = 0; i < n; ++i) coords.push_back("u" + std::to_string(i));
    Chart c(coords);
    std::uniform_int_distribution<int> cf(-2, 2);
    std::vector<Form> gens;
    for (int i = 0; i < s; ++i) {
      Form g = Form::differential(c, i);
      for (int j = s; j < n; ++j) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        Expr coeff = Expr(cf(rng)) +
                     Expr(cf(rng)) * Expr::variable(c.coord(pick(rng)));
        g = g + coeff * Form::differential(c, j);
      }
      gens.push_back(g);
    }
    return PfaffSystem(c, gens);
  }
};

void check_property_suites() {
  CalcGen gen;
  for (int i = 0; i < 100; ++i) {
    Form a = gen.form(i % 3);
    require(exterior_derivative(exterior_derivative(a)).is_zero(), "d o d must vanish");
  }
  for (int i = 0; i < 100; ++i) {
    int da = i % 2, db = (i / 2) % 2;
    Form a = gen.form(da), b = gen.form(db);
    Form rhs = wedge(exterior_derivative(a), b) +
               (da % 2 == 0 ? wedge(a, exterior_derivative(b))
                            : -wedge(a, exterior_derivative(b)));
    require(exterior_derivative(wedge(a, b)) == rhs, "graded Leibniz must hold");
  }
  {
    Chart source({"u", "v"});
    std::uniform_int_distribution<int> c(-2, 2);
    for (int i = 0; i < 100; ++i) {
      std::vector<Expr> comps;
      for (int k = 0; k < 4; ++k)
        comps.push_back(Expr(c(gen.rng)) + Expr(c(gen.rng)) * Expr::variable("u") +
                        Expr(c(gen.rng)) * Expr::variable("v"));
      SmoothMap phi(source, gen.chart, comps);
      Form a = gen.form(1);
      require(pullback(phi, exterior_derivative(a)) ==
                  exterior_derivative(pullback(phi, a)),
              "pullback must commute with d");
    }
  }
  for (int i = 0; i < 100; ++i) {
    VectorField x = gen.field(), y = gen.field(), z = gen.field();
    VectorField sum = lie_bracket(lie_bracket(x, y), z) +
                      lie_bracket(lie_bracket(y, z), x) +
                      lie_bracket(lie_bracket(z, x), y);
    for (const auto& comp : sum.components())
      require(comp.is_zero(), "Jacobi identity must hold");
  }
  for (int i = 0; i < 100; ++i) {
    PfaffSystem s = gen.system();
    DerivedFlag flag = weak_derived_flag(s);
    for (std::size_t k = 1; k < flag.ranks.size(); ++k)
      require(flag.ranks[k] > flag.ranks[k - 1], "flag ranks must strictly increase");
    require(flag.stabilized, "flags must stabilize");
    // bracket compatibility on the computed stages, via the annihilators
    for (std::size_t p = 0; p < flag.stage_frames.size(); ++p)
      for (std::size_t q = p; p + q + 1 < flag.stage_frames.size(); ++q) {
        linalg::Matrix<Expr> rows;
        for (const auto& f : flag.stage_frames[p + q + 1]) rows.push_back(f.components());
        auto annihilator = linalg::kernel_basis(rows, s.chart.dim());
        for (const auto& x : flag.stage_frames[p])
          for (const auto& y : flag.stage_frames[q]) {
            VectorField b = lie_bracket(x, y);
            for (const auto& w : annihilator) {
              Expr pairing;
              for (int k = 0; k < s.chart.dim(); ++k)
                pairing = pairing + w[static_cast<std::size_t>(k)] * b.component(k);
              require(pairing.is_zero(), "brackets must respect the filtration");
            }
          }
      }
    // annihilator route agreement at the first stage
    auto derived = derived_system(s);
    int bracket_rank = flag.ranks.size() > 1 ? flag.ranks[1] : flag.ranks[0];
    require(derived.system.rank() == bracket_rank,
            "annihilator and bracket derived systems must agree in rank");
    const auto& stage2 =
        flag.stage_frames.size() > 1 ? flag.stage_frames[1] : flag.stage_frames[0];
    for (const auto& g : derived.system.generators)
      for (const auto& f : stage2)
        require(evaluate(g, f).is_zero(),
                "annihilator generators must kill the bracket stage");
  }
}

}  // namespace

int main() {
  std::vector<Check> checks = {
      {"1 classification-table", check_classification},
      {"2 fiber-topology", check_fiber_topology},
      {"3 transversal-vs-full-prolongation", check_prolongation_difference},
      {"4 prolongation-charts-and-transition", check_prolongation_charts},
      {"5 tower", check_tower},
      {"6 symbol-algebras", check_symbols},
      {"7 cauchy-reduction", check_cauchy_reduction},
      {"8 singular-solutions", check_singular_solutions},
      {"9 approach-equality", check_approach_equality},
      {"10 calculus-property-suites", check_property_suites},
  };
  int failures = 0;
  for (const auto& check : checks) {
    try {
      check.run();
      std::cout << "PASS  " << check.name << "\n";
    } catch (const std::exception& err) {
      ++failures;
      std::cout << "FAIL  " << check.name << ": " << err.what() << "\n";
    }
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
