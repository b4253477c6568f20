#include "eds/cartan.hpp"

#include <doctest.h>

#include <random>

using namespace eds;

namespace {

Expr E(const char* s) { return parse_expr(s); }

RationalPoint base_pt() {
  return RationalPoint::of({{"x", 0}, {"y", 0}, {"z", 0}, {"p", 0}, {"q", 0}, {"t", 1}});
}

}  // namespace

TEST_CASE("the fixed system is involutive") {
  SolvedSystem sys = cartan_system();
  CHECK(sys.solved.at("r") == E("t^3/3"));
  CHECK(sys.solved.at("s") == E("t^2/2"));
  Classification c = classify_type(build_chart(sys), base_pt());
  CHECK(c.label.kind == TypeKind::I);
  CHECK(c.cauchy_rank == 1);
  CHECK(symbol_pencil(sys).delta.is_zero());
}

TEST_CASE("coframe and covering report") {
  CoveringReport rep = coframe_and_covering();
  CHECK(rep.coframe.hat1 ==
        cartan_chart().contact1 - E("t") * cartan_chart().contact2);
  REQUIRE(rep.prolongation.charts.has_value());
  const Chart& c = rep.prolongation.charts->first.chart;
  Form expected = Form::differential(c, "t") - E("t*a") * Form::differential(c, "x") -
                  E("a") * Form::differential(c, "y");
  CHECK(rep.prolongation.charts->first.theta == expected);
  CHECK(rep.covering_ok);
  CHECK(rep.points_checked == 10);
}

TEST_CASE("leaf chart functions are constant along the characteristics") {
  LeafChart lc = leaf_chart();
  auto ch = cauchy_characteristics(cartan_chart().pfaff());
  REQUIRE(ch.rank == 1);
  for (const auto& f : lc.quotient.components())
    CHECK(ch.fields[0].apply(f).is_zero());
}

TEST_CASE("lift and quotient compose to identities") {
  LeafChart lc = leaf_chart();
  // quotient o lift is the identity on the base coordinates
  SmoothMap down = compose(lc.quotient, lc.lift);
  for (int i = 0; i < 5; ++i)
    CHECK(down.components()[static_cast<std::size_t>(i)] ==
          Expr::variable(lc.base.coord(i)));
  // lift o (quotient, lambda = x) is the identity on the equation chart
  const Chart& ec = cartan_chart().chart;
  std::vector<Expr> up_comps = lc.quotient.components();
  up_comps.push_back(E("x"));
  SmoothMap graph(ec, lc.lifted, up_comps);
  SmoothMap up = compose(lc.lift, graph);
  for (int i = 0; i < 6; ++i)
    CHECK(up.components()[static_cast<std::size_t>(i)] == Expr::variable(ec.coord(i)));
  // the z slot of the lift is the quoted quadratic expression
  CHECK(lc.lift.components()[2] ==
        E("x1 + lambda*x2 - lambda*x4*x5^2/2 - lambda^2*x5^3/6"));
}

TEST_CASE("the leaf system is the flat (2,3,5) model") {
  PfaffSystem db = db_system();
  CHECK(weak_derived_flag(db).ranks == std::vector<int>{2, 3, 5});
  CHECK(cauchy_characteristics(db).rank == 0);
}

TEST_CASE("the contact forms are pullbacks of the leaf forms") {
  LeafChart lc = leaf_chart();
  PfaffSystem db = db_system();
  EquationChart eq = cartan_chart();
  Form a1 = pullback(lc.quotient, db.generators[0]);
  Form a2 = pullback(lc.quotient, db.generators[1]);
  Form a3 = pullback(lc.quotient, db.generators[2]);
  Expr x = E("x"), t = E("t");
  CHECK(eq.contact0 == a1 + x * a2);
  CHECK(eq.contact2 == -a3);
  // the middle relation holds with the chart parameter, not the first
  // base coordinate: contact1 - t*contact2 is exactly the second pullback
  CHECK(eq.contact1 - t * eq.contact2 == a2);
  CHECK(eq.contact1 == a2 - t * a3);
  CHECK_FALSE(eq.contact1 == a2 - x * a3);
}

TEST_CASE("integral curves of the leaf system") {
  IntegralCurve c = db_integral_curve(E("tau^2"));
  CHECK(c.annihilates_generators);
  PfaffSystem db = db_system();
  for (const auto& g : db.generators) CHECK(pullback(c.curve(), g).is_zero());
  IntegralCurve zero = db_integral_curve(Expr{});
  CHECK(zero.annihilates_generators);
}

TEST_CASE("first construction: closed slots for simple generators") {
  SolutionSurface s0 = solve_i(Expr{});
  CHECK(s0.components[1] == E("-t*x"));
  CHECK(s0.components[2] == E("x^2*t^3/6"));
  CHECK(s0.components[3] == E("-t^3*x/6"));
  CHECK(s0.components[4] == E("-t^2*x/2"));
  CHECK(s0.fiber_b == E("-x"));
  CHECK(s0.origin_condition);
  CHECK(s0.transcription_match);

  SolutionSurface s2 = solve_i(E("t^2"));
  CHECK(s2.components[4] == E("-t^2*x/2 + 2*t^3/3"));
  CHECK(s2.fiber_b == E("-x + 2*t"));
  CHECK(s2.origin_condition);
  CHECK(s2.transcription_match);

  SolutionSurface s1 = solve_i(E("t"));
  CHECK_FALSE(s1.origin_condition);
  CHECK(verify_solution(s1).pullbacks_zero);
  CHECK_FALSE(verify_solution(s1).through_origin);
}

TEST_CASE("first construction surfaces are integral and singular as stated") {
  for (const char* y0 : {"0", "t^2", "t^3 + 2*t^2", "t^4"}) {
    SolutionSurface s = solve_i(E(y0));
    SolutionReport rep = verify_solution(s);
    CHECK(rep.pullbacks_zero);
    CHECK(rep.prolongation_pullback_zero);
    CHECK(rep.transcription_match);
    // the nonimmersion ideal is generated by x - y0'(t)
    Expr expected = E("x") - E(y0).derivative("t");
    Expr normalized = Expr(normalize_primitive(expected.num()));
    CHECK(rep.nonimmersion_locus == normalized);
    CHECK(rep.through_origin == s.origin_condition);
  }
  // away from the locus the projection is an immersion
  SolutionSurface s = solve_i(E("t^2"));
  SolutionReport rep = verify_solution(s);
  std::mt19937_64 rng{8712};
  std::uniform_int_distribution<int> num(1, 9);
  for (int i = 0; i < 5; ++i) {
    RationalPoint pt;
    Rat tval(num(rng), 2);
    pt.set("t", tval);
    pt.set("x", 2 * tval + Rat(num(rng)));  // x != y0'(t)
    CHECK(rep.nonimmersion_locus.eval(pt) != 0);
  }
}

TEST_CASE("second construction sweeps the same surfaces") {
  SolutionSurface s = solve_ii(E("tau^2"));
  SolutionReport rep = verify_solution(s);
  CHECK(rep.pullbacks_zero);
  CHECK(rep.prolongation_pullback_zero);
  CHECK(compare_solutions(E("t^2")));
  CHECK(compare_solutions(E("t^4")));
  CHECK(compare_solutions(Expr{}));
}

TEST_CASE("both constructions agree for degree six generators") {
  std::mt19937_64 rng{140186};
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  for (int draw = 0; draw < 10; ++draw) {
    // polynomial of degree <= 6 with vanishing derivative at 0
    Expr y0{Rat(num(rng), den(rng))};
    for (unsigned d = 2; d <= 6; ++d)
      y0 = y0 + Expr(Rat(num(rng), den(rng))) * pow(E("t"), d);
    CHECK(compare_solutions(y0));
  }
}
