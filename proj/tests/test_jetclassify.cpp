#include "eds/jet.hpp"

#include "eds/cartan.hpp"

#include <doctest.h>

#include <random>

using namespace eds;

namespace {

Expr E(const char* s) { return parse_expr(s); }

SolvedSystem sys_ii() {
  return SolvedSystem({{"r", Expr{}}, {"t", Expr{}}}, "s");
}
SolvedSystem sys_iii() {
  return SolvedSystem({{"r", E("t")}, {"s", Expr{}}}, "t");
}
SolvedSystem sys_ii_rotated() {
  return SolvedSystem({{"r", E("-t")}, {"s", Expr{}}}, "t");
}
SolvedSystem sys_iv() {
  return SolvedSystem({{"r", E("q")}, {"s", Expr{}}}, "t");
}

RationalPoint base_point(const SolvedSystem& sys, Rat param_value) {
  RationalPoint pt = RationalPoint::of({{"x", 0}, {"y", 0}, {"z", 0}, {"p", 0}, {"q", 0}});
  pt.values[var_intern(sys.parameter)] = std::move(param_value);
  return pt;
}

// independent oracle for the pencil discriminant: counts sign crossings of
// disc(lambda, mu) around the projective circle on a rational grid
int pencil_crossings(const SymbolPencil& pencil, const RationalPoint& pt) {
  Rat a = pencil.qf.b.eval(pt) * pencil.qf.b.eval(pt) -
          4 * pencil.qf.a.eval(pt) * pencil.qf.c.eval(pt);
  Rat b = 2 * pencil.qf.b.eval(pt) * pencil.qg.b.eval(pt) -
          4 * pencil.qf.a.eval(pt) * pencil.qg.c.eval(pt) -
          4 * pencil.qg.a.eval(pt) * pencil.qf.c.eval(pt);
  Rat c = pencil.qg.b.eval(pt) * pencil.qg.b.eval(pt) -
          4 * pencil.qg.a.eval(pt) * pencil.qg.c.eval(pt);
  std::vector<int> signs;
  auto push = [&](const Rat& lam, const Rat& mu) {
    Rat v = a * lam * lam + b * lam * mu + c * mu * mu;
    if (v != 0) signs.push_back(v > 0 ? 1 : -1);
  };
  for (int k = -40; k <= 40; ++k) push(Rat(k, 4), Rat(1));
  push(Rat(1), Rat(0));
  int crossings = 0;
  for (std::size_t i = 0; i + 1 < signs.size(); ++i)
    if (signs[i] != signs[i + 1]) ++crossings;
  if (!signs.empty() && signs.back() != signs.front()) ++crossings;
  return crossings;
}

}  // namespace

TEST_CASE("solved systems validate their shape") {
  CHECK_THROWS_AS(SolvedSystem({{"r", Expr{}}}, "t"), DomainError);
  CHECK_THROWS_AS(SolvedSystem({{"r", Expr{}}, {"s", Expr{}}}, "s"), DomainError);
  CHECK_THROWS_AS(SolvedSystem({{"r", Expr{}}, {"s", Expr{}}}, "q"), DomainError);
  // a solved expression may not involve a solved variable
  CHECK_THROWS_AS(SolvedSystem({{"r", E("s")}, {"s", Expr{}}}, "t"), DomainError);
  // but the parameter is fine
  CHECK_NOTHROW(SolvedSystem({{"r", E("t^2")}, {"s", E("q*t")}}, "t"));
}

TEST_CASE("chart construction substitutes the solved derivatives") {
  EquationChart cartan = cartan_chart();
  const Chart& c = cartan.chart;
  Form expected = Form::differential(c, "p") - E("t^3/3") * Form::differential(c, "x") -
                  E("t^2/2") * Form::differential(c, "y");
  CHECK(cartan.contact1 == expected);

  EquationChart zero = build_chart(SolvedSystem({{"r", Expr{}}, {"s", Expr{}}}, "t"));
  CHECK(zero.contact1 == Form::differential(zero.chart, "p"));
  CHECK(zero.contact2 == Form::differential(zero.chart, "q") -
                             E("t") * Form::differential(zero.chart, "y"));

  EquationChart ii = build_chart(sys_ii());
  CHECK(ii.contact1 == Form::differential(ii.chart, "p") -
                           E("s") * Form::differential(ii.chart, "y"));
  CHECK(ii.contact2 == Form::differential(ii.chart, "q") -
                           E("s") * Form::differential(ii.chart, "x"));
  // the vertical direction is the parameter direction and lies in D
  for (const Form* f : {&ii.contact0, &ii.contact1, &ii.contact2})
    CHECK(evaluate(*f, ii.vertical).is_zero());
}

TEST_CASE("regularity reports") {
  auto rep = regularity_check(cartan_system(), {base_point(cartan_system(), 1)});
  CHECK(rep.regular);
  CHECK(rep.certifying_minor.find("1") != std::string::npos);

  // raw degenerate pair F = G
  Expr f = E("r - t^2");
  auto raw = regularity_check_raw(f, f, {RationalPoint::of({{"x", 0}, {"y", 0}, {"z", 0},
                                                            {"p", 0}, {"q", 0}, {"r", 0},
                                                            {"s", 0}, {"t", 0}})});
  CHECK_FALSE(raw.regular);
}

TEST_CASE("symbol pencil discriminants with the grid oracle") {
  SymbolPencil cartan = symbol_pencil(cartan_system());
  CHECK(cartan.delta.is_zero());

  SymbolPencil rot = symbol_pencil(sys_ii_rotated());
  CHECK(rot.delta == Expr(16));
  SymbolPencil iii = symbol_pencil(sys_iii());
  CHECK(iii.delta == Expr(-16));
  SymbolPencil crossed = symbol_pencil(sys_ii());
  CHECK(crossed.delta == Expr(16));

  RationalPoint p1 = base_point(sys_ii_rotated(), 1);
  CHECK(pencil_crossings(rot, p1) == 2);
  CHECK(pencil_crossings(iii, base_point(sys_iii(), 1)) == 0);
  CHECK(pencil_crossings(crossed, base_point(sys_ii(), 1)) == 2);
}

TEST_CASE("fiber computation at points") {
  EquationChart cartan = cartan_chart();
  FiberDescriptor f = fiber_at(cartan, base_point(cartan_system(), 1));
  CHECK(f.kernel_dim == 2);
  CHECK(f.has_transversal);
  CHECK(f.has_nontransversal);

  EquationChart rot = build_chart(sys_ii_rotated());
  FiberDescriptor fr = fiber_at(rot, base_point(sys_ii_rotated(), 2));
  CHECK(fr.kernel_dim == 1);
  CHECK(fr.basis_transversal[0]);
  // frozen kernel: the unique integral element is e1 ^ e2
  CHECK(fr.kernel_basis[0] == std::array<Rat, 3>{Rat(1), Rat(0), Rat(0)});

  EquationChart iv = build_chart(sys_iv());
  FiberDescriptor fi = fiber_at(iv, base_point(sys_iv(), 1));
  CHECK(fi.kernel_dim == 1);
  CHECK_FALSE(fi.basis_transversal[0]);
  // frozen kernel: e1 ^ e3 contains the vertical direction
  CHECK(fi.kernel_basis[0] == std::array<Rat, 3>{Rat(0), Rat(1), Rat(0)});
}

TEST_CASE("symbolic fiber rows are the frozen matrices") {
  SymbolicFiber rot = symbolic_fiber(build_chart(sys_ii_rotated()));
  CHECK(rot.rows[0] == std::vector<Expr>{Expr{}, Expr(-1), Expr{}});
  CHECK(rot.rows[1] == std::vector<Expr>{Expr{}, Expr{}, Expr(1)});
  CHECK(rot.generic_kernel_dim == 1);

  SymbolicFiber iv = symbolic_fiber(build_chart(sys_iv()));
  CHECK(iv.rows[0] == std::vector<Expr>{E("t"), Expr{}, Expr{}});
  CHECK(iv.rows[1] == std::vector<Expr>{Expr{}, Expr{}, Expr(1)});
  CHECK(iv.generic_kernel_dim == 1);
  REQUIRE(iv.loci.size() == 1);
  CHECK(iv.loci[0] == E("t"));
}

TEST_CASE("classification of the four systems") {
  CHECK(classify_type(cartan_chart(), base_point(cartan_system(), 1)).label.kind ==
        TypeKind::I);
  CHECK(classify_type(build_chart(sys_ii()), base_point(sys_ii(), 1)).label.kind ==
        TypeKind::II);
  CHECK(classify_type(build_chart(sys_iii()), base_point(sys_iii(), 1)).label.kind ==
        TypeKind::III);
  CHECK(classify_type(build_chart(sys_iv()), base_point(sys_iv(), 1)).label.kind ==
        TypeKind::IV);
  // the torsion example degenerates where its structure constant vanishes
  Classification deg = classify_type(build_chart(sys_iv()), base_point(sys_iv(), 0));
  CHECK(deg.label.kind == TypeKind::Degenerate);
  // the rotated crossed system is also of the first finite type
  CHECK(classify_type(build_chart(sys_ii_rotated()), base_point(sys_ii_rotated(), 1))
            .label.kind == TypeKind::II);
}

TEST_CASE("classification cross-checks") {
  for (const auto& sys : {cartan_system(), sys_ii(), sys_iii(), sys_iv()}) {
    Classification c = classify_type(build_chart(sys), base_point(sys, 1));
    CHECK(c.cauchy_consistent);
    CHECK((c.label.kind == TypeKind::I) == (c.cauchy_rank == 1));
  }
}

TEST_CASE("d contact0 vanishes on every 2-plane of the distribution") {
  for (const auto& sys : {cartan_system(), sys_ii(), sys_iii(), sys_iv()}) {
    EquationChart eq = build_chart(sys);
    auto frame = dual_frame(eq.pfaff());
    Form d0 = exterior_derivative(eq.contact0);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        CHECK(evaluate(d0, frame[static_cast<std::size_t>(i)],
                       frame[static_cast<std::size_t>(j)])
                  .is_zero());
  }
}

TEST_CASE("classification is invariant under the x-y relabeling") {
  // swap x<->y, p<->q, r<->t in a solved system
  auto swapped = [](const SolvedSystem& sys) {
    auto swap_expr = [](const Expr& e) {
      std::map<VarId, Expr> binds{
          {var_intern("x"), E("y")}, {var_intern("y"), E("x")},
          {var_intern("p"), E("q")}, {var_intern("q"), E("p")},
          {var_intern("r"), E("t")}, {var_intern("t"), E("r")}};
      return e.substitute(binds);
    };
    auto swap_name = [](const std::string& n) {
      return n == "r" ? std::string("t") : n == "t" ? std::string("r") : n;
    };
    std::map<std::string, Expr> solved;
    for (const auto& [k, v] : sys.solved) solved[swap_name(k)] = swap_expr(v);
    return SolvedSystem(solved, swap_name(sys.parameter));
  };
  auto swapped_point = [](const SolvedSystem& sys, const RationalPoint& pt) {
    RationalPoint out;
    auto grab = [&](const char* n) { return pt.at(var_intern(n)); };
    out.set("x", grab("y")).set("y", grab("x")).set("z", grab("z"))
        .set("p", grab("q")).set("q", grab("p"));
    std::string newp = sys.parameter == "r" ? "t" : sys.parameter == "t" ? "r" : "s";
    out.values[var_intern(newp)] = pt.at(var_intern(sys.parameter));
    return out;
  };
  for (const auto& sys : {cartan_system(), sys_ii(), sys_iii(), sys_iv()}) {
    RationalPoint pt = base_point(sys, 1);
    TypeKind before = classify_type(build_chart(sys), pt).label.kind;
    SolvedSystem sw = swapped(sys);
    TypeKind after = classify_type(build_chart(sw), swapped_point(sys, pt)).label.kind;
    CHECK(before == after);
  }
}

TEST_CASE("fiber kernel is stable across random points of the involutive example") {
  std::mt19937_64 rng{551};
  std::uniform_int_distribution<int> num(-8, 8);
  EquationChart cartan = cartan_chart();
  for (int i = 0; i < 20; ++i) {
    RationalPoint pt = RationalPoint::of({{"x", Rat(num(rng), 3)},
                                          {"y", Rat(num(rng), 2)},
                                          {"z", Rat(num(rng))},
                                          {"p", Rat(num(rng), 5)},
                                          {"q", Rat(num(rng), 2)},
                                          {"t", Rat(num(rng), 4)}});
    FiberDescriptor f = fiber_at(cartan, pt);
    CHECK(f.kernel_dim == 2);
    CHECK(f.has_transversal);
    CHECK(f.has_nontransversal);
  }
}

TEST_CASE("gauge robustness under constant mixes of the contact pair") {
  for (const auto& sys : {cartan_system(), sys_ii_rotated(), sys_iv()}) {
    EquationChart eq = build_chart(sys);
    RationalPoint pt = base_point(sys, 1);
    FiberDescriptor before = fiber_at(eq, pt);
    EquationChart mixed = eq;
    mixed.contact1 = Expr(2) * eq.contact1 + Expr(3) * eq.contact2;
    mixed.contact2 = eq.contact1 + Expr(2) * eq.contact2;
    FiberDescriptor after = fiber_at(mixed, pt);
    CHECK(after.kernel_dim == before.kernel_dim);
    // kernels agree as subspaces
    linalg::Matrix<Rat> span;
    for (const auto& v : before.kernel_basis) span.push_back({v[0], v[1], v[2]});
    for (const auto& v : after.kernel_basis)
      CHECK(linalg::in_row_span(span, std::vector<Rat>{v[0], v[1], v[2]}));
    TypeKind a = classify_type(eq, pt).label.kind;
    TypeKind b = classify_type(mixed, pt).label.kind;
    CHECK(a == b);
  }
}

TEST_CASE("transversal fibers separate the prolongation from its transversal part") {
  CHECK(transversal_fiber(cartan_chart(), base_point(cartan_system(), 1)) ==
        TransversalFiber::line);
  CHECK(transversal_fiber(build_chart(sys_ii_rotated()), base_point(sys_ii_rotated(), 1)) ==
        TransversalFiber::point);
  CHECK(transversal_fiber(build_chart(sys_iv()), base_point(sys_iv(), 1)) ==
        TransversalFiber::empty);
  CHECK_THROWS_AS(transversal_fiber(build_chart(sys_iv()), base_point(sys_iv(), 0)),
                  DegenerateError);
}

TEST_CASE("normal-form congruences certify the finite types") {
  // crossed type: d contact1 = omega2 ^ pi, d contact2 = omega1 ^ pi
  EquationChart ii = build_chart(sys_ii());
  {
    const Chart& c = ii.chart;
    std::vector<Form> ideal = {ii.contact0, ii.contact1, ii.contact2};
    Form omega1 = Form::differential(c, "x");
    Form omega2 = Form::differential(c, "y");
    Form pi = Form::differential(c, "s");
    CHECK(reduce_modulo(exterior_derivative(ii.contact1) - wedge(omega2, pi), ideal)
              .is_zero());
    CHECK(reduce_modulo(exterior_derivative(ii.contact2) - wedge(omega1, pi), ideal)
              .is_zero());
  }
  // diagonal type: d contact1 = omega1 ^ pi, d contact2 = omega2 ^ pi
  EquationChart iii = build_chart(sys_iii());
  {
    const Chart& c = iii.chart;
    std::vector<Form> ideal = {iii.contact0, iii.contact1, iii.contact2};
    Form omega1 = Form::differential(c, "x");
    Form omega2 = Form::differential(c, "y");
    Form pi = Form::differential(c, "t");
    CHECK(reduce_modulo(exterior_derivative(iii.contact1) - wedge(omega1, pi), ideal)
              .is_zero());
    CHECK(reduce_modulo(exterior_derivative(iii.contact2) - wedge(omega2, pi), ideal)
              .is_zero());
  }
  // torsion type: d contact1 = t * omega1 ^ omega2 modulo the system
  EquationChart iv = build_chart(sys_iv());
  {
    const Chart& c = iv.chart;
    std::vector<Form> ideal = {iv.contact0, iv.contact1, iv.contact2};
    Form expected = wedge(E("t") * Form::differential(c, "x"), Form::differential(c, "y"));
    CHECK(reduce_modulo(exterior_derivative(iv.contact1), ideal) == expected);
  }
}
