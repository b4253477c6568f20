#include "eds/cartan.hpp"

namespace eds {

namespace {

RationalPoint cartan_base_point() {
  return RationalPoint::of({{"x", 0}, {"y", 0}, {"z", 0}, {"p", 0}, {"q", 0}, {"t", 1}});
}

Expr var(const char* n) { return Expr::variable(n); }

}  // namespace

SolvedSystem cartan_system() {
  std::map<std::string, Expr> solved;
  solved["r"] = parse_expr("t^3/3");
  solved["s"] = parse_expr("t^2/2");
  return SolvedSystem(std::move(solved), "t");
}

EquationChart cartan_chart() { return build_chart(cartan_system()); }

CoveringReport coframe_and_covering() {
  CoveringReport rep;
  EquationChart eq = cartan_chart();
  rep.coframe = adapted_coframe(eq);
  rep.prolongation = prolong(eq, cartan_base_point());

  // Every integral element with dy^dt != 0 also has dx^dt != 0: on the
  // kernel pencil c1*(e1^e2) + c2*(e1 - t*e2)^e3 the two pairings are
  // -t*c2 and c2, so the implication holds at every point, t = 0 included.
  auto frame = dual_frame(eq.pfaff());
  Form dx = Form::differential(eq.chart, "x");
  Form dy = Form::differential(eq.chart, "y");
  Form dt = Form::differential(eq.chart, "t");
  Form dxdt = wedge(dx, dt);
  Form dydt = wedge(dy, dt);
  std::vector<RationalPoint> pts;
  for (int i = 0; i < 10; ++i) {
    RationalPoint pt;
    pt.set("x", Rat(i, 3)).set("y", Rat(1 - i, 2)).set("z", Rat(i)).set("p", Rat(-i, 5))
        .set("q", Rat(2 * i + 1, 7))
        .set("t", i < 5 ? Rat(0) : Rat(i - 4, 3));
    pts.push_back(pt);
  }
  rep.covering_ok = true;
  for (const auto& pt : pts) {
    FiberDescriptor fd = fiber_at(eq, pt);
    if (fd.kernel_dim != 2) {
      rep.covering_ok = false;
      continue;
    }
    // sweep the projective pencil over a rational grid plus infinity
    for (int num = -6; num <= 7; ++num) {
      std::array<Rat, 3> v{};
      if (num == 7) {
        v = fd.kernel_basis[1];  // the infinity element of the sweep
      } else {
        for (std::size_t k = 0; k < 3; ++k)
          v[k] = fd.kernel_basis[0][k] + Rat(num, 2) * fd.kernel_basis[1][k];
      }
      // pairings of dx^dt and dy^dt with the 2-vector at the point
      auto pair2 = [&](const Form& f) {
        Rat acc = 0;
        const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
        for (std::size_t k = 0; k < 3; ++k) {
          if (v[k] == 0) continue;
          std::vector<Expr> ca, cb;
          for (const auto& r : fd.frame[static_cast<std::size_t>(pairs[k].first)])
            ca.push_back(Expr(r));
          for (const auto& r : fd.frame[static_cast<std::size_t>(pairs[k].second)])
            cb.push_back(Expr(r));
          VectorField fa(eq.chart, ca), fb(eq.chart, cb);
          acc += v[k] * evaluate(f, fa, fb).eval(pt);
        }
        return acc;
      };
      if (pair2(dydt) != 0 && pair2(dxdt) == 0) rep.covering_ok = false;
    }
    ++rep.points_checked;
  }
  return rep;
}

LeafChart leaf_chart() {
  LeafChart lc;
  lc.base = Chart({"x1", "x2", "x3", "x4", "x5"});
  lc.lifted = Chart({"x1", "x2", "x3", "x4", "x5", "lambda"});
  EquationChart eq = cartan_chart();
  std::vector<Expr> quotient = {
      parse_expr("z - x*p + x*q*t + x^2*t^3/6"),
      parse_expr("p - q*t + y*t^2/2 + t^3*x/6"),
      parse_expr("-q + y*t/2"),
      parse_expr("y + x*t"),
      parse_expr("-t"),
  };
  lc.quotient = SmoothMap(eq.chart, lc.base, std::move(quotient));
  std::vector<Expr> lift = {
      parse_expr("lambda"),
      parse_expr("x4 + lambda*x5"),
      parse_expr("x1 + lambda*x2 - lambda*x4*x5^2/2 - lambda^2*x5^3/6"),
      parse_expr("x2 + x3*x5 + lambda*x5^3/6"),
      parse_expr("-x3 - x4*x5/2 - lambda*x5^2/2"),
      parse_expr("-x5"),
  };
  lc.lift = SmoothMap(lc.lifted, eq.chart, std::move(lift));
  return lc;
}

PfaffSystem db_system() {
  Chart b({"x1", "x2", "x3", "x4", "x5"});
  Form dx1 = Form::differential(b, "x1");
  Form dx2 = Form::differential(b, "x2");
  Form dx3 = Form::differential(b, "x3");
  Form dx4 = Form::differential(b, "x4");
  Form dx5 = Form::differential(b, "x5");
  Form a1 = dx1 + (var("x3") + var("x4") * var("x5") * Expr(Rat(1, 2))) * dx4;
  Form a2 = dx2 + (var("x3") - var("x4") * var("x5") * Expr(Rat(1, 2))) * dx5;
  Form a3 = dx3 + Expr(Rat(1, 2)) * (var("x4") * dx5 - var("x5") * dx4);
  return PfaffSystem(b, {a1, a2, a3});
}

IntegralCurve db_integral_curve(const Expr& phi) {
  VarId tau = var_intern("tau");
  if (!phi.is_polynomial() || phi.den().depends_on(tau))
    throw DomainError("the generating function must be a polynomial in tau");
  for (VarId v : phi.variables())
    if (v != tau) throw DomainError("the generating function may only involve tau");
  IntegralCurve c;
  c.param = Chart({"tau"});
  Expr dphi = phi.derivative(tau);
  Expr int_phi = phi.antiderivative(tau);
  Expr x1 = (dphi * int_phi - phi * dphi * var("tau")).antiderivative(tau);
  Expr x2 = int_phi.antiderivative(tau);
  Expr x3 = Expr(Rat(-1, 2)) * (phi - var("tau") * dphi).antiderivative(tau);
  c.components = {x1, x2, x3, phi, var("tau")};
  PfaffSystem db = db_system();
  SmoothMap curve(c.param, db.chart, c.components);
  c.annihilates_generators = true;
  for (const auto& g : db.generators)
    c.annihilates_generators = c.annihilates_generators && pullback(curve, g).is_zero();
  return c;
}

SmoothMap IntegralCurve::curve() const {
  return SmoothMap(param, db_system().chart, components);
}

SmoothMap SolutionSurface::into_equation_chart() const {
  return SmoothMap(params, cartan_chart().chart, components);
}

SolutionSurface solve_i(const Expr& y0) {
  VarId t = var_intern("t");
  if (!y0.is_polynomial() || y0.den().depends_on(t))
    throw DomainError("y0 must be a polynomial in t");
  for (VarId v : y0.variables())
    if (v != t) throw DomainError("y0 may only involve t");
  SolutionSurface s;
  s.params = Chart({"x", "t"});
  s.free_function = y0;
  s.free_var = "t";
  Expr dy0 = y0.derivative(t);
  s.origin_condition = dy0.substitute({{t, Expr(0)}}).is_zero();

  Expr x = var("x"), tv = var("t");
  Expr int_y0 = y0.antiderivative(t);
  Expr int_ty0 = (tv * y0).antiderivative(t);

  // re-derivation from the graph equations: y_x = -t, y_t = b,
  // q_x = -t^2/2, q_t = b t, p_x = -t^3/6, p_t = b t^2/2,
  // z_x = p - q t, z_t = b q, with b = -x + y0'(t)
  Expr y = -tv * x + y0;
  Expr b = -x + dy0;
  Expr q = -pow(tv, 2) * x / Expr(2) + (tv * dy0).antiderivative(t);
  Expr p = -pow(tv, 3) * x / Expr(6) + (pow(tv, 2) * dy0 / Expr(2)).antiderivative(t);
  Expr z_t_free = (tv * y0 * dy0 - dy0 * int_y0).antiderivative(t);
  Expr z = pow(x, 2) * pow(tv, 3) / Expr(6) -
           x * (pow(tv, 2) * y0 / Expr(2) + int_ty0 - tv * int_y0) + z_t_free;

  // the closed family, as a cross-check of the re-derived slots
  Expr q_closed = -pow(tv, 2) * x / Expr(2) + tv * y0 - int_y0;
  Expr p_closed = -pow(tv, 3) * x / Expr(6) + pow(tv, 2) * y0 / Expr(2) - int_ty0;
  Expr z_closed = pow(x, 2) * pow(tv, 3) / Expr(6) -
                  x * (pow(tv, 2) * y0 / Expr(2) + int_ty0 - tv * int_y0) +
                  tv * y0 * y0 / Expr(2) + (y0 * y0).antiderivative(t) / Expr(2) -
                  y0 * int_y0;
  s.transcription_match = (q == q_closed) && (p == p_closed) && (z == z_closed);

  s.components = {x, y, z, p, q, tv};
  s.fiber_b = b;
  return s;
}

SolutionSurface solve_ii(const Expr& phi) {
  IntegralCurve curve = db_integral_curve(phi);
  LeafChart lc = leaf_chart();
  VarId tau = var_intern("tau");
  SolutionSurface s;
  s.params = Chart({"x", "tau"});
  s.free_function = phi;
  s.free_var = "tau";
  Expr dphi = phi.derivative(tau);
  s.origin_condition = dphi.substitute({{tau, Expr(0)}}).is_zero();
  // sweep: lift with lambda = x along the curve
  std::map<VarId, Expr> binds;
  for (int i = 0; i < 5; ++i)
    binds[lc.lifted.var(i)] = curve.components[static_cast<std::size_t>(i)];
  binds[var_intern("lambda")] = var("x");
  s.components.reserve(6);
  for (const auto& comp : lc.lift.components())
    s.components.push_back(comp.substitute(binds));
  // the fiber slot of the nontransversal lift: b = y_t = y_tau / t_tau
  Expr y = s.components[1];
  Expr tcomp = s.components[5];
  Expr tder = tcomp.derivative(tau);
  if (tder.is_zero()) throw DegenerateError("sweep does not move in t");
  s.fiber_b = y.derivative(tau) / tder;
  s.transcription_match = curve.annihilates_generators;
  return s;
}

SolutionReport verify_solution(const SolutionSurface& s) {
  SolutionReport rep;
  EquationChart eq = cartan_chart();
  SmoothMap into = s.into_equation_chart();
  rep.pullbacks_zero = pullback(into, eq.contact0).is_zero() &&
                       pullback(into, eq.contact1).is_zero() &&
                       pullback(into, eq.contact2).is_zero();
  // lift into the nontransversal prolongation chart and pull its form back
  {
    Chart u_xt = eq.chart.extended("b");
    Form dyf = Form::differential(u_xt, "y");
    Form dxf = Form::differential(u_xt, "x");
    Form dtf = Form::differential(u_xt, "t");
    Form theta = dyf + var("t") * dxf - var("b") * dtf;
    std::vector<Expr> comps = s.components;
    comps.push_back(s.fiber_b);
    SmoothMap lifted(s.params, u_xt, comps);
    rep.prolongation_pullback_zero = pullback(lifted, theta).is_zero();
  }
  // nonimmersion locus: gcd of the 2x2 minors of the first-order projection
  {
    VarId u0 = s.params.var(0), u1 = s.params.var(1);
    std::vector<Expr> proj(s.components.begin(), s.components.begin() + 5);
    std::vector<Expr> row0, row1;
    for (const auto& comp : proj) {
      row0.push_back(comp.derivative(u0));
      row1.push_back(comp.derivative(u1));
    }
    Polynomial locus;
    bool all_zero = true;
    for (std::size_t i = 0; i < proj.size(); ++i)
      for (std::size_t j = i + 1; j < proj.size(); ++j) {
        Expr minor = row0[i] * row1[j] - row0[j] * row1[i];
        if (minor.is_zero()) continue;
        all_zero = false;
        Polynomial num = normalize_primitive(minor.num());
        locus = locus.is_zero() ? num : gcd(locus, num);
      }
    rep.nonimmersion_locus = all_zero ? Expr{} : Expr(locus);
    if (!all_zero) {
      RationalPoint origin;
      origin.values[u0] = 0;
      origin.values[u1] = 0;
      rep.through_origin = rep.nonimmersion_locus.eval(origin) == 0;
    }
  }
  rep.transcription_match = s.transcription_match;
  return rep;
}

bool compare_solutions(const Expr& y0) {
  VarId t = var_intern("t");
  VarId tau = var_intern("tau");
  // phi(tau) := y0(-tau)
  Expr phi = y0.substitute({{t, -Expr::variable("tau")}});
  SolutionSurface si = solve_i(y0);
  SolutionSurface sii = solve_ii(phi);
  // identify tau = -t, lambda = x
  std::map<VarId, Expr> binds{{tau, -Expr::variable("t")}};
  for (std::size_t k = 0; k < 6; ++k) {
    Expr lhs = sii.components[k].substitute(binds);
    if (!(lhs == si.components[k])) return false;
  }
  return true;
}

StratumModel stratum_model(bool transversal_chart) {
  EquationChart eq = cartan_chart();
  Prolongation pr = prolong(eq, cartan_base_point());
  if (!pr.charts) throw DegenerateError("Cartan system failed to prolong");
  StratumModel out;
  out.chart = transversal_chart ? pr.charts->first : pr.charts->second;
  const ProlongChart& pc = out.chart;
  const Chart& c = pc.chart;
  // filtration: D^, its derived system, {contact0 = 0}, TM
  Form contact0 = pc.generators[0];
  Form hat1 = pc.generators[1];
  Form hat2 = pc.generators[2];
  std::vector<PfaffSystem> stages;
  stages.emplace_back(c, pc.generators);
  stages.emplace_back(c, std::vector<Form>{contact0, hat1, hat2});
  stages.emplace_back(c, std::vector<Form>{contact0});
  stages.emplace_back(c, std::vector<Form>{});
  out.filtration = Filtration(std::move(stages));
  // coframe (contact0, hat1, hat2, theta, omega1, omega2', pi') and its
  // dual frame, reordered by grade: -1 block first, then -2, -3, -4
  std::vector<Form> coframe = {contact0, hat1,       hat2,        pc.theta,
                               pc.omega1, pc.omega2, pc.pi_fiber};
  const int n = c.dim();
  linalg::Matrix<Expr> a(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = coframe[static_cast<std::size_t>(k)].coefficient({j});
  linalg::Matrix<Expr> dual = linalg::inverse(a);  // columns are the frame fields
  auto field = [&](int k) {
    std::vector<Expr> comps;
    for (int j = 0; j < n; ++j) comps.push_back(dual[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
    return VectorField(c, std::move(comps));
  };
  // grade -1: duals of omega1, omega2', pi' (slots 4, 5, 6);
  // grade -2: theta dual (slot 3); grade -3: hat1, hat2 duals (1, 2);
  // grade -4: contact0 dual (0)
  out.frame = {field(4), field(5), field(6), field(3), field(1), field(2), field(0)};
  return out;
}

}  // namespace eds
