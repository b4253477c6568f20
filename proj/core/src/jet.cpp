#include "eds/jet.hpp"

#include <algorithm>

namespace eds {

namespace {

const std::vector<std::string> kSecondOrder = {"r", "s", "t"};

bool is_second_order(const std::string& n) {
  return std::find(kSecondOrder.begin(), kSecondOrder.end(), n) != kSecondOrder.end();
}

}  // namespace

SolvedSystem::SolvedSystem(std::map<std::string, Expr> solved_exprs, std::string param)
    : solved(std::move(solved_exprs)), parameter(std::move(param)) {
  if (solved.size() != 2)
    throw DomainError("a solved system fixes exactly two of r, s, t");
  if (!is_second_order(parameter))
    throw DomainError("parameter must be one of r, s, t");
  if (solved.count(parameter))
    throw DomainError("parameter cannot also be solved");
  for (const auto& name : kSecondOrder) {
    if (name == parameter) continue;
    if (!solved.count(name))
      throw DomainError("missing solved expression for '" + name + "'");
  }
  for (const auto& [name, e] : solved) {
    for (const auto& other : kSecondOrder)
      if (other != parameter && e.variables().count(var_intern(other)))
        throw DomainError("solved expression for '" + name +
                          "' involves a solved variable");
  }
}

Expr SolvedSystem::second_derivative(const std::string& name) const {
  auto it = solved.find(name);
  if (it != solved.end()) return it->second;
  if (name == parameter) return Expr::variable(parameter);
  throw DomainError("unknown second-order coordinate '" + name + "'");
}

EquationChart build_chart(const SolvedSystem& sys) {
  EquationChart eq;
  eq.system = sys;
  eq.chart = Chart({"x", "y", "z", "p", "q", sys.parameter});
  const Chart& c = eq.chart;
  Expr rr = sys.second_derivative("r");
  Expr ss = sys.second_derivative("s");
  Expr tt = sys.second_derivative("t");
  Form dx = Form::differential(c, "x");
  Form dy = Form::differential(c, "y");
  Form dz = Form::differential(c, "z");
  Form dp = Form::differential(c, "p");
  Form dq = Form::differential(c, "q");
  eq.contact0 = dz - Expr::variable("p") * dx - Expr::variable("q") * dy;
  eq.contact1 = dp - rr * dx - ss * dy;
  eq.contact2 = dq - ss * dx - tt * dy;
  eq.vertical = VectorField::coordinate(c, c.index_of(var_intern(sys.parameter)));
  return eq;
}

RegularityReport regularity_check(const SolvedSystem& sys,
                                  const std::vector<RationalPoint>& pts) {
  // For F := u - f(...), G := v - g(...) the (r,s,t)-gradient matrix carries
  // an identity block in the (u, v) columns, so rank 2 holds identically.
  RegularityReport rep;
  rep.regular = true;
  std::string u, v;
  for (const auto& name : kSecondOrder) {
    if (name == sys.parameter) continue;
    (u.empty() ? u : v) = name;
  }
  rep.certifying_minor = "1 (identity block in the (" + u + ", " + v + ") columns)";
  for (const auto& pt : pts) rep.point_checks.emplace_back(pt, true);
  return rep;
}

RegularityReport regularity_check_raw(const Expr& f, const Expr& g,
                                      const std::vector<RationalPoint>& pts) {
  RegularityReport rep;
  std::array<Expr, 3> gf, gg;
  for (std::size_t i = 0; i < 3; ++i) {
    gf[i] = f.derivative(kSecondOrder[i]);
    gg[i] = g.derivative(kSecondOrder[i]);
  }
  rep.regular = true;
  // symbolic certifying minor: first nonzero 2x2 minor
  for (std::size_t i = 0; i < 3 && rep.certifying_minor.empty(); ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      Expr minor = gf[i] * gg[j] - gf[j] * gg[i];
      if (!minor.is_zero()) {
        rep.certifying_minor = minor.to_string();
        break;
      }
    }
  if (rep.certifying_minor.empty()) rep.regular = false;
  for (const auto& pt : pts) {
    linalg::Matrix<Rat> m(2, std::vector<Rat>(3));
    for (std::size_t i = 0; i < 3; ++i) {
      m[0][i] = gf[i].eval(pt);
      m[1][i] = gg[i].eval(pt);
    }
    rep.point_checks.emplace_back(pt, linalg::rank(m) == 2);
  }
  for (const auto& [pt, ok] : rep.point_checks) rep.regular = rep.regular && ok;
  return rep;
}

SymbolPencil symbol_pencil(const SolvedSystem& sys) {
  // F := u - f, G := v - g with u before v in (r, s, t) order.
  std::array<Expr, 3> gf{}, gg{};
  std::string u, v;
  for (const auto& name : kSecondOrder) {
    if (name == sys.parameter) continue;
    (u.empty() ? u : v) = name;
  }
  const Expr& fu = sys.solved.at(u);
  const Expr& fv = sys.solved.at(v);
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string& w = kSecondOrder[i];
    gf[i] = (w == u) ? Expr(1) : -fu.derivative(w);
    gg[i] = (w == v) ? Expr(1) : -fv.derivative(w);
  }
  SymbolPencil pencil;
  pencil.qf = {gf[0], gf[1], gf[2]};
  pencil.qg = {gg[0], gg[1], gg[2]};
  // disc(lambda qf + mu qg) = a lambda^2 + b lambda mu + c mu^2
  Expr a = pencil.qf.b * pencil.qf.b - Expr(4) * pencil.qf.a * pencil.qf.c;
  Expr b = Expr(2) * pencil.qf.b * pencil.qg.b - Expr(4) * pencil.qf.a * pencil.qg.c -
           Expr(4) * pencil.qg.a * pencil.qf.c;
  Expr c = pencil.qg.b * pencil.qg.b - Expr(4) * pencil.qg.a * pencil.qg.c;
  pencil.delta = b * b - Expr(4) * a * c;
  return pencil;
}

namespace {

// Rows of L on the basis (e1^e2, e1^e3, e2^e3) of Lambda^2 D, one row per
// supplied 2-form.
std::vector<std::vector<Expr>> lambda2_rows(const std::vector<Form>& two_forms,
                                            const std::vector<VectorField>& frame) {
  std::vector<std::vector<Expr>> rows;
  const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  for (const auto& f : two_forms) {
    std::vector<Expr> row;
    for (const auto& [i, j] : pairs)
      row.push_back(evaluate(f, frame[static_cast<std::size_t>(i)],
                             frame[static_cast<std::size_t>(j)]));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<VectorField> equation_frame(const EquationChart& eq) {
  auto frame = dual_frame(eq.pfaff());
  if (frame.size() != 3) throw DegenerateError("equation system frame is not rank 3");
  // dual_frame lists complement coordinates in chart order (x, y, parameter),
  // so the third field is the vertical one; assert that.
  if (!(frame[2] == eq.vertical))
    throw DegenerateError("vertical field is not the third frame element");
  return frame;
}

}  // namespace

SymbolicFiber symbolic_fiber(const EquationChart& eq) {
  auto frame = equation_frame(eq);
  auto rows = lambda2_rows({exterior_derivative(eq.contact1), exterior_derivative(eq.contact2)}, frame);
  SymbolicFiber out;
  out.rows[0] = rows[0];
  out.rows[1] = rows[1];
  auto ech = linalg::reduce(rows);
  out.generic_kernel_dim = 3 - ech.rank;
  out.loci = ech.loci;
  return out;
}

FiberDescriptor fiber_at(const EquationChart& eq, const RationalPoint& pt) {
  auto frame = equation_frame(eq);
  FiberDescriptor out;
  out.point = pt;
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& c : frame[i].components()) out.frame[i].push_back(c.eval(pt));
  }
  // the contact0 compatibility is structural; assert it exactly
  {
    auto rows0 = lambda2_rows({exterior_derivative(eq.contact0)}, frame);
    for (const auto& e : rows0[0])
      if (!(e.eval(pt) == 0))
        throw DegenerateError("d contact0 does not vanish on the frame at the point");
  }
  auto rows = lambda2_rows({exterior_derivative(eq.contact1), exterior_derivative(eq.contact2)}, frame);
  linalg::Matrix<Rat> m(2, std::vector<Rat>(3));
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 3; ++c) m[r][c] = rows[r][c].eval(pt);
  auto kernel = linalg::kernel_basis(m, 3);
  out.kernel_dim = static_cast<int>(kernel.size());
  for (const auto& v : kernel) {
    out.kernel_basis.push_back({v[0], v[1], v[2]});
    out.basis_transversal.push_back(v[0] != 0);
  }
  // transversal element: some kernel vector with nonzero e1^e2 slot;
  // non-transversal element: some nonzero kernel vector with zero slot
  for (const auto& v : kernel)
    if (v[0] != 0) out.has_transversal = true;
  if (out.kernel_dim >= 2) {
    out.has_nontransversal = true;  // the pencil always meets {c1 = 0}
  } else
    for (const auto& v : kernel)
      if (v[0] == 0) out.has_nontransversal = true;
  return out;
}

std::string to_string(TypeKind k) {
  switch (k) {
    case TypeKind::I: return "I";
    case TypeKind::II: return "II";
    case TypeKind::III: return "III";
    case TypeKind::IV: return "IV";
    case TypeKind::Degenerate: return "Degenerate";
  }
  return "?";
}

Classification classify_type(const EquationChart& eq, const RationalPoint& pt) {
  Classification out;
  SymbolicFiber sym = symbolic_fiber(eq);
  out.loci = sym.loci;
  out.pencil = symbol_pencil(eq.system);
  FiberDescriptor fiber = fiber_at(eq, pt);
  out.kernel_dim = fiber.kernel_dim;
  {
    Rat d = out.pencil.delta.eval(pt);
    out.delta_sign = d == 0 ? 0 : (d > 0 ? 1 : -1);
  }
  auto cauchy = cauchy_characteristics(eq.pfaff());
  out.cauchy_rank = cauchy.rank;

  if (fiber.kernel_dim != sym.generic_kernel_dim) {
    out.label = {TypeKind::Degenerate,
                 "integral-element kernel jumps at the point (generic dimension " +
                     std::to_string(sym.generic_kernel_dim) + ", pointwise " +
                     std::to_string(fiber.kernel_dim) + ")"};
  } else if (fiber.kernel_dim == 2) {
    out.label = {TypeKind::I, ""};
  } else if (fiber.kernel_dim == 1) {
    bool tr = fiber.basis_transversal.at(0);
    out.transversal = tr;
    if (!tr) {
      out.label = {TypeKind::IV, ""};
    } else if (out.delta_sign > 0) {
      out.label = {TypeKind::II, ""};
    } else if (out.delta_sign < 0) {
      out.label = {TypeKind::III, ""};
    } else {
      out.label = {TypeKind::Degenerate, "symbol pencil discriminant vanishes at the point"};
    }
  } else if (fiber.kernel_dim == 3) {
    out.label = {TypeKind::Degenerate, "both reduced curvatures vanish (integrable case)"};
  } else {
    out.label = {TypeKind::Degenerate, "no integral elements"};
  }
  out.cauchy_consistent = (out.label.kind == TypeKind::I) == (out.cauchy_rank == 1);
  return out;
}

TransversalFiber transversal_fiber(const EquationChart& eq, const RationalPoint& pt) {
  Classification c = classify_type(eq, pt);
  switch (c.label.kind) {
    case TypeKind::I: return TransversalFiber::line;
    case TypeKind::II:
    case TypeKind::III: return TransversalFiber::point;
    case TypeKind::IV: return TransversalFiber::empty;
    case TypeKind::Degenerate:
      throw DegenerateError("transversal fiber undefined at a degenerate point: " +
                            c.label.reason);
  }
  throw DomainError("unreachable");
}

int integral_fiber_kernel_dim(const PfaffSystem& s, const RationalPoint& pt) {
  if (s.rank() != 3)
    throw DomainError("integral fiber computation requires a rank-3 system");
  auto frame = dual_frame(s);
  std::vector<Form> ds;
  ds.reserve(s.generators.size());
  for (const auto& g : s.generators) ds.push_back(exterior_derivative(g));
  auto rows = lambda2_rows(ds, frame);
  linalg::Matrix<Rat> m(rows.size(), std::vector<Rat>(3));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < 3; ++c) m[r][c] = rows[r][c].eval(pt);
  return 3 - linalg::rank(m);
}

}  // namespace eds
