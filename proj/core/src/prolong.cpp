#include "eds/prolong.hpp"

namespace eds {

namespace {

Form lift_form(const Form& f, const Chart& target) {
  Form out(target, f.degree());
  for (const auto& [idx, c] : f.terms()) {
    std::vector<int> lifted;
    lifted.reserve(idx.size());
    for (int i : idx) {
      int j = target.index_of(f.chart().var(i));
      if (j < 0) throw ChartMismatch("lift target misses a coordinate");
      lifted.push_back(j);
    }
    out.add_term(std::move(lifted), c);
  }
  return out;
}

// Extracts the 1-forms alpha_k from the slots slot^complement of the
// coframe expansion of a 2-form: w = sum_k alpha_k ^ slot_k + (rest).
Form slot_cofactor(const std::map<std::vector<int>, Expr>& comps,
                   const CoframeReduction& red, int slot, const Chart& chart) {
  const int s = static_cast<int>(red.generators().size());
  Form out(chart, 1);
  for (const auto& [slots, c] : comps) {
    // degree-2 keys
    int a = slots[0], b = slots[1];
    int other;
    Expr coeff;
    if (a == slot && b >= s) {
      other = b;
      coeff = -c;  // slot ^ other = -(other ^ slot)
    } else if (b == slot && a >= s) {
      other = a;
      coeff = c;
    } else {
      continue;
    }
    out.add_term({red.complement().at(static_cast<std::size_t>(other - s))}, coeff);
  }
  return out;
}

}  // namespace

AdaptedCoframe adapted_coframe(const EquationChart& eq) {
  const Chart& c = eq.chart;
  std::vector<Form> ideal = {eq.contact0, eq.contact1, eq.contact2};
  CoframeReduction red(c, ideal);

  // combination with closed reduced derivative
  Form w1 = red.reduce(exterior_derivative(eq.contact1));
  Form w2 = red.reduce(exterior_derivative(eq.contact2));
  std::map<std::vector<int>, int> slots;
  for (const Form* f : {&w1, &w2})
    for (const auto& [idx, coef] : f->terms()) slots.emplace(idx, static_cast<int>(slots.size()));
  linalg::Matrix<Expr> m(slots.size(), std::vector<Expr>(2, Expr{}));
  for (const auto& [idx, coef] : w1.terms()) m[static_cast<std::size_t>(slots[idx])][0] = coef;
  for (const auto& [idx, coef] : w2.terms()) m[static_cast<std::size_t>(slots[idx])][1] = coef;
  auto kernel = linalg::kernel_basis(m, 2);
  if (kernel.size() != 1)
    throw DegenerateError("system is not of type I: closed combination space has dimension " +
                          std::to_string(kernel.size()));
  AdaptedCoframe out;
  out.contact0 = eq.contact0;
  out.combo_c1 = kernel[0][0];
  out.combo_c2 = kernel[0][1];
  if (out.combo_c1.is_zero() && out.combo_c2.is_zero())
    throw DegenerateError("degenerate closed combination");
  // scale so the first nonzero coefficient is 1
  {
    Expr lead = out.combo_c1.is_zero() ? out.combo_c2 : out.combo_c1;
    out.combo_c1 = out.combo_c1 / lead;
    out.combo_c2 = out.combo_c2 / lead;
  }
  out.hat1 = out.combo_c1 * eq.contact1 + out.combo_c2 * eq.contact2;
  out.hat2 = out.combo_c1.is_zero() ? eq.contact1 : eq.contact2;

  // omega1, omega2 from the d contact0 congruence, read off in the
  // completed coframe {contact0, hat1, hat2, complement}
  CoframeReduction hat_red(c, {out.contact0, out.hat1, out.hat2});
  auto comps0 = hat_red.coframe_components(exterior_derivative(eq.contact0));
  Form omega1 = slot_cofactor(comps0, hat_red, 1, c);
  Form omega2 = slot_cofactor(comps0, hat_red, 2, c);
  if (omega1.is_zero() || omega2.is_zero())
    throw DegenerateError("d contact0 congruence does not determine the horizontal coframe");
  out.omega1 = omega1;
  out.omega2 = omega2;
  // the residual must be quadratic in the ideal forms
  {
    Form residual = exterior_derivative(eq.contact0) - wedge(omega1, out.hat1) -
                    wedge(omega2, out.hat2);
    for (const auto& [slotsr, coef] : hat_red.coframe_components(residual)) {
      bool allowed = slotsr[0] == 0 || (slotsr[0] < 3 && slotsr[1] < 3);
      if (!allowed)
        throw DegenerateError("d contact0 residual escapes the ideal square");
    }
  }
  // factor d hat2 = omega2 ^ pi modulo the ideal
  Form omega = hat_red.reduce(exterior_derivative(out.hat2));
  if (omega.is_zero())
    throw DegenerateError("d hat2 vanishes modulo the ideal; no fiber direction");
  // pi via contraction with a deterministic direction u with omega2(u) != 0
  int u = -1;
  for (int i = 0; i < c.dim(); ++i) {
    Expr pair = omega2.coefficient({i});
    if (!pair.is_zero() && pair.is_constant()) {
      u = i;
      break;
    }
  }
  if (u < 0)
    for (int i = 0; i < c.dim(); ++i)
      if (!omega2.coefficient({i}).is_zero()) {
        u = i;
        break;
      }
  Expr denom = omega2.coefficient({u});
  Form pi = (Expr(1) / denom) * interior_product(VectorField::coordinate(c, u), omega);
  if (!(wedge(omega2, pi) == omega))
    throw DegenerateError("d hat2 does not factor through omega2");
  out.pi = pi;
  out.pi_vertical_pairing = evaluate(pi, eq.vertical);
  if (out.pi_vertical_pairing.is_zero())
    throw DegenerateError("pi pairs to zero with the vertical direction");
  for (const auto& l : red.loci()) out.loci.push_back(l);
  for (const auto& l : hat_red.loci()) out.loci.push_back(l);
  return out;
}

namespace {

// One prolongation step shared by the first prolongation and the tower:
// extends the chart by a fiber coordinate, adds theta, and works out the
// structure data (omega2', pi', f) of the new chart.
ProlongChart prolong_step(const Chart& base, const std::vector<Form>& gens,
                          const Form& omega1, const Form& omega2, const Form& pi,
                          bool transversal, const std::string& fiber) {
  ProlongChart out;
  out.transversal = transversal;
  out.fiber_var = fiber;
  out.chart = base.extended(fiber);
  const Chart& c7 = out.chart;
  for (const auto& g : gens) out.generators.push_back(lift_form(g, c7));
  Form w2 = lift_form(omega2, c7);
  Form pl = lift_form(pi, c7);
  Expr a = Expr::variable(fiber);
  out.theta = transversal ? pl - a * w2 : w2 - a * pl;
  out.generators.push_back(out.theta);
  out.omega1 = lift_form(omega1, c7);
  out.vertical = VectorField::coordinate(c7, c7.index_of(var_intern(fiber)));

  // structure data: reduce d theta modulo the new ideal and factor
  CoframeReduction red(c7, out.generators);
  Form big = red.reduce(exterior_derivative(out.theta));
  if (big.is_zero())
    throw DegenerateError("d theta reduces to zero; prolongation degenerates");
  Form w = -interior_product(out.vertical, big);
  if (w.is_zero()) throw DegenerateError("prolonged fiber direction degenerates");
  int u = -1;
  for (int i = 0; i < c7.dim(); ++i) {
    Expr pair = w.coefficient({i});
    if (!pair.is_zero() && pair.is_constant()) {
      u = i;
      break;
    }
  }
  if (u < 0)
    for (int i = 0; i < c7.dim(); ++i)
      if (!w.coefficient({i}).is_zero()) {
        u = i;
        break;
      }
  Expr denom = w.coefficient({u});
  Form rho = (Expr(1) / denom) * interior_product(VectorField::coordinate(c7, u), big);
  if (!(wedge(w, rho) == big))
    throw DegenerateError("d theta is not decomposable modulo the ideal");
  out.omega2 = w;
  out.pi_fiber = rho;
  // f (and any omega2 component) from pi_fiber = d fiber + f*omega1 + g*omega2
  {
    Form dfiber = Form::differential(c7, c7.index_of(var_intern(fiber)));
    Form rest = rho - dfiber;
    // solve rest = f*omega1 + g*omega2 componentwise
    linalg::Matrix<Expr> m(static_cast<std::size_t>(c7.dim()), std::vector<Expr>(2, Expr{}));
    std::vector<Expr> rhs(static_cast<std::size_t>(c7.dim()), Expr{});
    for (int i = 0; i < c7.dim(); ++i) {
      m[static_cast<std::size_t>(i)][0] = out.omega1.coefficient({i});
      m[static_cast<std::size_t>(i)][1] = w.coefficient({i});
      rhs[static_cast<std::size_t>(i)] = rest.coefficient({i});
    }
    auto sol = linalg::solve(m, rhs);
    if (!sol)
      throw DegenerateError("pi_fiber does not have the d(fiber) + f*omega1 shape");
    out.f_expr = (*sol)[0];
    out.g_expr = (*sol)[1];
  }
  return out;
}

}  // namespace

Prolongation prolong(const EquationChart& eq, const RationalPoint& base_pt,
                     const std::string& fiber_suffix) {
  Prolongation out;
  Classification cls = classify_type(eq, base_pt);
  out.base_type = cls.label.kind;
  if (cls.label.kind == TypeKind::Degenerate)
    throw DegenerateError("cannot prolong at a degenerate point: " + cls.label.reason);
  if (cls.label.kind != TypeKind::I) {
    TrivialFiberSummary s;
    s.type = cls.label.kind;
    s.transversal = cls.transversal.value_or(false);
    out.trivial = s;
    return out;
  }
  AdaptedCoframe co = adapted_coframe(eq);
  std::vector<Form> gens = {co.contact0, co.hat1, co.hat2};
  std::string va = "a" + std::string(fiber_suffix);
  std::string vb = "b" + std::string(fiber_suffix);
  ProlongChart sigma0 =
      prolong_step(eq.chart, gens, co.omega1, co.omega2, co.pi, true, va);
  ProlongChart sigma1 =
      prolong_step(eq.chart, gens, co.omega1, co.omega2, co.pi, false, vb);
  // transition (v, a) -> (v, 1/a) between the two fiber coordinates
  std::vector<Expr> fwd, bwd;
  for (int i = 0; i < eq.chart.dim(); ++i) {
    fwd.push_back(Expr::variable(eq.chart.coord(i)));
    bwd.push_back(Expr::variable(eq.chart.coord(i)));
  }
  fwd.push_back(Expr(1) / Expr::variable(va));
  bwd.push_back(Expr(1) / Expr::variable(vb));
  Transition t;
  t.forward = SmoothMap(sigma0.chart, sigma1.chart, std::move(fwd));
  t.backward = SmoothMap(sigma1.chart, sigma0.chart, std::move(bwd));
  t.domain = va + " != 0";
  out.charts = std::make_pair(std::move(sigma0), std::move(sigma1));
  out.transition = std::move(t);
  return out;
}

TransitionReport transition_check(const ProlongChart& transversal,
                                  const ProlongChart& nontransversal,
                                  const Transition& t) {
  TransitionReport rep;
  CoframeReduction source(transversal.chart, transversal.generators);
  for (const auto& g : nontransversal.generators) {
    Form pulled = pullback(t.forward, g);
    Form residue = source.reduce(pulled);
    if (!residue.is_zero()) {
      rep.generators_closed = false;
      rep.residues.push_back(residue.to_string());
    }
  }
  CoframeReduction target(nontransversal.chart, nontransversal.generators);
  for (const auto& g : transversal.generators) {
    Form pulled = pullback(t.backward, g);
    Form residue = target.reduce(pulled);
    if (!residue.is_zero()) {
      rep.generators_closed = false;
      rep.residues.push_back(residue.to_string());
    }
  }
  SmoothMap round = compose(t.backward, t.forward);
  rep.composite_identity = round == SmoothMap::identity(transversal.chart);
  return rep;
}

Stratum stratify(const ProlongChart& chart, const RationalPoint& pt) {
  // the tautological plane contains the vertical base direction exactly
  // when theta kills it, i.e. on the nontransversal chart at fiber = 0
  Expr theta_on_vertical;
  {
    // the base vertical direction is the chart coordinate dual to pi's
    // unit pairing; equivalently evaluate theta on the base fiber field,
    // which is the last base coordinate before the new fiber variable
    const Chart& c = chart.chart;
    int base_fiber = c.dim() - 2;  // base charts end with their own fiber coordinate
    VectorField v = VectorField::coordinate(c, base_fiber);
    theta_on_vertical = evaluate(chart.theta, v);
  }
  Rat value = theta_on_vertical.eval(pt);
  return value == 0 ? Stratum::sigma1 : Stratum::sigma0;
}

std::vector<TowerLevel> tower(const EquationChart& eq, int depth,
                              const RationalPoint& base_pt, int samples) {
  if (depth < 1) throw DomainError("tower depth must be at least 1");
  std::vector<TowerLevel> levels;
  Prolongation first = prolong(eq, base_pt);
  if (!first.charts)
    throw DegenerateError("tower requires a type I system");
  TowerLevel level;
  level.charts.push_back(first.charts->first);
  level.charts.push_back(first.charts->second);
  levels.push_back(std::move(level));
  for (int k = 2; k <= depth; ++k) {
    TowerLevel next;
    int idx = 0;
    for (const auto& chart : levels.back().charts) {
      std::string suffix = std::to_string(k) + "_" + std::to_string(idx++);
      next.charts.push_back(prolong_step(chart.chart, chart.generators, chart.omega1,
                                         chart.omega2, chart.pi_fiber, true,
                                         "a" + suffix));
      next.charts.push_back(prolong_step(chart.chart, chart.generators, chart.omega1,
                                         chart.omega2, chart.pi_fiber, false,
                                         "b" + suffix));
    }
    levels.push_back(std::move(next));
  }
  // sample the integral-element fibers at every level
  for (auto& level_ref : levels) {
    for (const auto& chart : level_ref.charts) {
      std::vector<int> dims;
      for (int i = 0; i < samples; ++i) {
        RationalPoint pt;
        for (int j = 0; j < chart.chart.dim(); ++j) {
          VarId v = chart.chart.var(j);
          if (base_pt.has(v)) {
            pt.values[v] = base_pt.at(v);
          } else {
            pt.values[v] = Rat(i + 1, 2);  // deterministic fiber samples
          }
        }
        dims.push_back(integral_fiber_kernel_dim(chart.pfaff(), pt));
      }
      level_ref.fiber_kernel_dims.push_back(std::move(dims));
    }
  }
  return levels;
}

}  // namespace eds
