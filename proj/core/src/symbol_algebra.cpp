#include "eds/symbol_algebra.hpp"

#include <algorithm>

namespace eds {

Filtration::Filtration(std::vector<PfaffSystem> ss) : stages(std::move(ss)) {
  if (stages.empty()) throw DomainError("filtration needs at least one stage");
  const Chart& c = stages.front().chart;
  for (const auto& s : stages)
    if (!(s.chart == c)) throw ChartMismatch("filtration stages on different charts");
  for (std::size_t i = 1; i < stages.size(); ++i)
    if (stages[i].rank() <= stages[i - 1].rank())
      throw DomainError("filtration stages must strictly increase");
  if (!stages.back().generators.empty())
    throw DomainError("top filtration stage must be the full tangent bundle");
}

std::vector<int> Filtration::stage_ranks() const {
  std::vector<int> out;
  for (const auto& s : stages) out.push_back(s.rank());
  return out;
}

int GradedAlgebra::total_dim() const {
  int n = 0;
  for (int d : dims) n += d;
  return n;
}

int GradedAlgebra::grade_of(int index) const {
  int acc = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    acc += dims[k];
    if (index < acc) return -static_cast<int>(k) - 1;
  }
  throw DomainError("basis index out of range");
}

int GradedAlgebra::block_offset(int grade) const {
  int acc = 0;
  for (int k = 0; k < -grade - 1; ++k) acc += dims[static_cast<std::size_t>(k)];
  return acc;
}

std::vector<Rat> GradedAlgebra::bracket(int i, int j) const {
  if (i == j) return {};
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = table.find({i, j});
  if (it == table.end()) return {};
  std::vector<Rat> v = it->second;
  if (flip)
    for (auto& x : v) x = -x;
  return v;
}

namespace {

// full component vector of [X_i, X_j] padded to the whole algebra
std::vector<Rat> full_bracket(const GradedAlgebra& g, int i, int j) {
  std::vector<Rat> out(static_cast<std::size_t>(g.total_dim()), Rat(0));
  int gi = g.grade_of(i), gj = g.grade_of(j);
  int target = gi + gj;
  if (target < -static_cast<int>(g.dims.size())) return out;
  auto comps = g.bracket(i, j);
  if (comps.empty()) return out;
  int off = g.block_offset(target);
  for (std::size_t k = 0; k < comps.size(); ++k)
    out[static_cast<std::size_t>(off) + k] = comps[k];
  return out;
}

// bracket of a full vector living in one grade block with basis vector j
std::vector<Rat> bracket_with(const GradedAlgebra& g, const std::vector<Rat>& v, int j) {
  std::vector<Rat> out(static_cast<std::size_t>(g.total_dim()), Rat(0));
  for (int i = 0; i < g.total_dim(); ++i) {
    if (v[static_cast<std::size_t>(i)] == 0) continue;
    auto b = full_bracket(g, i, j);
    for (int k = 0; k < g.total_dim(); ++k)
      out[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k)];
  }
  return out;
}

}  // namespace

bool GradedAlgebra::jacobi_ok() const {
  const int n = total_dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::vector<Rat> sum(static_cast<std::size_t>(n), Rat(0));
        auto add = [&](const std::vector<Rat>& inner, int outer, int sign) {
          auto term = bracket_with(*this, inner, outer);
          for (int m = 0; m < n; ++m)
            sum[static_cast<std::size_t>(m)] += sign * term[static_cast<std::size_t>(m)];
        };
        // [[i,j],k] + [[j,k],i] + [[k,i],j] = 0; use [[x,y],z] = -[z,[x,y]]
        add(full_bracket(*this, i, j), k, 1);
        add(full_bracket(*this, j, k), i, 1);
        add(full_bracket(*this, k, i), j, 1);
        for (const auto& x : sum)
          if (x != 0) return false;
      }
  return true;
}

GradedAlgebra graded_symbol(const Filtration& f, const RationalPoint& pt,
                            const std::vector<VectorField>& frame) {
  const Chart& chart = f.stages.front().chart;
  const int n = chart.dim();
  if (static_cast<int>(frame.size()) != n)
    throw DomainError("frame size must match the chart dimension");
  if (f.stages.back().rank() != n)
    throw DomainError("filtration does not exhaust the tangent bundle");
  GradedAlgebra g;
  {
    int prev = 0;
    for (const auto& s : f.stages) {
      g.dims.push_back(s.rank() - prev);
      prev = s.rank();
    }
  }
  // adaptation: the first rank(F^{-k}) fields must be annihilated by the
  // stage generators (exactly, as expressions)
  {
    int upto = 0;
    for (std::size_t k = 0; k < f.stages.size(); ++k) {
      upto = f.stages[k].rank();
      for (int i = 0; i < upto; ++i)
        for (const auto& gen : f.stages[k].generators)
          if (!evaluate(gen, frame[static_cast<std::size_t>(i)]).is_zero())
            throw DomainError("frame is not adapted to the filtration at stage " +
                              std::to_string(k + 1));
    }
  }
  // frame independence at the point
  {
    if (rank_at(frame, pt) != n)
      throw DegenerateError("frame degenerates at the point");
  }
  // dual coframe over the expression field
  linalg::Matrix<Expr> a(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          frame[static_cast<std::size_t>(i)].component(j);
  // columns of a are the frame fields; theta_k rows solve theta_k(X_i) = delta
  linalg::Matrix<Expr> theta = linalg::inverse(a);
  std::vector<Form> coframe;
  for (int k = 0; k < n; ++k) {
    Form t(chart, 1);
    for (int j = 0; j < n; ++j) t.add_term({j}, theta[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    coframe.push_back(std::move(t));
  }
  std::vector<Form> dcoframe;
  dcoframe.reserve(coframe.size());
  for (const auto& t : coframe) dcoframe.push_back(exterior_derivative(t));

  const int mu = static_cast<int>(g.dims.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int target = g.grade_of(i) + g.grade_of(j);
      // both computation routes: -d(theta_k)(X_i, X_j) and the pairing of
      // theta_k with the direct Lie bracket; they must agree exactly
      VectorField direct = lie_bracket(frame[static_cast<std::size_t>(i)],
                                       frame[static_cast<std::size_t>(j)]);
      auto component = [&](int k) {
        Rat c = -evaluate(dcoframe[static_cast<std::size_t>(k)],
                          frame[static_cast<std::size_t>(i)],
                          frame[static_cast<std::size_t>(j)])
                     .eval(pt);
        Rat c2 = evaluate(coframe[static_cast<std::size_t>(k)], direct).eval(pt);
        if (c != c2)
          throw DomainError("structure-constant routes disagree at [" +
                            std::to_string(i) + "," + std::to_string(j) + "]");
        return c;
      };
      // components below the filtration bottom would violate (M2)
      for (int k = 0; k < n; ++k) {
        int gk = g.grade_of(k);
        if (gk >= target) continue;  // allowed (inside F^{target})
        if (component(k) != 0)
          throw DomainError("bracket escapes the filtration: [" + std::to_string(i) +
                            "," + std::to_string(j) + "] has a grade " +
                            std::to_string(gk) + " component");
      }
      if (target < -mu) continue;  // graded projection is zero
      int off = g.block_offset(target);
      int len = g.dims[static_cast<std::size_t>(-target - 1)];
      std::vector<Rat> comps(static_cast<std::size_t>(len), Rat(0));
      bool nonzero = false;
      for (int k = 0; k < len; ++k) {
        Rat c = component(off + k);
        comps[static_cast<std::size_t>(k)] = c;
        nonzero = nonzero || c != 0;
      }
      if (nonzero) g.table[{i, j}] = std::move(comps);
    }
  }
  return g;
}

// Every nonzero lower piece must be reached by a bracket of the piece
// above it with the grade -1 block. (Full spanning [g_p, g_-1] = g_{p-1}
// holds for symbols of weakly regular systems but not for the worked
// filtered-manifold models, whose [g_-2, g_-1] is a line inside g_-3.)
bool generating_check(const GradedAlgebra& g) {
  const int n1 = g.dims.empty() ? 0 : g.dims[0];
  for (std::size_t k = 1; k < g.dims.size(); ++k) {
    int target = -static_cast<int>(k) - 1;
    int len = g.dims[k];
    if (len == 0) continue;
    int off = g.block_offset(target);
    int source_off = g.block_offset(target + 1);
    int source_len = g.dims[k - 1];
    bool reached = false;
    for (int i = 0; i < source_len && !reached; ++i) {
      for (int j = 0; j < n1 && !reached; ++j) {
        auto b = full_bracket(g, source_off + i, j);
        for (int m = 0; m < len; ++m)
          if (b[static_cast<std::size_t>(off + m)] != 0) {
            reached = true;
            break;
          }
      }
    }
    if (!reached) return false;
  }
  return true;
}

std::string to_string(SymbolModel m) {
  switch (m) {
    case SymbolModel::f0: return "f0";
    case SymbolModel::f1: return "f1";
    case SymbolModel::neither: return "neither";
  }
  return "?";
}

GradedAlgebra model_f0() {
  // basis: grade -1: (X_omega1, X_omega2, X_a) = 0,1,2; grade -2: X_pi = 3;
  // grade -3: (X_1, X_2) = 4,5; grade -4: X_0 = 6
  GradedAlgebra g;
  g.dims = {3, 1, 2, 1};
  g.table[{1, 2}] = {Rat(-1)};          // [X_omega2, X_a] = -X_pi
  g.table[{1, 3}] = {Rat(0), Rat(-1)};  // [X_omega2, X_pi] = -X_2
  g.table[{0, 4}] = {Rat(-1)};          // [X_omega1, X_1] = -X_0
  g.table[{1, 5}] = {Rat(-1)};          // [X_omega2, X_2] = -X_0
  return g;
}

GradedAlgebra model_f1() {
  // basis: grade -1: (X_omega1, X_pi, X_b) = 0,1,2; grade -2: X_omega2 = 3;
  // grade -3: (X_1, X_2) = 4,5; grade -4: X_0 = 6
  GradedAlgebra g;
  g.dims = {3, 1, 2, 1};
  g.table[{1, 2}] = {Rat(-1)};          // [X_pi, X_b] = -X_omega2
  g.table[{1, 3}] = {Rat(0), Rat(1)};   // [X_pi, X_omega2] = X_2
  g.table[{0, 4}] = {Rat(-1)};          // [X_omega1, X_1] = -X_0
  return g;
}

namespace {

bool tables_equal_with_flips(const GradedAlgebra& a, const GradedAlgebra& b,
                             const std::vector<int>& eps) {
  const int n = a.total_dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto va = a.bracket(i, j);
      auto vb = b.bracket(i, j);
      int target = a.grade_of(i) + a.grade_of(j);
      if (target < -static_cast<int>(a.dims.size())) continue;
      int len = a.dims[static_cast<std::size_t>(-target - 1)];
      int off = a.block_offset(target);
      for (int k = 0; k < len; ++k) {
        Rat xa = va.empty() ? Rat(0) : va[static_cast<std::size_t>(k)];
        Rat xb = vb.empty() ? Rat(0) : vb[static_cast<std::size_t>(k)];
        // flipped basis: X'_i = eps_i X_i gives c' = eps_i eps_j eps_k c
        Rat scaled = xa * eps[static_cast<std::size_t>(i)] * eps[static_cast<std::size_t>(j)] *
                     eps[static_cast<std::size_t>(off + k)];
        if (scaled != xb) return false;
      }
    }
  return true;
}

}  // namespace

ModelMatch match_model(const GradedAlgebra& g) {
  ModelMatch out;
  if (g.dims != std::vector<int>{3, 1, 2, 1})
    throw DomainError("model match requires graded dimensions (3, 1, 2, 1)");
  // k := dim { Y in g_{-3} : [Y, g_{-1}] = 0 }
  const int off3 = g.block_offset(-3);
  const int off4 = g.block_offset(-4);
  linalg::Matrix<Rat> m;  // rows: conditions over Y = (y_1, y_2)
  for (int j = 0; j < g.dims[0]; ++j) {
    std::vector<Rat> row(2);
    for (int i = 0; i < 2; ++i) {
      auto b = full_bracket(g, off3 + i, j);
      row[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(off4)];
    }
    m.push_back(std::move(row));
  }
  out.k_invariant = 2 - linalg::rank(m);
  if (!generating_check(g)) {
    out.model = SymbolModel::neither;
    return out;
  }
  if (out.k_invariant == 0)
    out.model = SymbolModel::f0;
  else if (out.k_invariant == 1)
    out.model = SymbolModel::f1;
  else
    out.model = SymbolModel::neither;
  // exact table comparison up to generator sign flips
  if (out.model != SymbolModel::neither) {
    GradedAlgebra target = out.model == SymbolModel::f0 ? model_f0() : model_f1();
    const int n = g.total_dim();
    for (int mask = 0; mask < (1 << n) && !out.table_match; ++mask) {
      std::vector<int> eps(static_cast<std::size_t>(n), 1);
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) eps[static_cast<std::size_t>(i)] = -1;
      if (tables_equal_with_flips(g, target, eps)) {
        out.table_match = true;
        for (int i = 0; i < n; ++i)
          if (eps[static_cast<std::size_t>(i)] < 0) out.sign_flips.push_back(i);
      }
    }
  }
  return out;
}

}  // namespace eds
