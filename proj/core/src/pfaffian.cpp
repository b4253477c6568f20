#include "eds/pfaffian.hpp"

#include <algorithm>

namespace eds {

PfaffSystem::PfaffSystem(Chart c, std::vector<Form> gens)
    : chart(std::move(c)), generators(std::move(gens)) {
  for (const auto& g : generators) {
    if (!(g.chart() == chart)) throw ChartMismatch("system generator on a different chart");
    if (g.degree() != 1) throw DomainError("system generators must be 1-forms");
  }
}

namespace {

linalg::Matrix<Expr> generator_rows(const PfaffSystem& s) {
  const int n = s.chart.dim();
  linalg::Matrix<Expr> rows(s.generators.size(),
                            std::vector<Expr>(static_cast<std::size_t>(n), Expr{}));
  for (std::size_t r = 0; r < s.generators.size(); ++r)
    for (const auto& [idx, c] : s.generators[r].terms())
      rows[r][static_cast<std::size_t>(idx[0])] = c;
  return rows;
}

linalg::Matrix<Expr> field_rows(const std::vector<VectorField>& fields) {
  linalg::Matrix<Expr> rows;
  rows.reserve(fields.size());
  for (const auto& f : fields) rows.push_back(f.components());
  return rows;
}

// Clears denominators and common content so reported generators and fields
// have polynomial coefficients.
std::vector<Expr> normalize_covector(std::vector<Expr> v) {
  Polynomial den = Polynomial::constant(Rat(1));
  for (const auto& e : v)
    if (!e.is_zero()) den = divide_exact(den * e.den(), gcd(den, e.den()));
  Polynomial content;
  std::vector<Polynomial> nums;
  nums.reserve(v.size());
  for (const auto& e : v) {
    Polynomial p = e.num() * divide_exact(den, e.den());
    if (!p.is_zero()) content = content.is_zero() ? normalize_primitive(p) : gcd(content, p);
    nums.push_back(std::move(p));
  }
  if (content.is_zero()) return v;
  std::vector<Expr> out;
  out.reserve(v.size());
  for (const auto& p : nums) out.push_back(Expr(divide_exact(p, content)));
  for (const auto& e : out) {
    if (e.is_zero()) continue;
    if (e.num().leading().coeff < 0)
      for (auto& x : out) x = -x;
    break;
  }
  return out;
}

// Scaling a spanning field changes nothing; keep components polynomial and
// content-free so bracket degrees stay bounded along the flag.
VectorField normalize_field(const VectorField& f) {
  return VectorField(f.chart(), normalize_covector(f.components()));
}

}  // namespace

std::vector<VectorField> dual_frame(const PfaffSystem& s) {
  auto rows = generator_rows(s);
  if (!rows.empty()) {
    auto ech = linalg::reduce(rows);
    if (ech.rank < static_cast<int>(s.generators.size()))
      throw DegenerateError("degenerate system generators",
                            ech.loci.empty() ? "" : ech.loci.front().to_string());
  }
  auto kernel = linalg::kernel_basis(rows, s.chart.dim());
  std::vector<VectorField> frame;
  frame.reserve(kernel.size());
  for (auto& v : kernel) frame.emplace_back(s.chart, std::move(v));
  return frame;
}

DerivedResult derived_system(const PfaffSystem& s) {
  CoframeReduction red(s.chart, s.generators);
  const int sz = static_cast<int>(s.generators.size());
  // reduced exterior derivatives of the generators
  std::vector<Form> w;
  w.reserve(s.generators.size());
  for (const auto& g : s.generators) w.push_back(red.reduce(exterior_derivative(g)));
  // linear conditions sum_i c_i * w_i = 0 over the expression field
  std::map<std::vector<int>, int> slots;
  for (const auto& f : w)
    for (const auto& [idx, c] : f.terms())
      slots.emplace(idx, static_cast<int>(slots.size()));
  linalg::Matrix<Expr> m(slots.size(), std::vector<Expr>(static_cast<std::size_t>(sz), Expr{}));
  for (int i = 0; i < sz; ++i)
    for (const auto& [idx, c] : w[static_cast<std::size_t>(i)].terms())
      m[static_cast<std::size_t>(slots[idx])][static_cast<std::size_t>(i)] = c;
  auto kernel = linalg::kernel_basis(m, sz);
  std::vector<Form> gens;
  for (auto& combo : kernel) {
    auto coeffs = normalize_covector(std::move(combo));
    Form g(s.chart, 1);
    for (int i = 0; i < sz; ++i) {
      if (coeffs[static_cast<std::size_t>(i)].is_zero()) continue;
      g = g + coeffs[static_cast<std::size_t>(i)] * s.generators[static_cast<std::size_t>(i)];
    }
    gens.push_back(std::move(g));
  }
  DerivedResult out;
  out.system = PfaffSystem(s.chart, std::move(gens));
  auto ech = linalg::reduce(m);
  out.loci = ech.loci;
  for (const auto& l : red.loci()) out.loci.push_back(l);
  return out;
}

namespace {

DerivedFlag derived_flag_impl(const PfaffSystem& s, int max_depth, FlagMode mode) {
  DerivedFlag flag;
  flag.mode = mode;
  if (max_depth <= 0) max_depth = s.chart.dim();
  auto frame = dual_frame(s);
  for (auto& f : frame) f = normalize_field(f);
  std::vector<VectorField> stage = frame;
  flag.ranks.push_back(static_cast<int>(stage.size()));
  flag.stage_frames.push_back(stage);
  while (flag.depth() < max_depth) {
    const std::vector<VectorField>& brackets_left =
        (mode == FlagMode::weak) ? frame : stage;
    std::vector<VectorField> candidates = stage;
    for (const auto& x : brackets_left)
      for (const auto& y : stage)
        candidates.push_back(normalize_field(lie_bracket(x, y)));
    auto chosen = linalg::independent_rows(field_rows(candidates), &flag.loci);
    std::vector<VectorField> next;
    next.reserve(chosen.size());
    for (int i : chosen)
      next.push_back(normalize_field(candidates[static_cast<std::size_t>(i)]));
    int r = static_cast<int>(next.size());
    if (r == flag.ranks.back()) {
      flag.stabilized = true;
      break;
    }
    flag.ranks.push_back(r);
    flag.stage_frames.push_back(std::move(next));
    stage = flag.stage_frames.back();
    if (r == s.chart.dim()) {
      flag.stabilized = true;
      break;
    }
  }
  return flag;
}

}  // namespace

DerivedFlag weak_derived_flag(const PfaffSystem& s, int max_depth) {
  return derived_flag_impl(s, max_depth, FlagMode::weak);
}

DerivedFlag strong_derived_flag(const PfaffSystem& s, int max_depth) {
  return derived_flag_impl(s, max_depth, FlagMode::strong);
}

CauchyResult cauchy_characteristics(const PfaffSystem& s) {
  CoframeReduction red(s.chart, s.generators);
  auto frame = dual_frame(s);
  const int r = static_cast<int>(frame.size());
  // conditions: sum_i c_i (X_i _| dg) reduces to 0 for every generator g
  std::vector<std::vector<Form>> contracted(s.generators.size());
  for (std::size_t gi = 0; gi < s.generators.size(); ++gi) {
    Form dg = exterior_derivative(s.generators[gi]);
    for (int i = 0; i < r; ++i)
      contracted[gi].push_back(red.reduce(interior_product(frame[static_cast<std::size_t>(i)], dg)));
  }
  // linear system over Expr in the frame coefficients
  std::vector<std::pair<std::size_t, std::vector<int>>> slots;
  std::map<std::pair<std::size_t, std::vector<int>>, std::size_t> slot_index;
  for (std::size_t gi = 0; gi < contracted.size(); ++gi)
    for (const auto& f : contracted[gi])
      for (const auto& [idx, c] : f.terms()) {
        auto key = std::make_pair(gi, idx);
        if (slot_index.emplace(key, slots.size()).second) slots.push_back(key);
      }
  linalg::Matrix<Expr> m(slots.size(), std::vector<Expr>(static_cast<std::size_t>(r), Expr{}));
  for (std::size_t gi = 0; gi < contracted.size(); ++gi)
    for (int i = 0; i < r; ++i)
      for (const auto& [idx, c] : contracted[gi][static_cast<std::size_t>(i)].terms())
        m[slot_index[{gi, idx}]][static_cast<std::size_t>(i)] = c;
  auto kernel = linalg::kernel_basis(m, r);
  CauchyResult out;
  out.rank = static_cast<int>(kernel.size());
  for (auto& combo : kernel) {
    // assemble the field and normalize its leading component to 1
    std::vector<Expr> comps(static_cast<std::size_t>(s.chart.dim()), Expr{});
    for (int i = 0; i < r; ++i) {
      if (combo[static_cast<std::size_t>(i)].is_zero()) continue;
      for (int j = 0; j < s.chart.dim(); ++j)
        comps[static_cast<std::size_t>(j)] =
            comps[static_cast<std::size_t>(j)] +
            combo[static_cast<std::size_t>(i)] * frame[static_cast<std::size_t>(i)].component(j);
    }
    Expr lead;
    for (const auto& c : comps)
      if (!c.is_zero()) {
        lead = c;
        break;
      }
    if (!lead.is_zero())
      for (auto& c : comps) c = c / lead;
    out.fields.emplace_back(s.chart, std::move(comps));
  }
  auto ech = linalg::reduce(m);
  out.loci = ech.loci;
  return out;
}

int rank_at(const std::vector<VectorField>& fields, const RationalPoint& pt) {
  if (fields.empty()) return 0;
  linalg::Matrix<Rat> rows;
  rows.reserve(fields.size());
  for (const auto& f : fields) {
    std::vector<Rat> row;
    row.reserve(f.components().size());
    for (const auto& c : f.components()) row.push_back(c.eval(pt));
    rows.push_back(std::move(row));
  }
  return linalg::rank(rows);
}

GrowthVector growth_at(const PfaffSystem& s, const RationalPoint& pt, int max_depth) {
  DerivedFlag flag = weak_derived_flag(s, max_depth);
  GrowthVector out;
  for (std::size_t k = 0; k < flag.stage_frames.size(); ++k) {
    int r = rank_at(flag.stage_frames[k], pt);
    if (r < flag.ranks[k])
      throw DegenerateError("point lies on a degeneracy locus of the flag",
                            flag.loci.empty() ? "" : flag.loci.front().to_string());
    out.ranks.push_back(r);
  }
  return out;
}

}  // namespace eds
