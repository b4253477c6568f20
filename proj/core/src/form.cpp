#include "eds/form.hpp"

#include <algorithm>
#include <sstream>

namespace eds {

Chart::Chart(std::vector<std::string> coords) : names_(std::move(coords)) {
  vars_.reserve(names_.size());
  for (const auto& n : names_) vars_.push_back(var_intern(n));
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j])
        throw DomainError("chart coordinates must be pairwise distinct: '" + names_[i] + "'");
  if (names_.empty()) throw DomainError("chart must have at least one coordinate");
}

int Chart::index_of(VarId v) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == v) return static_cast<int>(i);
  return -1;
}

Chart Chart::extended(const std::string& extra) const {
  std::vector<std::string> coords = names_;
  coords.push_back(extra);
  return Chart(std::move(coords));
}

RationalPoint chart_point(const Chart& chart, const std::vector<Rat>& values) {
  if (static_cast<int>(values.size()) != chart.dim())
    throw DomainError("point value count does not match chart dimension");
  RationalPoint pt;
  for (int i = 0; i < chart.dim(); ++i) pt.values[chart.var(i)] = values[static_cast<std::size_t>(i)];
  return pt;
}

namespace {

void require_same_chart(const Chart& a, const Chart& b, const char* op) {
  if (!(a == b)) throw ChartMismatch(std::string(op) + ": operands live on different charts");
}

// Sorts indices, returns the permutation sign, or 0 on a repeat.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && idx[j - 1] > idx[j]) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
      --j;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

}  // namespace

Form Form::function(Chart chart, Expr value) {
  Form f(std::move(chart), 0);
  f.add_term({}, value);
  return f;
}

Form Form::differential(const Chart& chart, int coord) {
  Form f(chart, 1);
  f.add_term({coord}, Expr(1));
  return f;
}

Form Form::differential(const Chart& chart, std::string_view coord) {
  int i = chart.index_of(var_intern(coord));
  if (i < 0) throw DomainError("coordinate '" + std::string(coord) + "' is not on the chart");
  return differential(chart, i);
}

Expr Form::coefficient(const std::vector<int>& indices) const {
  auto it = terms_.find(indices);
  return it == terms_.end() ? Expr{} : it->second;
}

void Form::add_term(std::vector<int> indices, const Expr& c) {
  if (static_cast<int>(indices.size()) != degree_)
    throw DomainError("index tuple does not match form degree");
  if (c.is_zero()) return;
  for (int i : indices)
    if (i < 0 || i >= chart_.dim()) throw DomainError("form index out of chart range");
  int sign = sort_sign(indices);
  if (sign == 0) return;
  Expr add = sign > 0 ? c : -c;
  auto it = terms_.find(indices);
  if (it == terms_.end()) {
    terms_.emplace(std::move(indices), add);
  } else {
    it->second = it->second + add;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")";
    for (int i : idx) out << "*d" << chart_.coord(i);
  }
  return out.str();
}

Form operator+(const Form& a, const Form& b) {
  require_same_chart(a.chart(), b.chart(), "form addition");
  if (a.degree() != b.degree()) throw DomainError("form degrees differ in addition");
  Form out(a.chart(), a.degree());
  for (const auto& [idx, c] : a.terms()) out.add_term(idx, c);
  for (const auto& [idx, c] : b.terms()) out.add_term(idx, c);
  return out;
}

Form operator-(const Form& a) {
  Form out(a.chart(), a.degree());
  for (const auto& [idx, c] : a.terms()) out.add_term(idx, -c);
  return out;
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator*(const Expr& c, const Form& a) {
  Form out(a.chart(), a.degree());
  for (const auto& [idx, k] : a.terms()) out.add_term(idx, c * k);
  return out;
}

VectorField::VectorField(Chart chart, std::vector<Expr> components)
    : chart_(std::move(chart)), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != chart_.dim())
    throw DomainError("vector field component count does not match chart dimension");
}

VectorField VectorField::coordinate(const Chart& chart, int coord) {
  std::vector<Expr> comps(static_cast<std::size_t>(chart.dim()), Expr{});
  comps.at(static_cast<std::size_t>(coord)) = Expr(1);
  return VectorField(chart, std::move(comps));
}

Expr VectorField::apply(const Expr& f) const {
  Expr out;
  for (int i = 0; i < chart_.dim(); ++i) {
    const Expr& ci = comps_[static_cast<std::size_t>(i)];
    if (ci.is_zero()) continue;
    out = out + ci * f.derivative(chart_.var(i));
  }
  return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart(), b.chart(), "vector field addition");
  std::vector<Expr> comps;
  for (std::size_t i = 0; i < a.components().size(); ++i)
    comps.push_back(a.components()[i] + b.components()[i]);
  return VectorField(a.chart(), std::move(comps));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart(), b.chart(), "vector field subtraction");
  std::vector<Expr> comps;
  for (std::size_t i = 0; i < a.components().size(); ++i)
    comps.push_back(a.components()[i] - b.components()[i]);
  return VectorField(a.chart(), std::move(comps));
}

VectorField operator*(const Expr& c, const VectorField& a) {
  std::vector<Expr> comps;
  for (const auto& x : a.components()) comps.push_back(c * x);
  return VectorField(a.chart(), std::move(comps));
}

SmoothMap::SmoothMap(Chart source, Chart target, std::vector<Expr> components)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != target_.dim())
    throw DomainError("map component count does not match target dimension");
}

SmoothMap SmoothMap::identity(const Chart& chart) {
  std::vector<Expr> comps;
  for (int i = 0; i < chart.dim(); ++i) comps.push_back(Expr::variable(chart.coord(i)));
  return SmoothMap(chart, chart, std::move(comps));
}

Expr SmoothMap::pull_function(const Expr& f) const {
  std::map<VarId, Expr> binds;
  for (int i = 0; i < target_.dim(); ++i) binds[target_.var(i)] = comps_[static_cast<std::size_t>(i)];
  return f.substitute(binds);
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
  if (!(outer.source() == inner.target()))
    throw ChartMismatch("map composition: inner target differs from outer source");
  std::vector<Expr> comps;
  for (const auto& c : outer.components()) comps.push_back(inner.pull_function(c));
  return SmoothMap(inner.source(), outer.target(), std::move(comps));
}

Form wedge(const Form& a, const Form& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  Form out(a.chart(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      std::vector<int> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(std::move(idx), ca * cb);
    }
  }
  return out;
}

Form exterior_derivative(const Form& a) {
  Form out(a.chart(), a.degree() + 1);
  const Chart& chart = a.chart();
  for (const auto& [idx, c] : a.terms()) {
    for (int i = 0; i < chart.dim(); ++i) {
      Expr dc = c.derivative(chart.var(i));
      if (dc.is_zero()) continue;
      std::vector<int> widx;
      widx.reserve(idx.size() + 1);
      widx.push_back(i);
      widx.insert(widx.end(), idx.begin(), idx.end());
      out.add_term(std::move(widx), dc);
    }
  }
  return out;
}

Form interior_product(const VectorField& x, const Form& a) {
  require_same_chart(x.chart(), a.chart(), "interior product");
  if (a.degree() < 1) throw DomainError("interior product requires degree >= 1");
  Form out(a.chart(), a.degree() - 1);
  for (const auto& [idx, c] : a.terms()) {
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const Expr& comp = x.component(idx[pos]);
      if (comp.is_zero()) continue;
      std::vector<int> ridx;
      ridx.reserve(idx.size() - 1);
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (j != pos) ridx.push_back(idx[j]);
      Expr coeff = c * comp;
      if (pos % 2 == 1) coeff = -coeff;
      out.add_term(std::move(ridx), coeff);
    }
  }
  return out;
}

Form pullback(const SmoothMap& map, const Form& a) {
  if (!(a.chart() == map.target()))
    throw ChartMismatch("pullback: form does not live on the map target");
  const Chart& src = map.source();
  // differentials of the components
  std::vector<Form> dcomp;
  dcomp.reserve(map.components().size());
  for (const auto& comp : map.components())
    dcomp.push_back(exterior_derivative(Form::function(src, comp)));
  Form out(src, a.degree());
  for (const auto& [idx, c] : a.terms()) {
    Form acc = Form::function(src, map.pull_function(c));
    for (int i : idx) acc = wedge(acc, dcomp[static_cast<std::size_t>(i)]);
    out = out + acc;
  }
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart(), "Lie bracket");
  std::vector<Expr> comps;
  for (std::size_t i = 0; i < y.components().size(); ++i)
    comps.push_back(x.apply(y.components()[i]) - y.apply(x.components()[i]));
  return VectorField(x.chart(), std::move(comps));
}

Expr evaluate(const Form& a, std::span<const VectorField> fields) {
  if (static_cast<int>(fields.size()) != a.degree())
    throw DomainError("field count does not match form degree");
  for (const auto& f : fields) require_same_chart(f.chart(), a.chart(), "form evaluation");
  if (a.degree() == 0) return a.coefficient({});
  Expr out;
  std::vector<int> perm(fields.size());
  for (const auto& [idx, c] : a.terms()) {
    // determinant of pairings over permutations (degree is small)
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    Expr det;
    int parity;
    std::vector<int> p(perm);
    std::sort(p.begin(), p.end());
    do {
      parity = 1;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
          if (p[i] > p[j]) parity = -parity;
      Expr prod(1);
      for (std::size_t i = 0; i < p.size(); ++i)
        prod = prod * fields[static_cast<std::size_t>(p[i])].component(idx[i]);
      det = (parity > 0) ? det + prod : det - prod;
    } while (std::next_permutation(p.begin(), p.end()));
    out = out + c * det;
  }
  return out;
}

Expr evaluate(const Form& a, const VectorField& x) {
  const VectorField fs[] = {x};
  return evaluate(a, fs);
}

Expr evaluate(const Form& a, const VectorField& x, const VectorField& y) {
  const VectorField fs[] = {x, y};
  return evaluate(a, fs);
}

CoframeReduction::CoframeReduction(Chart chart, std::vector<Form> generators)
    : chart_(std::move(chart)), generators_(std::move(generators)) {
  const int n = chart_.dim();
  const int s = static_cast<int>(generators_.size());
  for (const auto& g : generators_) {
    if (!(g.chart() == chart_)) throw ChartMismatch("ideal generator on a different chart");
    if (g.degree() != 1) throw DomainError("ideal generators must be 1-forms");
  }
  // generator coefficient rows
  linalg::Matrix<Expr> rows(static_cast<std::size_t>(s),
                            std::vector<Expr>(static_cast<std::size_t>(n), Expr{}));
  for (int r = 0; r < s; ++r)
    for (const auto& [idx, c] : generators_[static_cast<std::size_t>(r)].terms())
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx[0])] = c;
  auto ech = linalg::reduce(rows);
  if (ech.rank < s) {
    std::string locus = ech.loci.empty() ? "" : ech.loci.front().to_string();
    throw DegenerateError("dependent ideal generators", locus);
  }
  loci_ = ech.loci;
  std::vector<char> pivoted(static_cast<std::size_t>(n), 0);
  for (int c : ech.pivot_cols) pivoted[static_cast<std::size_t>(c)] = 1;
  for (int c = 0; c < n; ++c)
    if (!pivoted[static_cast<std::size_t>(c)]) complement_.push_back(c);
  // full coframe matrix: generator rows, then unit rows for the complement
  linalg::Matrix<Expr> cof = rows;
  for (int c : complement_) {
    std::vector<Expr> unit(static_cast<std::size_t>(n), Expr{});
    unit[static_cast<std::size_t>(c)] = Expr(1);
    cof.push_back(std::move(unit));
  }
  inverse_ = linalg::inverse(cof);
}

Form CoframeReduction::slot_form(int m) const {
  const int s = static_cast<int>(generators_.size());
  if (m < s) return generators_[static_cast<std::size_t>(m)];
  return Form::differential(chart_, complement_.at(static_cast<std::size_t>(m - s)));
}

std::map<std::vector<int>, Expr> CoframeReduction::coframe_components(const Form& a) const {
  if (!(a.chart() == chart_)) throw ChartMismatch("reduction of a form on a different chart");
  const int n = chart_.dim();
  std::map<std::vector<int>, Expr> out;
  const int k = a.degree();
  if (k == 0) {
    Expr c = a.coefficient({});
    if (!c.is_zero()) out[{}] = c;
    return out;
  }
  // expand each dx_i into coframe slots and wedge
  std::vector<int> slots(static_cast<std::size_t>(k), 0);
  for (const auto& [idx, c] : a.terms()) {
    // iterate over slot assignments
    std::vector<int> choice(static_cast<std::size_t>(k), 0);
    while (true) {
      Expr coeff = c;
      for (int j = 0; j < k; ++j) {
        const Expr& w = inverse_[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]
                                [static_cast<std::size_t>(choice[static_cast<std::size_t>(j)])];
        coeff = coeff * w;
        if (coeff.is_zero()) break;
      }
      if (!coeff.is_zero()) {
        std::vector<int> key(choice.begin(), choice.end());
        int sign = sort_sign(key);
        if (sign != 0) {
          Expr add = sign > 0 ? coeff : -coeff;
          auto it = out.find(key);
          if (it == out.end()) {
            out.emplace(std::move(key), add);
          } else {
            it->second = it->second + add;
            if (it->second.is_zero()) out.erase(it);
          }
        }
      }
      int j = k - 1;
      while (j >= 0 && choice[static_cast<std::size_t>(j)] == n - 1) {
        choice[static_cast<std::size_t>(j)] = 0;
        --j;
      }
      if (j < 0) break;
      ++choice[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

Form CoframeReduction::reduce(const Form& a) const {
  if (!(a.chart() == chart_)) throw ChartMismatch("reduction of a form on a different chart");
  const int s = static_cast<int>(generators_.size());
  if (a.degree() == 0) return a;
  auto comps = coframe_components(a);
  Form out(chart_, a.degree());
  for (const auto& [slots, c] : comps) {
    bool pure = true;
    for (int m : slots)
      if (m < s) {
        pure = false;
        break;
      }
    if (!pure) continue;
    std::vector<int> idx;
    idx.reserve(slots.size());
    for (int m : slots) idx.push_back(complement_.at(static_cast<std::size_t>(m - s)));
    out.add_term(std::move(idx), c);
  }
  return out;
}

Form reduce_modulo(const Form& a, const std::vector<Form>& ideal) {
  return CoframeReduction(a.chart(), ideal).reduce(a);
}

}  // namespace eds
