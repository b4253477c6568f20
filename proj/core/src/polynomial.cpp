#include "eds/polynomial.hpp"

#include "eds/error.hpp"

#include <algorithm>
#include <sstream>

namespace eds {

Monomial Monomial::of(VarId v, unsigned e) {
  Monomial m;
  if (e > 0) m.factors.emplace_back(v, e);
  return m;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : factors) d += e;
  return d;
}

unsigned Monomial::exponent_of(VarId v) const {
  for (const auto& [w, e] : factors)
    if (w == v) return e;
  return 0;
}

int compare_grlex(const Monomial& a, const Monomial& b) {
  unsigned da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    VarId va = a.factors[i].first, vb = b.factors[j].first;
    if (va == vb) {
      unsigned ea = a.factors[i].second, eb = b.factors[j].second;
      if (ea != eb) return ea > eb ? 1 : -1;
      ++i;
      ++j;
    } else if (var_less(va, vb)) {
      return 1;  // a carries the earlier variable
    } else {
      return -1;
    }
  }
  if (i < a.factors.size()) return 1;
  if (j < b.factors.size()) return -1;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    VarId va = a.factors[i].first, vb = b.factors[j].first;
    if (va == vb) {
      out.factors.emplace_back(va, a.factors[i].second + b.factors[j].second);
      ++i;
      ++j;
    } else if (var_less(va, vb)) {
      out.factors.push_back(a.factors[i++]);
    } else {
      out.factors.push_back(b.factors[j++]);
    }
  }
  while (i < a.factors.size()) out.factors.push_back(a.factors[i++]);
  while (j < b.factors.size()) out.factors.push_back(b.factors[j++]);
  return out;
}

bool divides(const Monomial& a, const Monomial& b) {
  std::size_t j = 0;
  for (const auto& [v, e] : a.factors) {
    while (j < b.factors.size() && var_less(b.factors[j].first, v)) ++j;
    if (j >= b.factors.size() || b.factors[j].first != v || b.factors[j].second < e)
      return false;
  }
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial out;
  std::size_t i = 0;
  for (const auto& [v, e] : b.factors) {
    unsigned sub = 0;
    if (i < a.factors.size() && a.factors[i].first == v) {
      sub = a.factors[i].second;
      ++i;
    }
    if (e > sub) out.factors.emplace_back(v, e - sub);
  }
  return out;
}

namespace {

struct MonoGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_grlex(a, b) > 0;
  }
};

}  // namespace

Polynomial Polynomial::constant(Rat c) {
  std::vector<Term> ts;
  if (c != 0) ts.push_back({Monomial::unit(), std::move(c)});
  Polynomial p;
  p.terms_ = std::move(ts);
  return p;
}

Polynomial Polynomial::variable(VarId v) {
  Polynomial p;
  p.terms_.push_back({Monomial::of(v), Rat(1)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> ts) {
  std::map<Monomial, Rat, MonoGreater> acc;
  for (auto& t : ts) {
    if (t.coeff == 0) continue;
    auto [it, fresh] = acc.emplace(std::move(t.mono), t.coeff);
    if (!fresh) {
      it->second += t.coeff;
      if (it->second == 0) acc.erase(it);
    }
  }
  Polynomial p;
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) p.terms_.push_back({m, c});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_unit());
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_unit() && terms_[0].coeff == 1;
}

Rat Polynomial::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_[0].coeff;
}

const Term& Polynomial::leading() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_[0];
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

unsigned Polynomial::degree_in(VarId v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent_of(v));
  return d;
}

bool Polynomial::depends_on(VarId v) const {
  for (const auto& t : terms_)
    if (t.mono.exponent_of(v) > 0) return true;
  return false;
}

std::set<VarId> Polynomial::variables() const {
  std::set<VarId> vs;
  for (const auto& t : terms_)
    for (const auto& [v, e] : t.mono.factors) vs.insert(v);
  return vs;
}

Polynomial Polynomial::derivative(VarId v) const {
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    unsigned e = t.mono.exponent_of(v);
    if (e == 0) continue;
    Monomial m;
    for (const auto& [w, f] : t.mono.factors) {
      unsigned g = (w == v) ? f - 1 : f;
      if (g > 0) m.factors.emplace_back(w, g);
    }
    ts.push_back({std::move(m), t.coeff * e});
  }
  return from_terms(std::move(ts));
}

Polynomial Polynomial::antiderivative(VarId v) const {
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    unsigned e = t.mono.exponent_of(v);
    Monomial m;
    bool placed = false;
    for (const auto& [w, f] : t.mono.factors) {
      if (w == v) {
        m.factors.emplace_back(w, f + 1);
        placed = true;
      } else {
        if (!placed && e == 0 && var_less(v, w)) {
          m.factors.emplace_back(v, 1);
          placed = true;
        }
        m.factors.emplace_back(w, f);
      }
    }
    if (!placed) m.factors.emplace_back(v, 1);
    ts.push_back({std::move(m), t.coeff / (e + 1)});
  }
  return from_terms(std::move(ts));
}

Rat Polynomial::eval(const std::map<VarId, Rat>& values) const {
  Rat sum(0);
  for (const auto& t : terms_) {
    Rat prod = t.coeff;
    for (const auto& [v, e] : t.mono.factors) {
      auto it = values.find(v);
      if (it == values.end())
        throw DomainError("unbound variable '" + var_name(v) + "' in evaluation");
      prod *= rat_pow(it->second, e);
    }
    sum += prod;
  }
  return sum;
}

Polynomial Polynomial::coefficient_of(VarId v, unsigned k) const {
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    if (t.mono.exponent_of(v) != k) continue;
    Monomial m;
    for (const auto& [w, e] : t.mono.factors)
      if (w != v) m.factors.emplace_back(w, e);
    ts.push_back({std::move(m), t.coeff});
  }
  return from_terms(std::move(ts));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Term> ts = a.terms();
  ts.insert(ts.end(), b.terms().begin(), b.terms().end());
  return Polynomial::from_terms(std::move(ts));
}

Polynomial operator-(const Polynomial& a) {
  std::vector<Term> ts = a.terms();
  for (auto& t : ts) t.coeff = -t.coeff;
  Polynomial p = Polynomial::from_terms(std::move(ts));
  return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<Term> ts;
  ts.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms())
      ts.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
  return Polynomial::from_terms(std::move(ts));
}

Polynomial operator*(const Polynomial& a, const Rat& c) {
  if (c == 0) return {};
  std::vector<Term> ts = a.terms();
  for (auto& t : ts) t.coeff *= c;
  return Polynomial::from_terms(std::move(ts));
}

Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial acc = Polynomial::constant(Rat(1));
  Polynomial b = p;
  while (e) {
    if (e & 1u) acc = acc * b;
    if (e >>= 1u) b = b * b;
  }
  return acc;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (b.is_constant()) return a * (Rat(1) / b.constant_value());
  Polynomial rem = a;
  std::vector<Term> quot;
  const Term& lb = b.leading();
  while (!rem.is_zero()) {
    const Term& lr = rem.leading();
    if (!divides(lb.mono, lr.mono))
      throw DomainError("inexact polynomial division");
    Term q{quotient(lr.mono, lb.mono), lr.coeff / lb.coeff};
    std::vector<Term> qb;
    for (const auto& t : b.terms()) qb.push_back({t.mono * q.mono, t.coeff * q.coeff});
    rem = rem - Polynomial::from_terms(std::move(qb));
    quot.push_back(std::move(q));
  }
  return Polynomial::from_terms(std::move(quot));
}

namespace {

Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Int int_lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return a / int_gcd(a, b) * b;
}

// Assumes integer coefficients; gcd of all of them, positive.
Int integer_content(const Polynomial& p) {
  Int g = 0;
  for (const auto& t : p.terms()) {
    g = int_gcd(g, numerator(t.coeff));
    if (g == 1) break;
  }
  return g;
}

Polynomial to_integer_scaled(const Polynomial& p) {
  Int l = 1;
  for (const auto& t : p.terms()) l = int_lcm(l, denominator(t.coeff));
  return p * Rat(l);
}

VarId main_variable(const Polynomial& a, const Polynomial& b) {
  auto va = a.variables();
  auto vb = b.variables();
  va.insert(vb.begin(), vb.end());
  VarId best = *va.begin();
  for (VarId v : va)
    if (var_less(v, best)) best = v;
  return best;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, VarId v) {
  unsigned db = b.degree_in(v);
  Polynomial lcb = b.coefficient_of(v, db);
  Polynomial r = a;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    unsigned dr = r.degree_in(v);
    Polynomial lcr = r.coefficient_of(v, dr);
    Polynomial shift;
    {
      std::vector<Term> ts;
      for (const auto& t : lcr.terms())
        ts.push_back({t.mono * Monomial::of(v, dr - db), t.coeff});
      shift = Polynomial::from_terms(std::move(ts));
    }
    r = r * lcb - shift * b;
  }
  return r;
}

Polynomial gcd_integer(const Polynomial& a, const Polynomial& b);

// gcd of the v-coefficients of p (the content of p viewed in Q[rest][v]).
Polynomial content_in(const Polynomial& p, VarId v) {
  Polynomial g;
  unsigned d = p.degree_in(v);
  for (unsigned k = 0; k <= d; ++k) {
    Polynomial c = p.coefficient_of(v, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_primitive(c) : gcd_integer(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial gcd_integer(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);
  if (a.is_constant() || b.is_constant()) {
    Int g = int_gcd(integer_content(a), integer_content(b));
    return Polynomial::constant(Rat(g));
  }
  VarId v = main_variable(a, b);
  Polynomial ca = content_in(a, v), cb = content_in(b, v);
  Polynomial pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  Polynomial cg = gcd_integer(ca, cb);

  Polynomial x = pa, y = pb;
  if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
  while (!y.is_zero()) {
    Polynomial r = pseudo_remainder(x, y, v);
    x = y;
    if (r.is_zero()) {
      y = r;
    } else {
      y = divide_exact(r, content_in(r, v));
      y = normalize_primitive(y);
    }
  }
  x = normalize_primitive(divide_exact(x, content_in(x, v)));
  return normalize_primitive(cg * x);
}

}  // namespace

namespace {

// largest monomial dividing every term
Monomial monomial_content(const Polynomial& p) {
  Monomial m = p.terms().front().mono;
  for (const auto& t : p.terms()) {
    if (m.is_unit()) break;
    Monomial next;
    for (const auto& [v, e] : m.factors) {
      unsigned o = t.mono.exponent_of(v);
      unsigned k = std::min(e, o);
      if (k > 0) next.factors.emplace_back(v, k);
    }
    m = std::move(next);
  }
  return m;
}

Polynomial strip_monomial(const Polynomial& p, const Monomial& m) {
  if (m.is_unit()) return p;
  std::vector<Term> ts;
  ts.reserve(p.terms().size());
  for (const auto& t : p.terms()) ts.push_back({quotient(t.mono, m), t.coeff});
  return Polynomial::from_terms(std::move(ts));
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (const auto& [v, e] : a.factors) {
    unsigned o = b.exponent_of(v);
    unsigned k = std::min(e, o);
    if (k > 0) out.factors.emplace_back(v, k);
  }
  return out;
}

}  // namespace

Polynomial normalize_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Polynomial q = to_integer_scaled(p);
  Int c = integer_content(q);
  q = q * Rat(Int(1), c);
  if (q.leading().coeff < 0) q = -q;
  return q;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);
  if (a == b) return normalize_primitive(a);
  // split off the common monomial factor cheaply
  Monomial ma = monomial_content(a), mb = monomial_content(b);
  Monomial shared = monomial_gcd(ma, mb);
  Polynomial pa = strip_monomial(a, ma), pb = strip_monomial(b, mb);
  Polynomial g = (pa.is_constant() || pb.is_constant())
                     ? Polynomial::constant(Rat(1))
                     : gcd_integer(to_integer_scaled(pa), to_integer_scaled(pb));
  std::vector<Term> lift;
  for (const auto& t : g.terms()) lift.push_back({t.mono * shared, t.coeff});
  return normalize_primitive(Polynomial::from_terms(std::move(lift)));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Rat c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    if (t.mono.is_unit()) {
      out << rat_to_string(c);
    } else {
      if (c != 1) out << rat_to_string(c) << "*";
      bool fv = true;
      for (const auto& [v, e] : t.mono.factors) {
        if (!fv) out << "*";
        fv = false;
        out << var_name(v);
        if (e > 1) out << "^" << e;
      }
    }
  }
  return out.str();
}

}  // namespace eds
