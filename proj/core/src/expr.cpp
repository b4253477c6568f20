#include "eds/expr.hpp"

namespace eds {

RationalPoint RationalPoint::of(std::initializer_list<std::pair<const char*, Rat>> vs) {
  RationalPoint pt;
  for (const auto& [name, value] : vs) pt.values[var_intern(name)] = value;
  return pt;
}

RationalPoint& RationalPoint::set(std::string_view name, Rat value) {
  values[var_intern(name)] = std::move(value);
  return *this;
}

const Rat& RationalPoint::at(VarId v) const {
  auto it = values.find(v);
  if (it == values.end())
    throw DomainError("point does not assign variable '" + var_name(v) + "'");
  return it->second;
}

Expr Expr::variable(std::string_view name) {
  Expr e;
  e.num_ = Polynomial::variable(var_intern(name));
  return e;
}

Expr Expr::fraction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DomainError("division by the zero polynomial");
  Expr e;
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  e.normalize();
  return e;
}

Expr Expr::fraction_coprime(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DomainError("division by the zero polynomial");
  Expr e;
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  if (e.num_.is_zero()) {
    e.den_ = Polynomial::constant(Rat(1));
    return e;
  }
  Rat lc = e.den_.leading().coeff;
  if (lc != 1) {
    Rat inv = Rat(1) / lc;
    e.num_ = e.num_ * inv;
    e.den_ = e.den_ * inv;
  }
  return e;
}

void Expr::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(Rat(1));
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  Rat lc = den_.leading().coeff;
  if (lc != 1) {
    Rat inv = Rat(1) / lc;
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

Rat Expr::constant_value() const {
  if (!is_constant()) throw DomainError("expression is not constant");
  return num_.constant_value();
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den() == b.den())
    return Expr::fraction(a.num() + b.num(), a.den());
  // common denominator through the gcd of the denominators
  Polynomial g = gcd(a.den(), b.den());
  if (g.is_constant())
    return Expr::fraction(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
  Polynomial bq = divide_exact(b.den(), g);
  Polynomial aq = divide_exact(a.den(), g);
  return Expr::fraction(a.num() * bq + b.num() * aq, a.den() * bq);
}

Expr operator-(const Expr& a) { return Expr::fraction(-a.num(), a.den()); }

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr{};
  if (a.den().is_one() && b.den().is_one()) return Expr(a.num() * b.num());
  // cross-cancel; the remaining factors are pairwise coprime
  Polynomial g1 = gcd(a.num(), b.den());
  Polynomial g2 = gcd(b.num(), a.den());
  Polynomial an = g1.is_constant() ? a.num() : divide_exact(a.num(), g1);
  Polynomial bd = g1.is_constant() ? b.den() : divide_exact(b.den(), g1);
  Polynomial bn = g2.is_constant() ? b.num() : divide_exact(b.num(), g2);
  Polynomial ad = g2.is_constant() ? a.den() : divide_exact(a.den(), g2);
  return Expr::fraction_coprime(an * bn, ad * bd);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError("division by zero expression");
  if (a.is_zero()) return Expr{};
  Polynomial g1 = gcd(a.num(), b.num());
  Polynomial g2 = gcd(b.den(), a.den());
  Polynomial an = g1.is_constant() ? a.num() : divide_exact(a.num(), g1);
  Polynomial bn = g1.is_constant() ? b.num() : divide_exact(b.num(), g1);
  Polynomial bd = g2.is_constant() ? b.den() : divide_exact(b.den(), g2);
  Polynomial ad = g2.is_constant() ? a.den() : divide_exact(a.den(), g2);
  return Expr::fraction_coprime(an * bd, ad * bn);
}

Expr pow(const Expr& e, unsigned k) {
  Expr acc(1);
  Expr b = e;
  while (k) {
    if (k & 1u) acc = acc * b;
    if (k >>= 1u) b = b * b;
  }
  return acc;
}

Expr Expr::derivative(VarId v) const {
  return fraction(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

Expr Expr::antiderivative(VarId v) const {
  if (den_.depends_on(v))
    throw DomainError("antiderivative requires polynomial dependence on '" +
                      var_name(v) + "'");
  return fraction(num_.antiderivative(v), den_);
}

namespace {

Expr substitute_poly(const Polynomial& p, const std::map<VarId, Expr>& b) {
  Expr sum;
  for (const auto& t : p.terms()) {
    Expr prod{t.coeff};
    for (const auto& [v, e] : t.mono.factors) {
      auto it = b.find(v);
      Expr base = (it != b.end()) ? it->second : Expr::variable(var_name(v));
      prod = prod * pow(base, e);
    }
    sum = sum + prod;
  }
  return sum;
}

}  // namespace

Expr Expr::substitute(const std::map<VarId, Expr>& bindings) const {
  Expr n = substitute_poly(num_, bindings);
  Expr d = substitute_poly(den_, bindings);
  if (d.is_zero())
    throw DomainError("substitution makes the denominator identically zero");
  return n / d;
}

Rat Expr::eval(const RationalPoint& pt) const {
  Rat d = den_.eval(pt.values);
  if (d == 0) throw DomainError("denominator vanishes at the evaluation point");
  return num_.eval(pt.values) / d;
}

std::set<VarId> Expr::variables() const {
  std::set<VarId> vs = num_.variables();
  auto dv = den_.variables();
  vs.insert(dv.begin(), dv.end());
  return vs;
}

std::string Expr::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace eds
