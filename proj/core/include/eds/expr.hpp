#pragma once

#include "eds/error.hpp"
#include "eds/polynomial.hpp"

#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace eds {

// Assignment of exact rational values to variables.
struct RationalPoint {
  std::map<VarId, Rat> values;

  static RationalPoint of(std::initializer_list<std::pair<const char*, Rat>> vs);
  RationalPoint& set(std::string_view name, Rat value);
  const Rat& at(VarId v) const;
  bool has(VarId v) const { return values.count(v) != 0; }
};

// Rational function over Q in canonical form: numerator and denominator
// coprime, denominator monic under graded-lex. Equality is structural.
class Expr {
 public:
  Expr() = default;  // zero
  Expr(int n) : num_(Polynomial::constant(Rat(n))), den_(Polynomial::constant(Rat(1))) {}
  explicit Expr(Rat r) : num_(Polynomial::constant(std::move(r))), den_(Polynomial::constant(Rat(1))) {}
  explicit Expr(Polynomial p)
      : num_(std::move(p)), den_(Polynomial::constant(Rat(1))) {}

  static Expr variable(std::string_view name);
  static Expr fraction(Polynomial num, Polynomial den);  // normalizes
  // Trusted path for internally cancelled fractions: the arguments must
  // already be coprime; only the monic rescaling is applied.
  static Expr fraction_coprime(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  Rat constant_value() const;

  Expr derivative(VarId v) const;
  Expr derivative(std::string_view name) const { return derivative(var_intern(name)); }
  // Antiderivative in v with the integration constant fixed to 0; the
  // denominator must not depend on v.
  Expr antiderivative(VarId v) const;
  Expr substitute(const std::map<VarId, Expr>& bindings) const;
  Rat eval(const RationalPoint& pt) const;
  std::set<VarId> variables() const;

  std::string to_string() const;

  bool operator==(const Expr&) const = default;

 private:
  Polynomial num_ = {};
  Polynomial den_ = Polynomial::constant(Rat(1));
  void normalize();
};

Expr operator+(const Expr&, const Expr&);
Expr operator-(const Expr&, const Expr&);
Expr operator-(const Expr&);
Expr operator*(const Expr&, const Expr&);
Expr operator/(const Expr&, const Expr&);  // throws on zero divisor
Expr pow(const Expr&, unsigned);

// Parses the expression grammar: integers, '/'-separated rationals,
// identifiers, binary + - * /, unary -, '^' with a nonnegative integer
// literal exponent, parentheses; whitespace insignificant.
Expr parse_expr(std::string_view text);

}  // namespace eds
