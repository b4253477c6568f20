#pragma once

#include "eds/numeric.hpp"
#include "eds/variable.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace eds {

// Sparse exponent vector; factors sorted by variable order, exponents > 0.
struct Monomial {
  std::vector<std::pair<VarId, unsigned>> factors;

  static Monomial unit() { return {}; }
  static Monomial of(VarId v, unsigned e = 1);

  bool is_unit() const { return factors.empty(); }
  unsigned total_degree() const;
  unsigned exponent_of(VarId v) const;

  bool operator==(const Monomial&) const = default;
};

// Graded-lexicographic comparison: total degree first, then lex with the
// earlier variable (by name) weighing more. Returns <0, 0, >0.
int compare_grlex(const Monomial& a, const Monomial& b);

Monomial operator*(const Monomial& a, const Monomial& b);
bool divides(const Monomial& a, const Monomial& b);      // a | b
Monomial quotient(const Monomial& b, const Monomial& a); // b / a, exact

struct Term {
  Monomial mono;
  Rat coeff;
  bool operator==(const Term&) const = default;
};

// Multivariate polynomial over Q in sparse distributed representation;
// terms held in descending graded-lex order with nonzero coefficients.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial constant(Rat c);
  static Polynomial variable(VarId v);
  static Polynomial from_terms(std::vector<Term> ts);  // sorts and combines

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Rat constant_value() const;  // requires is_constant(); zero gives 0

  const Term& leading() const;  // requires nonzero
  unsigned total_degree() const;
  unsigned degree_in(VarId v) const;
  bool depends_on(VarId v) const;
  std::set<VarId> variables() const;

  Polynomial derivative(VarId v) const;
  Polynomial antiderivative(VarId v) const;  // zero constant term in v
  Rat eval(const std::map<VarId, Rat>& values) const;
  Polynomial coefficient_of(VarId v, unsigned k) const;  // coefficient of v^k

  std::string to_string() const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<Term> terms_;
};

Polynomial operator+(const Polynomial&, const Polynomial&);
Polynomial operator-(const Polynomial&, const Polynomial&);
Polynomial operator-(const Polynomial&);
Polynomial operator*(const Polynomial&, const Polynomial&);
Polynomial operator*(const Polynomial&, const Rat&);
Polynomial pow(const Polynomial&, unsigned);

// Exact quotient; throws DomainError when the division leaves a remainder.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

// Integer-primitive gcd with positive leading coefficient, computed by a
// primitive polynomial remainder sequence. gcd(0, p) is the normalized p.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Scale to integer-primitive form with positive leading coefficient.
Polynomial normalize_primitive(const Polynomial& p);

}  // namespace eds
