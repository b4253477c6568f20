#pragma once

#include "eds/chart.hpp"
#include "eds/expr.hpp"
#include "eds/linalg.hpp"

#include <map>
#include <span>
#include <vector>

namespace eds {

// Exterior differential form of fixed degree on a chart. Coefficients are
// stored sparsely on strictly increasing index tuples; zero coefficients
// are never stored, so structural equality is mathematical equality.
class Form {
 public:
  Form() = default;
  Form(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {}

  static Form function(Chart chart, Expr value);     // degree 0
  static Form differential(const Chart& chart, int coord);  // dx_i
  static Form differential(const Chart& chart, std::string_view coord);

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<std::vector<int>, Expr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Expr coefficient(const std::vector<int>& indices) const;
  // Adds c * dx_I with I not necessarily sorted; sorts and signs.
  void add_term(std::vector<int> indices, const Expr& c);

  std::string to_string() const;

  bool operator==(const Form&) const = default;

 private:
  Chart chart_;
  int degree_ = 0;
  std::map<std::vector<int>, Expr> terms_;
};

Form operator+(const Form&, const Form&);
Form operator-(const Form&, const Form&);
Form operator-(const Form&);
Form operator*(const Expr&, const Form&);

// Vector field on a chart; one coefficient per coordinate.
class VectorField {
 public:
  VectorField() = default;
  VectorField(Chart chart, std::vector<Expr> components);

  static VectorField coordinate(const Chart& chart, int coord);  // d/dx_i

  const Chart& chart() const { return chart_; }
  const std::vector<Expr>& components() const { return comps_; }
  const Expr& component(int i) const { return comps_.at(static_cast<std::size_t>(i)); }

  // Directional derivative of a function.
  Expr apply(const Expr& f) const;

  bool operator==(const VectorField&) const = default;

 private:
  Chart chart_;
  std::vector<Expr> comps_;
};

VectorField operator+(const VectorField&, const VectorField&);
VectorField operator-(const VectorField&, const VectorField&);
VectorField operator*(const Expr&, const VectorField&);

// Map between charts given by one component expression (in source
// coordinates) per target coordinate.
class SmoothMap {
 public:
  SmoothMap() = default;
  SmoothMap(Chart source, Chart target, std::vector<Expr> components);

  static SmoothMap identity(const Chart& chart);

  const Chart& source() const { return source_; }
  const Chart& target() const { return target_; }
  const std::vector<Expr>& components() const { return comps_; }

  Expr pull_function(const Expr& f) const;  // substitute target coords

  bool operator==(const SmoothMap&) const = default;

 private:
  Chart source_, target_;
  std::vector<Expr> comps_;
};

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

Form wedge(const Form& a, const Form& b);
Form exterior_derivative(const Form& a);
Form interior_product(const VectorField& x, const Form& a);
Form pullback(const SmoothMap& map, const Form& a);
VectorField lie_bracket(const VectorField& x, const VectorField& y);

// Full evaluation of a k-form on k fields.
Expr evaluate(const Form& a, std::span<const VectorField> fields);
Expr evaluate(const Form& a, const VectorField& x);
Expr evaluate(const Form& a, const VectorField& x, const VectorField& y);

// Reduction modulo the algebraic ideal of pointwise independent 1-forms.
// The generators are completed to a coframe by greedy pivoting on
// coordinate differentials (constant coefficients preferred, then chart
// order); every monomial containing a generator direction is deleted.
class CoframeReduction {
 public:
  CoframeReduction(Chart chart, std::vector<Form> generators);

  const Chart& chart() const { return chart_; }
  const std::vector<Form>& generators() const { return generators_; }
  const std::vector<int>& complement() const { return complement_; }
  const std::vector<Expr>& loci() const { return loci_; }

  Form reduce(const Form& a) const;
  bool contains(const Form& a) const { return reduce(a).is_zero(); }

  // Components of a in the completed coframe: keys are strictly increasing
  // tuples of coframe slots (0..s-1 generators, then complement slots).
  std::map<std::vector<int>, Expr> coframe_components(const Form& a) const;

  // The coframe slot forms themselves (generators, then complement dx's).
  Form slot_form(int m) const;

 private:
  Chart chart_;
  std::vector<Form> generators_;
  std::vector<int> complement_;          // coordinate indices
  linalg::Matrix<Expr> inverse_;         // dx_i = sum_m inverse_[i][m] slot_m
  std::vector<Expr> loci_;
};

Form reduce_modulo(const Form& a, const std::vector<Form>& ideal);

}  // namespace eds
