#pragma once

#include "eds/pfaffian.hpp"

#include <array>
#include <optional>
#include <string>

namespace eds {

// A second-order system in solved form: two of the fiber derivatives
// {r, s, t} expressed through (x, y, z, p, q) and the remaining one,
// which survives as the chart parameter.
struct SolvedSystem {
  std::map<std::string, Expr> solved;  // exactly two keys from {r, s, t}
  std::string parameter;               // the remaining key

  SolvedSystem() = default;
  SolvedSystem(std::map<std::string, Expr> solved_exprs, std::string param);

  // r, s or t as an expression on the chart (solved value or the
  // parameter variable itself).
  Expr second_derivative(const std::string& name) const;
};

// The 6-dimensional equation locus with its restricted canonical forms
// and the fiber direction of the projection to first-order data.
struct EquationChart {
  SolvedSystem system;
  Chart chart;  // (x, y, z, p, q, parameter)
  Form contact0, contact1, contact2;
  VectorField vertical;

  PfaffSystem pfaff() const { return PfaffSystem(chart, {contact0, contact1, contact2}); }
};

EquationChart build_chart(const SolvedSystem& sys);

struct RegularityReport {
  bool regular = true;
  std::string certifying_minor;  // 2x2 minor of the derivative matrix
  std::vector<std::pair<RationalPoint, bool>> point_checks;
};

RegularityReport regularity_check(const SolvedSystem& sys,
                                  const std::vector<RationalPoint>& pts = {});

// Raw input path: F and G given directly as expressions of the eight jet
// coordinates; checks the rank of their (r,s,t)-gradients at points.
RegularityReport regularity_check_raw(const Expr& f, const Expr& g,
                                      const std::vector<RationalPoint>& pts);

// Binary quadratic a*xi^2 + b*xi*eta + c*eta^2.
struct PencilQuadric {
  Expr a, b, c;
};

// The pencil of symbol quadrics spanned by the (r,s,t)-gradients of the
// defining equations, and the discriminant-of-discriminant separating the
// two finite types: positive means two real rank-1 members, negative none.
struct SymbolPencil {
  PencilQuadric qf, qg;
  Expr delta;
};

SymbolPencil symbol_pencil(const SolvedSystem& sys);

// Pointwise fiber of 2-dimensional integral elements, computed as the
// kernel of L : Lambda^2 D(pt) -> R^2, L(v) = (d contact1 (v), d contact2 (v))
// in the basis (e1^e2, e1^e3, e2^e3) with e3 the vertical direction.
struct FiberDescriptor {
  RationalPoint point;
  int kernel_dim = 0;
  std::vector<std::array<Rat, 3>> kernel_basis;
  std::vector<bool> basis_transversal;  // per kernel basis element
  bool has_transversal = false;
  bool has_nontransversal = false;
  std::array<std::vector<Rat>, 3> frame;  // e1, e2, e3 at the point
};

FiberDescriptor fiber_at(const EquationChart& eq, const RationalPoint& pt);

// The symbolic version of L over the expression field, with generic
// kernel dimension and the loci where it degrades.
struct SymbolicFiber {
  std::array<std::vector<Expr>, 2> rows;  // d contact1, d contact2 on the pencil basis
  int generic_kernel_dim = 0;
  std::vector<Expr> loci;
};

SymbolicFiber symbolic_fiber(const EquationChart& eq);

enum class TypeKind { I, II, III, IV, Degenerate };

std::string to_string(TypeKind k);

struct TypeLabel {
  TypeKind kind = TypeKind::Degenerate;
  std::string reason;  // nonempty for Degenerate
};

struct Classification {
  TypeLabel label;
  int kernel_dim = 0;
  std::optional<bool> transversal;  // set when kernel_dim == 1
  int delta_sign = 0;
  int cauchy_rank = 0;
  bool cauchy_consistent = true;  // label I <=> cauchy_rank 1
  SymbolPencil pencil;
  std::vector<Expr> loci;
};

Classification classify_type(const EquationChart& eq, const RationalPoint& pt);

enum class TransversalFiber { line, point, empty };

// Restriction of the fiber to transversal integral elements:
// type I -> affine line, II/III -> single point, IV -> empty.
TransversalFiber transversal_fiber(const EquationChart& eq, const RationalPoint& pt);

// Kernel dimension of the integral-element map for any rank-3 system
// (used by the iterated prolongations, where the generator count grows).
int integral_fiber_kernel_dim(const PfaffSystem& s, const RationalPoint& pt);

}  // namespace eds
