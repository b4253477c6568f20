#pragma once

#include "eds/jet.hpp"

#include <optional>
#include <utility>

namespace eds {

// The normalized coframe of a type-I system: contact0, a closed-modulo-
// ideal combination hat1, the complementary hat2, and the horizontal trio
// omega1, omega2, pi with d hat2 = omega2 ^ pi modulo the ideal.
struct AdaptedCoframe {
  Form contact0, hat1, hat2, omega1, omega2, pi;
  Expr combo_c1, combo_c2;    // hat1 = c1*contact1 + c2*contact2
  Expr pi_vertical_pairing;   // recorded scaling pi(V)
  std::vector<Expr> loci;
};

AdaptedCoframe adapted_coframe(const EquationChart& eq);

// One chart of a rank-2 prolongation. The canonical system adds the
// fiber form theta to the lifted generators; omega1/omega2/pi_fiber are
// the structure data used for the next prolongation step, with
// pi_fiber = d(fiber) + f*omega1 modulo the lifted horizontal forms.
struct ProlongChart {
  Chart chart;
  bool transversal = true;          // theta = pi - a*omega2 vs omega2 - b*pi
  std::string fiber_var;
  std::vector<Form> generators;     // lifted ideal generators + theta
  Form theta;
  Form omega1, omega2, pi_fiber;    // structure data on this chart
  Expr f_expr;                      // the congruence coefficient
  Expr g_expr;                      // omega2-component of pi_fiber (0 for the worked systems)
  VectorField vertical;             // d/d(fiber)

  PfaffSystem pfaff() const { return PfaffSystem(chart, generators); }
};

struct Transition {
  SmoothMap forward;   // transversal -> nontransversal, fiber inverted
  SmoothMap backward;
  std::string domain;  // "a != 0"
};

struct TrivialFiberSummary {
  TypeKind type = TypeKind::Degenerate;
  bool transversal = false;  // the unique integral element, when present
};

struct Prolongation {
  TypeKind base_type = TypeKind::Degenerate;
  std::optional<std::pair<ProlongChart, ProlongChart>> charts;  // type I
  std::optional<Transition> transition;
  std::optional<TrivialFiberSummary> trivial;  // types II/III/IV
};

// Rank-2 prolongation of an equation chart. Type I yields the two-chart
// atlas with its transition on {a != 0}; the other types report their
// single-point (or empty) fibers. The type is decided at the given base
// point (default: a generic sample).
Prolongation prolong(const EquationChart& eq, const RationalPoint& base_pt,
                     const std::string& fiber_suffix = "");

struct TransitionReport {
  bool generators_closed = true;            // pulled-back generators reduce to 0
  std::vector<std::string> residues;        // nonzero reductions, when any
  bool composite_identity = true;           // a -> 1/a -> a
};

TransitionReport transition_check(const ProlongChart& transversal,
                                  const ProlongChart& nontransversal,
                                  const Transition& t);

enum class Stratum { sigma0, sigma1 };

// Does the tautological plane at the point contain the vertical direction?
Stratum stratify(const ProlongChart& chart, const RationalPoint& pt);

struct TowerLevel {
  std::vector<ProlongChart> charts;
  // per chart: sampled fiber kernel dimensions (must all be 2)
  std::vector<std::vector<int>> fiber_kernel_dims;
};

// Iterated rank-2 prolongations. Level k holds 2^k charts; at every level
// each chart's integral-element fiber is sampled at `samples` points.
std::vector<TowerLevel> tower(const EquationChart& eq, int depth,
                              const RationalPoint& base_pt, int samples = 5);

}  // namespace eds
