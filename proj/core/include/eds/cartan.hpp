#pragma once

#include "eds/prolong.hpp"
#include "eds/symbol_algebra.hpp"

namespace eds {

// The overdetermined system r = t^3/3, s = t^2/2 with parameter t.
SolvedSystem cartan_system();

EquationChart cartan_chart();

// Adapted coframe, both prolongation charts, and the covering fact that
// integral elements seeing dy^dt also see dx^dt (so two charts suffice).
struct CoveringReport {
  AdaptedCoframe coframe;
  Prolongation prolongation;
  bool covering_ok = false;  // checked on sample points, t = 0 included
  int points_checked = 0;
};

CoveringReport coframe_and_covering();

// Leaf coordinates of the Cauchy characteristic foliation and the inverse
// lift; quotient o lift and lift o quotient are identities (lambda = x).
struct LeafChart {
  Chart base;            // (x1..x5)
  Chart lifted;          // (x1..x5, lambda)
  SmoothMap quotient;    // equation chart -> base
  SmoothMap lift;        // lifted -> equation chart
};

LeafChart leaf_chart();

// The rank-2 flat (2,3,5) system on the leaf space.
PfaffSystem db_system();

// Integral curve of db_system generated by a polynomial phi(tau).
struct IntegralCurve {
  Chart param;                   // (tau)
  std::vector<Expr> components;  // x1..x5
  SmoothMap curve() const;
  bool annihilates_generators = false;
};

IntegralCurve db_integral_curve(const Expr& phi);

// A two-parameter integral surface of the Cartan system, with the fiber
// slot of its lift into the nontransversal prolongation chart.
struct SolutionSurface {
  Chart params;                  // (x, t) or (x, tau)
  std::vector<Expr> components;  // x, y, z, p, q, t in the parameters
  Expr fiber_b;                  // b slot of the prolongation lift
  Expr free_function;
  std::string free_var;
  bool origin_condition = false;   // derivative of the free function at 0 vanishes
  bool transcription_match = true; // re-derivation agrees with the closed family

  SmoothMap into_equation_chart() const;
};

// Singular solutions from the prolongation graph equations; y0 must be a
// polynomial in t. When y0'(0) != 0 the surface is still integral but
// misses the origin condition (flagged, not rejected).
SolutionSurface solve_i(const Expr& y0);

// Singular solutions by reduction to the leaf space: integral curve from
// phi(tau), then the sweep by the lift with lambda = x.
SolutionSurface solve_ii(const Expr& phi);

struct SolutionReport {
  bool pullbacks_zero = false;          // contact0/1/2 pull back to 0 exactly
  bool prolongation_pullback_zero = false;  // the nontransversal chart form too
  Expr nonimmersion_locus;              // generator of the 2x2-minor ideal
  bool through_origin = false;
  bool transcription_match = true;
};

SolutionReport verify_solution(const SolutionSurface& s);

// Do the two constructions give the same surface under tau = -t,
// lambda = x, phi(tau) = y0(-tau)?
bool compare_solutions(const Expr& y0);

// The worked filtration on a prolongation chart of the Cartan system,
// with the frame ordered by grade for graded_symbol.
struct StratumModel {
  Filtration filtration;
  std::vector<VectorField> frame;
  ProlongChart chart;
};

StratumModel stratum_model(bool transversal_chart);

}  // namespace eds
