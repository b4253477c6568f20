#pragma once

#include "eds/form.hpp"

#include <optional>
#include <vector>

namespace eds {

// A Pfaffian system given by its annihilator: pointwise independent
// 1-forms on a chart. rank() is the rank of the annihilated distribution.
struct PfaffSystem {
  Chart chart;
  std::vector<Form> generators;

  PfaffSystem() = default;
  PfaffSystem(Chart c, std::vector<Form> gens);

  int rank() const { return chart.dim() - static_cast<int>(generators.size()); }
};

// Spanning vector fields of the annihilated distribution; each pairs to
// zero with every generator exactly. One field per complement coordinate,
// in chart order.
std::vector<VectorField> dual_frame(const PfaffSystem& s);

struct DerivedResult {
  PfaffSystem system;
  std::vector<Expr> loci;  // where the generic computation degrades
};

// First derived system via the annihilator: combinations of generators
// whose exterior derivatives reduce to zero modulo the ideal.
DerivedResult derived_system(const PfaffSystem& s);

enum class FlagMode { strong, weak };

struct DerivedFlag {
  FlagMode mode = FlagMode::weak;
  std::vector<int> ranks;                             // per stage, starting at D
  std::vector<std::vector<VectorField>> stage_frames; // independent spanning sets
  std::vector<Expr> loci;
  bool stabilized = false;

  int depth() const { return static_cast<int>(ranks.size()); }
};

// Weak derived flag by bracketing dual-frame sections against the previous
// stage; stops at stabilization or max_depth (0 means the chart dimension).
DerivedFlag weak_derived_flag(const PfaffSystem& s, int max_depth = 0);

// Strong derived flag (each stage bracketed with itself).
DerivedFlag strong_derived_flag(const PfaffSystem& s, int max_depth = 0);

struct CauchyResult {
  int rank = 0;
  std::vector<VectorField> fields;  // first nonzero component normalized to 1
  std::vector<Expr> loci;
};

// Cauchy characteristic system: fields X in D with X _| d(g) in the ideal
// for every generator g.
CauchyResult cauchy_characteristics(const PfaffSystem& s);

struct GrowthVector {
  std::vector<int> ranks;
  bool operator==(const GrowthVector&) const = default;
};

// Ranks of the weak derived flag evaluated at a point; throws
// DegenerateError when the point drops below the generic ranks.
GrowthVector growth_at(const PfaffSystem& s, const RationalPoint& pt, int max_depth = 0);

// Numeric rank of a set of fields at a point.
int rank_at(const std::vector<VectorField>& fields, const RationalPoint& pt);

}  // namespace eds
