#pragma once

#include "eds/pfaffian.hpp"

#include <map>
#include <utility>
#include <vector>

namespace eds {

// Increasing tangential filtration F^{-1} c F^{-2} c ... c TM, each stage
// given by its annihilator; the final stage must have no generators.
struct Filtration {
  std::vector<PfaffSystem> stages;

  Filtration() = default;
  explicit Filtration(std::vector<PfaffSystem> ss);

  int depth() const { return static_cast<int>(stages.size()); }
  std::vector<int> stage_ranks() const;
};

// Pointwise graded nilpotent Lie algebra. Basis vectors are grouped by
// grade (grade -1 block first); brackets are stored for i < j as the
// component vector in the grade g(i)+g(j) block.
struct GradedAlgebra {
  std::vector<int> dims;  // dims[k] = dim of grade -(k+1)
  std::map<std::pair<int, int>, std::vector<Rat>> table;

  int total_dim() const;
  int grade_of(int index) const;      // -1, -2, ...
  int block_offset(int grade) const;  // first index of the block
  std::vector<Rat> bracket(int i, int j) const;  // any order, empty = zero
  bool jacobi_ok() const;
};

// Symbol algebra at a point from an adapted frame: the first
// rank(F^{-1}) fields span F^{-1}, the next block extends to F^{-2}, ...
// Structure constants come from -d(theta_k)(X_i, X_j) with theta the dual
// coframe, cross-checked against direct Lie brackets.
GradedAlgebra graded_symbol(const Filtration& f, const RationalPoint& pt,
                            const std::vector<VectorField>& frame);

// Does bracketing with the grade -1 block reach every lower grade?
bool generating_check(const GradedAlgebra& g);

enum class SymbolModel { f0, f1, neither };

std::string to_string(SymbolModel m);

struct ModelMatch {
  SymbolModel model = SymbolModel::neither;
  int k_invariant = -1;      // dim of the grade -3 annihilator of grade -1
  bool table_match = false;  // exact table match up to generator sign flips
  std::vector<int> sign_flips;  // indices flipped for the match, when found
};

// Distinguishes the two 7-dimensional models with dims (3,1,2,1).
ModelMatch match_model(const GradedAlgebra& g);

GradedAlgebra model_f0();
GradedAlgebra model_f1();

}  // namespace eds
