#pragma once

#include "eds/error.hpp"
#include "eds/expr.hpp"

#include <optional>
#include <vector>

namespace eds {

// Exact Gaussian elimination over a field (Expr or Rat). Pivot selection
// prefers constant entries so that solved-form systems keep unit pivots;
// non-constant pivots are recorded as degeneracy loci.
namespace linalg {

template <class F>
struct Scalar;

template <>
struct Scalar<Rat> {
  static bool is_zero(const Rat& x) { return x == 0; }
  static bool is_constant(const Rat&) { return true; }
  static Rat one() { return Rat(1); }
  static void note_locus(std::vector<Expr>&, const Rat&) {}
};

template <>
struct Scalar<Expr> {
  static bool is_zero(const Expr& x) { return x.is_zero(); }
  static bool is_constant(const Expr& x) { return x.is_constant(); }
  static Expr one() { return Expr(1); }
  static void note_locus(std::vector<Expr>& loci, const Expr& pivot) {
    if (pivot.is_constant()) return;
    Expr locus{normalize_primitive(pivot.num())};
    for (const auto& seen : loci)
      if (seen == locus) return;
    loci.push_back(locus);
  }
};

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
struct Echelon {
  Matrix<F> mat;                // fully reduced
  std::vector<int> pivot_col;   // per original row, -1 when the row vanished
  std::vector<int> pivot_cols;  // in processing order
  int rank = 0;
  std::vector<Expr> loci;       // non-constant pivots (numerators)
};

// Gauss-Jordan reduction with global pivot choice: constant entries
// anywhere win over non-constant ones, then position decides. This keeps
// solved-form systems on unit pivots and avoids spurious degeneracy loci.
// Pivots are only taken from the first pivot_limit columns (0 = all).
template <class F>
Echelon<F> reduce(Matrix<F> m, std::size_t pivot_limit = 0) {
  Echelon<F> e;
  if (m.empty()) return e;
  const std::size_t nrows = m.size();
  const std::size_t ncols = m[0].size();
  const std::size_t plim = pivot_limit == 0 ? ncols : pivot_limit;
  std::vector<char> used(ncols, 0), done(nrows, 0);
  e.pivot_col.assign(nrows, -1);
  while (true) {
    std::size_t pr = nrows, pc = ncols;
    for (int pass = 0; pass < 2 && pr == nrows; ++pass) {
      for (std::size_t r = 0; r < nrows && pr == nrows; ++r) {
        if (done[r]) continue;
        for (std::size_t c = 0; c < plim; ++c) {
          if (used[c] || Scalar<F>::is_zero(m[r][c])) continue;
          if (pass == 0 && !Scalar<F>::is_constant(m[r][c])) continue;
          pr = r;
          pc = c;
          break;
        }
      }
    }
    if (pr == nrows) break;
    Scalar<F>::note_locus(e.loci, m[pr][pc]);
    const F inv = Scalar<F>::one() / m[pr][pc];
    for (std::size_t c = 0; c < ncols; ++c) m[pr][c] = m[pr][c] * inv;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == pr) continue;
      const F factor = m[r][pc];
      if (Scalar<F>::is_zero(factor)) continue;
      for (std::size_t c = 0; c < ncols; ++c) m[r][c] = m[r][c] - factor * m[pr][c];
    }
    used[pc] = 1;
    done[pr] = 1;
    e.pivot_col[pr] = static_cast<int>(pc);
    e.pivot_cols.push_back(static_cast<int>(pc));
    ++e.rank;
  }
  e.mat = std::move(m);
  return e;
}

template <class F>
int rank(const Matrix<F>& m) {
  return reduce(m).rank;
}

// Basis of {x : M x = 0}; one vector per free column, unit entry at the
// free column, deterministic (free columns in increasing order).
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m, int ncols) {
  Echelon<F> e = reduce(m);
  const std::size_t nc = static_cast<std::size_t>(ncols);
  std::vector<char> pivoted(nc, 0);
  for (int c : e.pivot_cols)
    if (c >= 0) pivoted[static_cast<std::size_t>(c)] = 1;
  Matrix<F> basis;
  for (std::size_t f = 0; f < nc; ++f) {
    if (pivoted[f]) continue;
    std::vector<F> v(nc, F{});
    v[f] = Scalar<F>::one();
    for (std::size_t r = 0; r < e.pivot_col.size(); ++r) {
      int pc = e.pivot_col[r];
      if (pc < 0) continue;
      v[static_cast<std::size_t>(pc)] = F{} - e.mat[r][f];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves M x = b; returns the solution with free variables set to zero,
// or nothing when the system is inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& b) {
  const std::size_t ncols = m.empty() ? 0 : m[0].size();
  if (ncols == 0) {
    for (const auto& x : b)
      if (!Scalar<F>::is_zero(x)) return std::nullopt;
    return std::vector<F>{};
  }
  Matrix<F> aug = m;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  Echelon<F> e = reduce(std::move(aug), ncols);
  std::vector<F> x(ncols, F{});
  for (std::size_t r = 0; r < e.pivot_col.size(); ++r) {
    int pc = e.pivot_col[r];
    if (pc < 0) {
      if (!Scalar<F>::is_zero(e.mat[r][ncols])) return std::nullopt;
      continue;
    }
    x[static_cast<std::size_t>(pc)] = e.mat[r][ncols];
  }
  return x;
}

// Inverse of a square matrix; throws DegenerateError when singular.
template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  const std::size_t n = m.size();
  Matrix<F> aug = m;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      aug[r].push_back(r == c ? Scalar<F>::one() : F{});
  }
  Echelon<F> e = reduce(std::move(aug), n);
  // pivots must land in the left block
  std::vector<int> row_of_col(n, -1);
  for (std::size_t r = 0; r < e.pivot_col.size(); ++r) {
    int pc = e.pivot_col[r];
    if (pc < 0 || pc >= static_cast<int>(n))
      throw DegenerateError("matrix is singular");
    row_of_col[static_cast<std::size_t>(pc)] = static_cast<int>(r);
  }
  Matrix<F> inv(n, std::vector<F>(n, F{}));
  for (std::size_t c = 0; c < n; ++c) {
    int r = row_of_col[c];
    if (r < 0) throw DegenerateError("matrix is singular");
    for (std::size_t j = 0; j < n; ++j)
      inv[c][j] = e.mat[static_cast<std::size_t>(r)][n + j];
  }
  return inv;
}

// Indices of a maximal independent subset of the rows, greedy in order,
// by incremental forward elimination; non-constant pivots are recorded
// when a locus list is supplied.
template <class F>
std::vector<int> independent_rows(const Matrix<F>& rows, std::vector<Expr>* loci = nullptr) {
  std::vector<int> chosen;
  Matrix<F> red;
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<F> v = rows[r];
    for (std::size_t k = 0; k < red.size(); ++k) {
      const F factor = v[pivots[k]];
      if (Scalar<F>::is_zero(factor)) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = v[c] - factor * red[k][c];
    }
    int col = -1;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!Scalar<F>::is_zero(v[c]) && Scalar<F>::is_constant(v[c])) {
        col = static_cast<int>(c);
        break;
      }
    if (col < 0)
      for (std::size_t c = 0; c < v.size(); ++c)
        if (!Scalar<F>::is_zero(v[c])) {
          col = static_cast<int>(c);
          break;
        }
    if (col < 0) continue;
    if (loci) Scalar<F>::note_locus(*loci, v[static_cast<std::size_t>(col)]);
    const F inv = Scalar<F>::one() / v[static_cast<std::size_t>(col)];
    for (auto& x : v) x = x * inv;
    red.push_back(std::move(v));
    pivots.push_back(static_cast<std::size_t>(col));
    chosen.push_back(static_cast<int>(r));
  }
  return chosen;
}

// Is v in the row span of basis?
template <class F>
bool in_row_span(const Matrix<F>& basis, const std::vector<F>& v) {
  if (basis.empty()) {
    for (const auto& x : v)
      if (!Scalar<F>::is_zero(x)) return false;
    return true;
  }
  Matrix<F> cols;  // transpose: solve basis^T c = v
  const std::size_t n = basis[0].size();
  cols.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    cols[j].resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) cols[j][i] = basis[i][j];
  }
  return solve(cols, v).has_value();
}

}  // namespace linalg

}  // namespace eds
