#pragma once

#include <optional>
#include <vector>

#include "sdcert/errors.hpp"
#include "sdcert/scalars/traits.hpp"

namespace sdcert {

/// Size heuristic used to prefer small pivots during exact elimination.
inline std::size_t weight(const Rational& q) {
  return mpz_sizeinbase(q.value().get_num_mpz_t(), 2) + mpz_sizeinbase(q.value().get_den_mpz_t(), 2);
}
inline std::size_t weight(const RatFunc& f) {
  std::size_t w = 0;
  for (const auto& c : f.num().coeffs()) w += mpz_sizeinbase(c.get_mpz_t(), 2) + 1;
  for (const auto& c : f.den().coeffs()) w += mpz_sizeinbase(c.get_mpz_t(), 2) + 1;
  return w;
}
template <class F>
std::size_t weight(const TowerElem<F>& x) {
  std::size_t w = 0;
  for (const auto& c : x.coeffs())
    if (!c.is_zero()) w += weight(c);
  return w;
}

template <class S>
using Row = std::vector<S>;

/// Result of exact Gauss-Jordan elimination.
template <class S>
struct Elimination {
  std::vector<Row<S>> rref;        // non-zero rows, pivot entries equal to 1
  std::vector<std::size_t> pivot_cols;
  std::vector<S> pivots;           // pivot values before normalisation
  std::size_t rank() const { return pivot_cols.size(); }
};

/// Reduced row echelon form over a field. Among the candidate rows for a
/// pivot column the lightest pivot is chosen to limit coefficient growth.
template <class S>
Elimination<S> gauss_jordan(std::vector<Row<S>> rows, std::size_t ncols) {
  Elimination<S> out;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::optional<std::size_t> best;
    std::size_t best_w = 0;
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (rows[i][col].is_zero()) continue;
      const std::size_t w = weight(rows[i][col]);
      if (!best || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (!best) continue;
    std::swap(rows[r], rows[*best]);
    const S piv = rows[r][col];
    const S inv = piv.inverse();
    for (std::size_t j = col; j < ncols; ++j)
      if (!rows[r][j].is_zero()) rows[r][j] = rows[r][j] * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const S f = rows[i][col];
      for (std::size_t j = col; j < ncols; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
    }
    out.pivot_cols.push_back(col);
    out.pivots.push_back(piv);
    ++r;
  }
  rows.resize(r);
  out.rref = std::move(rows);
  return out;
}

/// Basis of the right nullspace, one vector per free column, with a 1 in
/// that column.
template <class S>
std::vector<Row<S>> nullspace_basis(const Elimination<S>& e, std::size_t ncols, const S& like) {
  using T = ScalarTraits<S>;
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Row<S>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Row<S> x(ncols, T::zero(like));
    x[free] = T::one(like);
    for (std::size_t k = 0; k < e.rank(); ++k) x[e.pivot_cols[k]] = -e.rref[k][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Incrementally maintained row-reduced basis; used for greedy rank growth.
template <class S>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ncols) : ncols_(ncols) {}

  std::size_t rank() const { return rows_.size(); }

  /// Reduces v against the basis; keeps it and returns true if independent.
  bool insert(Row<S> v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const S& f = v[pivots_[k]];
      if (f.is_zero()) continue;
      const S fk = f;
      for (std::size_t j = 0; j < ncols_; ++j)
        if (!rows_[k][j].is_zero()) v[j] -= fk * rows_[k][j];
    }
    std::optional<std::size_t> piv;
    for (std::size_t j = 0; j < ncols_; ++j)
      if (!v[j].is_zero()) {
        piv = j;
        break;
      }
    if (!piv) return false;
    const S inv = v[*piv].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x = x * inv;
    // Keep earlier rows reduced at the new pivot.
    for (auto& row : rows_) {
      if (row[*piv].is_zero()) continue;
      const S f = row[*piv];
      for (std::size_t j = 0; j < ncols_; ++j)
        if (!v[j].is_zero()) row[j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(*piv);
    return true;
  }

 private:
  std::size_t ncols_;
  std::vector<Row<S>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Determinant of a square matrix by elimination.
template <class S>
S determinant(std::vector<Row<S>> a, const S& like) {
  using T = ScalarTraits<S>;
  const std::size_t n = a.size();
  S det = T::one(like);
  for (std::size_t col = 0; col < n; ++col) {
    std::optional<std::size_t> best;
    std::size_t best_w = 0;
    for (std::size_t i = col; i < n; ++i) {
      if (a[i][col].is_zero()) continue;
      const std::size_t w = weight(a[i][col]);
      if (!best || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (!best) return T::zero(like);
    if (*best != col) {
      std::swap(a[col], a[*best]);
      det = -det;
    }
    const S inv = a[col][col].inverse();
    det = det * a[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a[i][col].is_zero()) continue;
      const S f = a[i][col] * inv;
      for (std::size_t j = col; j < n; ++j)
        if (!a[col][j].is_zero()) a[i][j] -= f * a[col][j];
    }
  }
  return det;
}

}  // namespace sdcert
