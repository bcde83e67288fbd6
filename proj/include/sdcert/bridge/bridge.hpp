#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sdcert/config.hpp"
#include "sdcert/forms/forms.hpp"
#include "sdcert/rep/mat4.hpp"

namespace sdcert {

/// 2x2 matrix [[a, b], [c, d]].
template <class S>
struct Mat2 {
  S a, b, c, d;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  S det() const { return a * d - b * c; }
  S trace() const { return a + d; }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

/// Matrix of H -> A^* H A on the Hermitian 2x2 matrices in the basis
/// (I, diag(1,-1), [[0,1],[1,0]], [[0,i],[-i,0]]), coordinates (t, z, x, y).
/// Row k holds the coordinates of the image of the k-th basis element, so
/// tau(AB) = tau(A) tau(B). Exact inputs must live in a tower containing
/// sqrt(-1); the result then has entries in the base field.
Mat4<QElem> tau(const Mat2<QElem>& A);
Mat4<Complex> tau(const Mat2<Complex>& A);

/// J_M = diag(-1, 1, 1, 1).
Mat4<Complex> minkowski_form();
/// Max-norm of m^T J_M m - J_M.
Real minkowski_check(const Mat4<Complex>& m);
bool preserves_minkowski(const Mat4<QElem>& m);

enum class IsometryType { Hyperbolic, Parabolic, Elliptic, Inconclusive };
std::string to_string(IsometryType t);

struct IsometryReport {
  IsometryType type = IsometryType::Inconclusive;
  std::array<Complex, 4> eigenvalues;
  Real form_residual;
  /// Condition number of the eigenvector matrix; 0 when not diagonalizable.
  Real eigenvector_condition;
  std::string reason;
};

/// Classifies m as an isometry of the form J (symmetric: m^T J m = J,
/// Hermitian: m^* J m = J). Throws NotAnIsometry when the relative form
/// residual exceeds cfg.isometry_residual.
IsometryReport classify_isometry(const Mat4<Complex>& m, const Mat4<Complex>& J, Symmetry sym,
                                 const Config& cfg = {});

/// One compared entry of a conjugated generator.
struct EntryCheck {
  char generator;  // 'u' or 'c'
  int row, col;    // 0-based
  std::string expected;
  std::string actual;
  bool match = false;
};

/// M^-1 rho(g) M at v = i*sqrt(2) for g = u, c.
struct ReductionResult {
  Mat4<QElem> u, c;
  Mat2<QElem> u_upper, u_lower, c_upper, c_lower;  // diagonal blocks
  std::vector<EntryCheck> entries;                 // 32 comparisons
  /// upper = sign * conj(lower) for each generator.
  int u_conj_sign = 0, c_conj_sign = 0;
  bool upper_right_zero = false;
  /// Determinants of u upper, u lower, c upper, c lower.
  std::array<QElem, 4> block_dets;
  bool blocks_det_one = false;
  /// det(upper) * det(lower) = 1 for both generators.
  bool block_det_products_one = false;
  bool c_lower_trace_zero = false;
};

/// Conjugates rho_{i sqrt 2}(u), rho_{i sqrt 2}(c) by the fixed permutation
/// matrix and checks them against the expected block matrices. Throws
/// StructureViolation naming the offending entries if an entry differs, the
/// upper-right blocks are not zero or the diagonal blocks are not conjugate
/// up to sign. Block determinants are recorded, not enforced: the expected
/// matrices themselves have blocks of determinant -i, i, -1, -1.
ReductionResult reduce_at_isqrt2();

/// The reference matrices, built in the tower Q[sqrt(-2), sqrt(-6), sqrt(6)].
Mat4<QElem> expected_reduced_u(const std::shared_ptr<const QTower>& t);
Mat4<QElem> expected_reduced_c(const std::shared_ptr<const QTower>& t);

struct BridgeSelfTest {
  int pairs = 0;
  Real max_hom_residual;        // |tau(AB) - tau(A) tau(B)|
  Real max_minkowski_residual;  // minkowski_check(tau(A))
  Real max_kernel_residual;     // |tau(-A) - tau(A)|
  int exact_pairs = 0;
  bool exact_ok = false;  // homomorphism, kernel and form exactly, on Q[i] inputs
  bool classification_ok = false;
  bool passed(const Real& tol) const {
    return max_hom_residual < tol && max_minkowski_residual < tol && max_kernel_residual == 0 && exact_ok &&
           classification_ok;
  }
};

/// Random SL(2,C) pairs (numeric) and Gaussian-rational pairs (exact).
BridgeSelfTest bridge_selftest(int pairs, std::uint64_t seed, const Config& cfg = {});

}  // namespace sdcert
