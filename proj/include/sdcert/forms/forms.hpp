#pragma once

#include <string>
#include <vector>

#include "sdcert/config.hpp"
#include "sdcert/forms/linalg.hpp"
#include "sdcert/rep/mat4.hpp"

namespace sdcert {

enum class Symmetry { Symmetric, Antisymmetric, Hermitian };
std::string to_string(Symmetry s);
Symmetry parse_symmetry(std::string_view s);

/// Solution space of an invariance problem.
template <class S>
struct FormSpace {
  Symmetry symmetry = Symmetry::Symmetric;
  std::vector<Mat4<S>> basis;
  /// Norms (down to the base field) of the elimination pivots; the
  /// specialisations where the dimension can jump lie among their zeros.
  std::vector<std::string> pivot_norms;

  std::size_t dimension() const { return basis.size(); }
};

/// Forms J with g^T J g = J for all gens, restricted to symmetric or
/// antisymmetric J. A one-dimensional answer is scaled so that its first
/// non-zero entry (row-major) is 1.
template <class F>
FormSpace<TowerElem<F>> invariant_forms(const std::vector<Mat4<TowerElem<F>>>& gens, Symmetry symmetry);

/// Complex conjugation of an element of a Q-tower under principal branches:
/// negates the active layers with negative discriminant.
QElem complex_conjugate(const QElem& x);
Mat4<QElem> conjugate_transpose(const Mat4<QElem>& m);

/// Embeds a matrix into a tower that extends its own by further layers.
Mat4<QElem> embed(const Mat4<QElem>& m, const std::shared_ptr<const QTower>& target);

/// Exact Hermitian solve. The tower of the generators is extended by
/// sqrt(-1) (collapsing if already present); the basis lives in that tower.
/// A one-dimensional answer is scaled by its first non-zero diagonal entry.
FormSpace<QElem> invariant_hermitian(const std::vector<Mat4<QElem>>& gens);

/// Numeric Hermitian solve over 16 real parameters by singular value
/// thresholding of the stacked system.
struct NumericFormSpace {
  std::vector<Mat4<Complex>> basis;   // each scaled to max-entry 1
  std::vector<Real> singular_values;  // descending
  Real max_residual = 0;

  std::size_t dimension() const { return basis.size(); }
};
NumericFormSpace invariant_hermitian(const std::vector<Mat4<Complex>>& gens, const Config& cfg = {});

struct Signature {
  int positives = 0;
  int negatives = 0;
  int zeros = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
  Signature flipped() const { return {negatives, positives, zeros}; }
  std::string to_string() const;
};

/// Exact congruence diagonalisation; `hermitian` selects J = J^* instead of
/// J = J^T. Signs of the (real) diagonal entries are read off numerically.
Signature signature(const Mat4<QElem>& J, bool hermitian);
/// Eigenvalue signs of a numeric Hermitian matrix.
Signature signature(const Mat4<Complex>& J, const Config& cfg = {});

extern template FormSpace<QElem> invariant_forms(const std::vector<Mat4<QElem>>&, Symmetry);
extern template FormSpace<QvElem> invariant_forms(const std::vector<Mat4<QvElem>>&, Symmetry);

}  // namespace sdcert
