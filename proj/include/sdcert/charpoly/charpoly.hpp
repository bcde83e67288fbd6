#pragma once

#include <array>
#include <string>

#include "sdcert/config.hpp"
#include "sdcert/rep/mat4.hpp"

namespace sdcert {

/// Monic quartic c0 + c1 Q + c2 Q^2 + c3 Q^3 + Q^4.
template <class S>
struct Poly4 {
  std::array<S, 5> c;

  std::string to_string() const;
};

/// det(Q*I - m) by the Faddeev-LeVerrier trace recursion.
template <class S>
Poly4<S> char_poly(const Mat4<S>& m);

/// Coefficient sequence equal to its reversal.
template <class S>
bool is_palindromic(const Poly4<S>& chi) {
  return chi.c[0] == chi.c[4] && chi.c[1] == chi.c[3];
}

/// (p, q, r) with chi = 1 - (p - q s) Q + r Q^2 - (p + q s) Q^3 + Q^4 and
/// s = sqrt(v^2 - 4); equivalently tr = p + q s and tr of the inverse is
/// p - q s.
template <class F>
struct CharShape {
  F p, q, r;
  /// All three have denominator 1.
  bool polynomial = false;
};

/// Reads the shape off chi over a tower whose first declared layer is
/// sqrt(v^2 - 4) and is active. Throws ShapeViolation if a coefficient has
/// a component outside that shape, DegenerateContext if the first layer is
/// not active.
template <class F>
CharShape<F> shape_decompose(const Poly4<TowerElem<F>>& chi);

/// Rebuilds chi from a shape in the given tower.
template <class F>
Poly4<TowerElem<F>> reconstruct(const CharShape<F>& s, const std::shared_ptr<const Tower<F>>& t);

enum class Tri { Yes, No, Inconclusive };
std::string to_string(Tri t);

struct EigenReport {
  std::array<Complex, 4> eigenvalues;  // sorted by decreasing modulus
  std::array<Real, 4> moduli;
  Real gap_top;     // m1/m2 - 1
  Real gap_bottom;  // m3/m4 - 1
  Tri biproximal = Tri::Inconclusive;
  Complex l1l4;
  bool l1l4_real = false;
  Real l2l3;        // |lambda_2 lambda_3|
  Tri obstruction = Tri::Inconclusive;  // |lambda_2 lambda_3| != 1
  Real max_residual;                    // max |chi(lambda_i)| / (1 + |lambda_i|)^4
};

/// Roots of chi(m) by shifted QR on the companion matrix followed by Newton
/// polishing. Throws ConvergenceFailure when QR does not converge or the
/// polished residual stays above 1e-8 (1 + |lambda|)^4.
EigenReport eigen_report(const Mat4<Complex>& m, const Config& cfg = {});

/// Roots of a monic quartic, sorted by decreasing modulus.
std::array<Complex, 4> quartic_roots(const Poly4<Complex>& chi);

/// Entry-wise principal-branch evaluation of an exact matrix.
Mat4<Complex> to_numeric(const Mat4<QElem>& m);

Complex evaluate(const Poly4<Complex>& chi, const Complex& z);

extern template Poly4<QvElem> char_poly(const Mat4<QvElem>&);
extern template Poly4<QElem> char_poly(const Mat4<QElem>&);
extern template Poly4<Complex> char_poly(const Mat4<Complex>&);
extern template CharShape<RatFunc> shape_decompose(const Poly4<QvElem>&);
extern template CharShape<Rational> shape_decompose(const Poly4<QElem>&);

}  // namespace sdcert
