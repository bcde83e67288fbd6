#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sdcert/scalars/numeric.hpp"
#include "sdcert/scalars/tower.hpp"

namespace sdcert {

/// The symbolic tower Q(v)[sqrt(v^2-4), sqrt(v^2+8)] that hosts rho_v.
std::shared_ptr<const QvTower> symbolic_tower();

/// Target of an exact specialisation: a Q-tower together with the images of
/// v, sqrt(v^2-4) and sqrt(v^2+8).
struct ExactPoint {
  std::shared_ptr<const QTower> tower;
  QElem v;
  QElem sqrt_vm4;  // image of sqrt(v^2 - 4)
  QElem sqrt_vp8;  // image of sqrt(v^2 + 8)
  std::string label;
};

/// v = v0 rational: tower Q[sqrt(v0^2-4), sqrt(v0^2+8)] with degenerate
/// layers collapsed (v0 = 2 kills the first, v0 = 5/2 makes it 3/2).
ExactPoint exact_point(const Rational& v0);

/// v = i*sqrt(2): tower Q[sqrt(-2), sqrt(-6), sqrt(6)], v being the first
/// generator.
ExactPoint exact_point_isqrt2();

/// Numeric target: complex v with the chosen root values recorded.
struct NumericPoint {
  Complex v;
  Complex sqrt_vm4;
  Complex sqrt_vp8;
  std::vector<BranchTag> branches;
  std::string label;
};

/// Branch convention: for real v0 with |v0| >= 2 both roots are non-negative
/// reals; for v0 in (-2, 2), sqrt(v^2-4) = +i*sqrt(4-v^2) and sqrt(v^2+8) is
/// positive real; non-real v0 uses principal branches.
NumericPoint numeric_point(const Complex& v0);

/// Evaluates a polynomial at a tower element by Horner's rule.
QElem evaluate_at(const IntPoly& p, const QElem& x);

/// Ring map Q(v)-tower -> Q-tower. Throws PoleAtSpecialization when a
/// coefficient's denominator vanishes at the point.
QElem specialize(const QvElem& x, const ExactPoint& at);
Rational specialize(const RatFunc& f, const Rational& v0);

/// Numeric substitution; throws PoleAtSpecialization at (numerical) poles.
NumericValue specialize(const QvElem& x, const NumericPoint& at);
Complex evaluate_at(const RatFunc& f, const Complex& v0);

}  // namespace sdcert
