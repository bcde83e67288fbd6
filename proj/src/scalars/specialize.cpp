#include "sdcert/scalars/specialize.hpp"

namespace sdcert {

std::shared_ptr<const QvTower> symbolic_tower() {
  static const std::shared_ptr<const QvTower> tower = [] {
    const IntPoly v = IntPoly::variable();
    const IntPoly v2 = v * v;
    return QvTower::make({RatFunc(v2 - IntPoly(4)), RatFunc(v2 + IntPoly(8))},
                         {"sqrt(v^2-4)", "sqrt(v^2+8)"});
  }();
  return tower;
}

ExactPoint exact_point(const Rational& v0) {
  const Rational v2 = v0 * v0;
  auto t = QTower::make({v2 - Rational(4), v2 + Rational(8)});
  ExactPoint p{t, t->constant(v0), t->root(0), t->root(1), "v=" + v0.to_string()};
  return p;
}

ExactPoint exact_point_isqrt2() {
  auto t = QTower::make({Rational(-2), Rational(-6), Rational(6)});
  return ExactPoint{t, t->root(0), t->root(1), t->root(2), "v=i*sqrt(2)"};
}

NumericPoint numeric_point(const Complex& v0) {
  NumericPoint p;
  p.v = v0;
  const Complex v2 = v0 * v0;
  if (v0.im == 0) {
    const Real x2 = v0.re * v0.re;
    if (x2 >= 4) {
      p.sqrt_vm4 = Complex(boost::multiprecision::sqrt(Real(x2 - 4)));
      p.branches.push_back({"sqrt(v^2-4)", "non-negative real"});
    } else {
      p.sqrt_vm4 = Complex(Real(0), boost::multiprecision::sqrt(Real(4 - x2)));
      p.branches.push_back({"sqrt(v^2-4)", "+i*sqrt(4-v^2)"});
    }
    p.sqrt_vp8 = Complex(boost::multiprecision::sqrt(Real(x2 + 8)));
    p.branches.push_back({"sqrt(v^2+8)", "positive real"});
    p.label = "numeric:v=" + format_real(v0.re, 30);
  } else {
    p.sqrt_vm4 = sqrt(v2 - Complex(4));
    p.sqrt_vp8 = sqrt(v2 + Complex(8));
    p.branches.push_back({"sqrt(v^2-4)", "principal"});
    p.branches.push_back({"sqrt(v^2+8)", "principal"});
    p.label = "numeric:v=" + v0.to_string(30);
  }
  return p;
}

QElem evaluate_at(const IntPoly& p, const QElem& x) {
  QElem acc = x.tower()->zero();
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * x;
    acc += x.tower()->constant(Rational(p.coeffs()[i]));
  }
  return acc;
}

Rational specialize(const RatFunc& f, const Rational& v0) { return f.evaluate(v0); }

namespace {

QElem specialize_coeff(const RatFunc& f, const ExactPoint& at) {
  if (at.v.in_base()) return at.tower->constant(f.evaluate(at.v.base_part()));
  const QElem d = evaluate_at(f.den(), at.v);
  if (d.is_zero())
    throw PoleAtSpecialization("denominator " + f.den().to_string() + " vanishes at " + at.label);
  return evaluate_at(f.num(), at.v) / d;
}

}  // namespace

QElem specialize(const QvElem& x, const ExactPoint& at) {
  const auto& src = *x.tower();
  // Images of the active symbolic generators.
  std::vector<QElem> gens;
  for (std::size_t j = 0; j < src.num_active(); ++j) {
    const std::size_t layer = src.active_layer(j);
    gens.push_back(layer == 0 ? at.sqrt_vm4 : at.sqrt_vp8);
  }
  QElem acc = at.tower->zero();
  for (LayerMask m = 0; m < x.coeffs().size(); ++m) {
    if (x.coeffs()[m].is_zero()) continue;
    QElem term = specialize_coeff(x.coeffs()[m], at);
    for (std::size_t j = 0; j < gens.size(); ++j)
      if ((m & (LayerMask{1} << j)) != 0) term *= gens[j];
    acc += term;
  }
  return acc;
}

namespace {

Complex evaluate_poly(const IntPoly& p, const Complex& x) {
  Complex acc;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc *= x;
    Real c;
    mpfr_set_z(c.backend().data(), p.coeffs()[i].get_mpz_t(), MPFR_RNDN);
    acc += Complex(c);
  }
  return acc;
}

}  // namespace

Complex evaluate_at(const RatFunc& f, const Complex& v0) {
  const Complex d = evaluate_poly(f.den(), v0);
  // A numerically vanishing denominator is a pole as far as we can tell.
  if (d.abs() <= boost::multiprecision::pow(Real(2), -static_cast<int>(working_precision_bits() / 2)))
    throw PoleAtSpecialization("denominator " + f.den().to_string() + " vanishes at v = " +
                               v0.to_string());
  return evaluate_poly(f.num(), v0) / d;
}

NumericValue specialize(const QvElem& x, const NumericPoint& at) {
  const auto& src = *x.tower();
  std::vector<Complex> gens;
  for (std::size_t j = 0; j < src.num_active(); ++j)
    gens.push_back(src.active_layer(j) == 0 ? at.sqrt_vm4 : at.sqrt_vp8);
  Complex acc;
  for (LayerMask m = 0; m < x.coeffs().size(); ++m) {
    if (x.coeffs()[m].is_zero()) continue;
    Complex term = evaluate_at(x.coeffs()[m], at.v);
    for (std::size_t j = 0; j < gens.size(); ++j)
      if ((m & (LayerMask{1} << j)) != 0) term *= gens[j];
    acc += term;
  }
  return NumericValue{acc, at.branches};
}

}  // namespace sdcert
