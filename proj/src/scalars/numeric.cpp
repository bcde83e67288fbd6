#include "sdcert/scalars/numeric.hpp"

#include <cmath>
#include <sstream>

#include "sdcert/errors.hpp"

namespace sdcert {

namespace {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::floor(bits * 0.30102999566398120)) + 1;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

unsigned working_precision_bits() {
  return static_cast<unsigned>(std::ceil(Real::default_precision() / 0.30102999566398120));
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.value().get_mpq_t(), MPFR_RNDN);
  return r;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  const Real d = o.norm2();
  if (d == 0) throw DivisionByZero("complex division by zero");
  Real r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

Real Complex::abs() const { return boost::multiprecision::sqrt(norm2()); }

Real abs(const Complex& z) { return z.abs(); }

Complex sqrt(const Complex& z) {
  // Principal branch: non-negative real part, imaginary part of the sign of
  // z.im (branch cut on the negative real axis, where the root is +i*sqrt).
  if (z.im == 0) {
    if (z.re >= 0) return {boost::multiprecision::sqrt(z.re), Real(0)};
    return {Real(0), boost::multiprecision::sqrt(-z.re)};
  }
  const Real m = z.abs();
  Real a = boost::multiprecision::sqrt((m + z.re) / 2);
  Real b = boost::multiprecision::sqrt((m - z.re) / 2);
  if (z.im < 0) b = -b;
  return {std::move(a), std::move(b)};
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

std::string Complex::to_string(int digits) const {
  if (im == 0) return format_real(re, digits);
  std::string s = format_real(re, digits);
  s += im < 0 ? " - " : " + ";
  s += format_real(boost::multiprecision::abs(im), digits);
  s += "i";
  return s;
}

Complex principal_sqrt(const Rational& d) { return sqrt(Complex(to_real(d))); }

Complex to_complex(const QElem& x) {
  const auto& t = *x.tower();
  std::vector<Complex> gens;
  gens.reserve(t.num_active());
  for (std::size_t j = 0; j < t.num_active(); ++j)
    gens.push_back(principal_sqrt(t.layer(t.active_layer(j)).disc));
  Complex acc;
  for (LayerMask m = 0; m < x.coeffs().size(); ++m) {
    if (x.coeffs()[m].is_zero()) continue;
    Complex term(to_real(x.coeffs()[m]));
    for (std::size_t j = 0; j < gens.size(); ++j)
      if ((m & (LayerMask{1} << j)) != 0) term *= gens[j];
    acc += term;
  }
  return acc;
}

}  // namespace sdcert
