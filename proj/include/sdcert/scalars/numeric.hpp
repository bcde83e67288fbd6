#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

#include "sdcert/scalars/rational.hpp"
#include "sdcert/scalars/tower.hpp"

namespace sdcert {

/// Variable-precision binary floating point (MPFR). The working precision is
/// process-wide; set it once with PrecisionScope before spawning workers.
using Real = boost::multiprecision::mpfr_float;

/// Sets the default working precision (in bits) for newly created Reals and
/// restores the previous value on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

unsigned working_precision_bits();

Real to_real(const Rational& q);

struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long n) : re(n), im(0) {}  // NOLINT(google-explicit-constructor)

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return {-re, -im}; }

  Complex conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }
  Real abs() const;
  bool is_zero() const { return re == 0 && im == 0; }

  std::string to_string(int digits = 20) const;
};

Complex sqrt(const Complex& z);
Real abs(const Complex& z);

/// Which square-root branch was taken for one adjoined root.
struct BranchTag {
  std::string root;    // e.g. "sqrt(v^2-4)"
  std::string branch;  // e.g. "positive-real", "+i*sqrt(4-v^2)", "principal"
};

/// Result of numeric specialisation: a high-precision complex value plus the
/// branches that produced it.
struct NumericValue {
  Complex value;
  std::vector<BranchTag> branches;
};

/// Decimal rendering of a Real with the given number of significant digits.
std::string format_real(const Real& x, int digits = 20);

/// Principal branch value of an element of a Q-tower: positive discriminants
/// map to positive real roots, negative ones to i times a positive real.
Complex to_complex(const QElem& x);

/// Principal branch value of sqrt(d) for rational d.
Complex principal_sqrt(const Rational& d);

}  // namespace sdcert
