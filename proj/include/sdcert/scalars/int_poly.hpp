#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "sdcert/scalars/rational.hpp"

namespace sdcert {

/// Dense univariate polynomial with arbitrary-precision integer coefficients,
/// stored low degree first with no trailing zeros (zero is the empty vector).
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(long c);  // NOLINT(google-explicit-constructor)
  explicit IntPoly(mpz_class c);
  explicit IntPoly(std::vector<mpz_class> coeffs);

  /// The indeterminate v.
  static IntPoly variable();

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const mpz_class& lc() const { return c_.back(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& operator[](std::size_t i) const { return c_[i]; }

  /// Non-negative gcd of the coefficients (0 for the zero polynomial).
  mpz_class content() const;
  /// Quotient by the content, sign unchanged.
  IntPoly primitive_part() const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const mpz_class& k);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const mpz_class& k) { return a *= k; }
  IntPoly operator-() const;
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  /// Divides every coefficient by k; k must divide the content.
  IntPoly divexact(const mpz_class& k) const;
  /// Exact quotient a / b in Z[v], or nullopt when b does not divide a.
  static std::optional<IntPoly> divexact(const IntPoly& a, const IntPoly& b);

  Rational evaluate(const Rational& x) const;
  mpz_class evaluate(const mpz_class& x) const;

  /// Square root in Z[v] when this polynomial is a perfect square.
  std::optional<IntPoly> sqrt_exact() const;

  std::string to_string(const std::string& var = "v") const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

/// Greatest common divisor in Z[v], normalised to a positive leading
/// coefficient. gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

}  // namespace sdcert
