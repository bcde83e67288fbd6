#pragma once

#include <optional>
#include <string>

#include "sdcert/scalars/int_poly.hpp"
#include "sdcert/scalars/rational.hpp"

namespace sdcert {

/// Element of Q(v) as num/den with num, den in Z[v], gcd(num, den) = 1 in
/// Z[v] (content included) and den having a positive leading coefficient.
/// In Z[v] this normal form is unique, so equality is syntactic.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit RatFunc(const Rational& q);
  explicit RatFunc(IntPoly p) : num_(std::move(p)), den_(1) {}
  RatFunc(IntPoly num, IntPoly den);

  static RatFunc variable() { return RatFunc(IntPoly::variable()); }

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_ == den_; }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc inverse() const;

  /// Value at a rational point; throws PoleAtSpecialization if den vanishes.
  Rational evaluate(const Rational& x) const;

  std::optional<RatFunc> sqrt_exact() const;

  std::string to_string() const;

 private:
  struct Reduced {};
  RatFunc(IntPoly num, IntPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  IntPoly num_;
  IntPoly den_;
};

}  // namespace sdcert
