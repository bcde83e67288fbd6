#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace sdcert {

/// Arbitrary-precision element of Q, always in lowest terms with a positive
/// denominator (GMP canonical form).
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpz_class n) : q_(std::move(n)) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "n", "n/d" and finite decimal literals such as "2.5".
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Exact square root in Q when one exists (the non-negative root).
  std::optional<Rational> sqrt_exact() const;

  double to_double() const { return q_.get_d(); }
  std::string to_string() const { return q_.get_str(); }

 private:
  mpq_class q_{0};
};

/// Exact integer square root when n is a perfect square.
std::optional<mpz_class> sqrt_exact(const mpz_class& n);

}  // namespace sdcert
