#include "sdcert/scalars/rational_function.hpp"

#include "sdcert/errors.hpp"

namespace sdcert {

RatFunc::RatFunc(const Rational& q) : num_(q.num()), den_(q.den()) {}

RatFunc::RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = IntPoly(1);
    return;
  }
  const IntPoly g = gcd(num_, den_);
  if (!(g.is_constant() && g[0] == 1)) {
    num_ = *IntPoly::divexact(num_, g);
    den_ = *IntPoly::divexact(den_, g);
  }
  if (sgn(den_.lc()) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

namespace {

bool is_unit_one(const IntPoly& p) { return p.is_constant() && !p.is_zero() && p[0] == 1; }

IntPoly quo(const IntPoly& a, const IntPoly& b) {
  if (is_unit_one(b)) return a;
  return *IntPoly::divexact(a, b);
}

}  // namespace

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (num_.is_zero()) {
      den_ = IntPoly(1);
    } else if (!is_unit_one(den_)) {
      const IntPoly g = gcd(num_, den_);
      if (!is_unit_one(g)) {
        num_ = quo(num_, g);
        den_ = quo(den_, g);
      }
    }
    return *this;
  }
  // Henrici: only the gcd of the denominators can reappear in the numerator.
  const IntPoly g = gcd(den_, o.den_);
  if (is_unit_one(g)) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    if (num_.is_zero()) den_ = IntPoly(1);
    return *this;
  }
  const IntPoly b1 = quo(den_, g);
  const IntPoly d1 = quo(o.den_, g);
  IntPoly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) {
    num_ = IntPoly{};
    den_ = IntPoly(1);
    return *this;
  }
  const IntPoly g2 = gcd(n, g);
  num_ = quo(n, g2);
  den_ = b1 * quo(o.den_, g2);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc{};
  const bool a_poly = is_unit_one(a.den_);
  const bool b_poly = is_unit_one(b.den_);
  if (a_poly && b_poly) return RatFunc(a.num_ * b.num_, IntPoly(1), RatFunc::Reduced{});
  const IntPoly g1 = b_poly ? IntPoly(1) : gcd(a.num_, b.den_);
  const IntPoly g2 = a_poly ? IntPoly(1) : gcd(b.num_, a.den_);
  return RatFunc(quo(a.num_, g1) * quo(b.num_, g2), quo(a.den_, g2) * quo(b.den_, g1),
                 RatFunc::Reduced{});
}

RatFunc& RatFunc::operator*=(const RatFunc& o) { return *this = *this * o; }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  if (sgn(num_.lc()) < 0) return RatFunc(-den_, -num_, Reduced{});
  return RatFunc(den_, num_, Reduced{});
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this = *this * o.inverse(); }

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

Rational RatFunc::evaluate(const Rational& x) const {
  const Rational d = den_.evaluate(x);
  if (d.is_zero())
    throw PoleAtSpecialization("denominator " + den_.to_string() + " vanishes at v = " +
                               x.to_string());
  return num_.evaluate(x) / d;
}

std::optional<RatFunc> RatFunc::sqrt_exact() const {
  auto n = num_.sqrt_exact();
  if (!n) return std::nullopt;
  auto d = den_.sqrt_exact();
  if (!d) return std::nullopt;
  IntPoly dn = std::move(*d);
  IntPoly nn = std::move(*n);
  if (sgn(dn.lc()) < 0) {
    dn = -dn;
    nn = -nn;
  }
  return RatFunc(std::move(nn), std::move(dn), Reduced{});
}

std::string RatFunc::to_string() const {
  if (is_unit_one(den_)) return num_.to_string();
  auto wrap = [](const IntPoly& p) {
    const std::string s = p.to_string();
    return s.find(' ') == std::string::npos ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

}  // namespace sdcert
