#include "sdcert/scalars/rational.hpp"

#include <cctype>

#include "sdcert/errors.hpp"

namespace sdcert {

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty rational literal");

  auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto to_mpz = [](std::string_view t) {
    if (!t.empty() && t[0] == '+') t.remove_prefix(1);
    return mpz_class(std::string(t));
  };

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string_view n(s.data(), slash);
    const std::string_view d(s.data() + slash + 1, s.size() - slash - 1);
    if (!valid_int(n) || !valid_int(d)) throw ParseError("bad rational literal: " + s);
    const mpz_class den = to_mpz(d);
    if (den == 0) throw DivisionByZero("rational literal with zero denominator: " + s);
    return Rational(mpq_class(to_mpz(n), den));
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    std::string_view ip(s.data(), dot);
    std::string_view fp(s.data() + dot + 1, s.size() - dot - 1);
    bool neg = false;
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) {
      neg = ip[0] == '-';
      ip.remove_prefix(1);
    }
    if (ip.empty() && fp.empty()) throw ParseError("bad decimal literal: " + s);
    if ((!ip.empty() && !valid_int(ip)) || (!fp.empty() && !valid_int(fp)) ||
        (!fp.empty() && (fp[0] == '-' || fp[0] == '+')))
      throw ParseError("bad decimal literal: " + s);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class whole = ip.empty() ? mpz_class(0) : to_mpz(ip);
    mpz_class frac = fp.empty() ? mpz_class(0) : to_mpz(fp);
    mpq_class q(whole * scale + frac, scale);
    if (neg) q = -q;
    return Rational(q);
  }
  if (!valid_int(s)) throw ParseError("bad integer literal: " + s);
  return Rational(to_mpz(s));
}

std::optional<mpz_class> sqrt_exact(const mpz_class& n) {
  if (sgn(n) < 0) return std::nullopt;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Rational> Rational::sqrt_exact() const {
  auto n = sdcert::sqrt_exact(q_.get_num());
  if (!n) return std::nullopt;
  auto d = sdcert::sqrt_exact(q_.get_den());
  if (!d) return std::nullopt;
  return Rational(mpq_class(*n, *d));
}

}  // namespace sdcert
