#include "sdcert/scalars/int_poly.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <utility>

#include "sdcert/errors.hpp"

namespace sdcert {

IntPoly::IntPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

IntPoly::IntPoly(mpz_class c) {
  if (sgn(c) != 0) c_.push_back(std::move(c));
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::variable() { return IntPoly(std::vector<mpz_class>{0, 1}); }

void IntPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return *this;
  const mpz_class g = content();
  return g == 1 ? *this : divexact(g);
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
  }
  IntPoly p;
  p.c_ = std::move(r);
  p.trim();
  return p;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) {
  *this = *this * o;
  return *this;
}

IntPoly& IntPoly::operator*=(const mpz_class& k) {
  if (sgn(k) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= k;
  return *this;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

IntPoly IntPoly::divexact(const mpz_class& k) const {
  IntPoly r = *this;
  for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
  return r;
}

std::optional<IntPoly> IntPoly::divexact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  if (b.degree() == 0) {
    for (const auto& x : a.c_)
      if (mpz_divisible_p(x.get_mpz_t(), b.c_[0].get_mpz_t()) == 0) return std::nullopt;
    return a.divexact(b.c_[0]);
  }
  std::vector<mpz_class> rem = a.c_;
  const std::size_t db = b.c_.size() - 1;
  std::vector<mpz_class> q(a.c_.size() - db);
  const mpz_class& lcb = b.lc();
  mpz_class t;
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class& top = rem[k + db];
    if (sgn(top) != 0) {
      if (mpz_divisible_p(top.get_mpz_t(), lcb.get_mpz_t()) == 0) return std::nullopt;
      mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lcb.get_mpz_t());
      for (std::size_t j = 0; j <= db; ++j)
        mpz_submul(rem[k + j].get_mpz_t(), q[k].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  for (std::size_t i = 0; i < db; ++i)
    if (sgn(rem[i]) != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

Rational IntPoly::evaluate(const Rational& x) const {
  if (is_zero()) return Rational(0);
  // Homogenised Horner on numerator/denominator to stay in integers.
  const mpz_class n = x.num();
  const mpz_class d = x.den();
  mpz_class acc = c_.back();
  mpz_class dpow = 1;
  for (std::size_t i = c_.size() - 1; i-- > 0;) {
    dpow *= d;
    acc = acc * n + c_[i] * dpow;
  }
  return Rational(mpq_class(acc, dpow));
}

mpz_class IntPoly::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= x;
    acc += c_[i];
  }
  return acc;
}

std::optional<IntPoly> IntPoly::sqrt_exact() const {
  if (is_zero()) return IntPoly{};
  if (degree() % 2 != 0) return std::nullopt;
  auto top = sdcert::sqrt_exact(lc());
  if (!top) return std::nullopt;
  const std::size_t m = static_cast<std::size_t>(degree() / 2);
  std::vector<mpz_class> r(m + 1);
  r[m] = *top;
  const mpz_class two_top = 2 * *top;
  for (std::size_t k = 1; k <= m; ++k) {
    const std::size_t target = 2 * m - k;
    mpz_class acc = c_[target];
    for (std::size_t i = m - k + 1; i <= m; ++i) {
      const std::size_t j = target - i;
      if (j < m - k + 1 || j > m) continue;
      acc -= r[i] * r[j];
    }
    if (mpz_divisible_p(acc.get_mpz_t(), two_top.get_mpz_t()) == 0) return std::nullopt;
    mpz_divexact(r[m - k].get_mpz_t(), acc.get_mpz_t(), two_top.get_mpz_t());
  }
  IntPoly root(std::move(r));
  if (root * root != *this) return std::nullopt;
  return root;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const mpz_class& c = c_[i];
    if (sgn(c) == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e != 0) {
    if ((e & 1U) != 0) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

std::vector<u64> reduce_mod(const IntPoly& f, u64 p) {
  std::vector<u64> r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// Degree of gcd(a, b) over F_p; -1 if both vanish.
int gcd_degree_mod(std::vector<u64> a, std::vector<u64> b, u64 p) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const u64 inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size() && !a.empty()) {
      const u64 f = mulmod(a.back(), inv, p);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j)
        a[shift + j] = (a[shift + j] + p - mulmod(f, b[j], p)) % p;
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Cheap certificate that two primitive polynomials share no factor.
bool coprime_mod_p(const IntPoly& a, const IntPoly& b) {
  static constexpr std::array<u64, 3> kPrimes = {4611686018427387847ULL, 2305843009213693951ULL,
                                                 1152921504606846883ULL};
  for (u64 p : kPrimes) {
    if (mpz_fdiv_ui(a.lc().get_mpz_t(), p) == 0 || mpz_fdiv_ui(b.lc().get_mpz_t(), p) == 0)
      continue;
    return gcd_degree_mod(reduce_mod(a, p), reduce_mod(b, p), p) == 0;
  }
  return false;
}

mpz_class max_norm(const IntPoly& f) {
  mpz_class m = 0;
  for (const auto& c : f.coeffs()) {
    mpz_class a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

IntPoly interpolate_digits(mpz_class h, const mpz_class& x) {
  std::vector<mpz_class> digits;
  const mpz_class half = x / 2;
  mpz_class g;
  while (sgn(h) != 0) {
    mpz_fdiv_r(g.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
    if (g > half) g -= x;
    digits.push_back(g);
    h -= g;
    mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
  }
  return IntPoly(std::move(digits));
}

IntPoly normalize_sign(IntPoly f) {
  if (!f.is_zero() && sgn(f.lc()) < 0) return -f;
  return f;
}

// Heuristic gcd of two primitive polynomials of positive degree (Char,
// Geddes and Gonnet): evaluate at a large integer, take the integer gcd and
// read the polynomial back from its balanced digits.
std::optional<IntPoly> heuristic_gcd(const IntPoly& f, const IntPoly& g) {
  const mpz_class fn = max_norm(f);
  const mpz_class gn = max_norm(g);
  const mpz_class b = 2 * std::min(fn, gn) + 29;
  mpz_class sb;
  mpz_sqrt(sb.get_mpz_t(), b.get_mpz_t());
  const mpz_class lcq = 2 * std::min(mpz_class(fn / abs(f.lc())), mpz_class(gn / abs(g.lc()))) + 2;
  mpz_class x = std::max(std::min(b, mpz_class(99 * sb)), lcq);
  for (int attempt = 0; attempt < 6; ++attempt) {
    const mpz_class ff = f.evaluate(x);
    const mpz_class gg = g.evaluate(x);
    if (sgn(ff) != 0 && sgn(gg) != 0) {
      mpz_class h;
      mpz_gcd(h.get_mpz_t(), ff.get_mpz_t(), gg.get_mpz_t());
      IntPoly cand = normalize_sign(interpolate_digits(h, x).primitive_part());
      if (!cand.is_zero() && IntPoly::divexact(f, cand) && IntPoly::divexact(g, cand)) return cand;
    }
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    mpz_sqrt(r.get_mpz_t(), r.get_mpz_t());
    x = 73794 * x * r / 27011;
  }
  return std::nullopt;
}

// Primitive polynomial remainder sequence; slow but unconditional.
IntPoly prs_gcd(IntPoly a, IntPoly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    // Pseudo-remainder of a by b.
    IntPoly r = a;
    const mpz_class lcb = b.lc();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      const int shift = r.degree() - b.degree();
      std::vector<mpz_class> mono(static_cast<std::size_t>(shift) + 1);
      mono.back() = r.lc();
      r = r * IntPoly(lcb) - IntPoly(std::move(mono)) * b;
    }
    a = std::move(b);
    b = r.primitive_part();
  }
  return normalize_sign(a.primitive_part());
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  mpz_class cg;
  {
    const mpz_class ca = a.content();
    const mpz_class cb = b.content();
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  }
  if (a.is_constant() || b.is_constant()) return IntPoly(cg);
  const IntPoly pa = a.primitive_part();
  const IntPoly pb = b.primitive_part();
  if (pa == pb || pa == -pb) return normalize_sign(pa) * cg;
  if (IntPoly::divexact(pa, pb)) return normalize_sign(pb) * cg;
  if (IntPoly::divexact(pb, pa)) return normalize_sign(pa) * cg;
  if (coprime_mod_p(pa, pb)) return IntPoly(cg);
  if (auto h = heuristic_gcd(pa, pb)) return *h * cg;
  return prs_gcd(pa, pb) * cg;
}

}  // namespace sdcert
