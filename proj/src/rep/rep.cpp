#include "sdcert/rep/rep.hpp"

namespace sdcert {

namespace {

template <class S>
void require_nonzero(const S& x, const std::string& what) {
  if (ScalarTraits<S>::is_zero(x)) throw PoleAtSpecialization(what + " vanishes");
}

void require_nonzero(const Complex& x, const std::string& what) {
  const Real eps = boost::multiprecision::pow(Real(2), -static_cast<int>(working_precision_bits() / 2));
  if (x.abs() <= eps) throw PoleAtSpecialization(what + " vanishes");
}

}  // namespace

SymbolicPoint symbolic_point() {
  auto t = symbolic_tower();
  return SymbolicPoint{t, t->constant(RatFunc(IntPoly::variable())), t->root(0), t->root(1),
                       "symbolic"};
}

template <class S>
std::pair<Mat4<S>, Mat4<S>> generator_matrices(const S& v, const S& s1, const S& s2) {
  using T = ScalarTraits<S>;
  auto k = [&](long n, long d = 1) { return T::from_rational(v, Rational(n, d)); };
  const S v2 = v * v;
  const S vp8 = v2 + k(8);
  require_nonzero(vp8, "v^2 + 8");
  const S r = (s1 * s2) / vp8;

  Mat4<S> u = Mat4<S>::zero(v);
  u(0, 0) = k(1);
  u(1, 1) = k(1);
  u(2, 2) = r;
  u(2, 3) = k(1);
  u(3, 2) = (k(-2) * (v2 + k(2))) / vp8;
  u(3, 3) = -r;

  Mat4<S> c = Mat4<S>::zero(v);
  const S vs2 = v * s2;
  c(0, 0) = (v + s2) * k(1, 4);
  c(0, 2) = (k(4) - v2 - vs2) * k(1, 8);
  c(1, 1) = (v - s2) * k(1, 4);
  c(1, 3) = (k(-4) + v2 - vs2) * k(1, 8);
  c(2, 0) = k(1);
  c(2, 2) = (-v - s2) * k(1, 4);
  c(3, 1) = k(-1);
  c(3, 3) = (-v + s2) * k(1, 4);
  return {std::move(u), std::move(c)};
}

namespace {

template <class P>
auto generators_at(const P& p) {
  return generator_matrices(p.v, p.sqrt_vm4, p.sqrt_vp8);
}

}  // namespace

template <class S>
Representation<S>::Representation(Point p) : point_(std::move(p)) {
  auto [u, c] = generators_at(point_);
  u_ = std::move(u);
  c_ = std::move(c);
  U_ = u_.inverse();
  C_ = c_.inverse();
}

template <class S>
const Mat4<S>& Representation<S>::letter(char x) const {
  switch (x) {
    case 'u': return u_;
    case 'c': return c_;
    case 'U': return U_;
    case 'C': return C_;
    default: throw Error(std::string("letter '") + x + "' is not a generator");
  }
}

template <class S>
Mat4<S> Representation<S>::product(const Word& expanded) const {
  const std::string& s = expanded.letters();
  if (s.empty()) return identity();
  Mat4<S> m = letter(s[0]);
  for (std::size_t i = 1; i < s.size(); ++i) m = m * letter(s[i]);
  return m;
}

template <class S>
Mat4<S> Representation<S>::evaluate(const Word& w) const {
  return product(w.expand());
}

template <class S>
Mat4<S> Representation<S>::evaluate_unreduced(const Word& w) const {
  return product(w.expand(false));
}

template class Representation<QvElem>;
template class Representation<QElem>;
template class Representation<Complex>;
template std::pair<Mat4<QvElem>, Mat4<QvElem>> generator_matrices(const QvElem&, const QvElem&,
                                                                  const QvElem&);
template std::pair<Mat4<QElem>, Mat4<QElem>> generator_matrices(const QElem&, const QElem&,
                                                                const QElem&);
template std::pair<Mat4<Complex>, Mat4<Complex>> generator_matrices(const Complex&, const Complex&,
                                                                    const Complex&);

std::shared_ptr<const SymbolicRep> symbolic_rep() {
  static const auto rep = std::make_shared<const SymbolicRep>(symbolic_point());
  return rep;
}

std::shared_ptr<const ExactRep> exact_rep(const Rational& v0) {
  return std::make_shared<const ExactRep>(exact_point(v0));
}

std::shared_ptr<const ExactRep> exact_rep_isqrt2() {
  return std::make_shared<const ExactRep>(exact_point_isqrt2());
}

std::shared_ptr<const NumericRep> numeric_rep(const Complex& v0) {
  return std::make_shared<const NumericRep>(numeric_point(v0));
}

AnyRep parse_context(std::string_view text) {
  std::string s;
  for (char x : text)
    if (!std::isspace(static_cast<unsigned char>(x))) s.push_back(x);
  if (s == "symbolic") return symbolic_rep();
  if (s == "v=i*sqrt(2)") return exact_rep_isqrt2();
  if (s.rfind("numeric:v=", 0) == 0) {
    return numeric_rep(Complex(to_real(Rational::parse(s.substr(10)))));
  }
  if (s.rfind("v=", 0) == 0) return exact_rep(Rational::parse(s.substr(2)));
  throw ParseError("unknown context '" + std::string(text) +
                   "' (expected symbolic, v=<rational>, v=i*sqrt(2) or numeric:v=<decimal>)");
}

}  // namespace sdcert
