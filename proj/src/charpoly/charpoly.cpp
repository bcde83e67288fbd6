#include "sdcert/charpoly/charpoly.hpp"

#include <algorithm>

namespace sdcert {

template <class S>
std::string Poly4<S>::to_string() const {
  std::string s = "Q^4";
  for (int k = 3; k >= 0; --k) {
    if (ScalarTraits<S>::is_zero(c[static_cast<std::size_t>(k)])) continue;
    s += " + (" + ScalarTraits<S>::to_string(c[static_cast<std::size_t>(k)]) + ")";
    if (k >= 1) s += "*Q";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

template <class S>
Poly4<S> char_poly(const Mat4<S>& m) {
  using T = ScalarTraits<S>;
  const S& like = m.like();
  Poly4<S> chi;
  chi.c[4] = T::one(like);
  // B_0 = I; A_k = m B_{k-1}; c_{4-k} = -tr(A_k)/k; B_k = A_k + c_{4-k} I.
  Mat4<S> B = Mat4<S>::identity(like);
  for (int k = 1; k <= 4; ++k) {
    Mat4<S> A = m * B;
    S ck = -(A.trace() * T::from_rational(like, Rational(1, k)));
    chi.c[static_cast<std::size_t>(4 - k)] = ck;
    if (k < 4) {
      for (int i = 0; i < 4; ++i) A(i, i) += ck;
      B = std::move(A);
    }
  }
  return chi;
}

namespace {

bool unit_denominator(const RatFunc& f) { return f.den().degree() == 0; }
bool unit_denominator(const Rational&) { return true; }

}  // namespace

template <class F>
CharShape<F> shape_decompose(const Poly4<TowerElem<F>>& chi) {
  const auto& t = *chi.c[0].tower();
  if (t.num_layers() == 0 || t.layer(0).kind != Tower<F>::LayerKind::Active)
    throw DegenerateContext("shape decomposition needs sqrt(v^2-4) as an active layer");
  const LayerMask s1 = LayerMask{1} << t.layer(0).active_index;

  auto fail = [](const std::string& what) { throw ShapeViolation(what); };
  if (!chi.c[4].is_one() || !chi.c[0].is_one()) fail("chi is not monic with constant term 1");
  if (!chi.c[2].in_base()) fail("Q^2 coefficient leaves the base field: " + chi.c[2].to_string());
  for (int k : {1, 3}) {
    const auto& ck = chi.c[static_cast<std::size_t>(k)];
    for (LayerMask m = 0; m < ck.coeffs().size(); ++m)
      if (m != 0 && m != s1 && !ck.coeffs()[m].is_zero())
        fail("Q^" + std::to_string(k) + " coefficient has a component outside Q(v) + Q(v)sqrt(v^2-4): " +
             ck.to_string());
  }
  const F a1 = chi.c[1].coeff(0), b1 = chi.c[1].coeff(s1);
  const F a3 = chi.c[3].coeff(0), b3 = chi.c[3].coeff(s1);
  // c1 = -(p - q s), c3 = -(p + q s).
  if (!(a1 == a3)) fail("rational parts of the Q and Q^3 coefficients differ");
  if (!(b1 == -b3)) fail("sqrt(v^2-4) parts of the Q and Q^3 coefficients are not opposite");
  CharShape<F> out;
  out.p = -a1;
  out.q = b1;
  out.r = chi.c[2].base_part();
  out.polynomial = unit_denominator(out.p) && unit_denominator(out.q) && unit_denominator(out.r);
  return out;
}

template <class F>
Poly4<TowerElem<F>> reconstruct(const CharShape<F>& s, const std::shared_ptr<const Tower<F>>& t) {
  const TowerElem<F> sq = t->root(0);
  const TowerElem<F> p = t->constant(s.p), q = t->constant(s.q);
  Poly4<TowerElem<F>> chi;
  chi.c[0] = t->one();
  chi.c[1] = -(p - q * sq);
  chi.c[2] = t->constant(s.r);
  chi.c[3] = -(p + q * sq);
  chi.c[4] = t->one();
  return chi;
}

template struct Poly4<QvElem>;
template struct Poly4<QElem>;
template struct Poly4<Complex>;
template Poly4<QvElem> char_poly(const Mat4<QvElem>&);
template Poly4<QElem> char_poly(const Mat4<QElem>&);
template Poly4<Complex> char_poly(const Mat4<Complex>&);
template CharShape<RatFunc> shape_decompose(const Poly4<QvElem>&);
template CharShape<Rational> shape_decompose(const Poly4<QElem>&);
template Poly4<QvElem> reconstruct(const CharShape<RatFunc>&, const std::shared_ptr<const QvTower>&);
template Poly4<QElem> reconstruct(const CharShape<Rational>&, const std::shared_ptr<const QTower>&);

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "true";
    case Tri::No: return "false";
    case Tri::Inconclusive: return "inconclusive";
  }
  return "?";
}

Mat4<Complex> to_numeric(const Mat4<QElem>& m) {
  std::array<Complex, 16> e;
  for (std::size_t i = 0; i < 16; ++i) e[i] = to_complex(m.entries()[i]);
  return Mat4<Complex>(std::move(e));
}

Complex evaluate(const Poly4<Complex>& chi, const Complex& z) {
  Complex acc(1);
  for (int k = 3; k >= 0; --k) acc = acc * z + chi.c[static_cast<std::size_t>(k)];
  return acc;
}

namespace {

Complex derivative(const Poly4<Complex>& chi, const Complex& z) {
  Complex acc(4);
  for (int k = 3; k >= 1; --k) acc = acc * z + chi.c[static_cast<std::size_t>(k)] * Complex(k);
  return acc;
}

using Hess = std::array<std::array<Complex, 4>, 4>;

// Eigenvalues of a 2x2 block; returns the one closer to d.
Complex wilkinson_shift(const Complex& a, const Complex& b, const Complex& c, const Complex& d) {
  const Complex half_tr = (a + d) * Complex(Real("0.5"));
  const Complex half_diff = (a - d) * Complex(Real("0.5"));
  const Complex disc = sqrt(half_diff * half_diff + b * c);
  const Complex l1 = half_tr + disc, l2 = half_tr - disc;
  return (l1 - d).abs() <= (l2 - d).abs() ? l1 : l2;
}

// One shifted QR sweep on the unreduced block [lo, hi] by Givens rotations.
void qr_step(Hess& H, int lo, int hi, const Complex& mu) {
  for (int i = lo; i <= hi; ++i) H[i][i] -= mu;
  std::array<std::pair<Complex, Complex>, 4> rot;
  for (int k = lo; k < hi; ++k) {
    const Complex x = H[k][k], y = H[k + 1][k];
    const Real r = boost::multiprecision::sqrt(x.norm2() + y.norm2());
    Complex c(1), s(0);
    if (r != 0) {
      c = x / Complex(r);
      s = y / Complex(r);
    }
    rot[static_cast<std::size_t>(k)] = {c, s};
    for (int j = k; j <= hi; ++j) {
      const Complex hk = H[k][j], hk1 = H[k + 1][j];
      H[k][j] = c.conj() * hk + s.conj() * hk1;
      H[k + 1][j] = -s * hk + c * hk1;
    }
  }
  for (int k = lo; k < hi; ++k) {
    const auto& [c, s] = rot[static_cast<std::size_t>(k)];
    for (int i = lo; i <= std::min(k + 2, hi); ++i) {
      const Complex hk = H[i][k], hk1 = H[i][k + 1];
      H[i][k] = hk * c + hk1 * s;
      H[i][k + 1] = -(hk * s.conj()) + hk1 * c.conj();
    }
  }
  for (int i = lo; i <= hi; ++i) H[i][i] += mu;
}

}  // namespace

std::array<Complex, 4> quartic_roots(const Poly4<Complex>& chi) {
  // Companion matrix in upper Hessenberg form.
  Hess H;
  for (int j = 0; j < 4; ++j) H[0][j] = -chi.c[static_cast<std::size_t>(3 - j)];
  for (int i = 1; i < 4; ++i) H[i][i - 1] = Complex(1);

  const Real eps = boost::multiprecision::pow(Real(2), -static_cast<int>(working_precision_bits()));
  std::array<Complex, 4> roots;
  int hi = 3;
  int iter = 0, since_deflation = 0;
  while (hi >= 0) {
    if (hi == 0) {
      roots[0] = H[0][0];
      break;
    }
    int lo = hi;
    while (lo > 0) {
      const Real scale = H[lo][lo].abs() + H[lo - 1][lo - 1].abs();
      if (H[lo][lo - 1].abs() <= eps * (scale == 0 ? Real(1) : scale)) {
        H[lo][lo - 1] = Complex();
        break;
      }
      --lo;
    }
    if (lo == hi) {
      roots[static_cast<std::size_t>(hi)] = H[hi][hi];
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++iter > 400) throw ConvergenceFailure("companion QR did not converge");
    Complex mu;
    if (++since_deflation % 11 == 0) {
      // Exceptional shift to break cycles.
      mu = H[hi][hi] + Complex(H[hi][hi - 1].abs() * Real("0.75"));
    } else {
      mu = wilkinson_shift(H[hi - 1][hi - 1], H[hi - 1][hi], H[hi][hi - 1], H[hi][hi]);
    }
    qr_step(H, lo, hi, mu);
  }

  // Newton polishing; stops when the residual no longer decreases.
  for (auto& z : roots) {
    Complex fz = evaluate(chi, z);
    for (int k = 0; k < 100 && !fz.is_zero(); ++k) {
      const Complex d = derivative(chi, z);
      if (d.is_zero()) break;
      const Complex next = z - fz / d;
      const Complex fn = evaluate(chi, next);
      if (fn.abs() >= fz.abs()) break;
      z = next;
      fz = fn;
    }
  }

  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    const Real ma = a.abs(), mb = b.abs();
    if (ma != mb) return ma > mb;
    if (a.im != b.im) return a.im > b.im;
    return a.re > b.re;
  });
  return roots;
}

EigenReport eigen_report(const Mat4<Complex>& m, const Config& cfg) {
  const Poly4<Complex> chi = char_poly(m);
  EigenReport rep;
  rep.eigenvalues = quartic_roots(chi);
  rep.max_residual = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex& z = rep.eigenvalues[i];
    rep.moduli[i] = z.abs();
    const Real scale = boost::multiprecision::pow(Real(1) + rep.moduli[i], 4);
    rep.max_residual = std::max(rep.max_residual, Real(evaluate(chi, z).abs() / scale));
  }
  if (rep.max_residual >= Real("1e-8"))
    throw ConvergenceFailure("root polishing stalled with residual " + format_real(rep.max_residual, 6));

  const Real huge("1e300");
  rep.gap_top = rep.moduli[1] == 0 ? huge : Real(rep.moduli[0] / rep.moduli[1] - 1);
  rep.gap_bottom = rep.moduli[3] == 0 ? huge : Real(rep.moduli[2] / rep.moduli[3] - 1);
  const Real tol(cfg.gap_tol);
  const Real equal_below = tol / 100;
  if (rep.gap_top > tol && rep.gap_bottom > tol) rep.biproximal = Tri::Yes;
  else if (rep.gap_top < equal_below || rep.gap_bottom < equal_below) rep.biproximal = Tri::No;
  else rep.biproximal = Tri::Inconclusive;

  rep.l1l4 = rep.eigenvalues[0] * rep.eigenvalues[3];
  rep.l1l4_real = boost::multiprecision::abs(rep.l1l4.im) <= Real(cfg.real_tol) * rep.l1l4.abs();
  rep.l2l3 = rep.moduli[1] * rep.moduli[2];
  const Real dist = boost::multiprecision::abs(Real(rep.l2l3 - 1));
  if (dist > tol) rep.obstruction = Tri::Yes;
  else if (dist <= Real(cfg.unit_band)) rep.obstruction = Tri::No;
  else rep.obstruction = Tri::Inconclusive;
  return rep;
}

}  // namespace sdcert
