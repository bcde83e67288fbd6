#include "sdcert/bridge/bridge.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <random>
#include <sstream>

#include "../forms/eigen_mpfr.hpp"
#include "sdcert/charpoly/charpoly.hpp"
#include "sdcert/errors.hpp"
#include "sdcert/rep/rep.hpp"

namespace sdcert {

namespace {

// sqrt(-1) as an element of t, if t contains it.
std::optional<QElem> find_i(const std::shared_ptr<const QTower>& t) {
  for (LayerMask m = 1; m < t->dim(); ++m) {
    const QElem x = t->monomial(m);
    const QElem sq = x * x;
    if (!sq.in_base() || sq.base_part().sign() >= 0) continue;
    if (auto s = (-sq.base_part()).sqrt_exact()) return x.scaled(Rational(1) / *s);
  }
  return std::nullopt;
}

template <class S, class Re, class Im, class Conj>
Mat4<S> tau_impl(const Mat2<S>& A, const S& zero, const S& one, const S& i, Re re, Im im, Conj conj) {
  const Mat2<S> As{conj(A.a), conj(A.c), conj(A.b), conj(A.d)};
  const S mi = zero - i;
  const std::array<Mat2<S>, 4> basis{Mat2<S>{one, zero, zero, one}, Mat2<S>{one, zero, zero, -one},
                                     Mat2<S>{zero, one, one, zero}, Mat2<S>{zero, i, mi, zero}};
  const S half = ScalarTraits<S>::from_rational(zero, Rational(1, 2));
  Mat4<S> m = Mat4<S>::zero(zero);
  for (int k = 0; k < 4; ++k) {
    const Mat2<S> X = As * basis[static_cast<std::size_t>(k)] * A;
    m(k, 0) = re((X.a + X.d) * half);
    m(k, 1) = re((X.a - X.d) * half);
    m(k, 2) = re(X.b);
    m(k, 3) = im(X.b);
  }
  return m;
}

}  // namespace

Mat4<QElem> tau(const Mat2<QElem>& A) {
  const auto& t = A.a.tower();
  const auto i = find_i(t);
  if (!i) throw Error("tau needs a tower containing sqrt(-1)");
  const QElem half = t->constant(Rational(1, 2));
  const QElem mhalfi = (*i).scaled(Rational(-1, 2));
  return tau_impl<QElem>(
      A, t->zero(), t->one(), *i, [&](const QElem& w) { return (w + complex_conjugate(w)) * half; },
      [&](const QElem& w) { return (w - complex_conjugate(w)) * mhalfi; },
      [](const QElem& w) { return complex_conjugate(w); });
}

Mat4<Complex> tau(const Mat2<Complex>& A) {
  return tau_impl<Complex>(
      A, Complex(), Complex(1), Complex(Real(0), Real(1)), [](const Complex& w) { return Complex(w.re); },
      [](const Complex& w) { return Complex(w.im); }, [](const Complex& w) { return w.conj(); });
}

Mat4<Complex> minkowski_form() {
  Mat4<Complex> J = Mat4<Complex>::identity(Complex());
  J(0, 0) = Complex(-1);
  return J;
}

Real minkowski_check(const Mat4<Complex>& m) {
  const Mat4<Complex> J = minkowski_form();
  return max_abs(m.transpose() * J * m - J);
}

bool preserves_minkowski(const Mat4<QElem>& m) {
  const auto& t = m.like().tower();
  Mat4<QElem> J = Mat4<QElem>::identity(t->zero());
  J(0, 0) = t->constant(Rational(-1));
  return m.transpose() * J * m == J;
}

std::string to_string(IsometryType t) {
  switch (t) {
    case IsometryType::Hyperbolic: return "hyperbolic";
    case IsometryType::Parabolic: return "parabolic";
    case IsometryType::Elliptic: return "elliptic";
    case IsometryType::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using RealMatrix = Eigen::Matrix<EReal, Eigen::Dynamic, Eigen::Dynamic>;

// [[Re, -Im], [Im, Re]]: singular values are those of m, each twice.
RealMatrix realify(const std::vector<std::array<Complex, 4>>& rows, std::size_t ncols) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(ncols);
  RealMatrix R(2 * n, 2 * c);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < c; ++j) {
      const Complex& z = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      R(i, j) = EReal(z.re);
      R(i + n, j + c) = EReal(z.re);
      R(i, j + c) = EReal(-z.im);
      R(i + n, j) = EReal(z.im);
    }
  return R;
}

using CVec = std::array<Complex, 4>;

Complex dot(const CVec& x, const CVec& y) {
  Complex s;
  for (std::size_t k = 0; k < 4; ++k) s += x[k].conj() * y[k];
  return s;
}

Real norm(const CVec& x) { return boost::multiprecision::sqrt(dot(x, x).re); }

// Complex null vectors of m - lambda I (orthonormal), from the real null
// vectors of the realification.
std::vector<CVec> eigenvectors(const Mat4<Complex>& m, const Complex& lambda, const Real& tol) {
  std::vector<CVec> rows(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j) - (i == j ? lambda : Complex());
  const RealMatrix R = realify(rows, 4);
  Eigen::JacobiSVD<RealMatrix> svd(R, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const RealMatrix& V = svd.matrixV();
  std::vector<CVec> out;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (Real(sv(k)) > tol) continue;
    CVec x;
    for (Eigen::Index j = 0; j < 4; ++j) x[static_cast<std::size_t>(j)] = Complex(Real(V(j, k)), Real(V(j + 4, k)));
    for (const auto& y : out) {
      const Complex p = dot(y, x);
      for (std::size_t j = 0; j < 4; ++j) x[j] -= p * y[j];
    }
    const Real n = norm(x);
    if (n < Real("0.5")) continue;
    for (auto& z : x) z = z / Complex(n);
    out.push_back(x);
  }
  return out;
}

Real condition_number(const std::vector<CVec>& cols) {
  std::vector<CVec> rows(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rows[i][j] = cols[j][i];
  Eigen::JacobiSVD<RealMatrix> svd(realify(rows, 4));
  const auto& sv = svd.singularValues();
  const Real smin(sv(sv.size() - 1));
  if (smin == 0) return Real(0);
  return Real(sv(0)) / smin;
}

}  // namespace

IsometryReport classify_isometry(const Mat4<Complex>& m, const Mat4<Complex>& J, Symmetry sym, const Config& cfg) {
  IsometryReport rep;
  Mat4<Complex> mt = m.transpose();
  if (sym == Symmetry::Hermitian)
    for (auto i = 0; i < 4; ++i)
      for (auto j = 0; j < 4; ++j) mt(i, j) = mt(i, j).conj();
  const Real scale = max_abs(J) * boost::multiprecision::pow(std::max(Real(1), max_abs(m)), 2);
  rep.form_residual = max_abs(mt * J * m - J) / scale;
  if (rep.form_residual > Real(cfg.isometry_residual))
    throw NotAnIsometry("form residual " + format_real(rep.form_residual, 6) + " exceeds tolerance");

  rep.eigenvalues = quartic_roots(char_poly(m));
  Real top = 0;
  Real off_unit = 0;
  for (const auto& z : rep.eigenvalues) {
    top = std::max(top, z.abs());
    off_unit = std::max(off_unit, Real(boost::multiprecision::abs(z.abs() - 1)));
  }
  if (top > Real(1) + Real(cfg.gap_tol)) {
    rep.type = IsometryType::Hyperbolic;
    return rep;
  }
  if (off_unit > Real(cfg.unit_band)) {
    rep.type = IsometryType::Inconclusive;
    rep.reason = "eigenvalue modulus within the tolerance band around 1";
    return rep;
  }
  // Cluster eigenvalues and collect eigenvectors per cluster.
  const Real cluster_tol("1e-8");
  const Real null_tol = std::max(Real(1), max_abs(m)) * Real(cfg.rank_zero);
  std::vector<CVec> vecs;
  std::vector<bool> used(4, false);
  for (std::size_t i = 0; i < 4; ++i) {
    if (used[i]) continue;
    Complex centre = rep.eigenvalues[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < 4; ++j)
      if (!used[j] && (rep.eigenvalues[j] - rep.eigenvalues[i]).abs() < cluster_tol) {
        used[j] = true;
        centre += rep.eigenvalues[j];
        ++count;
      }
    centre = centre / Complex(count);
    auto ev = eigenvectors(m, centre, null_tol);
    if (static_cast<int>(ev.size()) > count) ev.resize(static_cast<std::size_t>(count));
    vecs.insert(vecs.end(), ev.begin(), ev.end());
  }
  if (vecs.size() < 4) {
    rep.type = IsometryType::Parabolic;
    return rep;
  }
  rep.eigenvector_condition = condition_number(vecs);
  if (rep.eigenvector_condition == 0 || rep.eigenvector_condition > Real(cfg.cond_threshold)) {
    rep.type = IsometryType::Inconclusive;
    rep.reason = "eigenvector matrix is ill-conditioned";
    return rep;
  }
  rep.type = IsometryType::Elliptic;
  return rep;
}

Mat4<QElem> expected_reduced_u(const std::shared_ptr<const QTower>& t) {
  const QElem i = t->root(2) * t->root(1) * t->constant(Rational(1, 6));
  Mat4<QElem> m = Mat4<QElem>::zero(t->zero());
  m(0, 0) = t->one();
  m(1, 1) = -i;
  m(2, 2) = t->one();
  m(3, 1) = t->one();
  m(3, 3) = i;
  return m;
}

Mat4<QElem> expected_reduced_c(const std::shared_ptr<const QTower>& t) {
  const QElem isqrt2 = t->root(0);
  const QElem sqrt6 = t->root(2);
  const QElem isqrt3 = t->root(0) * t->root(2) * t->constant(Rational(1, 2));
  const QElem quarter = t->constant(Rational(1, 4));
  const QElem eighth = t->constant(Rational(1, 8));
  const QElem six = t->constant(Rational(6));
  const QElem two = t->constant(Rational(2));
  Mat4<QElem> m = Mat4<QElem>::zero(t->zero());
  m(0, 0) = (isqrt2 - sqrt6) * quarter;
  m(0, 1) = (-six - two * isqrt3) * eighth;
  m(1, 0) = -t->one();
  m(1, 1) = (-isqrt2 + sqrt6) * quarter;
  m(2, 2) = (isqrt2 + sqrt6) * quarter;
  m(2, 3) = (six - two * isqrt3) * eighth;
  m(3, 2) = t->one();
  m(3, 3) = (-isqrt2 - sqrt6) * quarter;
  return m;
}

namespace {

Mat2<QElem> block(const Mat4<QElem>& m, int r, int c) {
  return {m(r, c), m(r, c + 1), m(r + 1, c), m(r + 1, c + 1)};
}

Mat2<QElem> conj(const Mat2<QElem>& b) {
  return {complex_conjugate(b.a), complex_conjugate(b.b), complex_conjugate(b.c), complex_conjugate(b.d)};
}

int conj_sign(const Mat2<QElem>& upper, const Mat2<QElem>& lower) {
  const Mat2<QElem> cl = conj(lower);
  if (upper == cl) return 1;
  if (upper == -cl) return -1;
  return 0;
}

}  // namespace

ReductionResult reduce_at_isqrt2() {
  const auto rep = exact_rep_isqrt2();
  const auto& t = rep->point().tower;
  Mat4<QElem> M = Mat4<QElem>::zero(t->zero());
  M(0, 2) = M(1, 0) = M(2, 3) = M(3, 1) = t->one();
  const Mat4<QElem> Minv = M.transpose();  // permutation matrix

  ReductionResult res;
  res.u = Minv * rep->u() * M;
  res.c = Minv * rep->c() * M;
  const Mat4<QElem> eu = expected_reduced_u(t), ec = expected_reduced_c(t);
  std::vector<std::string> problems;
  for (char g : {'u', 'c'}) {
    const Mat4<QElem>& got = g == 'u' ? res.u : res.c;
    const Mat4<QElem>& want = g == 'u' ? eu : ec;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        EntryCheck e{g, i, j, want(i, j).to_string(), got(i, j).to_string(), got(i, j) == want(i, j)};
        if (!e.match)
          problems.push_back(std::string(1, g) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             "): expected " + e.expected + ", got " + e.actual);
        res.entries.push_back(std::move(e));
      }
  }

  res.upper_right_zero = true;
  for (const auto* m : {&res.u, &res.c})
    for (int i = 0; i < 2; ++i)
      for (int j = 2; j < 4; ++j)
        if (!(*m)(i, j).is_zero()) {
          res.upper_right_zero = false;
          problems.push_back("upper-right block entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") is " + (*m)(i, j).to_string());
        }

  res.u_upper = block(res.u, 0, 0);
  res.u_lower = block(res.u, 2, 2);
  res.c_upper = block(res.c, 0, 0);
  res.c_lower = block(res.c, 2, 2);
  res.block_dets = {res.u_upper.det(), res.u_lower.det(), res.c_upper.det(), res.c_lower.det()};
  res.blocks_det_one = std::all_of(res.block_dets.begin(), res.block_dets.end(), [](const QElem& d) { return d.is_one(); });
  res.block_det_products_one = (res.block_dets[0] * res.block_dets[1]).is_one() && (res.block_dets[2] * res.block_dets[3]).is_one();
  res.c_lower_trace_zero = res.c_lower.trace().is_zero();
  if (!res.c_lower_trace_zero) problems.push_back("trace of the lower-right block of c is " + res.c_lower.trace().to_string());
  res.u_conj_sign = conj_sign(res.u_upper, res.u_lower);
  res.c_conj_sign = conj_sign(res.c_upper, res.c_lower);
  if (res.u_conj_sign == 0) problems.push_back("blocks of u are not complex conjugate up to sign");
  if (res.c_conj_sign == 0) problems.push_back("blocks of c are not complex conjugate up to sign");

  if (!problems.empty()) {
    std::ostringstream os;
    os << "reduction at i*sqrt(2) failed:";
    for (const auto& p : problems) os << "\n  " << p;
    throw StructureViolation(os.str());
  }
  return res;
}

namespace {

Mat2<Complex> random_sl2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2, 2);
  auto z = [&] { return Complex(Real(d(rng)), Real(d(rng))); };
  Complex a = z();
  while (a.abs() < Real("0.25")) a = z();
  const Complex b = z(), c = z();
  return {a, b, c, (Complex(1) + b * c) / a};
}

Mat2<QElem> random_gaussian_sl2(std::mt19937_64& rng, const std::shared_ptr<const QTower>& t) {
  std::uniform_int_distribution<long> n(-5, 5), den(1, 4);
  auto z = [&] { return t->constant(Rational(n(rng), den(rng))) + t->root(0).scaled(Rational(n(rng), den(rng))); };
  QElem a = z();
  while (a.is_zero()) a = z();
  const QElem b = z(), c = z();
  return {a, b, c, (t->one() + b * c) / a};
}

}  // namespace

BridgeSelfTest bridge_selftest(int pairs, std::uint64_t seed, const Config& cfg) {
  BridgeSelfTest r;
  r.pairs = pairs;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < pairs; ++k) {
    const auto A = random_sl2(rng), B = random_sl2(rng);
    const auto tA = tau(A);
    r.max_hom_residual = std::max(r.max_hom_residual, max_abs(tau(A * B) - tA * tau(B)));
    r.max_minkowski_residual = std::max(r.max_minkowski_residual, minkowski_check(tA));
    r.max_kernel_residual = std::max(r.max_kernel_residual, max_abs(tau(-A) - tA));
  }
  const auto t = QTower::make({Rational(-1)}, {"i"});
  r.exact_pairs = std::max(1, pairs / 5);
  r.exact_ok = true;
  for (int k = 0; k < r.exact_pairs; ++k) {
    const auto A = random_gaussian_sl2(rng, t), B = random_gaussian_sl2(rng, t);
    const auto tA = tau(A);
    r.exact_ok = r.exact_ok && tau(A * B) == tA * tau(B) && tau(-A) == tA && preserves_minkowski(tA);
  }
  const auto J = minkowski_form();
  const Complex rot(boost::multiprecision::cos(Real("0.7")), boost::multiprecision::sin(Real("0.7")));
  r.classification_ok =
      classify_isometry(Mat4<Complex>::identity(Complex()), J, Symmetry::Symmetric, cfg).type == IsometryType::Elliptic &&
      classify_isometry(tau(Mat2<Complex>{Complex(2), Complex(), Complex(), Complex(Real("0.5"))}), J, Symmetry::Symmetric, cfg)
              .type == IsometryType::Hyperbolic &&
      classify_isometry(tau(Mat2<Complex>{Complex(1), Complex(1), Complex(), Complex(1)}), J, Symmetry::Symmetric, cfg).type ==
          IsometryType::Parabolic &&
      classify_isometry(tau(Mat2<Complex>{rot, Complex(), Complex(), rot.conj()}), J, Symmetry::Symmetric, cfg).type ==
          IsometryType::Elliptic;
  return r;
}

}  // namespace sdcert
