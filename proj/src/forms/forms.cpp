#include "sdcert/forms/forms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "eigen_mpfr.hpp"

#include "sdcert/charpoly/charpoly.hpp"

namespace sdcert {

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::Antisymmetric: return "antisymmetric";
    case Symmetry::Hermitian: return "hermitian";
  }
  return "?";
}

Symmetry parse_symmetry(std::string_view s) {
  if (s == "symmetric" || s == "sym") return Symmetry::Symmetric;
  if (s == "antisymmetric" || s == "antisym") return Symmetry::Antisymmetric;
  if (s == "hermitian" || s == "herm") return Symmetry::Hermitian;
  throw ParseError("unknown symmetry '" + std::string(s) + "'");
}

std::string Signature::to_string() const {
  return "(" + std::to_string(positives) + "," + std::to_string(negatives) + "," + std::to_string(zeros) + ")";
}

namespace {

struct Slot {
  int a, b;  // basis matrix e_ab +- e_ba (or e_aa)
};

std::vector<Slot> slots(Symmetry s) {
  std::vector<Slot> out;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b)
      if (s == Symmetry::Symmetric || a != b) out.push_back({a, b});
  return out;
}

template <class S>
Mat4<S> basis_matrix(const Slot& sl, Symmetry sym, const S& like) {
  using T = ScalarTraits<S>;
  Mat4<S> m = Mat4<S>::zero(like);
  m(sl.a, sl.b) = T::one(like);
  if (sl.a != sl.b) m(sl.b, sl.a) = sym == Symmetry::Symmetric ? T::one(like) : -T::one(like);
  return m;
}

template <class S>
Mat4<S> scale_first_entry_to_one(const Mat4<S>& m) {
  for (const auto& x : m.entries())
    if (!x.is_zero()) return m.scaled(x.inverse());
  return m;
}

}  // namespace

template <class F>
FormSpace<TowerElem<F>> invariant_forms(const std::vector<Mat4<TowerElem<F>>>& gens, Symmetry symmetry) {
  using S = TowerElem<F>;
  if (symmetry == Symmetry::Hermitian) throw Error("use invariant_hermitian for Hermitian forms");
  if (gens.empty()) throw Error("invariant_forms needs at least one generator");
  const S& like = gens.front().like();
  const auto sl = slots(symmetry);
  const std::size_t n = sl.size();
  // Images g^T B_k g - B_k are (anti)symmetric like B_k, so the equations at
  // the slot positions are enough.
  std::vector<Row<S>> rows;
  for (const auto& g : gens) {
    std::vector<Mat4<S>> images;
    images.reserve(n);
    for (const auto& s : sl) {
      const Mat4<S> B = basis_matrix(s, symmetry, like);
      images.push_back(g.transpose() * B * g - B);
    }
    for (const auto& pos : sl) {
      Row<S> row;
      row.reserve(n);
      for (std::size_t k = 0; k < n; ++k) row.push_back(images[k](pos.a, pos.b));
      rows.push_back(std::move(row));
    }
  }
  const Elimination<S> e = gauss_jordan(std::move(rows), n);
  FormSpace<S> out;
  out.symmetry = symmetry;
  for (const auto& p : e.pivots) out.pivot_norms.push_back(p.norm().to_string());
  for (const auto& x : nullspace_basis(e, n, like)) {
    Mat4<S> J = Mat4<S>::zero(like);
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k].is_zero()) continue;
      J = J + basis_matrix(sl[k], symmetry, like).scaled(x[k]);
    }
    out.basis.push_back(std::move(J));
  }
  if (out.basis.size() == 1) out.basis[0] = scale_first_entry_to_one(out.basis[0]);
  return out;
}

template FormSpace<QElem> invariant_forms(const std::vector<Mat4<QElem>>&, Symmetry);
template FormSpace<QvElem> invariant_forms(const std::vector<Mat4<QvElem>>&, Symmetry);

QElem complex_conjugate(const QElem& x) {
  const auto& t = *x.tower();
  LayerMask m = 0;
  for (std::size_t j = 0; j < t.num_active(); ++j)
    if (t.layer(t.active_layer(j)).disc.sign() < 0) m |= LayerMask{1} << j;
  return x.galois_active(m);
}

Mat4<QElem> conjugate_transpose(const Mat4<QElem>& m) {
  Mat4<QElem> r = m.transpose();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = complex_conjugate(r(i, j));
  return r;
}

Mat4<QElem> embed(const Mat4<QElem>& m, const std::shared_ptr<const QTower>& target) {
  const auto& src = *m.like().tower();
  for (std::size_t k = 0; k < src.num_layers(); ++k)
    if (!(src.layer(k).disc == target->layer(k).disc) || target->layer(k).kind != src.layer(k).kind)
      throw Error("target tower does not extend the source tower");
  std::array<QElem, 16> e;
  for (std::size_t k = 0; k < 16; ++k) {
    std::vector<Rational> c = m.entries()[k].coeffs();
    c.resize(target->dim());
    e[k] = QElem(target, std::move(c));
  }
  return Mat4<QElem>(std::move(e));
}

namespace {

// The tower extended by sqrt(-1). Earlier layers classify identically, so an
// element embeds by zero-padding its coefficient vector.
struct WithI {
  std::shared_ptr<const QTower> tower;
  QElem i;

  explicit WithI(const QTower& base) {
    std::vector<Rational> discs;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < base.num_layers(); ++k) {
      discs.push_back(base.layer(k).disc);
      names.push_back(base.layer(k).name);
    }
    discs.emplace_back(-1);
    names.emplace_back("i");
    tower = QTower::make(discs, names);
    i = tower->root(discs.size() - 1);
  }

  QElem embed(const QElem& x) const {
    std::vector<Rational> c = x.coeffs();
    c.resize(tower->dim());
    return QElem(tower, std::move(c));
  }
  Mat4<QElem> embed(const Mat4<QElem>& m) const {
    std::array<QElem, 16> e;
    for (std::size_t k = 0; k < 16; ++k) e[k] = embed(m.entries()[k]);
    return Mat4<QElem>(std::move(e));
  }
};

}  // namespace

FormSpace<QElem> invariant_hermitian(const std::vector<Mat4<QElem>>& gens) {
  if (gens.empty()) throw Error("invariant_hermitian needs at least one generator");
  const WithI ext(*gens.front().like().tower());
  const QElem zero = ext.tower->zero();
  std::vector<Row<QElem>> rows;
  for (const auto& g0 : gens) {
    const Mat4<QElem> g = ext.embed(g0);
    Mat4<QElem> gbar = g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) gbar(i, j) = complex_conjugate(g(i, j));
    // (g^* J g - J)_{ij} = sum_{k,l} conj(g_ki) J_kl g_lj - J_ij
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Row<QElem> row(16, zero);
        for (int k = 0; k < 4; ++k) {
          if (gbar(k, i).is_zero()) continue;
          for (int l = 0; l < 4; ++l)
            if (!g(l, j).is_zero()) row[static_cast<std::size_t>(4 * k + l)] = gbar(k, i) * g(l, j);
        }
        row[static_cast<std::size_t>(4 * i + j)] -= ext.tower->one();
        rows.push_back(std::move(row));
      }
  }
  const Elimination<QElem> e = gauss_jordan(std::move(rows), 16);
  FormSpace<QElem> out;
  out.symmetry = Symmetry::Hermitian;
  for (const auto& p : e.pivots) out.pivot_norms.push_back(p.norm().to_string());

  // The complex solution space is closed under J -> J^*; its Hermitian part
  // is spanned by J + J^* and i (J - J^*).
  EchelonBasis<QElem> echelon(16);
  for (const auto& x : nullspace_basis(e, 16, zero)) {
    std::array<QElem, 16> entries;
    for (std::size_t k = 0; k < 16; ++k) entries[k] = x[k];
    const Mat4<QElem> J(std::move(entries));
    const Mat4<QElem> Js = conjugate_transpose(J);
    for (const Mat4<QElem>& H : {J + Js, (J - Js).scaled(ext.i)}) {
      Row<QElem> flat(H.entries().begin(), H.entries().end());
      if (echelon.insert(flat)) out.basis.push_back(H);
    }
  }
  if (out.basis.size() == 1) {
    const Mat4<QElem>& H = out.basis[0];
    for (int k = 0; k < 4; ++k)
      if (!H(k, k).is_zero()) {
        out.basis[0] = H.scaled(H(k, k).inverse());
        break;
      }
  }
  return out;
}

namespace {

using RealMatrix = Eigen::Matrix<EReal, Eigen::Dynamic, Eigen::Dynamic>;

// Real coordinates of a Hermitian matrix: diagonal real parts, then real and
// imaginary parts of the strict upper triangle.
std::array<Real, 16> herm_coords(const Mat4<Complex>& m) {
  std::array<Real, 16> c;
  std::size_t k = 0;
  for (int i = 0; i < 4; ++i) c[k++] = m(i, i).re;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      c[k++] = m(i, j).re;
      c[k++] = m(i, j).im;
    }
  return c;
}

Mat4<Complex> herm_basis(std::size_t k) {
  Mat4<Complex> m = Mat4<Complex>::zero(Complex());
  if (k < 4) {
    m(static_cast<int>(k), static_cast<int>(k)) = Complex(1);
    return m;
  }
  std::size_t idx = 4;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (idx == k) {
        m(i, j) = Complex(1);
        m(j, i) = Complex(1);
        return m;
      }
      if (idx + 1 == k) {
        m(i, j) = Complex(Real(0), Real(1));
        m(j, i) = Complex(Real(0), Real(-1));
        return m;
      }
      idx += 2;
    }
  return m;
}

Mat4<Complex> conj_transpose(const Mat4<Complex>& m) {
  Mat4<Complex> r = m.transpose();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = r(i, j).conj();
  return r;
}

}  // namespace

NumericFormSpace invariant_hermitian(const std::vector<Mat4<Complex>>& gens, const Config& cfg) {
  NumericFormSpace out;
  if (gens.empty()) throw Error("invariant_hermitian needs at least one generator");
  RealMatrix A(static_cast<Eigen::Index>(16 * gens.size()), 16);
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const Mat4<Complex>& g = gens[gi];
    const Mat4<Complex> gs = conj_transpose(g);
    for (std::size_t k = 0; k < 16; ++k) {
      const Mat4<Complex> B = herm_basis(k);
      const auto c = herm_coords(gs * B * g - B);
      for (std::size_t r = 0; r < 16; ++r)
        A(static_cast<Eigen::Index>(16 * gi + r), static_cast<Eigen::Index>(k)) = c[r];
    }
  }
  Eigen::JacobiSVD<RealMatrix> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) out.singular_values.push_back(Real(sv(i)));
  const Real smax = out.singular_values.front();
  const Real zero_cut = smax * Real(cfg.rank_zero);
  const Real ambiguous_cut = smax * Real(cfg.rank_ambiguous);
  const RealMatrix& V = svd.matrixV();
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const Real s(sv(i));
    if (smax != 0 && s > zero_cut && s < ambiguous_cut)
      throw RankAmbiguous("singular value " + format_real(s / smax, 6) +
                          " (relative) lies in the ambiguous band");
    if (smax != 0 && s > zero_cut) continue;
    Mat4<Complex> J = Mat4<Complex>::zero(Complex());
    for (Eigen::Index k = 0; k < 16; ++k) J = J + herm_basis(static_cast<std::size_t>(k)).scaled(Complex(Real(V(k, i))));
    // Scale by a positive real so the largest entry has modulus 1, and fix
    // the sign by the first entry of non-negligible modulus.
    const Real mx = max_abs(J);
    J = J.scaled(Complex(Real(1) / mx));
    for (const auto& x : J.entries()) {
      if (x.abs() <= Real("1e-20")) continue;
      const bool negative = x.re != 0 ? x.re < 0 : x.im < 0;
      if (negative) J = J.scaled(Complex(-1));
      break;
    }
    out.basis.push_back(std::move(J));
  }
  for (const auto& J : out.basis)
    for (const auto& g : gens) out.max_residual = std::max(out.max_residual, max_abs(conj_transpose(g) * J * g - J));
  return out;
}

Signature signature(const Mat4<Complex>& J, const Config& cfg) {
  // Realification: J = R + iI acts on R^8 as [[R, -I], [I, R]], whose
  // eigenvalues are those of J, each twice.
  RealMatrix M(8, 8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      M(i, j) = J(i, j).re;
      M(i + 4, j + 4) = J(i, j).re;
      M(i, j + 4) = -J(i, j).im;
      M(i + 4, j) = J(i, j).im;
    }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(M, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  Real mx = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) mx = std::max(mx, Real(boost::multiprecision::abs(Real(ev(i)))));
  Signature s;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Real e(ev(i));
    if (boost::multiprecision::abs(e) <= mx * Real(cfg.rank_zero) || mx == 0) ++s.zeros;
    else if (e > 0) ++s.positives;
    else ++s.negatives;
  }
  s.positives /= 2;
  s.negatives /= 2;
  s.zeros /= 2;
  return s;
}

namespace {

int real_sign(const QElem& x) {
  if (x.is_zero()) return 0;
  const Complex z = to_complex(x);
  const Real eps = boost::multiprecision::pow(Real(2), -static_cast<int>(working_precision_bits() / 2));
  if (boost::multiprecision::abs(z.re) <= eps)
    throw Error("sign of a non-zero diagonal entry is below numeric resolution");
  return z.re > 0 ? 1 : -1;
}

}  // namespace

Signature signature(const Mat4<QElem>& J, bool hermitian) {
  auto conj = [&](const QElem& x) { return hermitian ? complex_conjugate(x) : x; };
  std::array<std::array<QElem, 4>, 4> A;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      A[i][j] = J(i, j);
      if (!(A[i][j] == conj(J(j, i)))) throw Error("matrix is not self-adjoint");
    }
  // sqrt(-1) is only needed for an imaginary off-diagonal pivot.
  std::optional<WithI> ext;
  Signature s;
  std::vector<int> active{0, 1, 2, 3};
  while (!active.empty()) {
    int piv = -1;
    for (int r : active)
      if (!A[r][r].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) {
      // Zero diagonal: make one via e_i <- e_i + t e_j.
      int pi = -1, pj = -1;
      for (int i : active)
        for (int j : active)
          if (pi < 0 && i != j && !A[i][j].is_zero()) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        s.zeros += static_cast<int>(active.size());
        break;
      }
      QElem t = A[pi][pj].tower()->one();
      if ((A[pi][pj] + conj(A[pi][pj])).is_zero()) {
        // Purely imaginary entry: t = i.
        if (!ext) ext.emplace(*A[pi][pj].tower());
        for (auto& row : A)
          for (auto& x : row) x = ext->embed(x);
        t = ext->i;
      }
      for (int r : active) A[r][pi] += A[r][pj] * t;
      const QElem tc = conj(t);
      for (int c : active) A[pi][c] += tc * A[pj][c];
      continue;
    }
    s.positives += real_sign(A[piv][piv]) > 0;
    s.negatives += real_sign(A[piv][piv]) < 0;
    const QElem inv = A[piv][piv].inverse();
    for (int i : active)
      for (int j : active)
        if (i != piv && j != piv && !A[i][piv].is_zero() && !A[piv][j].is_zero())
          A[i][j] -= A[i][piv] * inv * A[piv][j];
    active.erase(std::find(active.begin(), active.end(), piv));
  }
  return s;
}

}  // namespace sdcert
