#include <doctest.h>

#include <random>

#include "sdcert/errors.hpp"
#include "sdcert/forms/forms.hpp"
#include "sdcert/rep/rep.hpp"

using namespace sdcert;

namespace {

// Nullity of J -> g^T J g - J on all 16 entries, by plain elimination over Q
// on a dense rational matrix.
std::size_t brute_force_nullity(const std::vector<std::array<std::array<Rational, 4>, 4>>& gens) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : gens)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        std::vector<Rational> row(16, Rational(0));
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) row[4 * k + l] += g[k][i] * g[l][j];
        row[4 * i + j] -= Rational(1);
        rows.push_back(row);
      }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 16 && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      const Rational f = rows[i][col] / rows[rank][col];
      for (std::size_t j = col; j < 16; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return 16 - rank;
}

// Rotation with rational entries from a Pythagorean-style parametrisation.
std::array<std::array<Rational, 2>, 2> rational_rotation(long m) {
  const Rational t(m, 7);
  const Rational d = Rational(1) + t * t;
  const Rational c = (Rational(1) - t * t) / d, s = Rational(2) * t / d;
  return {{{c, -s}, {s, c}}};
}

Mat4<QElem> to_mat(const std::array<std::array<Rational, 4>, 4>& g, const std::shared_ptr<const QTower>& t) {
  Mat4<QElem> m = Mat4<QElem>::zero(t->zero());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = t->constant(g[i][j]);
  return m;
}

Mat4<QElem> diag(const std::shared_ptr<const QTower>& t, std::array<long, 4> d) {
  Mat4<QElem> m = Mat4<QElem>::zero(t->zero());
  for (int i = 0; i < 4; ++i) m(i, i) = t->constant(Rational(d[static_cast<std::size_t>(i)]));
  return m;
}

template <class S>
bool preserves(const Mat4<S>& g, const Mat4<S>& J) {
  return g.transpose() * J * g == J;
}

}  // namespace

TEST_CASE("symmetric form at v = 2") {
  auto rep = exact_rep(Rational(2));
  const auto fs = invariant_forms<Rational>({rep->u(), rep->c()}, Symmetry::Symmetric);
  REQUIRE(fs.dimension() == 1);
  const auto& J = fs.basis[0];
  CHECK(J == J.transpose());
  CHECK(preserves(rep->u(), J));
  CHECK(preserves(rep->c(), J));
  const Signature s = signature(J, false);
  CHECK((s == Signature{3, 1, 0} || s == Signature{1, 3, 0}));
  // The first non-zero entry is normalised to 1.
  for (const auto& x : J.entries())
    if (!x.is_zero()) {
      CHECK(x.is_one());
      break;
    }
  // Every word preserves it.
  std::mt19937_64 rng(2);
  const std::string alphabet = "aAbBuUcC";
  for (int i = 0; i < 20; ++i) {
    std::string w;
    for (int k = 0; k < 8; ++k) w.push_back(alphabet[rng() % alphabet.size()]);
    CHECK(preserves(rep->evaluate(Word::parse(w)), J));
  }
  CHECK(invariant_forms<Rational>({rep->u(), rep->c()}, Symmetry::Antisymmetric).dimension() == 0);
}

TEST_CASE("identity preserves everything") {
  auto t = QTower::make({Rational(5)});
  const auto id = Mat4<QElem>::identity(t->zero());
  CHECK(invariant_forms<Rational>({id}, Symmetry::Symmetric).dimension() == 10);
  CHECK(invariant_forms<Rational>({id}, Symmetry::Antisymmetric).dimension() == 6);
  CHECK(invariant_hermitian({id}).dimension() == 16);
  CHECK(invariant_hermitian({Mat4<Complex>::identity(Complex())}).dimension() == 16);
}

TEST_CASE("no forms for a and b at v = 3") {
  auto rep = exact_rep(Rational(3));
  const std::vector<Mat4<QElem>> gens{rep->evaluate(Word::parse("a")), rep->evaluate(Word::parse("b"))};
  CHECK(invariant_forms<Rational>(gens, Symmetry::Symmetric).dimension() == 0);
  CHECK(invariant_forms<Rational>(gens, Symmetry::Antisymmetric).dimension() == 0);
  // The numeric Hermitian solver agrees with the bilinear one for real v.
  auto nu = numeric_rep(Complex(3));
  CHECK(invariant_hermitian({nu->evaluate(Word::parse("a")), nu->evaluate(Word::parse("b"))}).dimension() == 0);
  CHECK(invariant_hermitian(gens).dimension() == 0);
}

TEST_CASE("invariant Hermitian forms on (-2, 2)") {
  // One form up to scale throughout; its type changes at |v| = 1.
  struct Case {
    Rational v;
    Signature expect;
  };
  for (const Case& c : {Case{Rational(3, 2), {3, 1, 0}}, Case{Rational(-9, 5), {3, 1, 0}},
                        Case{Rational(1, 2), {4, 0, 0}}, Case{Rational(0), {4, 0, 0}},
                        Case{Rational(1), {1, 0, 3}}}) {
    CAPTURE(c.v.to_string());
    auto ex = exact_rep(c.v);
    const auto efs = invariant_hermitian({ex->u(), ex->c()});
    REQUIRE(efs.dimension() == 1);
    const auto& H = efs.basis[0];
    CHECK(conjugate_transpose(H) == H);
    const auto u = embed(ex->u(), H.like().tower()), cc = embed(ex->c(), H.like().tower());
    CHECK(conjugate_transpose(u) * H * u == H);
    CHECK(conjugate_transpose(cc) * H * cc == H);
    const Signature es = signature(H, true);
    CHECK((es == c.expect || es == c.expect.flipped()));

    auto nu = numeric_rep(Complex(to_real(c.v)));
    const auto fs = invariant_hermitian({nu->u(), nu->c()});
    REQUIRE(fs.dimension() == 1);
    CHECK(fs.max_residual < Real("1e-10"));
    const Signature ns = signature(fs.basis[0]);
    CHECK((ns == c.expect || ns == c.expect.flipped()));
  }
}

TEST_CASE("exact signatures") {
  auto t = QTower::make({Rational(-1)});
  CHECK(signature(diag(t, {-1, 1, 1, 1}), false) == Signature{3, 1, 0});
  CHECK(signature(Mat4<QElem>::zero(t->zero()), false) == Signature{0, 0, 4});
  auto m = diag(t, {0, 0, 1, 1});
  m(0, 1) = t->one();
  m(1, 0) = t->one();
  CHECK(signature(m, false) == Signature{3, 1, 0});
  // Hermitian with an imaginary off-diagonal pair.
  auto h = diag(t, {0, 0, 1, 1});
  h(0, 1) = t->root(0);
  h(1, 0) = -t->root(0);
  CHECK(signature(h, true) == Signature{3, 1, 0});
  auto q = QTower::make({});
  auto hq = diag(q, {0, 0, 2, 0});
  hq(0, 1) = q->constant(Rational(3));
  hq(1, 0) = q->constant(Rational(3));
  CHECK(signature(hq, true) == Signature{2, 1, 1});
  CHECK_THROWS(signature(h, false));
}

TEST_CASE("numeric signature") {
  Mat4<Complex> m = Mat4<Complex>::zero(Complex());
  m(0, 0) = Complex(-1);
  m(1, 1) = Complex(1);
  m(2, 2) = Complex(1);
  m(3, 3) = Complex(1);
  CHECK(signature(m) == Signature{3, 1, 0});
  CHECK(signature(Mat4<Complex>::zero(Complex())) == Signature{0, 0, 4});
}

TEST_CASE("completeness against a brute-force nullspace") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> ang(-5, 5);
  auto t = QTower::make({});
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::array<std::array<Rational, 4>, 4>> gens;
    const int ngens = 1 + static_cast<int>(rng() % 2);
    for (int k = 0; k < ngens; ++k) {
      std::array<std::array<Rational, 4>, 4> g{};
      for (auto& row : g) row.fill(Rational(0));
      const auto r1 = rational_rotation(ang(rng));
      const auto r2 = rational_rotation(trial % 5 == 0 ? 0 : ang(rng));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          g[i][j] = r1[i][j];
          g[i + 2][j + 2] = r2[i][j];
        }
      if (trial % 3 == 0) std::swap(g[0], g[2]);  // mix the blocks
      if (trial % 3 == 0) std::swap(g[1], g[3]);
      gens.push_back(g);
    }
    std::vector<Mat4<QElem>> mats;
    for (const auto& g : gens) mats.push_back(to_mat(g, t));
    const std::size_t sym = invariant_forms<Rational>(mats, Symmetry::Symmetric).dimension();
    const std::size_t anti = invariant_forms<Rational>(mats, Symmetry::Antisymmetric).dimension();
    CAPTURE(trial);
    CHECK(sym + anti == brute_force_nullity(gens));
  }
}

TEST_CASE("dimension is invariant under inversion and conjugation") {
  auto rep = exact_rep(Rational(2));
  const auto u = rep->u(), c = rep->c();
  const auto h = rep->evaluate(Word::parse("abU"));
  const auto hi = h.inverse();
  for (Symmetry s : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
    const std::size_t d0 = invariant_forms<Rational>({u, c}, s).dimension();
    CHECK(invariant_forms<Rational>({u.inverse(), c}, s).dimension() == d0);
    CHECK(invariant_forms<Rational>({h * u * hi, h * c * hi}, s).dimension() == d0);
  }
}

TEST_CASE("non-palindromic witness forces trivial forms") {
  auto rep = exact_rep(Rational(3));
  const std::vector<Mat4<QElem>> gens{rep->evaluate(Word::parse("abAB")), rep->u()};
  CHECK(invariant_forms<Rational>(gens, Symmetry::Symmetric).dimension() == 0);
  CHECK(invariant_forms<Rational>(gens, Symmetry::Antisymmetric).dimension() == 0);
}
