#include <doctest.h>

#include "sdcert/certifier/certifier.hpp"
#include "sdcert/errors.hpp"

using namespace sdcert;

namespace {

Word W(const char* s) { return Word::parse(s); }

// Numeric determinant of the stacked flattened images, by complex Gaussian
// elimination with partial pivoting.
Complex numeric_delta(const std::vector<Word>& words, const ExactRep& rep) {
  std::vector<std::vector<Complex>> a;
  for (const auto& w : words) {
    const auto m = to_numeric(rep.evaluate(w));
    a.emplace_back(m.entries().begin(), m.entries().end());
  }
  const std::size_t n = a.size();
  Complex det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (a[i][col].abs() > a[p][col].abs()) p = i;
    if (a[p][col].is_zero()) return Complex();
    if (p != col) {
      std::swap(a[p], a[col]);
      det = -det;
    }
    det = det * a[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      const Complex f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("Burnside witnesses at v = 2 and v = 3") {
  for (int v : {2, 3}) {
    CAPTURE(v);
    auto rep = exact_rep(Rational(v));
    const auto b = burnside_witness(W("a"), W("b"), *rep, 6);
    REQUIRE(b.words.size() == 16);
    CHECK(b.words.front().empty());
    CHECK_FALSE(b.delta.is_zero());
    for (const auto& w : b.words) CHECK(w.length() <= 6);
    // Independent numeric determinant agrees with the exact one.
    const Complex nd = numeric_delta(b.words, *rep), ed = to_complex(b.delta);
    CHECK((nd - ed).abs() <= Real("1e-20") * (Real(1) + ed.abs()));
  }
}

TEST_CASE("Burnside on a degenerate pair saturates") {
  auto rep = exact_rep(Rational(3));
  try {
    burnside_witness(W("u"), W("u"), *rep, 6);
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhausted& e) {
    // rho(u) is diagonalisable with eigenvalues 1, 1, i, -i: its minimal
    // polynomial has degree 3, so the powers span a 3-dimensional algebra.
    CHECK(e.achieved_rank() == 3);
    CHECK(e.saturated());
  }
  // A budget that is too small is not saturation.
  try {
    burnside_witness(W("a"), W("b"), *rep, 1);
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhausted& e) {
    CHECK(e.achieved_rank() == 5);
    CHECK_FALSE(e.saturated());
  }
}

TEST_CASE("non-palindromic witness for (a, b)") {
  const auto w = find_nonpalindromic_witness(W("a"), W("b"), 8);
  CHECK(w.word == W("abAB"));
  CHECK_FALSE(w.shape.q.is_zero());
  CHECK(w.shape.polynomial);
  // Exactly non-palindromic at v = 3, palindromic at v = 2.
  CHECK_FALSE(is_palindromic(char_poly(exact_rep(Rational(3))->evaluate(w.word))));
  CHECK(is_palindromic(char_poly(exact_rep(Rational(2))->evaluate(w.word))));
  // Every shorter word is palindromic over Q(v).
  for (const char* s : {"a", "b", "ab", "aB", "aa", "bb", "aab", "abb"})
    CHECK(shape_decompose(char_poly(symbolic_rep()->evaluate(W(s)))).q.is_zero());
  // The filter can push the search past the first witness.
  const auto w2 = find_nonpalindromic_witness(W("a"), W("b"), 8, [&](const Word& x, const auto&) { return !(x == w.word); });
  CHECK_FALSE(w2.word == w.word);
  CHECK(w2.word.length() >= 4);
}

TEST_CASE("witness search over a single generator") {
  // uuuu is trivial, so only powers of a are searched; they are palindromic.
  CHECK_THROWS_AS(find_nonpalindromic_witness(W("uuuu"), W("a"), 6), NotFound);
  for (int k = 1; k <= 3; ++k) CHECK(shape_decompose(char_poly(symbolic_rep()->evaluate(W("a").pow(k)))).q.is_zero());
}

TEST_CASE("trace reality") {
  auto r1 = exact_rep(Rational(1));
  const auto t = trace_reality_scan({W("u"), Word(), W("abAB")}, *r1);
  CHECK(t[0].is_real);
  CHECK(t[0].exact == "2");
  CHECK(t[1].exact == "4");
  CHECK_FALSE(t[2].is_real);
  CHECK(boost::multiprecision::abs(t[2].trace.im) > Real("1e-6"));
  // Numeric agrees; tr(abAB) at v = 1 is -1/2 + (3 sqrt 3 / 2) i.
  const auto n = trace_reality_scan({W("u"), W("abAB")}, *numeric_rep(Complex(1)));
  CHECK(n[0].is_real);
  CHECK_FALSE(n[1].is_real);
  CHECK((n[1].trace - Complex(Real("-0.5"), Real(3) * boost::multiprecision::sqrt(Real(3)) / 2)).abs() < Real("1e-25"));
  CHECK_THROWS_AS(trace_reality_scan({W("u")}, *exact_rep(Rational(3))), DegenerateContext);
}

TEST_CASE("certify_pair verdicts") {
  const auto c = certify_pair(W("a"), W("b"), Rational(3));
  CHECK(c.verdict == Verdict::Certified);
  CHECK(c.pipeline == "SL(4,R)");
  CHECK(c.delta_nonzero);
  CHECK(c.burnside_words.size() == 16);
  REQUIRE(c.witness);
  CHECK_FALSE(c.witness->palindromic_at_v);
  // Two computation paths for q at v agree.
  REQUIRE(c.witness->q_at_v);
  CHECK(*c.witness->q_at_v == c.witness->shape.q.evaluate(Rational(3)));
  REQUIRE(c.form_dims);
  CHECK(c.form_dims->symmetric == 0);
  CHECK(c.form_dims->antisymmetric == 0);
  REQUIRE(c.eigen);
  CHECK(c.eigen->obstruction == Tri::Yes);

  const auto ab = certify_pair(W("a"), W("aa"), Rational(3));
  CHECK(ab.verdict == Verdict::Failed);
  CHECK(ab.reason.find("abelian") != std::string::npos);

  const auto c2 = certify_pair(W("a"), W("b"), Rational(2));
  CHECK(c2.verdict == Verdict::Failed);
  CHECK(c2.reason.find("palindromic at v=2") != std::string::npos);
  REQUIRE(c2.form_dims);
  CHECK(c2.form_dims->symmetric == 1);
}

TEST_CASE("certify_pair inside (-2, 2)") {
  const auto c = certify_pair(W("a"), W("b"), Rational(3, 2));
  CHECK(c.pipeline == "SU(3,1)");
  CHECK(c.verdict == Verdict::Certified);
  REQUIRE(c.traces.size() == 3);
  CHECK_FALSE(c.traces[0].is_real);
  // rho_1 is reducible, and for |v| < 1 the invariant form is definite.
  const auto c1 = certify_pair(W("a"), W("b"), Rational(1));
  CHECK(c1.verdict == Verdict::Failed);
  CHECK(c1.reason.find("reducible") != std::string::npos);
  const auto ch = certify_pair(W("a"), W("b"), Rational(1, 2));
  CHECK(ch.verdict == Verdict::Failed);
  CHECK(ch.reason.find("signature (3,1)") != std::string::npos);
}

TEST_CASE("certificates are reproducible") {
  const auto a = to_json(certify_pair(W("a"), W("b"), Rational(3))).dump();
  const auto b = to_json(certify_pair(W("a"), W("b"), Rational(3))).dump();
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  CHECK(j["verdict"] == "CERTIFIED");
  CHECK(j["assumptions"] == nlohmann::json({"free_pair", "benoist_semisimplicity"}));
  CHECK(j["irreducibility"]["witnesses"].size() == 16);
  CHECK(j["eigen"]["moduli"].size() == 4);
}

TEST_CASE("larger budgets never turn CERTIFIED into FAILED") {
  std::optional<Verdict> prev;
  for (int len : {2, 4, 6}) {
    Config cfg;
    cfg.witness_max_len = len;
    cfg.burnside_max_len = len;
    const auto c = certify_pair(W("a"), W("b"), Rational(3), cfg);
    CAPTURE(len);
    if (prev == Verdict::Certified) CHECK(c.verdict == Verdict::Certified);
    CHECK(c.verdict != Verdict::Failed);
    prev = c.verdict;
  }
  CHECK(prev == Verdict::Certified);
}

TEST_CASE("scan") {
  CHECK(scan({}, {{W("a"), W("b")}}).cells.empty());
  Config one, two;
  two.workers = 2;
  const std::vector<Rational> vs{Rational(3), Rational(5, 2)};
  const std::vector<std::pair<Word, Word>> pairs{{W("a"), W("b")}, {W("a"), W("aa")}};
  const auto r1 = scan(vs, pairs, one), r2 = scan(vs, pairs, two);
  REQUIRE(r1.cells.size() == 4);
  // Identical apart from the echoed worker count.
  auto j1 = to_json(r1), j2 = to_json(r2);
  for (auto* j : {&j1, &j2})
    for (auto& c : (*j)["certificates"]) c["config"].erase("workers");
  CHECK(j1.dump() == j2.dump());
  CHECK(r1.cells[0].v == Rational(3));
  CHECK(r1.cells[1].v == Rational(5, 2));
  CHECK(r1.cells[2].verdict == Verdict::Failed);
  CHECK(r1.failed >= 2);
  // v = 5/2 collapses sqrt(v^2 - 4) = 3/2 but the pipeline still runs.
  CHECK(r1.cells[1].witness.has_value());
  CHECK(r1.cells[1].verdict != Verdict::Failed);
}
