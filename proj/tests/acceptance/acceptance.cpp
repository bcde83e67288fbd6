// Acceptance gate: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs; the exit code is 0 iff every criterion that ran passed.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdcert/bridge/bridge.hpp"
#include "sdcert/certifier/certifier.hpp"
#include "sdcert/charpoly/charpoly.hpp"
#include "sdcert/forms/forms.hpp"
#include "sdcert/rep/relations.hpp"
#include "sdcert/rep/rep.hpp"
#include "sdcert/scalars/specialize.hpp"

using namespace sdcert;

namespace {

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // 0 = none
  std::function<void(Result&)> run;
};

Word W(const char* s) { return Word::parse(s); }

bool lorentzian(const Signature& s) { return s == Signature{3, 1, 0} || s.flipped() == Signature{3, 1, 0}; }

std::string fmt(const Real& x) { return format_real(x, 6); }

void relation_suite(Result& r) {
  const auto rep = verify_relations(*symbolic_rep());
  for (const auto& x : rep.results) {
    r.detail << " " << x.name << "=" << to_string(x.verdict);
    // Pinned outcome: all three relators are the identity exactly.
    r.require(x.verdict == RelationVerdict::Identity, x.name + " is not the identity");
  }
}

void v2_structure(Result& r) {
  const auto rep = exact_rep(Rational(2));
  r.detail << " tower " << rep->point().tower->describe();
  const auto fs = invariant_forms<Rational>({rep->evaluate(W("u")), rep->evaluate(W("c"))}, Symmetry::Symmetric);
  r.detail << " dim " << fs.dimension();
  r.require(fs.dimension() == 1, "dimension 1");
  if (fs.dimension() != 1) return;
  const Signature s = signature(fs.basis[0], false);
  r.detail << " signature " << s.to_string();
  r.require(lorentzian(s), "signature {3,1} up to sign");
}

void su31_structure(Result& r) {
  const auto rep = exact_rep(Rational(1));
  const auto fs = invariant_hermitian({rep->evaluate(W("u")), rep->evaluate(W("c"))});
  r.detail << " exact dim " << fs.dimension();
  bool found = false;
  for (const auto& J : fs.basis) {
    const Signature s = signature(J, true);
    r.detail << " signature " << s.to_string();
    found = found || lorentzian(s);
  }
  // Numeric route with its residual.
  const auto nrep = numeric_rep(Complex(1));
  const auto nfs = invariant_hermitian({nrep->evaluate(W("u")), nrep->evaluate(W("c"))});
  r.detail << "; numeric dim " << nfs.dimension() << " residual " << fmt(nfs.max_residual);
  for (const auto& J : nfs.basis) r.detail << " signature " << signature(J).to_string();
  r.require(nfs.max_residual < Real("1e-10"), "residual < 1e-10");
  r.require(found, "a signature-(3,1) invariant Hermitian form");
}

void reduction(Result& r) {
  try {
    const auto red = reduce_at_isqrt2();
    int matched = 0;
    for (const auto& e : red.entries) matched += e.match;
    r.detail << " " << matched << "/" << red.entries.size() << " entries match";
    r.require(red.entries.size() == 32 && matched == 32, "all 32 entries");
    r.require(red.upper_right_zero, "upper-right blocks zero");
  } catch (const StructureViolation& e) {
    r.require(false, e.what());
  }
}

void burnside(Result& r) {
  for (int v : {2, 3}) {
    const auto rep = exact_rep(Rational(v));
    try {
      const auto b = burnside_witness(W("a"), W("b"), *rep, 6);
      int longest = 0;
      for (const auto& w : b.words) longest = std::max(longest, static_cast<int>(w.length()));
      r.detail << " v=" << v << ": " << b.words.size() << " words, max length " << longest;
      r.require(b.words.size() == 16 && !b.delta.is_zero(), "rank 16 with delta != 0 at v=" + std::to_string(v));
    } catch (const BudgetExhausted& e) {
      r.require(false, std::string("v=") + std::to_string(v) + ": " + e.what());
    }
  }
}

void symbolic_forms(Result& r) {
  const auto rep = symbolic_rep();
  const std::vector<Mat4<QvElem>> gens{rep->evaluate(W("a")), rep->evaluate(W("b"))};
  for (Symmetry s : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
    const auto fs = invariant_forms<RatFunc>(gens, s);
    r.detail << " " << to_string(s) << " dim " << fs.dimension();
    r.require(fs.dimension() == 0, to_string(s) + " dimension 0");
  }
}

void palindromicity(Result& r) {
  const auto w = find_nonpalindromic_witness(W("a"), W("b"), 8);
  r.detail << " witness " << w.word.to_string() << " p=" << w.shape.p.to_string() << " q=" << w.shape.q.to_string()
           << " r=" << w.shape.r.to_string();
  r.require(w.word.length() <= 8, "length <= 8");
  r.require(!w.shape.q.is_zero(), "q not identically 0");
  r.require(w.shape.polynomial, "p, q, r in Q[v]");
  r.require(!is_palindromic(char_poly(exact_rep(Rational(3))->evaluate(w.word))), "non-palindromic at v=3");
  r.require(is_palindromic(char_poly(exact_rep(Rational(2))->evaluate(w.word))), "palindromic at v=2");
}

void biproximality(Result& r) {
  const auto rep = exact_rep(Rational(3));
  const Real one(1), gap("1e-6"), real_tol("1e-8");
  for (const char* s : {"a", "b", "ab"}) {
    const auto e = eigen_report(to_numeric(rep->evaluate(W(s))));
    const Real l2l3_dev = boost::multiprecision::abs(e.l2l3 - one);
    r.detail << " " << s << ": gaps " << fmt(e.gap_top) << "/" << fmt(e.gap_bottom) << " |Im l1l4| "
             << fmt(boost::multiprecision::abs(e.l1l4.im)) << " |l2l3| " << fmt(e.l2l3) << ";";
    r.require(e.biproximal == Tri::Yes && e.gap_top > gap && e.gap_bottom > gap, std::string(s) + " biproximal");
    r.require(boost::multiprecision::abs(e.l1l4.im) <= real_tol, std::string(s) + " l1l4 real");
    r.require(l2l3_dev > gap, std::string(s) + " ||l2l3| - 1| > 1e-6");
  }
  // Reported for comparison only: a word with non-palindromic chi.
  const auto w = eigen_report(to_numeric(rep->evaluate(W("abAB"))));
  r.detail << " (abAB: biproximal " << to_string(w.biproximal) << " |l2l3| " << fmt(w.l2l3) << ")";
}

void end_to_end(Result& r) {
  const auto c1 = certify_pair(W("a"), W("b"), Rational(3));
  const auto c2 = certify_pair(W("a"), W("aa"), Rational(3));
  const auto c3 = certify_pair(W("a"), W("b"), Rational(2));
  r.detail << " (a,b,3) " << to_string(c1.verdict) << "; (a,a^2,3) " << to_string(c2.verdict) << "; (a,b,2) "
           << to_string(c3.verdict);
  r.require(c1.verdict == Verdict::Certified, "(a,b,3) CERTIFIED: " + c1.reason);
  r.require(c2.verdict == Verdict::Failed, "(a,a^2,3) FAILED");
  r.require(c3.verdict == Verdict::Failed, "(a,b,2) FAILED");
}

void bridge(Result& r) {
  const auto b = bridge_selftest(100, 20260101);
  r.detail << " hom " << fmt(b.max_hom_residual) << " minkowski " << fmt(b.max_minkowski_residual) << " kernel "
           << fmt(b.max_kernel_residual) << " exact pairs " << b.exact_pairs;
  r.require(b.pairs == 100, "100 pairs");
  r.require(b.max_hom_residual < Real("1e-9"), "homomorphism residual < 1e-9");
  r.require(b.max_minkowski_residual < Real("1e-9"), "Minkowski residual < 1e-9");
  r.require(b.exact_ok, "tau(-A) = tau(A) exactly");
}

void trace_reality(Result& r) {
  const auto w = find_nonpalindromic_witness(W("a"), W("b"), 8);
  const auto t = trace_reality_scan({w.word, W("u")}, *exact_rep(Rational(1)));
  r.detail << " tr(" << w.word.to_string() << ") = " << t[0].exact << "; tr(u) = " << t[1].exact;
  r.require(!t[0].is_real && boost::multiprecision::abs(t[0].trace.im) > Real("1e-6"), "witness trace non-real");
  r.require(t[1].exact == "2", "tr(u) exactly 2");
}

// Random tower elements with ~70% nonzero coordinates.
template <class F, class Gen>
TowerElem<F> random_elem(const std::shared_ptr<const Tower<F>>& t, Gen&& gen, std::mt19937_64& rng) {
  std::vector<F> c(t->dim());
  std::bernoulli_distribution keep(0.7);
  for (auto& x : c)
    if (keep(rng)) x = gen(rng);
  return TowerElem<F>(t, std::move(c));
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 15);
  return Rational(num(rng), den(rng));
}

IntPoly random_poly(std::mt19937_64& rng, int max_deg, long bound) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<long> coef(-bound, bound);
  std::vector<mpz_class> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coef(rng);
  return IntPoly(std::move(c));
}

RatFunc random_ratfunc(std::mt19937_64& rng) {
  IntPoly den = random_poly(rng, 1, 4);
  while (den.is_zero()) den = random_poly(rng, 1, 4);
  return RatFunc(random_poly(rng, 2, 9), den);
}

template <class F, class Gen>
int axiom_failures(const std::shared_ptr<const Tower<F>>& t, Gen gen, int cases, std::mt19937_64& rng) {
  int bad = 0;
  const LayerMask all = (LayerMask{1} << t->num_layers()) - 1;
  for (int i = 0; i < cases; ++i) {
    const auto x = random_elem(t, gen, rng), y = random_elem(t, gen, rng), z = random_elem(t, gen, rng);
    bool ok = (x + y) + z == x + (y + z) && x + y == y + x && x * y == y * x && (x * y) * z == x * (y * z) &&
              x * (y + z) == x * y + x * z && (x - x).is_zero() && x * t->one() == x;
    if (!x.is_zero()) ok = ok && (x * x.inverse()).is_one() && (y / x) * x == y;
    for (LayerMask m = 0; m <= all && ok; ++m) ok = galois(m, x * y) == galois(m, x) * galois(m, y);
    bad += !ok;
  }
  return bad;
}

void scalar_fuzz(Result& r) {
  std::mt19937_64 rng(1000);
  const int cases = 1000;
  const int b1 = axiom_failures(symbolic_tower(), random_ratfunc, cases, rng);
  const auto p3 = exact_point(Rational(3));
  const int b2 = axiom_failures(p3.tower, random_rational, cases, rng);
  const auto pi = exact_point_isqrt2();
  const int b3 = axiom_failures(pi.tower, random_rational, cases, rng);
  r.detail << " " << symbolic_tower()->describe() << ": " << cases - b1 << "/" << cases << "; "
           << p3.tower->describe() << ": " << cases - b2 << "/" << cases << "; " << pi.tower->describe() << ": "
           << cases - b3 << "/" << cases;
  r.require(b1 == 0 && b2 == 0 && b3 == 0, "all field axioms");
}

}  // namespace

int main(int argc, char** argv) {
  PrecisionScope precision(Config{}.precision_bits);
  const std::vector<Criterion> criteria{
      {1, "relation suite over Q(v)", 120, relation_suite},
      {2, "v=2 invariant symmetric form", 30, v2_structure},
      {3, "v=1 signature-(3,1) Hermitian form", 0, su31_structure},
      {4, "reduction at v=i*sqrt(2)", 10, reduction},
      {5, "Burnside rank 16 at v=2,3", 0, burnside},
      {6, "no symmetric/antisymmetric forms over Q(v)", 600, symbolic_forms},
      {7, "palindromicity dichotomy", 0, palindromicity},
      {8, "biproximality and power obstruction at v=3", 0, biproximality},
      {9, "end-to-end verdicts", 900, end_to_end},
      {10, "bridge self-test", 0, bridge},
      {11, "trace reality at v=1", 0, trace_reality},
      {12, "scalar field-axiom fuzz", 0, scalar_fuzz},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all_pass = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0) r.require(secs < c.time_limit_s, "runtime < " + std::to_string(int(c.time_limit_s)) + " s");
    all_pass = all_pass && r.pass;
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(2);
    t << secs;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << t.str() << " s)"
              << r.detail.str() << std::endl;
  }
  return all_pass ? 0 : 1;
}
