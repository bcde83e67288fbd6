#include "sdcert/certifier/certifier.hpp"

#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "sdcert/errors.hpp"
#include "sdcert/forms/linalg.hpp"

namespace sdcert {

namespace {

// Reduced words over g1, g1^-1, g2, g2^-1 (indices 0..3; i ^ 1 is the
// inverse), grown one letter at a time with their images.
template <class S>
class WordTree {
 public:
  struct Node {
    Word word;
    Mat4<S> image;
    int last = -1;
  };

  WordTree(const Word& g1, const Word& g2, const Representation<S>& rep)
      : gens_{g1, g1.inverse(), g2, g2.inverse()} {
    for (std::size_t k = 0; k < 4; ++k) images_[k] = rep.evaluate(gens_[k]);
    layer_.push_back({Word(), rep.identity(), -1});
    seen_.insert(Word().expand().to_string());
  }

  const std::vector<Node>& layer() const { return layer_; }

  /// Builds the next length; `visit` sees each new word and returns true to
  /// stop early. Words whose expansion was already seen are skipped.
  template <class Visit>
  bool grow(Visit visit) {
    std::vector<Node> next;
    for (const Node& n : layer_)
      for (int g = 0; g < 4; ++g) {
        if (n.last >= 0 && g == (n.last ^ 1)) continue;
        Node c{n.word * gens_[static_cast<std::size_t>(g)], n.image * images_[static_cast<std::size_t>(g)], g};
        if (!seen_.insert(c.word.expand().to_string()).second) continue;
        const bool stop = visit(c);
        next.push_back(std::move(c));
        if (stop) {
          layer_ = std::move(next);
          return true;
        }
      }
    layer_ = std::move(next);
    return false;
  }

 private:
  std::array<Word, 4> gens_;
  std::array<Mat4<S>, 4> images_;
  std::vector<Node> layer_;
  std::set<std::string> seen_;
};

Row<QElem> flatten(const Mat4<QElem>& m) { return Row<QElem>(m.entries().begin(), m.entries().end()); }

}  // namespace

BurnsideResult burnside_witness(const Word& g1, const Word& g2, const ExactRep& rep, int max_len) {
  if (max_len < 1) throw Error("max_len must be at least 1");
  BurnsideResult res;
  EchelonBasis<QElem> basis(16);
  std::vector<Row<QElem>> kept;
  auto consider = [&](const Word& w, const Mat4<QElem>& m) {
    ++res.examined;
    if (basis.insert(flatten(m))) {
      kept.push_back(flatten(m));
      res.words.push_back(w);
    }
    return basis.rank() == 16;
  };
  WordTree<QElem> tree(g1, g2, rep);
  consider(Word(), rep.identity());
  for (int len = 1; len <= max_len && basis.rank() < 16; ++len) {
    const std::size_t before = basis.rank();
    if (tree.grow([&](const auto& n) { return consider(n.word, n.image); })) break;
    if (basis.rank() == before)
      throw BudgetExhausted("word images span a subalgebra of dimension " + std::to_string(before),
                            before, true);
  }
  if (basis.rank() < 16)
    throw BudgetExhausted("rank " + std::to_string(basis.rank()) + " after words of length " +
                              std::to_string(max_len),
                          basis.rank(), false);
  res.delta = determinant(kept, rep.identity().like());
  return res;
}

NonpalindromicWitness find_nonpalindromic_witness(const Word& g1, const Word& g2, int max_len,
                                                  const WitnessFilter& accept) {
  const auto sym = symbolic_rep();
  WordTree<QvElem> tree(g1, g2, *sym);
  std::optional<NonpalindromicWitness> found;
  std::size_t examined = 0;
  for (int len = 1; len <= max_len; ++len) {
    const bool stop = tree.grow([&](const auto& n) {
      ++examined;
      auto shape = shape_decompose(char_poly(n.image));
      if (shape.q.is_zero()) return false;
      if (accept && !accept(n.word, shape)) return false;
      found = NonpalindromicWitness{n.word, std::move(shape), examined};
      return true;
    });
    if (stop) return *found;
    if (tree.layer().empty()) break;
  }
  throw NotFound("no word of length <= " + std::to_string(max_len) + " has a non-palindromic characteristic polynomial" +
                 (accept ? " passing the filter" : ""));
}

std::vector<TraceEntry> trace_reality_scan(const std::vector<Word>& words, const ExactRep& rep) {
  const QElem& v = rep.point().v;
  if (!v.in_base() || v.base_part() * v.base_part() >= Rational(4))
    throw DegenerateContext("trace reality scan needs rational v in (-2, 2)");
  std::vector<TraceEntry> out;
  for (const Word& w : words) {
    const QElem t = rep.evaluate(w).trace();
    out.push_back({w, to_complex(t), t.to_string(), t == complex_conjugate(t)});
  }
  return out;
}

std::vector<TraceEntry> trace_reality_scan(const std::vector<Word>& words, const NumericRep& rep, const Config& cfg) {
  std::vector<TraceEntry> out;
  for (const Word& w : words) {
    const Complex t = rep.evaluate(w).trace();
    out.push_back({w, t, "", boost::multiprecision::abs(t.im) <= Real(cfg.trace_imag_tol)});
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "CERTIFIED";
    case Verdict::Failed: return "FAILED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
  return s;
}

WitnessInfo specialise_witness(const Word& w, const CharShape<RatFunc>& shape, const ExactRep& rep,
                               const Rational& v) {
  WitnessInfo info{w, shape, char_poly(rep.evaluate(w)), true, std::nullopt};
  info.palindromic_at_v = is_palindromic(info.chi_at_v);
  const QElem& s = rep.point().sqrt_vm4;
  if (s.is_zero()) return info;
  // c1 - c3 = 2 q sqrt(v^2 - 4)
  const QElem qs = (info.chi_at_v.c[1] - info.chi_at_v.c[3]) * (s + s).inverse();
  if (!qs.in_base()) throw ShapeViolation("specialised q of " + w.to_string() + " is not rational");
  info.q_at_v = qs.base_part();
  if (!(*info.q_at_v == shape.q.evaluate(v)))
    throw Error("symbolic and specialised q disagree for " + w.to_string());
  return info;
}

void certify_into(DensityCertificate& cert) {
  const Config& cfg = cert.config;
  const Rational& v = cert.v;
  const bool real_pipeline = v * v >= Rational(4);
  cert.pipeline = real_pipeline ? "SL(4,R)" : "SU(3,1)";
  const auto rep = exact_rep(v);
  const auto m1 = rep->evaluate(cert.g1), m2 = rep->evaluate(cert.g2);
  if (m1 * m2 == m2 * m1) {
    cert.verdict = Verdict::Failed;
    cert.reason = "abelian: the images of the pair commute";
    return;
  }
  std::vector<std::string> failures, open;

  try {
    const auto b = burnside_witness(cert.g1, cert.g2, *rep, cfg.burnside_max_len);
    cert.burnside_words = b.words;
    cert.burnside_rank = 16;
    cert.delta_nonzero = !b.delta.is_zero();
    if (!cert.delta_nonzero) open.push_back("Burnside determinant vanished");
  } catch (const BudgetExhausted& e) {
    cert.burnside_rank = e.achieved_rank();
    if (e.saturated())
      failures.push_back("reducible: word images span a subalgebra of dimension " + std::to_string(e.achieved_rank()));
    else
      open.push_back("Burnside search reached rank " + std::to_string(e.achieved_rank()) + " within length " +
                     std::to_string(cfg.burnside_max_len));
  }

  FormDims dims;
  dims.symmetric = invariant_forms<Rational>({m1, m2}, Symmetry::Symmetric).dimension();
  dims.antisymmetric = invariant_forms<Rational>({m1, m2}, Symmetry::Antisymmetric).dimension();
  const auto herm = invariant_hermitian({m1, m2});
  dims.hermitian = herm.dimension();
  if (dims.hermitian == 1) dims.hermitian_signature = signature(herm.basis[0], true);
  cert.form_dims = dims;
  if (dims.symmetric > 0) failures.push_back("preserves a symmetric form (dimension " + std::to_string(dims.symmetric) + ")");
  if (dims.antisymmetric > 0)
    failures.push_back("preserves an antisymmetric form (dimension " + std::to_string(dims.antisymmetric) + ")");
  if (!real_pipeline) {
    const Signature target{3, 1, 0};
    const bool ok = dims.hermitian_signature &&
                    (*dims.hermitian_signature == target || *dims.hermitian_signature == target.flipped());
    if (!ok)
      failures.push_back("no invariant Hermitian form of signature (3,1): dimension " + std::to_string(dims.hermitian) +
                         (dims.hermitian_signature ? ", signature " + dims.hermitian_signature->to_string() : ""));
  }

  const int L = cfg.witness_max_len;
  if (v * v == Rational(4)) {
    // sqrt(v^2 - 4) = 0, so every characteristic polynomial is palindromic.
    const auto w = find_nonpalindromic_witness(cert.g1, cert.g2, L);
    cert.witness = specialise_witness(w.word, w.shape, *rep, v);
    cert.eigen = eigen_report(to_numeric(rep->evaluate(w.word)), cfg);
    failures.push_back("palindromic at v=" + v.to_string() + ": every characteristic polynomial is palindromic");
  } else if (real_pipeline) {
    std::optional<WitnessInfo> fallback;
    std::optional<EigenReport> fallback_eigen;
    auto accept = [&](const Word& w, const CharShape<RatFunc>& shape) {
      auto info = specialise_witness(w, shape, *rep, v);
      if (info.palindromic_at_v) return false;
      auto e = eigen_report(to_numeric(rep->evaluate(w)), cfg);
      const bool ok = e.biproximal == Tri::Yes && e.l1l4_real && e.obstruction == Tri::Yes;
      if (ok || !fallback) {
        fallback = std::move(info);
        fallback_eigen = std::move(e);
      }
      return ok;
    };
    try {
      find_nonpalindromic_witness(cert.g1, cert.g2, L, accept);
      cert.witness = fallback;
      cert.eigen = fallback_eigen;
    } catch (const NotFound&) {
      if (fallback) {
        cert.witness = fallback;
        cert.eigen = fallback_eigen;
        open.push_back("no witness of length <= " + std::to_string(L) + " shows the power obstruction");
      } else {
        open.push_back("no word of length <= " + std::to_string(L) + " is non-palindromic at v");
      }
    }
  } else {
    try {
      const auto w = find_nonpalindromic_witness(cert.g1, cert.g2, L, [&](const Word& x, const CharShape<RatFunc>& s) {
        return !specialise_witness(x, s, *rep, v).palindromic_at_v;
      });
      cert.witness = specialise_witness(w.word, w.shape, *rep, v);
      try {
        cert.eigen = eigen_report(to_numeric(rep->evaluate(w.word)), cfg);
      } catch (const ConvergenceFailure&) {
        // recorded only in this pipeline
      }
      cert.traces = trace_reality_scan({w.word, cert.g1, cert.g2}, *rep);
      if (cert.traces.front().is_real) open.push_back("witness trace is real");
    } catch (const NotFound&) {
      open.push_back("no word of length <= " + std::to_string(L) + " is non-palindromic at v");
    }
  }

  if (!failures.empty()) {
    cert.verdict = Verdict::Failed;
    cert.reason = join(failures);
  } else if (!open.empty()) {
    cert.verdict = Verdict::Inconclusive;
    cert.reason = join(open);
  } else {
    cert.verdict = Verdict::Certified;
  }
}

}  // namespace

DensityCertificate certify_pair(const Word& g1, const Word& g2, const Rational& v, const Config& cfg) {
  DensityCertificate cert;
  cert.g1 = g1;
  cert.g2 = g2;
  cert.v = v;
  cert.config = cfg;
  try {
    certify_into(cert);
  } catch (const std::exception& e) {
    cert.verdict = Verdict::Inconclusive;
    cert.reason = std::string("component error: ") + e.what();
  }
  return cert;
}

ScanReport scan(const std::vector<Rational>& vs, const std::vector<std::pair<Word, Word>>& pairs, const Config& cfg) {
  ScanReport rep;
  const std::size_t n = vs.size() * pairs.size();
  rep.cells.resize(n);
  if (n == 0) return rep;
  PrecisionScope prec(cfg.precision_bits);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      const auto& [g1, g2] = pairs[k / vs.size()];
      rep.cells[k] = certify_pair(g1, g2, vs[k % vs.size()], cfg);
    }
  };
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, cfg.workers)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& c : rep.cells) {
    rep.certified += c.verdict == Verdict::Certified;
    rep.failed += c.verdict == Verdict::Failed;
    rep.inconclusive += c.verdict == Verdict::Inconclusive;
  }
  return rep;
}

int output_digits(const Config& cfg) {
  return static_cast<int>(std::floor(cfg.precision_bits * 0.30102999566398120));
}

nlohmann::json config_json(const Config& cfg) {
  return {{"precision_bits", cfg.precision_bits},
          {"gap_tol", cfg.gap_tol},
          {"unit_band", cfg.unit_band},
          {"real_tol", cfg.real_tol},
          {"rank_zero", cfg.rank_zero},
          {"rank_ambiguous", cfg.rank_ambiguous},
          {"form_residual", cfg.form_residual},
          {"isometry_residual", cfg.isometry_residual},
          {"cond_threshold", cfg.cond_threshold},
          {"trace_imag_tol", cfg.trace_imag_tol},
          {"witness_max_len", cfg.witness_max_len},
          {"burnside_max_len", cfg.burnside_max_len},
          {"workers", cfg.workers}};
}

namespace {

nlohmann::json complex_json(const Complex& z, int digits) {
  return {{"re", format_real(z.re, digits)}, {"im", format_real(z.im, digits)}};
}

nlohmann::json tri_json(Tri t) {
  if (t == Tri::Inconclusive) return nullptr;
  return t == Tri::Yes;
}

}  // namespace

nlohmann::json to_json(const EigenReport& e, const Config& cfg) {
  const int d = output_digits(cfg);
  nlohmann::json ev = nlohmann::json::array(), mod = nlohmann::json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    ev.push_back(complex_json(e.eigenvalues[i], d));
    mod.push_back(format_real(e.moduli[i], d));
  }
  return {{"eigenvalues", ev},
          {"moduli", mod},
          {"gap_top", format_real(e.gap_top, d)},
          {"gap_bottom", format_real(e.gap_bottom, d)},
          {"biproximal", tri_json(e.biproximal)},
          {"l1l4", complex_json(e.l1l4, d)},
          {"l1l4_real", e.l1l4_real},
          {"l2l3", format_real(e.l2l3, d)},
          {"obstruction", tri_json(e.obstruction)},
          {"max_residual", format_real(e.max_residual, 6)}};
}

nlohmann::json to_json(const DensityCertificate& c) {
  const int d = output_digits(c.config);
  nlohmann::json j;
  j["pair"] = {c.g1.to_string(), c.g2.to_string()};
  j["v"] = c.v.to_string();
  j["pipeline"] = c.pipeline;
  nlohmann::json words = nlohmann::json::array();
  for (const auto& w : c.burnside_words) words.push_back(w.to_string());
  j["irreducibility"] = {{"witnesses", words},
                         {"delta_nonzero", c.delta_nonzero},
                         {"rank", c.burnside_rank ? nlohmann::json(*c.burnside_rank) : nlohmann::json(nullptr)}};
  if (c.witness) {
    const auto& w = *c.witness;
    nlohmann::json chi = nlohmann::json::array();
    for (const auto& x : w.chi_at_v.c) chi.push_back(x.to_string());
    j["witness"] = {{"word", w.word.to_string()},
                    {"p", w.shape.p.to_string()},
                    {"q", w.shape.q.to_string()},
                    {"r", w.shape.r.to_string()},
                    {"polynomial", w.shape.polynomial},
                    {"chi_at_v", chi},
                    {"palindromic_at_v", w.palindromic_at_v},
                    {"q_at_v", w.q_at_v ? nlohmann::json(w.q_at_v->to_string()) : nlohmann::json(nullptr)}};
  } else {
    j["witness"] = nullptr;
  }
  j["eigen"] = c.eigen ? to_json(*c.eigen, c.config) : nlohmann::json(nullptr);
  if (c.form_dims) {
    const auto& f = *c.form_dims;
    j["form_dims"] = {{"sym", f.symmetric},
                      {"antisym", f.antisymmetric},
                      {"herm", f.hermitian},
                      {"herm_signature", f.hermitian_signature
                                             ? nlohmann::json{f.hermitian_signature->positives,
                                                              f.hermitian_signature->negatives,
                                                              f.hermitian_signature->zeros}
                                             : nlohmann::json(nullptr)}};
  } else {
    j["form_dims"] = nullptr;
  }
  nlohmann::json traces = nlohmann::json::array();
  for (const auto& t : c.traces)
    traces.push_back({{"word", t.word.to_string()}, {"trace", complex_json(t.trace, d)}, {"exact", t.exact}, {"is_real", t.is_real}});
  j["traces"] = traces;
  j["verdict"] = to_string(c.verdict);
  j["reason"] = c.reason;
  j["assumptions"] = {"free_pair", "benoist_semisimplicity"};
  j["assumed_free"] = true;
  j["config"] = config_json(c.config);
  return j;
}

nlohmann::json to_json(const ScanReport& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  return {{"certificates", cells},
          {"counts", {{"total", r.cells.size()}, {"certified", r.certified}, {"failed", r.failed}, {"inconclusive", r.inconclusive}}}};
}

}  // namespace sdcert
