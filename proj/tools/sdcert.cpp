// Command-line front end: one subcommand per pipeline stage.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sdcert/bridge/bridge.hpp"
#include "sdcert/certifier/certifier.hpp"
#include "sdcert/charpoly/charpoly.hpp"
#include "sdcert/errors.hpp"
#include "sdcert/forms/forms.hpp"
#include "sdcert/rep/relations.hpp"
#include "sdcert/rep/rep.hpp"

using namespace sdcert;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

struct Options {
  std::string v;
  std::string ctx;
  std::string pair;
  std::vector<std::string> pairs;
  std::string words;
  std::string symmetry = "sym";
  std::string expect;
  std::string format = "text";
  int max_word_len = 8;
  int burnside_max_len = 6;
  unsigned precision = 128;
  double tol = 1e-6;
  int workers = 1;
  int selftest_pairs = 100;
  std::uint64_t seed = 1;
};

struct Outcome {
  json doc;
  int code = kExitOk;
};

Config make_config(const Options& o) {
  Config c;
  c.precision_bits = o.precision;
  c.gap_tol = o.tol;
  c.witness_max_len = o.max_word_len;
  c.burnside_max_len = o.burnside_max_len;
  c.workers = o.workers;
  return c;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Word> parse_words(const std::string& s) {
  std::vector<Word> out;
  for (const auto& w : split(s)) out.push_back(w == "e" ? Word() : Word::parse(w));
  return out;
}

std::pair<Word, Word> parse_pair(const std::string& s) {
  const auto w = split(s);
  if (w.size() != 2) throw CLI::ValidationError("--pair", "expected two comma-separated words, got '" + s + "'");
  return {Word::parse(w[0]), Word::parse(w[1])};
}

// --ctx wins; otherwise --v: "symbolic", "i*sqrt(2)", a decimal (numeric)
// or a rational (exact).
std::string context_string(const Options& o) {
  if (!o.ctx.empty()) return o.ctx;
  if (o.v.empty() || o.v == "symbolic") return "symbolic";
  if (o.v == "i*sqrt(2)") return "v=i*sqrt(2)";
  if (o.v.find('.') != std::string::npos) return "numeric:v=" + o.v;
  return "v=" + o.v;
}

Rational exact_v(const Options& o) {
  if (o.v.empty()) throw CLI::ValidationError("--v", "a rational value of v is required");
  return Rational::parse(o.v);
}

json matrix_json(const auto& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

json matrix_json(const Mat4<Complex>& m, int digits) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(m(i, j).to_string(digits));
    rows.push_back(row);
  }
  return rows;
}

json relation_json(const RelationReport& r) {
  json results = json::array();
  for (const auto& x : r.results)
    results.push_back({{"name", x.name},
                       {"word", x.word.to_string()},
                       {"verdict", to_string(x.verdict)},
                       {"scalar", x.scalar},
                       {"nonzero_entries", x.nonzero_entries},
                       {"diff_norm", x.diff_norm}});
  return {{"context", r.context}, {"results", results}, {"all_identity", r.all_identity()}};
}

Outcome cmd_relations(const Options& o, const Config& cfg) {
  const AnyRep rep = parse_context(context_string(o));
  RelationReport r;
  if (auto* s = std::get_if<std::shared_ptr<const SymbolicRep>>(&rep)) r = verify_relations(**s);
  else if (auto* e = std::get_if<std::shared_ptr<const ExactRep>>(&rep)) r = verify_relations(**e);
  else r = verify_relations(*std::get<std::shared_ptr<const NumericRep>>(rep), Real("1e-20"));
  (void)cfg;
  Outcome out{relation_json(r)};
  const std::string expect = o.expect.empty() ? "identity" : o.expect;
  bool ok = true;
  for (const auto& x : r.results) {
    if (x.verdict == RelationVerdict::Identity) continue;
    if (expect == "scalar" && x.verdict == RelationVerdict::ScalarMatrix) continue;
    ok = false;
  }
  out.code = ok ? kExitOk : kExitFailed;
  return out;
}

template <class F>
json shape_json(const Poly4<TowerElem<F>>& chi) {
  try {
    const auto s = shape_decompose(chi);
    return {{"p", s.p.to_string()}, {"q", s.q.to_string()}, {"r", s.r.to_string()}, {"polynomial", s.polynomial}};
  } catch (const Error& e) {
    return {{"error", e.what()}};
  }
}

template <class S>
json chi_json(const Poly4<S>& chi, int digits) {
  json c = json::array();
  for (const auto& x : chi.c) {
    if constexpr (std::is_same_v<S, Complex>) c.push_back(x.to_string(digits));
    else c.push_back(x.to_string());
  }
  return c;
}

Outcome cmd_charpoly(const Options& o, const Config& cfg) {
  const AnyRep rep = parse_context(context_string(o));
  const auto words = parse_words(o.words.empty() ? "u,c,a,b,abAB" : o.words);
  const int digits = output_digits(cfg);
  json items = json::array();
  bool expectation_met = true;
  for (const Word& w : words) {
    json item{{"word", w.to_string()}};
    bool pal = false;
    if (auto* s = std::get_if<std::shared_ptr<const SymbolicRep>>(&rep)) {
      const auto chi = char_poly((*s)->evaluate(w));
      pal = is_palindromic(chi);
      item["chi"] = chi_json(chi, digits);
      item["shape"] = shape_json(chi);
    } else if (auto* e = std::get_if<std::shared_ptr<const ExactRep>>(&rep)) {
      const auto m = (*e)->evaluate(w);
      const auto chi = char_poly(m);
      pal = is_palindromic(chi);
      item["chi"] = chi_json(chi, digits);
      item["shape"] = shape_json(chi);
      item["eigen"] = to_json(eigen_report(to_numeric(m), cfg), cfg);
    } else {
      const auto m = std::get<std::shared_ptr<const NumericRep>>(rep)->evaluate(w);
      const auto chi = char_poly(m);
      pal = (chi.c[0] - chi.c[4]).abs() <= Real(cfg.real_tol) && (chi.c[1] - chi.c[3]).abs() <= Real(cfg.real_tol);
      item["chi"] = chi_json(chi, digits);
      item["eigen"] = to_json(eigen_report(m, cfg), cfg);
    }
    item["palindromic"] = pal;
    if (o.expect == "palindromic" && !pal) expectation_met = false;
    if (o.expect == "nonpalindromic" && pal) expectation_met = false;
    items.push_back(item);
  }
  return {{{"context", context_string(o)}, {"words", items}}, expectation_met ? kExitOk : kExitFailed};
}

Outcome cmd_forms(const Options& o, const Config& cfg) {
  const AnyRep rep = parse_context(context_string(o));
  const auto words = parse_words(o.words.empty() ? "u,c" : o.words);
  const Symmetry sym = parse_symmetry(o.symmetry);
  json doc{{"context", context_string(o)}, {"symmetry", to_string(sym)}};
  json basis = json::array();
  std::size_t dim = 0;
  if (auto* s = std::get_if<std::shared_ptr<const SymbolicRep>>(&rep)) {
    if (sym == Symmetry::Hermitian) throw Error("Hermitian forms need an exact or numeric specialisation");
    std::vector<Mat4<QvElem>> gens;
    for (const auto& w : words) gens.push_back((*s)->evaluate(w));
    const auto fs = invariant_forms<RatFunc>(gens, sym);
    dim = fs.dimension();
    for (const auto& b : fs.basis) basis.push_back(matrix_json(b));
    doc["pivot_norms"] = fs.pivot_norms;
  } else if (auto* e = std::get_if<std::shared_ptr<const ExactRep>>(&rep)) {
    std::vector<Mat4<QElem>> gens;
    for (const auto& w : words) gens.push_back((*e)->evaluate(w));
    const auto fs = sym == Symmetry::Hermitian ? invariant_hermitian(gens) : invariant_forms<Rational>(gens, sym);
    dim = fs.dimension();
    for (const auto& b : fs.basis) basis.push_back(matrix_json(b));
    if (dim == 1 && sym != Symmetry::Antisymmetric)
      doc["signature"] = signature(fs.basis[0], sym == Symmetry::Hermitian).to_string();
  } else {
    if (sym != Symmetry::Hermitian) throw Error("numeric contexts support Hermitian forms only");
    std::vector<Mat4<Complex>> gens;
    const auto& nr = std::get<std::shared_ptr<const NumericRep>>(rep);
    for (const auto& w : words) gens.push_back(nr->evaluate(w));
    const auto fs = invariant_hermitian(gens, cfg);
    dim = fs.dimension();
    for (const auto& b : fs.basis) basis.push_back(matrix_json(b, output_digits(cfg)));
    doc["max_residual"] = format_real(fs.max_residual, 6);
    if (dim == 1) doc["signature"] = signature(fs.basis[0], cfg).to_string();
  }
  doc["generators"] = split(o.words.empty() ? "u,c" : o.words);
  doc["dimension"] = dim;
  doc["basis"] = basis;
  int code = kExitOk;
  if (!o.expect.empty() && std::to_string(dim) != o.expect) code = kExitFailed;
  return {doc, code};
}

int verdict_code(Verdict v, const std::string& expect) {
  if (!expect.empty()) {
    if (to_string(v) == expect) return kExitOk;
    return v == Verdict::Inconclusive ? kExitInconclusive : kExitFailed;
  }
  switch (v) {
    case Verdict::Certified: return kExitOk;
    case Verdict::Failed: return kExitFailed;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

Outcome cmd_certify(const Options& o, const Config& cfg) {
  const auto [g1, g2] = parse_pair(o.pair.empty() ? "a,b" : o.pair);
  const auto cert = certify_pair(g1, g2, exact_v(o), cfg);
  return {to_json(cert), verdict_code(cert.verdict, o.expect)};
}

Outcome cmd_scan(const Options& o, const Config& cfg) {
  std::vector<Rational> vs;
  for (const auto& x : split(o.v)) vs.push_back(Rational::parse(x));
  std::vector<std::pair<Word, Word>> pairs;
  for (const auto& p : o.pairs) pairs.push_back(parse_pair(p));
  if (pairs.empty()) pairs.push_back(parse_pair("a,b"));
  const auto rep = scan(vs, pairs, cfg);
  int code = kExitOk;
  for (const auto& c : rep.cells) code = std::max(code, verdict_code(c.verdict, o.expect));
  return {to_json(rep), code};
}

Outcome cmd_reduce(const Options&, const Config&) {
  try {
    const auto r = reduce_at_isqrt2();
    json entries = json::array();
    for (const auto& e : r.entries)
      entries.push_back({{"generator", std::string(1, e.generator)},
                         {"row", e.row + 1},
                         {"col", e.col + 1},
                         {"expected", e.expected},
                         {"actual", e.actual},
                         {"match", e.match}});
    json dets = json::array();
    for (const auto& d : r.block_dets) dets.push_back(d.to_string());
    return {{{"tower", r.u.like().tower()->describe()},
             {"conjugated_u", matrix_json(r.u)},
             {"conjugated_c", matrix_json(r.c)},
             {"entries", entries},
             {"upper_right_zero", r.upper_right_zero},
             {"block_dets", dets},
             {"blocks_det_one", r.blocks_det_one},
             {"block_det_products_one", r.block_det_products_one},
             {"c_lower_trace_zero", r.c_lower_trace_zero},
             {"u_conj_sign", r.u_conj_sign},
             {"c_conj_sign", r.c_conj_sign},
             {"match", true}},
            kExitOk};
  } catch (const StructureViolation& e) {
    return {{{"match", false}, {"error", e.what()}}, kExitFailed};
  }
}

Outcome cmd_bridge(const Options& o, const Config& cfg) {
  const auto r = bridge_selftest(o.selftest_pairs, o.seed, cfg);
  const Real tol(cfg.isometry_residual);
  return {{{"pairs", r.pairs},
           {"seed", o.seed},
           {"max_hom_residual", format_real(r.max_hom_residual, 6)},
           {"max_minkowski_residual", format_real(r.max_minkowski_residual, 6)},
           {"max_kernel_residual", format_real(r.max_kernel_residual, 6)},
           {"exact_pairs", r.exact_pairs},
           {"exact_ok", r.exact_ok},
           {"classification_ok", r.classification_ok},
           {"tolerance", cfg.isometry_residual},
           {"passed", r.passed(tol)}},
          r.passed(tol) ? kExitOk : kExitFailed};
}

Outcome cmd_trace(const Options& o, const Config& cfg) {
  const auto words = parse_words(o.words.empty() ? "u,e,abAB" : o.words);
  const std::string ctx = context_string(o);
  const AnyRep rep = parse_context(ctx);
  std::vector<TraceEntry> t;
  if (auto* e = std::get_if<std::shared_ptr<const ExactRep>>(&rep)) t = trace_reality_scan(words, **e);
  else if (auto* n = std::get_if<std::shared_ptr<const NumericRep>>(&rep)) t = trace_reality_scan(words, **n, cfg);
  else throw Error("trace-scan needs a specialisation of v");
  json items = json::array();
  for (const auto& x : t)
    items.push_back({{"word", x.word.to_string()},
                     {"trace", {{"re", format_real(x.trace.re, output_digits(cfg))}, {"im", format_real(x.trace.im, output_digits(cfg))}}},
                     {"exact", x.exact},
                     {"is_real", x.is_real}});
  return {{{"context", ctx}, {"traces", items}}, kExitOk};
}

void print_text(const json& j, std::ostream& os, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        os << pad << k << ":\n";
        print_text(v, os, indent + 2);
      } else {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
    if (flat) {
      os << pad;
      for (std::size_t i = 0; i < j.size(); ++i) os << (i ? "  " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      os << "\n";
      return;
    }
    for (const auto& x : j) {
      os << pad << "-\n";
      print_text(x, os, indent + 2);
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and high-precision checks for the density pipeline of rho_v"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--precision", o.precision, "working precision in bits")->check(CLI::Range(32u, 4096u));
  app.add_option("--tol", o.tol, "relative gap tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-word-len", o.max_word_len, "witness search budget")->check(CLI::Range(1, 16));
  app.add_option("--burnside-max-len", o.burnside_max_len, "Burnside search budget")->check(CLI::Range(1, 12));
  app.add_option("--workers", o.workers, "scan worker threads")->check(CLI::Range(1, 256));

  auto ctx_opts = [&](CLI::App* sub) {
    sub->add_option("--v", o.v, "symbolic, p/q, a decimal (numeric) or i*sqrt(2)");
    sub->add_option("--ctx", o.ctx, "symbolic, v=<rational>, v=i*sqrt(2) or numeric:v=<decimal>");
  };
  auto* relations = app.add_subcommand("relations", "relator suite");
  ctx_opts(relations);
  relations->add_option("--expect", o.expect, "identity or scalar")->check(CLI::IsMember({"identity", "scalar"}));
  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomials, shapes and eigenvalues");
  ctx_opts(charpoly);
  charpoly->add_option("--words", o.words, "comma-separated words");
  charpoly->add_option("--expect", o.expect)->check(CLI::IsMember({"palindromic", "nonpalindromic"}));
  auto* forms = app.add_subcommand("forms", "invariant forms of a set of words");
  ctx_opts(forms);
  forms->add_option("--words", o.words, "comma-separated generators (default u,c)");
  forms->add_option("--symmetry", o.symmetry, "sym, antisym or herm");
  forms->add_option("--expect", o.expect, "expected dimension");
  auto* certify = app.add_subcommand("certify", "density certificate for one pair");
  certify->add_option("--v", o.v, "rational v")->required();
  certify->add_option("--pair", o.pair, "two comma-separated words (default a,b)");
  certify->add_option("--expect", o.expect)->check(CLI::IsMember({"CERTIFIED", "FAILED", "INCONCLUSIVE"}));
  auto* scan_cmd = app.add_subcommand("scan", "certificates over a grid");
  scan_cmd->add_option("--v", o.v, "comma-separated rational values")->required();
  scan_cmd->add_option("--pair", o.pairs, "pair of words; repeatable");
  scan_cmd->add_option("--expect", o.expect)->check(CLI::IsMember({"CERTIFIED", "FAILED", "INCONCLUSIVE"}));
  app.add_subcommand("reduce-isqrt2", "block reduction at v = i*sqrt(2)");
  auto* bridge = app.add_subcommand("bridge-selftest", "tau, Minkowski form and isometry classification checks");
  bridge->add_option("--pairs", o.selftest_pairs, "random pairs")->check(CLI::Range(1, 100000));
  bridge->add_option("--seed", o.seed, "random seed");
  auto* trace = app.add_subcommand("trace-scan", "trace reality for v in (-2, 2)");
  ctx_opts(trace);
  trace->add_option("--words", o.words, "comma-separated words");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const Config cfg = make_config(o);
  PrecisionScope precision(cfg.precision_bits);
  const bool as_json = o.format == "json";
  Outcome out;
  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "relations") out = cmd_relations(o, cfg);
    else if (name == "charpoly") out = cmd_charpoly(o, cfg);
    else if (name == "forms") out = cmd_forms(o, cfg);
    else if (name == "certify") out = cmd_certify(o, cfg);
    else if (name == "scan") out = cmd_scan(o, cfg);
    else if (name == "reduce-isqrt2") out = cmd_reduce(o, cfg);
    else if (name == "bridge-selftest") out = cmd_bridge(o, cfg);
    else out = cmd_trace(o, cfg);
    if (name != "certify" && name != "scan") out.doc["config"] = config_json(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    out.doc = {{"error", e.what()}, {"config", config_json(cfg)}};
    out.code = kExitInconclusive;
  }
  if (as_json) std::cout << out.doc.dump(2) << "\n";
  else print_text(out.doc, std::cout);
  return out.code;
}
