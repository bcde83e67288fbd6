#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sdcert/charpoly/charpoly.hpp"
#include "sdcert/config.hpp"
#include "sdcert/forms/forms.hpp"
#include "sdcert/rep/rep.hpp"

namespace sdcert {

/// Sixteen words whose images span M_4, found greedily by word length.
struct BurnsideResult {
  std::vector<Word> words;
  QElem delta;  // det of the 16 flattened images
  std::size_t examined = 0;
};

/// Enumerates reduced words in g1^{+-1}, g2^{+-1} by length (the empty word
/// first) and keeps those whose image raises the exact rank. Throws
/// BudgetExhausted if rank 16 is not reached within max_len.
BurnsideResult burnside_witness(const Word& g1, const Word& g2, const ExactRep& rep, int max_len);

struct NonpalindromicWitness {
  Word word;
  CharShape<RatFunc> shape;
  std::size_t examined = 0;
};

/// Optional filter: a symbolic witness is returned only if it also passes.
using WitnessFilter = std::function<bool(const Word&, const CharShape<RatFunc>&)>;

/// First word (by length, then generator order g1, g1^-1, g2, g2^-1) whose
/// characteristic polynomial over Q(v) has q != 0. Throws NotFound.
NonpalindromicWitness find_nonpalindromic_witness(const Word& g1, const Word& g2, int max_len,
                                                  const WitnessFilter& accept = {});

struct TraceEntry {
  Word word;
  Complex trace;
  std::string exact;  // empty for numeric contexts
  bool is_real = false;
};

/// Traces over an exact context with v in (-2, 2); reality is decided
/// exactly (trace fixed by complex conjugation).
std::vector<TraceEntry> trace_reality_scan(const std::vector<Word>& words, const ExactRep& rep);
/// Numeric variant: real when |Im tr| <= cfg.trace_imag_tol.
std::vector<TraceEntry> trace_reality_scan(const std::vector<Word>& words, const NumericRep& rep,
                                           const Config& cfg = {});

enum class Verdict { Certified, Failed, Inconclusive };
std::string to_string(Verdict v);

struct WitnessInfo {
  Word word;
  CharShape<RatFunc> shape;
  Poly4<QElem> chi_at_v;
  bool palindromic_at_v = true;
  std::optional<Rational> q_at_v;  // from the specialised chi; absent at v = +-2
};

struct FormDims {
  std::size_t symmetric = 0;
  std::size_t antisymmetric = 0;
  std::size_t hermitian = 0;
  std::optional<Signature> hermitian_signature;  // when hermitian == 1
};

struct DensityCertificate {
  Word g1, g2;
  Rational v;
  std::string pipeline;  // "SL(4,R)" or "SU(3,1)"
  std::vector<Word> burnside_words;
  bool delta_nonzero = false;
  std::optional<std::size_t> burnside_rank;
  std::optional<WitnessInfo> witness;
  std::optional<EigenReport> eigen;
  std::optional<FormDims> form_dims;
  std::vector<TraceEntry> traces;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  Config config;
};

/// Runs the density pipeline for the pair at rational v: the SL(4,R)
/// pipeline for |v| >= 2, the SU(3,1) pipeline for |v| < 2. Component
/// errors become INCONCLUSIVE with the error as reason.
DensityCertificate certify_pair(const Word& g1, const Word& g2, const Rational& v, const Config& cfg = {});

struct ScanReport {
  std::vector<DensityCertificate> cells;  // pairs outer, v inner, input order
  std::size_t certified = 0, failed = 0, inconclusive = 0;
};

/// certify_pair over the grid using cfg.workers threads.
ScanReport scan(const std::vector<Rational>& vs, const std::vector<std::pair<Word, Word>>& pairs,
                const Config& cfg = {});

nlohmann::json config_json(const Config& cfg);
nlohmann::json to_json(const DensityCertificate& c);
nlohmann::json to_json(const ScanReport& r);
nlohmann::json to_json(const EigenReport& e, const Config& cfg);

/// Significant decimal digits matching cfg.precision_bits.
int output_digits(const Config& cfg);

}  // namespace sdcert
