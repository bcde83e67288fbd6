#include "sdcert/rep/relations.hpp"

namespace sdcert {

std::string to_string(RelationVerdict v) {
  switch (v) {
    case RelationVerdict::Identity: return "Identity";
    case RelationVerdict::ScalarMatrix: return "ScalarMatrix";
    case RelationVerdict::Failed: return "Failed";
  }
  return "?";
}

const std::vector<std::pair<std::string, Word>>& relators() {
  static const std::vector<std::pair<std::string, Word>> list = {
      {"u^4", Word::parse("uuuu")},
      {"aabbABAbb", Word::parse("aabbABAbb")},
      {"aBaBabaaab", Word::parse("aBaBabaaab")},
  };
  return list;
}

namespace {

template <class S>
RelationReport verify_exact(const Representation<S>& rep) {
  RelationReport report{rep.label(), {}};
  for (const auto& [name, w] : relators()) {
    RelationResult r{name, w};
    const Mat4<S> m = rep.evaluate_unreduced(w);
    const Mat4<S> diff = m - rep.identity();
    r.nonzero_entries = nonzero_count(diff);
    if (r.nonzero_entries == 0) {
      r.verdict = RelationVerdict::Identity;
    } else {
      bool scalar = true;
      for (int i = 0; i < 4 && scalar; ++i)
        for (int j = 0; j < 4; ++j) {
          if (i != j && !m(i, j).is_zero()) scalar = false;
          if (i == j && !(m(i, i) == m(0, 0))) scalar = false;
        }
      r.verdict = scalar ? RelationVerdict::ScalarMatrix : RelationVerdict::Failed;
      if (scalar) r.scalar = m(0, 0).to_string();
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

}  // namespace

RelationReport verify_relations(const SymbolicRep& rep) { return verify_exact(rep); }
RelationReport verify_relations(const ExactRep& rep) { return verify_exact(rep); }

RelationReport verify_relations(const NumericRep& rep, const Real& tol) {
  RelationReport report{rep.label(), {}};
  for (const auto& [name, w] : relators()) {
    RelationResult r{name, w};
    const Mat4<Complex> m = rep.evaluate_unreduced(w);
    const Real d = max_abs(m - rep.identity());
    r.diff_norm = format_real(d, 6);
    if (d <= tol) {
      r.verdict = RelationVerdict::Identity;
    } else {
      Mat4<Complex> off = m - rep.identity().scaled(m(0, 0));
      r.verdict = max_abs(off) <= tol ? RelationVerdict::ScalarMatrix : RelationVerdict::Failed;
      if (r.verdict == RelationVerdict::ScalarMatrix) r.scalar = m(0, 0).to_string(30);
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

}  // namespace sdcert
