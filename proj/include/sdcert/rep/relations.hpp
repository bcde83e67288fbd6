#pragma once

#include <string>
#include <vector>

#include "sdcert/rep/rep.hpp"

namespace sdcert {

enum class RelationVerdict { Identity, ScalarMatrix, Failed };

std::string to_string(RelationVerdict v);

struct RelationResult {
  std::string name;      // "u^4", "aabbABAbb", ...
  Word word;
  RelationVerdict verdict = RelationVerdict::Failed;
  std::string scalar;    // lambda for ScalarMatrix
  int nonzero_entries = 0;  // entries of (image - I) that are non-zero (exact)
  std::string diff_norm;    // max-norm of image - I (numeric)
};

struct RelationReport {
  std::string context;
  std::vector<RelationResult> results;

  bool all_identity() const {
    for (const auto& r : results)
      if (r.verdict != RelationVerdict::Identity) return false;
    return true;
  }
};

/// The relators checked: u^4 and the two relators of the Vol3 presentation.
const std::vector<std::pair<std::string, Word>>& relators();

/// Evaluates every relator without reducing u-exponents and classifies the
/// image. Exact contexts compare exactly; numeric ones use `tol` on the
/// max-norm.
RelationReport verify_relations(const SymbolicRep& rep);
RelationReport verify_relations(const ExactRep& rep);
RelationReport verify_relations(const NumericRep& rep, const Real& tol);

}  // namespace sdcert
