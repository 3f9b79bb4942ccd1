/* family.hpp -- relation families witnessing spectrum memberships */

#pragma once

#include <optional>
#include <vector>

#include "ltbt/dmts.hpp"
#include "ltbt/relation.hpp"

namespace ltbt {

/// Witness for a k-switching (or k-ready) relation family between two LTS:
/// one relation per level, two levels (even/odd role) when the bound is
/// infinite.
struct LtsRelationFamily {
  SwitchBound bound;
  std::vector<StateRelation> levels;

  int total_pairs() const {
    int n = 0;
    for (const auto& r : levels) n += r.size();
    return n;
  }
};

/// Witness for a DMTS relation family: the R1 chain (may obligations of the
/// left system) and the R2 chain (must obligations of the right system),
/// both over S1 x S2.
struct DoubleRelationFamily {
  SwitchBound bound;
  std::vector<StateRelation> forward;   // R1 chain
  std::vector<StateRelation> backward;  // R2 chain

  int total_pairs() const {
    int n = 0;
    for (const auto& r : forward) n += r.size();
    for (const auto& r : backward) n += r.size();
    return n;
  }
};

/// Refinement verdict plus counterexample evidence: the greatest family is
/// always returned, and on failure the first initial state with empty
/// coverage is named (move-level evidence is the games module's job).
struct DmtsRefineReport {
  bool holds = false;
  DoubleRelationFamily family;
  std::optional<State> uncovered_lhs_initial;
  std::optional<State> uncovered_rhs_initial;
};

}  // namespace ltbt
