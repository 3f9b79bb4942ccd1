/* dmts.hpp -- disjunctive modal transition systems and modal refinement */

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ltbt/lts.hpp"
#include "ltbt/relation.hpp"

namespace ltbt {

/// A disjunctive must-transition: from `src`, at least one branch (label,
/// target) of `branches` has to be implemented.  `branches` may be empty;
/// the empty disjunction is kept and quantifiers treat it literally.
struct MustTransition {
  State src;
  std::vector<std::pair<Label, State>> branches;  // sorted, deduplicated
  friend auto operator<=>(const MustTransition&, const MustTransition&) = default;
};

/// DMTS with dense states, a (possibly empty) set of initial states, a
/// may-transition relation and a disjunctive must-transition relation.
/// Consistency: every must-branch is also a may-transition.
struct Dmts {
  int num_states = 0;
  std::vector<State> initial;  // sorted, deduplicated
  Alphabet alphabet;
  std::vector<Transition> may;        // sorted, deduplicated
  std::vector<MustTransition> must;   // sorted, deduplicated

  bool same_system(const Dmts& other) const;
};

/// Selects a point in the spectrum: the number of allowed matching-direction
/// switches (a natural number or infinity) plus the ready-variant flag.
struct SwitchBound {
  int k = 0;
  bool infinite = false;
  bool ready = false;

  static SwitchBound finite(int k, bool ready = false) { return {k, false, ready}; }
  static SwitchBound inf() { return {0, true, false}; }

  /// Number of relation slots: k+1 for finite k, two (even/odd role) for
  /// infinity.
  int levels() const { return infinite ? 2 : k + 1; }
  int next_level(int j) const { return infinite ? (j ^ 1) : j + 1; }
  bool has_next(int j) const { return infinite || j < k; }
  /// Role parity of slot j (for infinity, slot 0 is the even role).
  int parity(int j) const { return j & 1; }
  /// True for the slot carrying the terminal ready clause.
  bool is_terminal(int j) const { return !infinite && j == k; }

  std::string to_string() const;
  friend bool operator==(const SwitchBound&, const SwitchBound&) = default;
};

/// Throws InvalidBound for ready+infinite (the terminal ready clause needs
/// a last level, which k = inf does not have) and for negative k.
void validate_bound(const SwitchBound& bound);

/// Parses "0", "3", "inf" with a separate ready flag, or compact tokens
/// "0r", "2r".  Throws InvalidBound on malformed input.
SwitchBound parse_bound(std::string_view text, bool ready = false);

/// Builds a Dmts from string-labeled data and validates it.
Dmts make_dmts(
    int num_states, std::vector<State> initial,
    const std::vector<std::tuple<State, std::string, State>>& may,
    const std::vector<std::pair<State, std::vector<std::pair<std::string, State>>>>& must);

/// Checks ranges (InvalidState) and the must-within-may consistency
/// condition (InconsistentMust).  Sorts and deduplicates.
Dmts validate_dmts(Dmts raw);

/// Characteristic embedding: mays are the transitions, musts are the
/// singleton requirements {(a,t)} for each transition (s,a,t).
Dmts chi_embed(const Lts& lts);

/// Greatest modal-refinement witness (mays forward, musts backward) whose
/// initial condition holds: every initial state of lhs is covered by some
/// initial state of rhs.  Absent if no witness exists.
std::optional<StateRelation> modal_refines(const Dmts& lhs, const Dmts& rhs);

/// I satisfies D iff chi(I) modally refines D.
bool satisfies(const Lts& impl, const Dmts& spec);

}  // namespace ltbt
