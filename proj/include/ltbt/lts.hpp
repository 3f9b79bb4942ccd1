/* lts.hpp -- finite labeled transition systems, bisimulation and simulation */

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ltbt/relation.hpp"

namespace ltbt {

/// Interned action labels.  Label ids are dense indices into the name table.
class Alphabet {
 public:
  Label intern(std::string_view name);
  std::optional<Label> find(std::string_view name) const;
  const std::string& name(Label l) const { return names_.at(l); }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Label, std::less<>> index_;
};

struct Transition {
  State src;
  Label label;
  State dst;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// LTS with dense integer states 0..num_states-1 and one initial state.
struct Lts {
  int num_states = 0;
  State initial = 0;
  Alphabet alphabet;
  std::vector<Transition> transitions;  // sorted and deduplicated once validated

  /// Structural equality up to label naming; unused alphabet entries are
  /// ignored, so parse(write(x)) compares equal to x.
  bool same_system(const Lts& other) const;
};

/// Builds an Lts from string-labeled transitions; unseen labels are added to
/// the alphabet.  Validates the result.
Lts make_lts(int num_states, State initial,
             const std::vector<std::tuple<State, std::string, State>>& transitions);

/// Checks the Lts invariants: initial and transition endpoints in range,
/// label ids within the alphabet.  Sorts and deduplicates transitions.
/// Throws InvalidState on range violations.
Lts validate_lts(Lts raw);

/// Greatest bisimulation containing the initial pair, or absent if the two
/// systems are not bisimilar.
std::optional<StateRelation> bisimilar(const Lts& lhs, const Lts& rhs);

/// Greatest simulation (of lhs by rhs) containing the initial pair.
std::optional<StateRelation> simulates(const Lts& lhs, const Lts& rhs);

/// True iff simulations exist in both directions.
bool simulation_equivalent(const Lts& lhs, const Lts& rhs);

}  // namespace ltbt
