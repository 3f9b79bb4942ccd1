#include "ltbt/lts.hpp"

#include <algorithm>
#include <set>

#include "ltbt/errors.hpp"
#include "pair_view.hpp"

namespace ltbt {

Label Alphabet::intern(std::string_view name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  Label id = static_cast<Label>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<Label> Alphabet::find(std::string_view name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

bool Lts::same_system(const Lts& other) const {
  if (num_states != other.num_states || initial != other.initial) return false;
  auto named = [](const Lts& l) {
    std::set<std::tuple<State, std::string, State>> s;
    for (const auto& t : l.transitions) s.emplace(t.src, l.alphabet.name(t.label), t.dst);
    return s;
  };
  return named(*this) == named(other);
}

Lts make_lts(int num_states, State initial,
             const std::vector<std::tuple<State, std::string, State>>& transitions) {
  Lts lts;
  lts.num_states = num_states;
  lts.initial = initial;
  for (const auto& [src, label, dst] : transitions)
    lts.transitions.push_back({src, lts.alphabet.intern(label), dst});
  return validate_lts(std::move(lts));
}

Lts validate_lts(Lts raw) {
  if (raw.num_states <= 0) throw InvalidState("an LTS needs at least one state");
  if (raw.initial < 0 || raw.initial >= raw.num_states)
    throw InvalidState("initial state " + std::to_string(raw.initial) + " out of range");
  for (const auto& t : raw.transitions) {
    if (t.src < 0 || t.src >= raw.num_states || t.dst < 0 || t.dst >= raw.num_states)
      throw InvalidState("transition endpoint out of range: (" + std::to_string(t.src) + "," +
                         std::to_string(t.dst) + ")");
    if (t.label < 0 || t.label >= raw.alphabet.size())
      throw InvalidState("transition label id out of range");
  }
  std::sort(raw.transitions.begin(), raw.transitions.end());
  raw.transitions.erase(std::unique(raw.transitions.begin(), raw.transitions.end()),
                        raw.transitions.end());
  return raw;
}

namespace {

// Greatest fixpoint engine: start from the full carrier, delete violating
// pairs until stable, then test the initial pair.
std::optional<StateRelation> greatest_relation(const Lts& lhs, const Lts& rhs,
                                               bool backward_too) {
  detail::LtsPairView v(lhs, rhs);
  StateRelation rel(v.n1, v.n2, /*fill=*/true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (State s1 = 0; s1 < v.n1; ++s1) {
      for (State s2 = 0; s2 < v.n2; ++s2) {
        if (!rel.contains(s1, s2)) continue;
        bool ok = detail::lts_forward(v.left, v.right, s1, s2, rel) &&
                  (!backward_too || detail::lts_backward(v.left, v.right, s1, s2, rel));
        if (!ok) {
          rel.erase(s1, s2);
          changed = true;
        }
      }
    }
  }
  if (!rel.contains(lhs.initial, rhs.initial)) return std::nullopt;
  return rel;
}

}  // namespace

std::optional<StateRelation> bisimilar(const Lts& lhs, const Lts& rhs) {
  return greatest_relation(lhs, rhs, /*backward_too=*/true);
}

std::optional<StateRelation> simulates(const Lts& lhs, const Lts& rhs) {
  return greatest_relation(lhs, rhs, /*backward_too=*/false);
}

bool simulation_equivalent(const Lts& lhs, const Lts& rhs) {
  return simulates(lhs, rhs).has_value() && simulates(rhs, lhs).has_value();
}

}  // namespace ltbt
