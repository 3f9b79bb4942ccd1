#include "ltbt/dmts.hpp"

#include <algorithm>
#include <set>

#include "ltbt/errors.hpp"
#include "pair_view.hpp"

namespace ltbt {

std::string SwitchBound::to_string() const {
  if (infinite) return "inf";
  return std::to_string(k) + (ready ? "r" : "");
}

void validate_bound(const SwitchBound& bound) {
  if (bound.infinite && bound.ready)
    throw InvalidBound("ready is not defined for k = inf");
  if (!bound.infinite && bound.k < 0) throw InvalidBound("k must be nonnegative");
}

SwitchBound parse_bound(std::string_view text, bool ready) {
  std::string_view body = text;
  if (!body.empty() && (body.back() == 'r' || body.back() == 'R')) {
    ready = true;
    body.remove_suffix(1);
  }
  SwitchBound bound;
  if (body == "inf" || body == "INF" || body == "infinity") {
    bound = SwitchBound::inf();
    bound.ready = ready;
  } else {
    int k = 0;
    if (body.empty()) throw InvalidBound("empty bound");
    for (char c : body) {
      if (c < '0' || c > '9') throw InvalidBound("bad bound '" + std::string(text) + "'");
      k = k * 10 + (c - '0');
      if (k > 1000) throw InvalidBound("bound too large");
    }
    bound = SwitchBound::finite(k, ready);
  }
  validate_bound(bound);
  return bound;
}

bool Dmts::same_system(const Dmts& other) const {
  if (num_states != other.num_states || initial != other.initial) return false;
  auto named = [](const Dmts& d) {
    std::set<std::tuple<State, std::string, State>> mays;
    for (const auto& t : d.may) mays.emplace(t.src, d.alphabet.name(t.label), t.dst);
    std::set<std::pair<State, std::set<std::pair<std::string, State>>>> musts;
    for (const auto& m : d.must) {
      std::set<std::pair<std::string, State>> branches;
      for (auto [lab, t] : m.branches) branches.emplace(d.alphabet.name(lab), t);
      musts.emplace(m.src, std::move(branches));
    }
    return std::pair(std::move(mays), std::move(musts));
  };
  return named(*this) == named(other);
}

Dmts make_dmts(
    int num_states, std::vector<State> initial,
    const std::vector<std::tuple<State, std::string, State>>& may,
    const std::vector<std::pair<State, std::vector<std::pair<std::string, State>>>>& must) {
  Dmts d;
  d.num_states = num_states;
  d.initial = std::move(initial);
  for (const auto& [src, label, dst] : may)
    d.may.push_back({src, d.alphabet.intern(label), dst});
  for (const auto& [src, branches] : must) {
    MustTransition m{src, {}};
    for (const auto& [label, dst] : branches)
      m.branches.emplace_back(d.alphabet.intern(label), dst);
    d.must.push_back(std::move(m));
  }
  return validate_dmts(std::move(d));
}

Dmts validate_dmts(Dmts raw) {
  if (raw.num_states < 0) throw InvalidState("negative state count");
  std::sort(raw.initial.begin(), raw.initial.end());
  raw.initial.erase(std::unique(raw.initial.begin(), raw.initial.end()), raw.initial.end());
  for (State s : raw.initial)
    if (s < 0 || s >= raw.num_states)
      throw InvalidState("initial state " + std::to_string(s) + " out of range");
  for (const auto& t : raw.may) {
    if (t.src < 0 || t.src >= raw.num_states || t.dst < 0 || t.dst >= raw.num_states)
      throw InvalidState("may-transition endpoint out of range");
    if (t.label < 0 || t.label >= raw.alphabet.size())
      throw InvalidState("may-transition label id out of range");
  }
  std::sort(raw.may.begin(), raw.may.end());
  raw.may.erase(std::unique(raw.may.begin(), raw.may.end()), raw.may.end());

  auto has_may = [&](State s, Label lab, State t) {
    return std::binary_search(raw.may.begin(), raw.may.end(), Transition{s, lab, t});
  };
  for (auto& m : raw.must) {
    if (m.src < 0 || m.src >= raw.num_states)
      throw InvalidState("must source out of range");
    std::sort(m.branches.begin(), m.branches.end());
    m.branches.erase(std::unique(m.branches.begin(), m.branches.end()), m.branches.end());
    for (auto [lab, t] : m.branches) {
      if (t < 0 || t >= raw.num_states) throw InvalidState("must branch target out of range");
      if (lab < 0 || lab >= raw.alphabet.size())
        throw InvalidState("must branch label id out of range");
      if (!has_may(m.src, lab, t))
        throw InconsistentMust("must branch (" + std::to_string(m.src) + "," +
                               raw.alphabet.name(lab) + "," + std::to_string(t) +
                               ") has no underlying may-transition");
    }
  }
  std::sort(raw.must.begin(), raw.must.end());
  raw.must.erase(std::unique(raw.must.begin(), raw.must.end()), raw.must.end());
  return raw;
}

Dmts chi_embed(const Lts& lts) {
  Dmts d;
  d.num_states = lts.num_states;
  d.initial = {lts.initial};
  d.alphabet = lts.alphabet;
  d.may = lts.transitions;
  d.must.reserve(lts.transitions.size());
  for (const auto& t : lts.transitions)
    d.must.push_back({t.src, {{t.label, t.dst}}});
  return validate_dmts(std::move(d));
}

std::optional<StateRelation> modal_refines(const Dmts& lhs, const Dmts& rhs) {
  detail::DmtsPairView v(lhs, rhs);
  StateRelation rel(v.n1, v.n2, /*fill=*/true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (State s1 = 0; s1 < v.n1; ++s1) {
      for (State s2 = 0; s2 < v.n2; ++s2) {
        if (!rel.contains(s1, s2)) continue;
        if (!detail::dmts_may_forward(v, s1, s2, rel) ||
            !detail::dmts_must_backward(v, s1, s2, rel)) {
          rel.erase(s1, s2);
          changed = true;
        }
      }
    }
  }
  // Initial condition is one-directional: every lhs initial state covered.
  for (State s1 : lhs.initial) {
    bool covered = false;
    for (State s2 : rhs.initial)
      if (rel.contains(s1, s2)) {
        covered = true;
        break;
      }
    if (!covered) return std::nullopt;
  }
  return rel;
}

bool satisfies(const Lts& impl, const Dmts& spec) {
  return modal_refines(chi_embed(impl), spec).has_value();
}

}  // namespace ltbt
