/* pair_view.hpp -- label-aligned, indexed view of a system pair
 *
 * Internal to the relation engines.  The oracle module deliberately does not
 * use these evaluators.
 */

#pragma once

#include <algorithm>
#include <vector>

#include "ltbt/dmts.hpp"
#include "ltbt/family.hpp"
#include "ltbt/relation.hpp"

namespace ltbt::detail {

/// Two-directional initial coverage over the level-0 relations; defined in
/// branching.cpp, shared with the linear engine.
void check_coverage(const Dmts& lhs, const Dmts& rhs, DmtsRefineReport& report);

/// Maps both alphabets into a merged label space (match by name).
struct LabelJoin {
  std::vector<Label> map_left, map_right;
  std::vector<std::string> names;

  LabelJoin(const Alphabet& left, const Alphabet& right) {
    Alphabet merged;
    map_left.reserve(left.size());
    for (Label l = 0; l < left.size(); ++l) map_left.push_back(merged.intern(left.name(l)));
    map_right.reserve(right.size());
    for (Label l = 0; l < right.size(); ++l) map_right.push_back(merged.intern(right.name(l)));
    names = merged.names();
  }
};

/// Sorted outgoing (label, target) lists per state, in merged label space.
struct StepIndex {
  int num_states = 0;
  std::vector<std::vector<std::pair<Label, State>>> out;

  StepIndex() = default;
  StepIndex(int n, const std::vector<Transition>& transitions, const std::vector<Label>& remap)
      : num_states(n), out(n) {
    for (const auto& t : transitions) out[t.src].emplace_back(remap[t.label], t.dst);
    finish();
  }

  void finish() {
    for (auto& v : out) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }

  /// Sorted labels available at s.
  std::vector<Label> action_set(State s) const {
    std::vector<Label> a;
    for (auto [lab, t] : out[s])
      if (a.empty() || a.back() != lab) a.push_back(lab);
    return a;
  }
};

/// Flattened must list: one entry per (src, branch set), branches in merged
/// label space.  Indexed per source state.
struct MustIndex {
  struct Entry {
    State src;
    std::vector<std::pair<Label, State>> branches;  // sorted
  };
  std::vector<Entry> entries;
  std::vector<std::vector<int>> by_state;

  MustIndex() = default;
  MustIndex(int n, const std::vector<MustTransition>& musts, const std::vector<Label>& remap)
      : by_state(n) {
    for (const auto& m : musts) {
      Entry e{m.src, {}};
      e.branches.reserve(m.branches.size());
      for (auto [lab, t] : m.branches) e.branches.emplace_back(remap[lab], t);
      std::sort(e.branches.begin(), e.branches.end());
      by_state[m.src].push_back(static_cast<int>(entries.size()));
      entries.push_back(std::move(e));
    }
  }
};

struct LtsPairView {
  int n1, n2;
  StepIndex left, right;

  LtsPairView(const Lts& lhs, const Lts& rhs) : n1(lhs.num_states), n2(rhs.num_states) {
    LabelJoin join(lhs.alphabet, rhs.alphabet);
    left = StepIndex(n1, lhs.transitions, join.map_left);
    right = StepIndex(n2, rhs.transitions, join.map_right);
  }
};

struct DmtsPairView {
  int n1, n2;
  StepIndex may_left, may_right;
  MustIndex must_left, must_right;

  DmtsPairView(const Dmts& lhs, const Dmts& rhs) : n1(lhs.num_states), n2(rhs.num_states) {
    LabelJoin join(lhs.alphabet, rhs.alphabet);
    may_left = StepIndex(n1, lhs.may, join.map_left);
    may_right = StepIndex(n2, rhs.may, join.map_right);
    must_left = MustIndex(n1, lhs.must, join.map_left);
    must_right = MustIndex(n2, rhs.must, join.map_right);
  }
};

// ---- clause evaluators ----------------------------------------------------
//
// Orientation convention: relations live over S1 x S2 and targets are always
// tested as (left target, right target), no matter which side drives.

/// forall (s1,a,t1) in T1 exists (s2,a,t2) in T2 with (t1,t2) in R.
inline bool lts_forward(const StepIndex& left, const StepIndex& right, State s1, State s2,
                        const StateRelation& rel) {
  for (auto [lab, t1] : left.out[s1]) {
    bool matched = false;
    for (auto [lab2, t2] : right.out[s2]) {
      if (lab2 != lab) continue;
      if (rel.contains(t1, t2)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

/// forall (s2,a,t2) in T2 exists (s1,a,t1) in T1 with (t1,t2) in R.
inline bool lts_backward(const StepIndex& left, const StepIndex& right, State s1, State s2,
                         const StateRelation& rel) {
  for (auto [lab, t2] : right.out[s2]) {
    bool matched = false;
    for (auto [lab1, t1] : left.out[s1]) {
      if (lab1 != lab) continue;
      if (rel.contains(t1, t2)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

/// Ready clause, even variant: every action available at s2 is available at
/// s1 (targets unconstrained).
inline bool lts_ready_even(const StepIndex& left, const StepIndex& right, State s1, State s2) {
  auto need = right.action_set(s2);
  auto have = left.action_set(s1);
  return std::includes(have.begin(), have.end(), need.begin(), need.end());
}

inline bool lts_ready_odd(const StepIndex& left, const StepIndex& right, State s1, State s2) {
  auto need = left.action_set(s1);
  auto have = right.action_set(s2);
  return std::includes(have.begin(), have.end(), need.begin(), need.end());
}

/// forall s1 may-a t1 exists s2 may-a t2 with (t1,t2) in R.
inline bool dmts_may_forward(const DmtsPairView& v, State s1, State s2,
                             const StateRelation& rel) {
  return lts_forward(v.may_left, v.may_right, s1, s2, rel);
}

/// forall s2 must N2 exists s1 must N1: forall (a,t1) in N1 exists (a,t2) in
/// N2 with (t1,t2) in R.
inline bool dmts_must_backward(const DmtsPairView& v, State s1, State s2,
                               const StateRelation& rel) {
  for (int i2 : v.must_right.by_state[s2]) {
    const auto& n2 = v.must_right.entries[i2].branches;
    bool matched = false;
    for (int i1 : v.must_left.by_state[s1]) {
      const auto& n1 = v.must_left.entries[i1].branches;
      bool all = true;
      for (auto [lab, t1] : n1) {
        bool found = false;
        for (auto [lab2, t2] : n2) {
          if (lab2 != lab) continue;
          if (rel.contains(t1, t2)) {
            found = true;
            break;
          }
        }
        if (!found) {
          all = false;
          break;
        }
      }
      if (all) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

/// Ready form of the must clause: label matching only, no target relation.
inline bool dmts_must_ready(const DmtsPairView& v, State s1, State s2) {
  for (int i2 : v.must_right.by_state[s2]) {
    const auto& n2 = v.must_right.entries[i2].branches;
    bool matched = false;
    for (int i1 : v.must_left.by_state[s1]) {
      const auto& n1 = v.must_left.entries[i1].branches;
      bool all = true;
      for (auto [lab, t1] : n1) {
        (void)t1;
        bool found = false;
        for (auto [lab2, t2] : n2) {
          (void)t2;
          if (lab2 == lab) {
            found = true;
            break;
          }
        }
        if (!found) {
          all = false;
          break;
        }
      }
      if (all) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

/// Ready form of the may clause: every may-action of s1 exists at s2.
inline bool dmts_may_ready(const DmtsPairView& v, State s1, State s2) {
  return lts_ready_odd(v.may_left, v.may_right, s1, s2);
}

}  // namespace ltbt::detail
