#include "ltbt/oracle.hpp"

#include <algorithm>
#include <map>

#include "ltbt/branching.hpp"
#include "ltbt/errors.hpp"
#include "ltbt/games.hpp"

namespace ltbt::oracle {

namespace {

// Plain per-state adjacency over the two raw transition lists, matching
// labels by name.  Deliberately not the engines' indexed pair view.
struct Adjacency {
  std::vector<std::vector<std::pair<std::string, State>>> out1, out2;

  Adjacency(const Lts& lhs, const Lts& rhs)
      : out1(lhs.num_states), out2(rhs.num_states) {
    for (const auto& t : lhs.transitions)
      out1[t.src].emplace_back(lhs.alphabet.name(t.label), t.dst);
    for (const auto& t : rhs.transitions)
      out2[t.src].emplace_back(rhs.alphabet.name(t.label), t.dst);
    for (auto& v : out1) std::sort(v.begin(), v.end());
    for (auto& v : out2) std::sort(v.begin(), v.end());
  }
};

// Top-down coinductive search.  A node (s1,s2,level) is assumed while its
// obligations are being discharged; revisits discharge by assumption.  A
// failed attempt rolls its assumptions back, so nothing wrong survives into
// a successful run, and a successful top-level run leaves a post-fixpoint.
// Failures are cached permanently: assumptions only ever help a check
// succeed, so a node that fails despite them is a genuine non-member, and
// the cache keeps the search polynomial.
struct RecursiveSearch {
  const Adjacency& adj;
  SwitchBound bound;

  struct Key {
    State s1, s2;
    int level;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  std::vector<Key> trail;
  std::set<Key> assumed;
  std::set<Key> failed;

  RecursiveSearch(const Adjacency& adj_, SwitchBound bound_) : adj(adj_), bound(bound_) {}

  void rollback(size_t mark) {
    while (trail.size() > mark) {
      assumed.erase(trail.back());
      trail.pop_back();
    }
  }

  bool ready_holds(int parity, State s1, State s2) const {
    const auto& need = parity == 0 ? adj.out2[s2] : adj.out1[s1];
    const auto& have = parity == 0 ? adj.out1[s1] : adj.out2[s2];
    for (const auto& [lab, t] : need) {
      bool found = false;
      for (const auto& [lab2, t2] : have)
        if (lab2 == lab) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  }

  // forall moves of the driving side, exists an answering move whose target
  // pair holds at `target_level`.
  bool match_all(bool drive_left, State s1, State s2, int target_level) {
    const auto& driving = drive_left ? adj.out1[s1] : adj.out2[s2];
    const auto& answering = drive_left ? adj.out2[s2] : adj.out1[s1];
    for (const auto& [lab, t] : driving) {
      bool matched = false;
      for (const auto& [lab2, t2] : answering) {
        if (lab2 != lab) continue;
        size_t mark = trail.size();
        State n1 = drive_left ? t : t2;
        State n2 = drive_left ? t2 : t;
        if (holds(n1, n2, target_level)) {
          matched = true;
          break;
        }
        rollback(mark);
      }
      if (!matched) return false;
    }
    return true;
  }

  bool holds(State s1, State s2, int level) {
    Key key{s1, s2, level};
    if (assumed.count(key)) return true;
    if (failed.count(key)) return false;
    size_t mark = trail.size();
    trail.push_back(key);
    assumed.insert(key);

    int parity = bound.parity(level);
    bool ok = match_all(/*drive_left=*/parity == 0, s1, s2, level);
    if (ok && bound.has_next(level))
      ok = match_all(/*drive_left=*/parity != 0, s1, s2, bound.next_level(level));
    if (ok && bound.ready && bound.is_terminal(level)) ok = ready_holds(parity, s1, s2);

    if (!ok) {
      rollback(mark);
      failed.insert(key);
    }
    return ok;
  }
};

}  // namespace

bool recursive_family_check(const Lts& lhs, const Lts& rhs, SwitchBound bound) {
  validate_bound(bound);
  if (static_cast<long>(lhs.num_states) * rhs.num_states > 36)
    throw SizeLimit("oracle cap: |S1|*|S2| must be at most 36");
  if (!bound.infinite && bound.k > 3) throw SizeLimit("oracle cap: finite k at most 3");
  Adjacency adj(lhs, rhs);
  RecursiveSearch search(adj, bound);
  return search.holds(lhs.initial, rhs.initial, 0);
}

std::set<Trace> bounded_traces(const Lts& lts, State from, int max_len) {
  if (max_len > 12) throw SizeLimit("bounded_traces cap: max_len at most 12");
  if (from < 0 || from >= lts.num_states) throw InvalidState("trace start out of range");
  std::vector<std::vector<std::pair<std::string, State>>> out(lts.num_states);
  for (const auto& t : lts.transitions)
    out[t.src].emplace_back(lts.alphabet.name(t.label), t.dst);

  std::set<Trace> traces;
  // Level-wise frontier of (trace, end state); prefix closure is automatic.
  std::set<std::pair<Trace, State>> frontier{{Trace{}, from}};
  traces.insert(Trace{});
  for (int len = 0; len < max_len && !frontier.empty(); ++len) {
    std::set<std::pair<Trace, State>> next;
    for (const auto& [trace, s] : frontier) {
      for (const auto& [lab, t] : out[s]) {
        Trace extended = trace;
        extended.push_back(lab);
        next.emplace(std::move(extended), t);
      }
    }
    for (const auto& [trace, s] : next) traces.insert(trace);
    if (traces.size() > 1000000) throw SizeLimit("bounded_traces cap: 10^6 traces");
    frontier = std::move(next);
  }
  return traces;
}

bool trace_inclusion_bruteforce(const Lts& lhs, const Lts& rhs) {
  // Sound cutoff |S1| * 2^|S2|: the (left state, right state-set)
  // configurations along a trace repeat beyond that many steps, so a
  // minimal counterexample trace is shorter.
  if (rhs.num_states > 12) throw SizeLimit("trace_inclusion cap: 2^|S2| too large");
  long cutoff = static_cast<long>(lhs.num_states) * (1L << rhs.num_states);
  if (cutoff > 4096) throw SizeLimit("trace_inclusion cap: |S1|*2^|S2| at most 4096");

  std::vector<std::vector<std::pair<std::string, State>>> out1(lhs.num_states),
      out2(rhs.num_states);
  for (const auto& t : lhs.transitions)
    out1[t.src].emplace_back(lhs.alphabet.name(t.label), t.dst);
  for (const auto& t : rhs.transitions)
    out2[t.src].emplace_back(rhs.alphabet.name(t.label), t.dst);

  // Level maps from trace to end-state sets on both sides; a left trace
  // with no right entry is a violation.
  std::map<Trace, std::pair<std::set<State>, std::set<State>>> level;
  level[{}] = {{lhs.initial}, {rhs.initial}};
  size_t total = 1;
  for (long len = 0; len < cutoff && !level.empty(); ++len) {
    std::map<Trace, std::pair<std::set<State>, std::set<State>>> next;
    for (const auto& [trace, ends] : level) {
      if (!ends.first.empty() && ends.second.empty()) return false;
      for (State s : ends.first)
        for (const auto& [lab, t] : out1[s]) {
          Trace extended = trace;
          extended.push_back(lab);
          next[extended].first.insert(t);
        }
      for (State s : ends.second)
        for (const auto& [lab, t] : out2[s]) {
          Trace extended = trace;
          extended.push_back(lab);
          next[extended].second.insert(t);
        }
    }
    total += next.size();
    if (total > 1000000) throw SizeLimit("trace_inclusion cap: 10^6 traces");
    level = std::move(next);
  }
  for (const auto& [trace, ends] : level)
    if (!ends.first.empty() && ends.second.empty()) return false;
  return true;
}

CrossCheckEngines CrossCheckEngines::standard() {
  CrossCheckEngines e;
  e.relation_lts = [](const Lts& a, const Lts& b, SwitchBound k) {
    return equiv_branching(a, b, k);
  };
  e.relation_dmts = [](const Lts& a, const Lts& b, SwitchBound k) {
    return branching_refines(chi_embed(a), chi_embed(b), k).has_value();
  };
  e.game_lts = [](const Lts& a, const Lts& b, SwitchBound k) {
    return solve_game(build_sim_game(a, b, k)).winner == Player::Two;
  };
  e.game_dmts = [](const Lts& a, const Lts& b, SwitchBound k) {
    return solve_game(build_spec_game(chi_embed(a), chi_embed(b), k)).winner == Player::Two;
  };
  e.recursive = [](const Lts& a, const Lts& b, SwitchBound k) {
    return recursive_family_check(a, b, k) && recursive_family_check(b, a, k);
  };
  return e;
}

CrossCheckReport cross_check(const Lts& lhs, const Lts& rhs, SwitchBound bound,
                             const CrossCheckEngines& engines) {
  validate_bound(bound);
  CrossCheckReport report;
  report.verdicts.emplace_back("relation/lts", engines.relation_lts(lhs, rhs, bound));
  report.verdicts.emplace_back("relation/dmts", engines.relation_dmts(lhs, rhs, bound));
  report.verdicts.emplace_back("game/lts", engines.game_lts(lhs, rhs, bound));
  report.verdicts.emplace_back("game/dmts", engines.game_dmts(lhs, rhs, bound));
  report.verdicts.emplace_back("oracle", engines.recursive(lhs, rhs, bound));
  report.verdict = report.verdicts.front().second;
  report.unanimous = true;
  for (const auto& [name, verdict] : report.verdicts)
    if (verdict != report.verdict) report.unanimous = false;
  return report;
}

}  // namespace ltbt::oracle
