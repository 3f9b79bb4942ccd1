/* oracle.hpp -- slow, independent reference checks
 *
 * Nothing here shares clause evaluators with the main engines; the point is
 * an algorithmically disjoint second opinion on small instances.
 */

#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltbt/dmts.hpp"

namespace ltbt::oracle {

/// Decides existence of a branching k-switching / k-ready family from lhs to
/// rhs by top-down recursion with an assumption set (assume the pair at this
/// level, recurse, discharge on revisit; roll back assumptions of failed
/// attempts).  Caps: |S1|*|S2| <= 36, finite k <= 3.  Throws SizeLimit.
bool recursive_family_check(const Lts& lhs, const Lts& rhs, SwitchBound bound);

using Trace = std::vector<std::string>;

/// All traces of length <= max_len from `from`, by explicit enumeration.
/// Caps: max_len <= 12, at most 10^6 traces.  Throws SizeLimit.
std::set<Trace> bounded_traces(const Lts& lts, State from, int max_len);

/// Trace inclusion decided by explicit enumeration up to the sound cutoff
/// |S1| * 2^|S2| (configurations of the subset construction repeat beyond
/// it, so a violating trace of minimal length fits under the cutoff).
/// Pre: |S1| * 2^|S2| <= 4096.  Throws SizeLimit.
bool trace_inclusion_bruteforce(const Lts& lhs, const Lts& rhs);

/// Engine hooks, replaceable in test builds to prove the harness notices a
/// lying engine.
struct CrossCheckEngines {
  std::function<bool(const Lts&, const Lts&, SwitchBound)> relation_lts;
  std::function<bool(const Lts&, const Lts&, SwitchBound)> relation_dmts;
  std::function<bool(const Lts&, const Lts&, SwitchBound)> game_lts;
  std::function<bool(const Lts&, const Lts&, SwitchBound)> game_dmts;
  std::function<bool(const Lts&, const Lts&, SwitchBound)> recursive;
  static CrossCheckEngines standard();
};

struct CrossCheckReport {
  std::vector<std::pair<std::string, bool>> verdicts;  // engine name, verdict
  bool unanimous = false;
  bool verdict = false;  // the relation engine's answer
};

/// Runs the relation engines (LTS family and DMTS family on chi-images), the
/// two game engines and the recursive oracle on the same equivalence query.
/// Propagates SizeLimit; never masks disagreement.
CrossCheckReport cross_check(const Lts& lhs, const Lts& rhs, SwitchBound bound,
                             const CrossCheckEngines& engines = CrossCheckEngines::standard());

}  // namespace ltbt::oracle
