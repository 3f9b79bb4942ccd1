#include "ltbt/branching.hpp"

#include "ltbt/errors.hpp"
#include "pair_view.hpp"

namespace ltbt {

namespace {

using detail::LtsPairView;

// The LTS family definition has two clause shapes per level: match the
// driving side's transitions within the level, and (below the bound) match
// the opposite side's transitions into the next level.  Which side drives is
// a function of the level parity only, so both shapes collapse into the two
// evaluators below.

bool lts_within(const LtsPairView& v, int parity, State s1, State s2,
                const StateRelation& rel) {
  return parity == 0 ? detail::lts_forward(v.left, v.right, s1, s2, rel)
                     : detail::lts_backward(v.left, v.right, s1, s2, rel);
}

bool lts_switch(const LtsPairView& v, int parity, State s1, State s2,
                const StateRelation& next) {
  return parity == 0 ? detail::lts_backward(v.left, v.right, s1, s2, next)
                     : detail::lts_forward(v.left, v.right, s1, s2, next);
}

bool lts_ready(const LtsPairView& v, int parity, State s1, State s2) {
  return parity == 0 ? detail::lts_ready_even(v.left, v.right, s1, s2)
                     : detail::lts_ready_odd(v.left, v.right, s1, s2);
}

}  // namespace

std::optional<LtsRelationFamily> branching_family(const Lts& lhs, const Lts& rhs,
                                                  SwitchBound bound) {
  validate_bound(bound);
  LtsPairView v(lhs, rhs);
  LtsRelationFamily fam{bound, {}};
  fam.levels.assign(bound.levels(), StateRelation(v.n1, v.n2, /*fill=*/true));

  // Ready terminal clause is relation-free; prune it once up front.
  if (bound.ready) {
    int j = bound.k;
    for (State s1 = 0; s1 < v.n1; ++s1)
      for (State s2 = 0; s2 < v.n2; ++s2)
        if (!lts_ready(v, bound.parity(j), s1, s2)) fam.levels[j].erase(s1, s2);
  }

  // Joint gfp over all levels: a pair leaves level j when its within-clause
  // or its switch-clause (against the current next level) fails.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < bound.levels(); ++j) {
      int parity = bound.parity(j);
      const StateRelation* next = bound.has_next(j) ? &fam.levels[bound.next_level(j)] : nullptr;
      for (State s1 = 0; s1 < v.n1; ++s1) {
        for (State s2 = 0; s2 < v.n2; ++s2) {
          if (!fam.levels[j].contains(s1, s2)) continue;
          bool ok = lts_within(v, parity, s1, s2, fam.levels[j]) &&
                    (!next || lts_switch(v, parity, s1, s2, *next));
          if (!ok) {
            fam.levels[j].erase(s1, s2);
            changed = true;
          }
        }
      }
    }
  }

  if (!fam.levels[0].contains(lhs.initial, rhs.initial)) return std::nullopt;
  return fam;
}

bool equiv_branching(const Lts& lhs, const Lts& rhs, SwitchBound bound) {
  return branching_family(lhs, rhs, bound).has_value() &&
         branching_family(rhs, lhs, bound).has_value();
}

namespace {

using detail::DmtsPairView;

// Parity table for the DMTS double family.  Side 0 is the R1 chain, side 1
// the R2 chain.  R1 at even levels owes the may clause within and the must
// clause on a switch; R2 is its mirror image.  The ready terminal clause is
// always the switch clause's shape with the target condition dropped.
struct ClauseRow {
  bool may_within;  // within-clause shape: may-forward (else must-backward)
};

constexpr ClauseRow kClauseTable[2][2] = {
    // parity 0 (even)       parity 1 (odd)
    {{/*may_within=*/true}, {/*may_within=*/false}},  // R1
    {{/*may_within=*/false}, {/*may_within=*/true}},  // R2
};

bool dmts_clause(const DmtsPairView& v, bool may_shape, State s1, State s2,
                 const StateRelation& rel) {
  return may_shape ? detail::dmts_may_forward(v, s1, s2, rel)
                   : detail::dmts_must_backward(v, s1, s2, rel);
}

bool dmts_ready_clause(const DmtsPairView& v, bool may_shape, State s1, State s2) {
  return may_shape ? detail::dmts_may_ready(v, s1, s2) : detail::dmts_must_ready(v, s1, s2);
}

}  // namespace

namespace detail {

// Fills in the coverage verdict and the first failing initial state.
void check_coverage(const Dmts& lhs, const Dmts& rhs, DmtsRefineReport& report) {
  const StateRelation& r1 = report.family.forward[0];
  const StateRelation& r2 = report.family.backward[0];
  report.holds = true;
  for (State s1 : lhs.initial) {
    bool covered = false;
    for (State s2 : rhs.initial)
      if (r1.contains(s1, s2)) {
        covered = true;
        break;
      }
    if (!covered) {
      report.holds = false;
      report.uncovered_lhs_initial = s1;
      break;
    }
  }
  for (State s2 : rhs.initial) {
    bool covered = false;
    for (State s1 : lhs.initial)
      if (r2.contains(s1, s2)) {
        covered = true;
        break;
      }
    if (!covered) {
      report.holds = false;
      if (!report.uncovered_rhs_initial) report.uncovered_rhs_initial = s2;
      break;
    }
  }
}

}  // namespace detail

std::optional<DoubleRelationFamily> sim_refines(const Dmts& lhs, const Dmts& rhs) {
  // Direct transcription of the simulation-refinement definition, kept
  // separate from branching_refines so the two can cross-check each other.
  DmtsPairView v(lhs, rhs);
  StateRelation r1(v.n1, v.n2, /*fill=*/true), r2(v.n1, v.n2, /*fill=*/true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (State s1 = 0; s1 < v.n1; ++s1) {
      for (State s2 = 0; s2 < v.n2; ++s2) {
        if (r1.contains(s1, s2) && !detail::dmts_may_forward(v, s1, s2, r1)) {
          r1.erase(s1, s2);
          changed = true;
        }
        if (r2.contains(s1, s2) && !detail::dmts_must_backward(v, s1, s2, r2)) {
          r2.erase(s1, s2);
          changed = true;
        }
      }
    }
  }
  DmtsRefineReport report;
  report.family = DoubleRelationFamily{SwitchBound::finite(0), {std::move(r1)}, {std::move(r2)}};
  detail::check_coverage(lhs, rhs, report);
  if (!report.holds) return std::nullopt;
  return std::move(report.family);
}

DmtsRefineReport branching_refines_report(const Dmts& lhs, const Dmts& rhs,
                                          SwitchBound bound) {
  validate_bound(bound);
  DmtsPairView v(lhs, rhs);
  DoubleRelationFamily fam{bound, {}, {}};
  fam.forward.assign(bound.levels(), StateRelation(v.n1, v.n2, /*fill=*/true));
  fam.backward.assign(bound.levels(), StateRelation(v.n1, v.n2, /*fill=*/true));

  auto chain = [&fam](int side) -> std::vector<StateRelation>& {
    return side == 0 ? fam.forward : fam.backward;
  };

  if (bound.ready) {
    int j = bound.k;
    for (int side = 0; side < 2; ++side) {
      // Ready clause shape: the switch clause of this row, targets dropped.
      bool may_shape = !kClauseTable[side][bound.parity(j)].may_within;
      auto& rel = chain(side)[j];
      for (State s1 = 0; s1 < v.n1; ++s1)
        for (State s2 = 0; s2 < v.n2; ++s2)
          if (!dmts_ready_clause(v, may_shape, s1, s2)) rel.erase(s1, s2);
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (int side = 0; side < 2; ++side) {
      for (int j = 0; j < bound.levels(); ++j) {
        bool may_within = kClauseTable[side][bound.parity(j)].may_within;
        auto& rel = chain(side)[j];
        const StateRelation* next =
            bound.has_next(j) ? &chain(side)[bound.next_level(j)] : nullptr;
        for (State s1 = 0; s1 < v.n1; ++s1) {
          for (State s2 = 0; s2 < v.n2; ++s2) {
            if (!rel.contains(s1, s2)) continue;
            bool ok = dmts_clause(v, may_within, s1, s2, rel) &&
                      (!next || dmts_clause(v, !may_within, s1, s2, *next));
            if (!ok) {
              rel.erase(s1, s2);
              changed = true;
            }
          }
        }
      }
    }
  }

  DmtsRefineReport report;
  report.family = std::move(fam);
  detail::check_coverage(lhs, rhs, report);
  return report;
}

std::optional<DoubleRelationFamily> branching_refines(const Dmts& lhs, const Dmts& rhs,
                                                      SwitchBound bound) {
  DmtsRefineReport report = branching_refines_report(lhs, rhs, bound);
  if (!report.holds) return std::nullopt;
  return std::move(report.family);
}

}  // namespace ltbt
