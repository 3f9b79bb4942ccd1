/* branching.hpp -- branching k-switching / k-ready families and the
 * simulation refinement on DMTS */

#pragma once

#include <optional>

#include "ltbt/family.hpp"

namespace ltbt {

/// Greatest branching k-switching (k-ready when bound.ready) relation family
/// from lhs to rhs, or absent when the initial pair survives in none.
/// Throws InvalidBound for ready+infinite.
std::optional<LtsRelationFamily> branching_family(const Lts& lhs, const Lts& rhs,
                                                  SwitchBound bound);

/// Families in both directions: realizes ~k / ~k^r.  ~inf is bisimilarity.
bool equiv_branching(const Lts& lhs, const Lts& rhs, SwitchBound bound);

/// Greatest simulation refinement (R1 may-simulation, R2 must-simulation
/// with two-directional initial coverage), or absent.
std::optional<DoubleRelationFamily> sim_refines(const Dmts& lhs, const Dmts& rhs);

/// Greatest branching k-switching / k-ready double family on DMTS,
/// realizing <=k and <=k^r.  <=0 coincides with sim_refines.
std::optional<DoubleRelationFamily> branching_refines(const Dmts& lhs, const Dmts& rhs,
                                                      SwitchBound bound);

/// As branching_refines, with the greatest family and coverage
/// counterexample exposed.
DmtsRefineReport branching_refines_report(const Dmts& lhs, const Dmts& rhs, SwitchBound bound);

}  // namespace ltbt
