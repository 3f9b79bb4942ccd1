/* linear.hpp -- trace closures and linear k-switching / k-ready families */

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "ltbt/family.hpp"

namespace ltbt {

struct LinearOptions {
  /// States allowed on the answering side of a subset construction; larger
  /// systems raise SizeLimit instead of blowing up silently.
  int max_subset_states = 16;
  /// Restores the literal reading of the R2 even-level target clause of the
  /// DMTS linear definition (which names the R1 chain) instead of the
  /// symmetric R2 reading used by default.
  bool literal_defs = false;
};

/// One configuration of a subset product: a concrete state on the driving
/// side and the set of same-trace states on the answering side (bitset).
struct SubsetConfig {
  State driver;
  uint32_t answers;
  friend auto operator<=>(const SubsetConfig&, const SubsetConfig&) = default;
};

/// Breadth-first closure of configurations from a seed pair.  A reachable
/// configuration with an empty answer set is a trace-inclusion violation.
struct SubsetProduct {
  std::vector<SubsetConfig> configs;  // deterministic BFS order
  bool empty_answer_reached = false;
};

/// Closure selector for a DMTS side: may-traces or must-traces (one step per
/// branch of each disjunctive must).
enum class Closure { MayTraces, MustTraces };

/// Plain T*/T* subset product between two LTS.
SubsetProduct subset_product(const Lts& driver_side, const Lts& answer_side,
                             State driver_seed, State answer_seed,
                             const LinearOptions& opts = {});

/// Subset product between two DMTS under per-side trace closures.
SubsetProduct subset_product(const Dmts& driver_side, Closure driver_mode,
                             const Dmts& answer_side, Closure answer_mode,
                             State driver_seed, State answer_seed,
                             const LinearOptions& opts = {});

/// Greatest linear k-switching / k-ready relation family from lhs to rhs.
/// Level 0 is trace inclusion, level 1 impossible-futures inclusion, the
/// 0-ready variant failure inclusion.
std::optional<LtsRelationFamily> linear_family(const Lts& lhs, const Lts& rhs,
                                               SwitchBound bound,
                                               const LinearOptions& opts = {});

/// Families both ways: realizes the linear equivalences.
bool equiv_linear(const Lts& lhs, const Lts& rhs, SwitchBound bound,
                  const LinearOptions& opts = {});

/// Greatest linear double family on DMTS, with the left side driven by
/// may-traces and the right side by must-traces per the clause quantifiers.
std::optional<DoubleRelationFamily> linear_refines(const Dmts& lhs, const Dmts& rhs,
                                                   SwitchBound bound,
                                                   const LinearOptions& opts = {});

/// As linear_refines, with the greatest family and coverage counterexample
/// exposed.
DmtsRefineReport linear_refines_report(const Dmts& lhs, const Dmts& rhs, SwitchBound bound,
                                       const LinearOptions& opts = {});

}  // namespace ltbt
