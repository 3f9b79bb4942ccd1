/* formats.hpp -- .aut / .dmts parsing and writing, seeded random systems */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ltbt/dmts.hpp"

namespace ltbt {

/// Parses the Aldebaran format: header `des (<init>, <#transitions>,
/// <#states>)`, one `(<from>, "<label>", <to>)` per line; unquoted labels
/// without commas/parentheses are also accepted.  Throws ParseError with the
/// offending line, CountMismatch when the header disagrees with the body,
/// InvalidState via validation.
Lts parse_aut(std::string_view text);

/// Canonical writer: sorted transitions, quoted labels, LF line endings.
std::string write_aut(const Lts& lts);

/// Parses the .dmts document: a JSON object with fields `states` (count),
/// `initial` (list), `may` (list of [s, label, t]) and `must` (list of
/// [s, [[label, t], ...]]).
Dmts parse_dmts(std::string_view text);

/// Canonical writer: lists sorted, LF endings; parse(write(d)) == d.
std::string write_dmts(const Dmts& dmts);

/// Parameters for seeded random generation.  Generated DMTS always satisfy
/// the must-within-may consistency since branches are sampled from existing
/// may-transitions.
struct GenParams {
  int min_states = 1;
  int max_states = 5;
  int alphabet_size = 2;
  double may_density = 0.3;  // in [0,1], fraction of S x Sigma x S
  int min_musts_per_state = 0;
  int max_musts_per_state = 2;
  int min_branch = 1;
  int max_branch = 2;
  uint64_t seed = 0;
};

/// Deterministic function of the parameters; unreachable states are pruned,
/// so subset-construction caps reflect real work.
Lts random_lts(const GenParams& params);
Dmts random_dmts(const GenParams& params);

/// Bisimilar variant of an LTS: duplicates one state (same outgoing
/// transitions) and re-routes part of its incoming transitions to the copy.
/// Used to salt generated pairs with equivalent-but-not-identical cases.
Lts unfold_state(const Lts& lts, uint64_t seed);

/// splitmix64: tiny, fully specified PRNG so that seeded runs are
/// bit-identical across platforms.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next();
  /// Uniform in [0, n); n > 0.
  uint64_t below(uint64_t n);
  /// Uniform in [0, 1).
  double unit();
};

}  // namespace ltbt
