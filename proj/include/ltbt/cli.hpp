/* cli.hpp -- command implementations behind the ltbt tool
 *
 * Exit codes are the machine contract: 0 = relation holds, 1 = does not
 * hold, 2 = error.  The --json documents carry schema_version.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ltbt/formats.hpp"
#include "ltbt/oracle.hpp"

namespace ltbt::cli {

inline constexpr int kJsonSchemaVersion = 1;

enum class RelationKind { Bisim, Sim, SimEquiv, Modal, SimRefine, Branching, Linear };

enum class EngineChoice { Relation, Game, All };

struct CheckOptions {
  std::string lhs_path;
  std::string rhs_path;
  RelationKind rel = RelationKind::Bisim;
  std::string k = "0";  // integer or "inf"
  bool ready = false;
  bool equiv = false;  // default direction: refine (LHS -> RHS)
  EngineChoice engine = EngineChoice::Relation;
  bool json = false;
  bool literal_defs = false;
  int max_subset_states = 16;
};

int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);

struct EmbedOptions {
  std::string lts_path;
  std::string out_path;
};

int cmd_embed(const EmbedOptions& opts, std::ostream& out, std::ostream& err);

struct MatrixOptions {
  std::string lhs_path;
  std::string rhs_path;
  bool json = false;
  bool literal_defs = false;
};

int cmd_matrix(const MatrixOptions& opts, std::ostream& out, std::ostream& err);

struct XcheckOptions {
  GenParams params;
  int trials = 100;
  std::vector<std::string> bounds = {"0", "0r", "1", "1r", "2", "inf"};
  bool json = false;
};

/// Generates seeded random pairs and cross-checks all engines per bound.
/// Exit 0 iff every trial is unanimous; disagreements print reproducer
/// seeds.  `inject` lets test builds swap in a mutant engine.
int cmd_xcheck(const XcheckOptions& opts, std::ostream& out, std::ostream& err,
               const oracle::CrossCheckEngines* inject = nullptr);

}  // namespace ltbt::cli
