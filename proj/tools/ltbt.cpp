/* ltbt -- refinement and equivalence checking for LTS and DMTS across the
 * linear-time--branching-time spectrum */

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ltbt/cli.hpp"

namespace {

ltbt::cli::RelationKind parse_rel(const std::string& name) {
  using ltbt::cli::RelationKind;
  if (name == "bisim") return RelationKind::Bisim;
  if (name == "sim") return RelationKind::Sim;
  if (name == "sim-equiv") return RelationKind::SimEquiv;
  if (name == "modal") return RelationKind::Modal;
  if (name == "sim-refine") return RelationKind::SimRefine;
  if (name == "branching") return RelationKind::Branching;
  if (name == "linear") return RelationKind::Linear;
  throw CLI::ValidationError("--rel", "unknown relation '" + name + "'");
}

ltbt::cli::EngineChoice parse_engine(const std::string& name) {
  using ltbt::cli::EngineChoice;
  if (name == "relation") return EngineChoice::Relation;
  if (name == "game") return EngineChoice::Game;
  if (name == "all") return EngineChoice::All;
  throw CLI::ValidationError("--engine", "unknown engine '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"refinement and equivalence checking for labeled and disjunctive modal "
               "transition systems"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "decide one relation between two systems");
  ltbt::cli::CheckOptions check_opts;
  std::string rel_text = "bisim", engine_text = "relation";
  bool refine_flag = false;
  check->add_option("lhs", check_opts.lhs_path, "left input (.aut or .dmts)")->required();
  check->add_option("rhs", check_opts.rhs_path, "right input (.aut or .dmts)")->required();
  check->add_option("--rel", rel_text,
                    "relation: bisim|sim|sim-equiv|modal|sim-refine|branching|linear")
      ->required();
  check->add_option("--k", check_opts.k, "switch bound: integer or 'inf'");
  check->add_flag("--ready", check_opts.ready, "use the k-ready variant");
  check->add_flag("--equiv", check_opts.equiv, "decide the equivalence (both directions)");
  check->add_flag("--refine", refine_flag, "decide the refinement LHS -> RHS (default)");
  check->add_option("--engine", engine_text, "engine: relation|game|all");
  check->add_flag("--json", check_opts.json, "machine-readable report");
  check->add_flag("--literal-defs", check_opts.literal_defs,
                  "literal reading of the linear DMTS definition's R2 target clause");
  check->add_option("--max-subset-states", check_opts.max_subset_states,
                    "subset-construction cap on the answering side");

  // embed
  auto* embed = app.add_subcommand("embed", "chi-embed an LTS into a DMTS file");
  ltbt::cli::EmbedOptions embed_opts;
  embed->add_option("lts", embed_opts.lts_path, "input .aut file")->required();
  embed->add_option("out", embed_opts.out_path, "output .dmts file")->required();

  // matrix
  auto* matrix = app.add_subcommand("matrix", "spectrum verdict table for two LTS");
  ltbt::cli::MatrixOptions matrix_opts;
  matrix->add_option("lhs", matrix_opts.lhs_path, "left .aut file")->required();
  matrix->add_option("rhs", matrix_opts.rhs_path, "right .aut file")->required();
  matrix->add_flag("--json", matrix_opts.json, "machine-readable report");
  matrix->add_flag("--literal-defs", matrix_opts.literal_defs,
                   "literal reading of the linear DMTS definition's R2 target clause");

  // xcheck
  auto* xcheck = app.add_subcommand("xcheck", "cross-validate engines on random pairs");
  ltbt::cli::XcheckOptions xcheck_opts;
  std::string bounds_text = "0,0r,1,1r,2,inf";
  xcheck->add_option("--trials", xcheck_opts.trials, "number of random pairs per bound");
  xcheck->add_option("--seed", xcheck_opts.params.seed, "generator seed");
  xcheck->add_option("--min-states", xcheck_opts.params.min_states, "minimum state count");
  xcheck->add_option("--max-states", xcheck_opts.params.max_states, "maximum state count");
  xcheck->add_option("--labels", xcheck_opts.params.alphabet_size, "alphabet size");
  xcheck->add_option("--density", xcheck_opts.params.may_density, "transition density");
  xcheck->add_option("--bounds", bounds_text, "comma-separated bounds, e.g. 0,1r,inf");
  xcheck->add_flag("--json", xcheck_opts.json, "machine-readable report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      check_opts.rel = parse_rel(rel_text);
      check_opts.engine = parse_engine(engine_text);
      if (refine_flag && check_opts.equiv) {
        std::cerr << "error: --refine and --equiv are mutually exclusive\n";
        return 2;
      }
      return ltbt::cli::cmd_check(check_opts, std::cout, std::cerr);
    }
    if (*embed) return ltbt::cli::cmd_embed(embed_opts, std::cout, std::cerr);
    if (*matrix) return ltbt::cli::cmd_matrix(matrix_opts, std::cout, std::cerr);
    if (*xcheck) {
      xcheck_opts.bounds.clear();
      std::string token;
      for (char c : bounds_text + ",") {
        if (c == ',') {
          if (!token.empty()) xcheck_opts.bounds.push_back(token);
          token.clear();
        } else {
          token += c;
        }
      }
      return ltbt::cli::cmd_xcheck(xcheck_opts, std::cout, std::cerr);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
