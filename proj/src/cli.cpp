#include "ltbt/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ltbt/branching.hpp"
#include "ltbt/errors.hpp"
#include "ltbt/games.hpp"
#include "ltbt/linear.hpp"

namespace ltbt::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct LoadedSystem {
  std::optional<Lts> lts;
  std::optional<Dmts> dmts;
  bool is_lts() const { return lts.has_value(); }
};

LoadedSystem load_system(const std::string& path) {
  LoadedSystem sys;
  if (ends_with(path, ".aut"))
    sys.lts = parse_aut(read_file(path));
  else if (ends_with(path, ".dmts"))
    sys.dmts = parse_dmts(read_file(path));
  else
    throw Error(path + ": unknown extension (expected .aut or .dmts)");
  return sys;
}

const char* rel_name(RelationKind rel) {
  switch (rel) {
    case RelationKind::Bisim: return "bisim";
    case RelationKind::Sim: return "sim";
    case RelationKind::SimEquiv: return "sim-equiv";
    case RelationKind::Modal: return "modal";
    case RelationKind::SimRefine: return "sim-refine";
    case RelationKind::Branching: return "branching";
    case RelationKind::Linear: return "linear";
  }
  return "?";
}

struct EngineRun {
  std::string name;
  bool holds = false;
  std::string detail;
  double elapsed_ms = 0.0;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string witness_detail(const std::optional<StateRelation>& rel) {
  if (!rel) return "no witness";
  return "witness: " + std::to_string(rel->size()) + " pairs";
}

std::string family_detail(const DmtsRefineReport& report) {
  if (report.holds)
    return "witness family: " + std::to_string(report.family.total_pairs()) + " pairs in " +
           std::to_string(report.family.forward.size() + report.family.backward.size()) +
           " relations";
  if (report.uncovered_lhs_initial)
    return "lhs initial state " + std::to_string(*report.uncovered_lhs_initial) +
           " has empty coverage";
  if (report.uncovered_rhs_initial)
    return "rhs initial state " + std::to_string(*report.uncovered_rhs_initial) +
           " has empty coverage";
  return "no witness";
}

std::string game_detail(const GameGraph& game, const GameSolution& solution) {
  std::string s = "winner: player " +
                  std::string(solution.winner == Player::One ? "I" : "II") + ", " +
                  std::to_string(game.positions.size()) + " positions, strategy " +
                  std::to_string(solution.strategy.choice.size()) + " moves";
  return s;
}

}  // namespace

int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    LoadedSystem lhs = load_system(opts.lhs_path);
    LoadedSystem rhs = load_system(opts.rhs_path);
    std::vector<std::string> notes;

    bool uses_bound = opts.rel == RelationKind::Branching || opts.rel == RelationKind::Linear;
    if (opts.ready && !uses_bound) throw Error("--ready requires --rel branching or linear");
    SwitchBound bound = uses_bound ? parse_bound(opts.k, opts.ready) : SwitchBound::finite(0);

    LinearOptions linear_opts;
    linear_opts.literal_defs = opts.literal_defs;
    linear_opts.max_subset_states = opts.max_subset_states;

    bool lts_only = opts.rel == RelationKind::Bisim || opts.rel == RelationKind::Sim ||
                    opts.rel == RelationKind::SimEquiv;
    if (lts_only && (!lhs.is_lts() || !rhs.is_lts()))
      throw Error(std::string("--rel ") + rel_name(opts.rel) + " requires two LTS inputs");

    // LTS-level equivalences keep the LTS view; everything else runs on the
    // DMTS view, chi-embedding LTS inputs (announced, not silent).
    bool lts_view = lts_only || (opts.equiv && lhs.is_lts() && rhs.is_lts() &&
                                 (opts.rel == RelationKind::Branching ||
                                  opts.rel == RelationKind::Linear));
    Dmts d1, d2;
    if (!lts_view) {
      if (lhs.is_lts()) {
        d1 = chi_embed(*lhs.lts);
        notes.push_back("embedded LHS via chi");
      } else {
        d1 = *lhs.dmts;
      }
      if (rhs.is_lts()) {
        d2 = chi_embed(*rhs.lts);
        notes.push_back("embedded RHS via chi");
      } else {
        d2 = *rhs.dmts;
      }
    }

    std::vector<EngineRun> runs;
    bool want_relation = opts.engine != EngineChoice::Game;
    bool want_game = opts.engine != EngineChoice::Relation;
    std::string game_strategy_text;

    if (want_relation) {
      EngineRun run;
      run.name = "relation";
      Timer timer;
      switch (opts.rel) {
        case RelationKind::Bisim: {
          auto w = bisimilar(*lhs.lts, *rhs.lts);
          run.holds = w.has_value();
          run.detail = witness_detail(w);
          break;
        }
        case RelationKind::Sim: {
          auto w = simulates(*lhs.lts, *rhs.lts);
          run.holds = w.has_value();
          run.detail = witness_detail(w);
          break;
        }
        case RelationKind::SimEquiv: {
          run.holds = simulation_equivalent(*lhs.lts, *rhs.lts);
          run.detail = run.holds ? "simulations both ways" : "no simulation in some direction";
          break;
        }
        case RelationKind::Modal: {
          if (opts.equiv) {
            run.holds = modal_refines(d1, d2).has_value() && modal_refines(d2, d1).has_value();
            run.detail = run.holds ? "witnesses both ways" : "no witness in some direction";
          } else {
            auto w = modal_refines(d1, d2);
            run.holds = w.has_value();
            run.detail = witness_detail(w);
          }
          break;
        }
        case RelationKind::SimRefine: {
          if (opts.equiv) {
            run.holds = sim_refines(d1, d2).has_value() && sim_refines(d2, d1).has_value();
            run.detail = run.holds ? "witnesses both ways" : "no witness in some direction";
          } else {
            auto w = sim_refines(d1, d2);
            run.holds = w.has_value();
            run.detail = w ? "witness family: " + std::to_string(w->total_pairs()) + " pairs"
                          : "no witness";
          }
          break;
        }
        case RelationKind::Branching: {
          if (lts_view) {
            run.holds = equiv_branching(*lhs.lts, *rhs.lts, bound);
            run.detail = run.holds ? "families both ways" : "no family in some direction";
          } else if (opts.equiv) {
            run.holds = branching_refines(d1, d2, bound).has_value() &&
                        branching_refines(d2, d1, bound).has_value();
            run.detail = run.holds ? "families both ways" : "no family in some direction";
          } else {
            auto report = branching_refines_report(d1, d2, bound);
            run.holds = report.holds;
            run.detail = family_detail(report);
          }
          break;
        }
        case RelationKind::Linear: {
          if (lts_view) {
            run.holds = equiv_linear(*lhs.lts, *rhs.lts, bound, linear_opts);
            run.detail = run.holds ? "families both ways" : "no family in some direction";
          } else if (opts.equiv) {
            run.holds = linear_refines(d1, d2, bound, linear_opts).has_value() &&
                        linear_refines(d2, d1, bound, linear_opts).has_value();
            run.detail = run.holds ? "families both ways" : "no family in some direction";
          } else {
            auto report = linear_refines_report(d1, d2, bound, linear_opts);
            run.holds = report.holds;
            run.detail = family_detail(report);
          }
          break;
        }
      }
      run.elapsed_ms = timer.ms();
      runs.push_back(std::move(run));
    }

    if (want_game) {
      bool supported = opts.rel == RelationKind::Bisim || opts.rel == RelationKind::SimEquiv ||
                       opts.rel == RelationKind::SimRefine ||
                       opts.rel == RelationKind::Branching;
      if (!supported) {
        if (opts.engine == EngineChoice::Game)
          throw Error(std::string("--engine game does not support --rel ") + rel_name(opts.rel));
        notes.push_back("game engine: not applicable to this relation");
      } else {
        EngineRun run;
        run.name = "game";
        Timer timer;
        SwitchBound game_bound = bound;
        if (opts.rel == RelationKind::Bisim) game_bound = SwitchBound::inf();
        if (opts.rel == RelationKind::SimEquiv || opts.rel == RelationKind::SimRefine)
          game_bound = SwitchBound::finite(0);

        auto run_one = [&](const GameGraph& game) {
          GameSolution solution = solve_game(game);
          if (solution.winner == Player::One && game_strategy_text.empty())
            game_strategy_text = render_strategy(game, solution.strategy);
          run.detail = game_detail(game, solution);
          return solution.winner == Player::Two;
        };

        if (lts_view || opts.rel == RelationKind::Bisim || opts.rel == RelationKind::SimEquiv) {
          run.holds = run_one(build_sim_game(*lhs.lts, *rhs.lts, game_bound));
        } else if (opts.equiv) {
          bool fwd = run_one(build_spec_game(d1, d2, game_bound));
          bool bwd = run_one(build_spec_game(d2, d1, game_bound));
          run.holds = fwd && bwd;
          run.detail = std::string("spec games: forward ") + (fwd ? "II" : "I") + ", backward " +
                       (bwd ? "II" : "I");
        } else {
          run.holds = run_one(build_spec_game(d1, d2, game_bound));
        }
        run.elapsed_ms = timer.ms();
        runs.push_back(std::move(run));
      }
    }

    bool agree = true;
    for (const auto& r : runs)
      if (r.holds != runs.front().holds) agree = false;
    if (!agree) {
      err << "error: engines disagree on " << rel_name(opts.rel) << " (";
      for (const auto& r : runs) err << r.name << "=" << (r.holds ? "true" : "false") << " ";
      err << ")\n";
      return 2;
    }
    bool verdict = runs.front().holds;

    if (opts.json) {
      json doc;
      doc["schema_version"] = kJsonSchemaVersion;
      doc["command"] = "check";
      doc["query"] = {{"lhs", opts.lhs_path},
                      {"rhs", opts.rhs_path},
                      {"relation", rel_name(opts.rel)},
                      {"k", uses_bound ? bound.to_string() : ""},
                      {"direction", opts.equiv ? "equiv" : "refine"},
                      {"literal_defs", opts.literal_defs}};
      doc["notes"] = notes;
      doc["engines"] = json::array();
      for (const auto& r : runs)
        doc["engines"].push_back(
            {{"name", r.name}, {"holds", r.holds}, {"detail", r.detail}, {"elapsed_ms", r.elapsed_ms}});
      doc["verdict"] = verdict;
      out << doc.dump(2) << "\n";
    } else {
      for (const auto& n : notes) out << "note: " << n << "\n";
      for (const auto& r : runs) {
        out << r.name << ": " << (r.holds ? "holds" : "does not hold") << " (" << r.detail
            << ") [" << std::fixed << std::setprecision(2) << r.elapsed_ms << " ms]\n";
      }
      if (!verdict && !game_strategy_text.empty())
        out << "distinguishing strategy:\n" << game_strategy_text;
      out << "verdict: " << (verdict ? "holds" : "does not hold") << "\n";
    }
    return verdict ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_embed(const EmbedOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    Lts lts = parse_aut(read_file(opts.lts_path));
    std::string text = write_dmts(chi_embed(lts));
    std::ofstream of(opts.out_path, std::ios::binary);
    if (!of) throw Error("cannot write " + opts.out_path);
    of << text;
    out << "wrote " << opts.out_path << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

struct MatrixRow {
  const char* family;
  SwitchBound bound;
  const char* classical;
  bool experimental;
};

std::vector<MatrixRow> matrix_rows() {
  return {
      {"branching", SwitchBound::finite(0), "simulation equivalence", false},
      {"branching", SwitchBound::finite(0, true), "ready simulation equivalence", false},
      {"branching", SwitchBound::finite(1), "nested simulation equivalence", false},
      {"branching", SwitchBound::finite(1, true), "", false},
      {"branching", SwitchBound::finite(2), "", false},
      {"branching", SwitchBound::finite(2, true), "", false},
      {"branching", SwitchBound::inf(), "bisimilarity", false},
      {"linear", SwitchBound::finite(0), "trace equivalence", false},
      {"linear", SwitchBound::finite(0, true), "failure equivalence", false},
      {"linear", SwitchBound::finite(1), "impossible-futures equivalence", false},
      {"linear", SwitchBound::finite(1, true), "", false},
      {"linear", SwitchBound::finite(2), "", false},
      {"linear", SwitchBound::finite(2, true), "", false},
      {"linear", SwitchBound::inf(), "", true},
  };
}

}  // namespace

int cmd_matrix(const MatrixOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    Lts lhs = parse_aut(read_file(opts.lhs_path));
    Lts rhs = parse_aut(read_file(opts.rhs_path));
    LinearOptions linear_opts;
    linear_opts.literal_defs = opts.literal_defs;

    json rows = json::array();
    std::ostringstream table;
    table << "relation    k    ready  verdict  note\n";
    for (const auto& row : matrix_rows()) {
      bool verdict = std::string(row.family) == "branching"
                         ? equiv_branching(lhs, rhs, row.bound)
                         : equiv_linear(lhs, rhs, row.bound, linear_opts);
      std::string note = row.classical;
      if (row.experimental) note = note.empty() ? "experimental" : note + " (experimental)";
      rows.push_back({{"family", row.family},
                      {"k", row.bound.infinite ? "inf" : std::to_string(row.bound.k)},
                      {"ready", row.bound.ready},
                      {"verdict", verdict},
                      {"note", note}});
      table << std::left << std::setw(12) << row.family << std::setw(5)
            << (row.bound.infinite ? "inf" : std::to_string(row.bound.k)) << std::setw(7)
            << (row.bound.ready ? "yes" : "no") << std::setw(9)
            << (verdict ? "true" : "false") << note << "\n";
    }
    if (opts.json) {
      json doc;
      doc["schema_version"] = kJsonSchemaVersion;
      doc["command"] = "matrix";
      doc["lhs"] = opts.lhs_path;
      doc["rhs"] = opts.rhs_path;
      doc["rows"] = rows;
      out << doc.dump(2) << "\n";
    } else {
      out << table.str();
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_xcheck(const XcheckOptions& opts, std::ostream& out, std::ostream& err,
               const oracle::CrossCheckEngines* inject) {
  try {
    oracle::CrossCheckEngines engines =
        inject ? *inject : oracle::CrossCheckEngines::standard();
    std::vector<SwitchBound> bounds;
    for (const auto& token : opts.bounds) bounds.push_back(parse_bound(token));

    // Per-trial seeds drawn once so every bound sees the same pairs.
    std::vector<uint64_t> seeds;
    SplitMix64 seeder(opts.params.seed);
    for (int i = 0; i < opts.trials; ++i) seeds.push_back(seeder.next());

    struct Disagreement {
      std::string bound;
      int trial;
      uint64_t seed;
      std::string verdicts;
    };
    std::vector<Disagreement> disagreements;
    json bounds_json = json::array();
    std::ostringstream table;

    for (const auto& bound : bounds) {
      int unanimous = 0;
      for (int trial = 0; trial < opts.trials; ++trial) {
        GenParams p1 = opts.params;
        p1.seed = seeds[trial];
        Lts a = random_lts(p1);
        Lts b;
        switch (trial % 4) {
          case 0:
            b = a;
            break;
          case 1:
            b = unfold_state(a, seeds[trial] ^ 0x9e3779b97f4a7c15ull);
            break;
          default: {
            GenParams p2 = opts.params;
            p2.seed = seeds[trial] ^ 0xd1342543de82ef95ull;
            b = random_lts(p2);
            break;
          }
        }
        auto report = oracle::cross_check(a, b, bound, engines);
        if (report.unanimous) {
          ++unanimous;
        } else {
          std::ostringstream v;
          for (const auto& [name, verdict] : report.verdicts)
            v << name << "=" << (verdict ? "true" : "false") << " ";
          disagreements.push_back({bound.to_string(), trial, seeds[trial], v.str()});
        }
      }
      bounds_json.push_back({{"bound", bound.to_string()},
                             {"trials", opts.trials},
                             {"unanimous", unanimous}});
      table << "bound " << bound.to_string() << ": trials=" << opts.trials
            << " unanimous=" << unanimous << "\n";
    }

    for (const auto& d : disagreements) {
      std::ostringstream line;
      line << "disagreement: bound=" << d.bound << " trial=" << d.trial << " seed=0x" << std::hex
           << d.seed << std::dec << " " << d.verdicts;
      table << line.str() << "\n";
    }
    bool ok = disagreements.empty();
    table << "result: " << (ok ? "unanimous" : "DISAGREEMENT") << "\n";

    if (opts.json) {
      json doc;
      doc["schema_version"] = kJsonSchemaVersion;
      doc["command"] = "xcheck";
      doc["seed"] = opts.params.seed;
      doc["trials"] = opts.trials;
      doc["bounds"] = bounds_json;
      doc["disagreements"] = json::array();
      for (const auto& d : disagreements)
        doc["disagreements"].push_back(
            {{"bound", d.bound}, {"trial", d.trial}, {"seed", d.seed}, {"verdicts", d.verdicts}});
      doc["unanimous"] = ok;
      out << doc.dump(2) << "\n";
    } else {
      out << table.str();
    }
    return ok ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ltbt::cli
