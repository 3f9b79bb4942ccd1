/* games.hpp -- switch-counting simulation and specification games */

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ltbt/dmts.hpp"

namespace ltbt {

enum class Player : uint8_t { One, Two };

/// Position kinds.  Simulation games use Choose/MatchMay; specification
/// games add the opening exchange over initial-state sets (Start/MatchInit)
/// and MatchMust/PickBranch/MatchBranch for the two-phase disjunctive-must
/// rounds.
enum class PositionKind : uint8_t {
  Start,        // player I names an initial state on either side
  MatchInit,    // player II covers it with an initial state of the other side
  Choose,       // player I picks the next round (left may / right must)
  MatchMay,     // player II matches a pending transition / may-transition
  MatchMust,    // player II answers a pending must with a must of her own
  PickBranch,   // player I picks a branch of player II's must
  MatchBranch,  // player II matches the branch inside the original must
};

/// Side of a round: Left = player I played in the left system (a transition
/// or may-transition), Right = in the right system (transition or must).
enum class RoundSide : uint8_t { None, Left, Right };

/// Placeholder for the not-yet-covered side of an opening exchange.
inline constexpr State kAnyInitial = -2;

/// Memoryless summary of a game history: current states, the side of the
/// last round, the saturated switch counter, and the pending move for
/// mid-round kinds.
struct GamePosition {
  PositionKind kind = PositionKind::Choose;
  RoundSide side = RoundSide::None;
  int sco = 0;
  State left = -1;   // current left state (kAnyInitial on an opening round)
  State right = -1;  // current right state
  Label pending_label = -1;   // MatchMay / MatchBranch
  State pending_target = -1;  // MatchMay: target of player I's transition;
                              // MatchBranch: left branch target
  int must2 = -1;  // flattened index of the attacked right must
  int must1 = -1;  // flattened index of player II's answering left must

  friend bool operator==(const GamePosition&, const GamePosition&) = default;
};

/// Finite bipartite arena.  Dead player-II positions are player-I wins;
/// dead player-I positions and infinite plays are player-II wins.
struct GameGraph {
  std::vector<GamePosition> positions;
  std::vector<std::vector<int>> moves;
  int start = 0;
  SwitchBound bound;
  bool spec_game = false;
  std::vector<std::string> label_names;  // merged label space, for rendering

  static Player owner(PositionKind k) {
    return (k == PositionKind::Start || k == PositionKind::Choose ||
            k == PositionKind::PickBranch)
               ? Player::One
               : Player::Two;
  }
  // MatchInit, MatchMay, MatchMust, MatchBranch belong to player II.
  Player owner_of(int idx) const { return owner(positions[idx].kind); }
  std::string position_name(int idx) const;
};

/// Arena of the generalized simulation game on two LTS.  k-switching omits
/// player-I round openings whose resulting switch count exceeds k; k-ready
/// omits openings from positions whose own count exceeds k.
GameGraph build_sim_game(const Lts& lhs, const Lts& rhs, SwitchBound bound);

/// Arena of the specification game on two DMTS.  The opening exchange
/// settles initial coverage (player I names an initial state, player II
/// covers it from the opposite side); afterwards player I attacks with a
/// left may-transition or a right disjunctive must, the latter answered in
/// the two-phase branch protocol.  On singleton initial sets the opening
/// exchange is forced and the arena degenerates to the plain game.
GameGraph build_spec_game(const Dmts& lhs, const Dmts& rhs, SwitchBound bound);

/// Winner's memoryless strategy: position index -> chosen move.  Partial for
/// player I (undefined means stop).
struct Strategy {
  Player player = Player::One;
  std::map<int, int> choice;
};

struct GameSolution {
  Player winner = Player::Two;
  Strategy strategy;                  // for the winner, ties broken by lowest
                                      // successor index
  std::vector<bool> player_one_wins;  // per position
};

/// Attractor computation: player I wins exactly the positions from which
/// reaching a dead player-II position can be forced.
GameSolution solve_game(const GameGraph& game);

/// The unique play induced by a strategy pair, truncated with a cycle flag
/// at the first repeated position.
struct Play {
  std::vector<int> positions;
  bool cycle = false;
};

/// Throws IllegalStrategy when a chosen move is not a graph move.
Play distinguishing_play(const GameGraph& game, const Strategy& for_one,
                         const Strategy& for_two);

/// Line-oriented rendering: one "position => successor" line per move.
std::string render_strategy(const GameGraph& game, const Strategy& strategy);
std::string render_play(const GameGraph& game, const Play& play);

}  // namespace ltbt
