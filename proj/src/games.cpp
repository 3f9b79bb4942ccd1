#include "ltbt/games.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "ltbt/errors.hpp"
#include "pair_view.hpp"

namespace ltbt {

namespace {

struct PositionHash {
  size_t operator()(const GamePosition& p) const {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    auto mix = [&h](uint64_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<uint64_t>(p.kind));
    mix(static_cast<uint64_t>(p.side));
    mix(static_cast<uint64_t>(p.sco));
    mix(static_cast<uint64_t>(p.left) + 3);
    mix(static_cast<uint64_t>(p.right) + 3);
    mix(static_cast<uint64_t>(p.pending_label) + 3);
    mix(static_cast<uint64_t>(p.pending_target) + 3);
    mix(static_cast<uint64_t>(p.must2) + 3);
    mix(static_cast<uint64_t>(p.must1) + 3);
    return static_cast<size_t>(h);
  }
};

// Shared BFS arena builder.
struct ArenaBuilder {
  GameGraph graph;
  std::unordered_map<GamePosition, int, PositionHash> index;
  std::deque<int> queue;

  explicit ArenaBuilder(SwitchBound bound) { graph.bound = bound; }

  int intern(const GamePosition& p) {
    auto [it, inserted] = index.emplace(p, static_cast<int>(graph.positions.size()));
    if (inserted) {
      graph.positions.push_back(p);
      graph.moves.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  }
};

// Switch counters saturate: values beyond the last bound-relevant one are
// indistinguishable, which keeps the arena finite for k = inf as well.
int sco_cap(SwitchBound bound) { return bound.infinite ? 1 : bound.k + 1; }

int bump_sco(RoundSide prev, RoundSide now, int sco, int cap) {
  if (prev == RoundSide::None || prev == now) return sco;
  return std::min(sco + 1, cap);
}

// Round openings are the only moves the bound restricts: k-switching prunes
// openings whose resulting count exceeds k, k-ready prunes all openings from
// positions whose own count exceeds k.  Mid-round moves are never pruned.
bool opening_allowed(SwitchBound bound, int position_sco, int resulting_sco) {
  if (bound.infinite) return true;
  if (bound.ready) return position_sco <= bound.k;
  return resulting_sco <= bound.k;
}

}  // namespace

GameGraph build_sim_game(const Lts& lhs, const Lts& rhs, SwitchBound bound) {
  validate_bound(bound);
  detail::LtsPairView v(lhs, rhs);
  ArenaBuilder b(bound);
  b.graph.label_names = [&] {
    detail::LabelJoin join(lhs.alphabet, rhs.alphabet);
    return join.names;
  }();
  int cap = sco_cap(bound);

  GamePosition start;
  start.kind = PositionKind::Choose;
  start.side = RoundSide::None;
  start.sco = 0;
  start.left = lhs.initial;
  start.right = rhs.initial;
  b.graph.start = b.intern(start);

  while (!b.queue.empty()) {
    int idx = b.queue.front();
    b.queue.pop_front();
    GamePosition p = b.graph.positions[idx];
    // intern() may grow the arenas, so successors are collected locally
    std::vector<int> moves;

    if (p.kind == PositionKind::Choose) {
      for (auto [lab, t] : v.left.out[p.left]) {
        int ns = bump_sco(p.side, RoundSide::Left, p.sco, cap);
        if (!opening_allowed(bound, p.sco, ns)) continue;
        GamePosition q = p;
        q.kind = PositionKind::MatchMay;
        q.side = RoundSide::Left;
        q.sco = ns;
        q.pending_label = lab;
        q.pending_target = t;
        moves.push_back(b.intern(q));
      }
      for (auto [lab, t] : v.right.out[p.right]) {
        int ns = bump_sco(p.side, RoundSide::Right, p.sco, cap);
        if (!opening_allowed(bound, p.sco, ns)) continue;
        GamePosition q = p;
        q.kind = PositionKind::MatchMay;
        q.side = RoundSide::Right;
        q.sco = ns;
        q.pending_label = lab;
        q.pending_target = t;
        moves.push_back(b.intern(q));
      }
    } else {  // MatchMay
      const auto& answers = p.side == RoundSide::Left ? v.right.out[p.right] : v.left.out[p.left];
      for (auto [lab, t] : answers) {
        if (lab != p.pending_label) continue;
        GamePosition q;
        q.kind = PositionKind::Choose;
        q.side = p.side;
        q.sco = p.sco;
        q.left = p.side == RoundSide::Left ? p.pending_target : t;
        q.right = p.side == RoundSide::Left ? t : p.pending_target;
        moves.push_back(b.intern(q));
      }
    }
    b.graph.moves[idx] = std::move(moves);
  }
  return b.graph;
}

GameGraph build_spec_game(const Dmts& lhs, const Dmts& rhs, SwitchBound bound) {
  validate_bound(bound);
  detail::DmtsPairView v(lhs, rhs);
  ArenaBuilder b(bound);
  b.graph.label_names = [&] {
    detail::LabelJoin join(lhs.alphabet, rhs.alphabet);
    return join.names;
  }();
  b.graph.spec_game = true;
  int cap = sco_cap(bound);

  GamePosition start;
  start.kind = PositionKind::Start;
  b.graph.start = b.intern(start);

  while (!b.queue.empty()) {
    int idx = b.queue.front();
    b.queue.pop_front();
    GamePosition p = b.graph.positions[idx];
    std::vector<int> moves;

    switch (p.kind) {
      case PositionKind::Start: {
        // Opening exchange: player I names an initial state; the covering
        // answer commits the pair before any transition is attacked, which
        // is what the coverage clauses of the relation families require.
        for (State s1 : lhs.initial) {
          GamePosition q;
          q.kind = PositionKind::MatchInit;
          q.side = RoundSide::Left;
          q.left = s1;
          q.right = kAnyInitial;
          moves.push_back(b.intern(q));
        }
        for (State s2 : rhs.initial) {
          GamePosition q;
          q.kind = PositionKind::MatchInit;
          q.side = RoundSide::Right;
          q.left = kAnyInitial;
          q.right = s2;
          moves.push_back(b.intern(q));
        }
        break;
      }
      case PositionKind::MatchInit: {
        const auto& cover = p.side == RoundSide::Left ? rhs.initial : lhs.initial;
        for (State s : cover) {
          GamePosition q;
          q.kind = PositionKind::Choose;
          q.side = p.side;
          q.sco = 0;
          q.left = p.side == RoundSide::Left ? p.left : s;
          q.right = p.side == RoundSide::Left ? s : p.right;
          moves.push_back(b.intern(q));
        }
        break;
      }
      case PositionKind::Choose: {
        // May-round: player I attacks with a may-transition on the left.
        for (auto [lab, t] : v.may_left.out[p.left]) {
          int ns = bump_sco(p.side, RoundSide::Left, p.sco, cap);
          if (!opening_allowed(bound, p.sco, ns)) continue;
          GamePosition q = p;
          q.kind = PositionKind::MatchMay;
          q.side = RoundSide::Left;
          q.sco = ns;
          q.pending_label = lab;
          q.pending_target = t;
          moves.push_back(b.intern(q));
        }
        // Must-round: player I attacks with a disjunctive must on the right.
        for (int mi : v.must_right.by_state[p.right]) {
          int ns = bump_sco(p.side, RoundSide::Right, p.sco, cap);
          if (!opening_allowed(bound, p.sco, ns)) continue;
          GamePosition q = p;
          q.kind = PositionKind::MatchMust;
          q.side = RoundSide::Right;
          q.sco = ns;
          q.must2 = mi;
          moves.push_back(b.intern(q));
        }
        break;
      }
      case PositionKind::MatchMay: {
        for (auto [lab, t] : v.may_right.out[p.right]) {
          if (lab != p.pending_label) continue;
          GamePosition q;
          q.kind = PositionKind::Choose;
          q.side = RoundSide::Left;
          q.sco = p.sco;
          q.left = p.pending_target;
          q.right = t;
          moves.push_back(b.intern(q));
        }
        break;
      }
      case PositionKind::MatchMust: {
        // Player II answers with a must of the left system.  The pre-round
        // states are dropped: the branch phases determine the next pair.
        for (int mi : v.must_left.by_state[p.left]) {
          GamePosition q;
          q.kind = PositionKind::PickBranch;
          q.side = RoundSide::Right;
          q.sco = p.sco;
          q.must2 = p.must2;
          q.must1 = mi;
          moves.push_back(b.intern(q));
        }
        break;
      }
      case PositionKind::PickBranch: {
        // Player I picks a branch of player II's must.  Dead when the
        // branch set is empty, which hands the play to player II.
        for (auto [lab, t] : v.must_left.entries[p.must1].branches) {
          GamePosition q = p;
          q.kind = PositionKind::MatchBranch;
          q.pending_label = lab;
          q.pending_target = t;
          moves.push_back(b.intern(q));
        }
        break;
      }
      case PositionKind::MatchBranch: {
        // Player II matches inside the attacked must's branch set.
        for (auto [lab, t] : v.must_right.entries[p.must2].branches) {
          if (lab != p.pending_label) continue;
          GamePosition q;
          q.kind = PositionKind::Choose;
          q.side = RoundSide::Right;
          q.sco = p.sco;
          q.left = p.pending_target;
          q.right = t;
          moves.push_back(b.intern(q));
        }
        break;
      }
    }
    b.graph.moves[idx] = std::move(moves);
  }
  return b.graph;
}

GameSolution solve_game(const GameGraph& game) {
  int n = static_cast<int>(game.positions.size());
  std::vector<std::vector<int>> preds(n);
  for (int p = 0; p < n; ++p)
    for (int q : game.moves[p]) preds[q].push_back(p);

  // Attractor for player I of the dead player-II positions.  rank counts
  // propagation layers; I-positions point one layer down in the strategy.
  constexpr int kUnset = -1;
  std::vector<int> rank(n, kUnset);
  std::vector<int> pending(n, 0);
  std::deque<int> queue;
  for (int p = 0; p < n; ++p) {
    if (game.owner_of(p) == Player::Two) {
      pending[p] = static_cast<int>(game.moves[p].size());
      if (pending[p] == 0) {
        rank[p] = 0;
        queue.push_back(p);
      }
    }
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int p : preds[q]) {
      if (rank[p] != kUnset) continue;
      if (game.owner_of(p) == Player::One) {
        rank[p] = rank[q] + 1;
        queue.push_back(p);
      } else if (--pending[p] == 0) {
        rank[p] = rank[q] + 1;
        queue.push_back(p);
      }
    }
  }

  GameSolution solution;
  solution.player_one_wins.assign(n, false);
  for (int p = 0; p < n; ++p) solution.player_one_wins[p] = rank[p] != kUnset;
  solution.winner = solution.player_one_wins[game.start] ? Player::One : Player::Two;
  solution.strategy.player = solution.winner;

  if (solution.winner == Player::One) {
    for (int p = 0; p < n; ++p) {
      if (game.owner_of(p) != Player::One || rank[p] == kUnset) continue;
      for (int q : game.moves[p]) {
        if (rank[q] != kUnset && rank[q] < rank[p]) {
          solution.strategy.choice[p] = q;  // lowest successor index wins ties
          break;
        }
      }
    }
  } else {
    for (int p = 0; p < n; ++p) {
      if (game.owner_of(p) != Player::Two || rank[p] != kUnset) continue;
      for (int q : game.moves[p]) {
        if (rank[q] == kUnset) {
          solution.strategy.choice[p] = q;
          break;
        }
      }
    }
  }
  return solution;
}

Play distinguishing_play(const GameGraph& game, const Strategy& for_one,
                         const Strategy& for_two) {
  Play play;
  std::vector<bool> visited(game.positions.size(), false);
  int cur = game.start;
  for (;;) {
    if (visited[cur]) {
      play.cycle = true;
      return play;
    }
    visited[cur] = true;
    play.positions.push_back(cur);
    const Strategy& strat = game.owner_of(cur) == Player::One ? for_one : for_two;
    auto it = strat.choice.find(cur);
    if (it == strat.choice.end()) return play;
    const auto& moves = game.moves[cur];
    if (std::find(moves.begin(), moves.end(), it->second) == moves.end())
      throw IllegalStrategy("strategy move " + std::to_string(it->second) +
                            " is not a graph move from position " + std::to_string(cur));
    cur = it->second;
  }
}

std::string GameGraph::position_name(int idx) const {
  const GamePosition& p = positions[idx];
  auto state = [](State s) {
    return s == kAnyInitial ? std::string("*") : std::to_string(s);
  };
  std::ostringstream os;
  switch (p.kind) {
    case PositionKind::Start:
      os << "start";
      return os.str();
    case PositionKind::MatchInit:
      os << "init " << (p.side == RoundSide::Left ? "left " + state(p.left)
                                                  : "right " + state(p.right));
      return os.str();
    case PositionKind::Choose:
      os << "(" << state(p.left) << "," << state(p.right) << ")";
      break;
    case PositionKind::MatchMay:
      os << "(" << state(p.left) << "," << state(p.right) << ")!"
         << (p.side == RoundSide::Left ? "L" : "R") << " " << label_names[p.pending_label]
         << "->" << p.pending_target;
      break;
    case PositionKind::MatchMust:
      os << "(" << state(p.left) << "," << state(p.right) << ")!must#" << p.must2;
      break;
    case PositionKind::PickBranch:
      os << "branch? must2#" << p.must2 << " must1#" << p.must1;
      break;
    case PositionKind::MatchBranch:
      os << "branch! must2#" << p.must2 << " " << label_names[p.pending_label] << "->"
         << p.pending_target;
      break;
  }
  os << " side=" << (p.side == RoundSide::None ? "-" : p.side == RoundSide::Left ? "L" : "R")
     << " sco=" << p.sco;
  return os.str();
}

std::string render_strategy(const GameGraph& game, const Strategy& strategy) {
  std::ostringstream os;
  for (const auto& [from, to] : strategy.choice)
    os << game.position_name(from) << " => " << game.position_name(to) << "\n";
  return os.str();
}

std::string render_play(const GameGraph& game, const Play& play) {
  std::ostringstream os;
  for (size_t i = 0; i < play.positions.size(); ++i) {
    os << game.position_name(play.positions[i]);
    if (i + 1 < play.positions.size()) os << "\n";
  }
  if (play.cycle) os << "\n(cycle)";
  os << "\n";
  return os.str();
}

}  // namespace ltbt
