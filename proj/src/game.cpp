#include "msq/game.hpp"

#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "msq/error.hpp"

namespace msq {

auto side_char(Side s) -> char { return s == Side::exists ? 'E' : 'A'; }

auto pattern_text(const Pattern& p) -> std::string {
  std::string out;
  out.reserve(p.size());
  for (Side s : p) out.push_back(side_char(s));
  return out;
}

auto parse_pattern(const std::string& text) -> Pattern {
  Pattern p;
  p.reserve(text.size());
  for (char c : text) {
    if (c == 'E' || c == 'e') {
      p.push_back(Side::exists);
    } else if (c == 'A' || c == 'a') {
      p.push_back(Side::forall);
    } else {
      throw_domain("pattern characters must be E or A");
    }
  }
  return p;
}

auto is_subsequence(const Pattern& sub, const Pattern& super) -> bool {
  std::size_t i = 0;
  for (std::size_t j = 0; j < super.size() && i < sub.size(); ++j) {
    if (sub[i] == super[j]) ++i;
  }
  return i == sub.size();
}

auto is_won(const GameState& s) -> bool {
  std::unordered_set<AtomicType> left_types;
  for (const auto& b : s.left) left_types.insert(atomic_type(b));
  for (const auto& b : s.right) {
    if (left_types.contains(atomic_type(b))) return false;
  }
  return true;
}

namespace {

auto canonical(Board b, int rounds_left) -> Board {
  return rounds_left < 0 ? b : truncate_gaps(b, rounds_left);
}

struct StepOutcome {
  std::vector<Board> moved;
  std::vector<Board> responses;
  std::vector<Board> dropped_moved;      // one per pruned type
  std::vector<Board> dropped_responses;  // one per pruned type
};

/// Streaming variant of move + prune: placements within one label gap of an
/// order board share an atomic type, so each gap is tested once and only
/// placements whose type occurs among the moved boards are materialized.
/// Pruned types are reported through one representative board each.
auto pruned_move(const BoardSet& chosen, const BoardSet& expanded,
                 const std::function<int(const Board&)>& chooser,
                 int rounds_left) -> StepOutcome {
  StepOutcome out;
  std::unordered_set<AtomicType> moved_types;
  std::vector<Board> moved;
  moved.reserve(static_cast<std::size_t>(chosen.size()));
  for (const auto& b : chosen) {
    Board m = b.with_pebble(chooser(b));
    moved_types.insert(atomic_type(m));
    moved.push_back(std::move(m));
  }

  std::unordered_set<AtomicType> response_types;
  std::unordered_set<AtomicType> dropped_response_types;
  auto consider = [&](Board ext) {
    AtomicType t = atomic_type(ext);
    response_types.insert(t);
    if (moved_types.contains(t)) return true;
    if (dropped_response_types.insert(t).second)
      out.dropped_responses.push_back(canonical(std::move(ext), rounds_left));
    return false;
  };
  for (const auto& b : expanded) {
    if (b.kind() != BoardKind::order) {
      for (auto& ext : all_placements(b)) {
        if (consider(ext)) out.responses.push_back(std::move(ext));
      }
      continue;
    }
    std::vector<int> points;
    points.reserve(b.pebbles().size() + 2);
    points.push_back(0);
    points.push_back(b.size() - 1);
    for (int p : b.pebbles()) points.push_back(p);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    auto try_range = [&](int lo, int hi) {
      if (lo > hi) return;
      if (!consider(b.with_pebble(lo))) return;
      for (int p = lo; p <= hi; ++p)
        out.responses.push_back(canonical(b.with_pebble(p), rounds_left));
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
      try_range(points[i], points[i]);
      if (i + 1 < points.size()) try_range(points[i] + 1, points[i + 1] - 1);
    }
  }

  std::unordered_set<AtomicType> dropped_moved_types;
  for (auto& m : moved) {
    AtomicType t = atomic_type(m);
    if (response_types.contains(t)) {
      out.moved.push_back(canonical(std::move(m), rounds_left));
    } else if (dropped_moved_types.insert(t).second) {
      out.dropped_moved.push_back(canonical(std::move(m), rounds_left));
    }
  }
  return out;
}

auto step(const GameState& s, Side side,
          const std::function<int(const Board&)>& chooser, bool prune_after,
          int rounds_left) -> std::pair<GameState, StepOutcome> {
  const BoardSet& chosen = side == Side::exists ? s.left : s.right;
  const BoardSet& expanded = side == Side::exists ? s.right : s.left;

  StepOutcome outcome;
  if (prune_after) {
    outcome = pruned_move(chosen, expanded, chooser, rounds_left);
  } else {
    outcome.moved.reserve(static_cast<std::size_t>(chosen.size()));
    for (const auto& b : chosen)
      outcome.moved.push_back(canonical(b.with_pebble(chooser(b)), rounds_left));
    for (const auto& b : expanded) {
      for (auto& ext : all_placements(b))
        outcome.responses.push_back(canonical(std::move(ext), rounds_left));
    }
  }

  GameState next;
  bool moved_left = side == Side::exists;
  next.left = BoardSet(std::move(moved_left ? outcome.moved : outcome.responses));
  next.right = BoardSet(std::move(moved_left ? outcome.responses : outcome.moved));
  next.round = s.round + 1;
  next.history = s.history;
  next.history.push_back(side);
  return {std::move(next), std::move(outcome)};
}

}  // namespace

auto spoiler_move(const GameState& s, Side side,
                  const std::function<int(const Board&)>& chooser,
                  bool prune_after, int rounds_left) -> GameState {
  return step(s, side, chooser, prune_after, rounds_left).first;
}

auto trace_to_json(const Trace& t) -> std::string {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : t.rounds) {
    nlohmann::json choices = nlohmann::json::array();
    for (const auto& c : r.choices) {
      choices.push_back({{"board_id", c.board_id}, {"position", c.position}});
    }
    rounds.push_back({{"side", std::string(1, side_char(r.side))},
                      {"choices", std::move(choices)}});
  }
  nlohmann::json out = {{"rounds", std::move(rounds)}};
  if (t.won_at.has_value()) {
    out["won_at"] = *t.won_at;
  } else {
    out["won_at"] = nullptr;
  }
  return out.dump();
}

auto play(const BoardSet& left, const BoardSet& right, const Strategy& strategy,
          int max_rounds, bool prune_after) -> PlayResult {
  const Pattern& pattern = strategy.pattern();
  int limit = max_rounds < 0 ? static_cast<int>(pattern.size()) : max_rounds;
  if (limit > static_cast<int>(pattern.size())) {
    limit = static_cast<int>(pattern.size());
  }

  PlayResult result;
  result.trace.initial = Instance{left, right};
  result.trace.pruned = prune_after;
  result.trace.limit = limit;

  GameState state{left, right, 0, {}};
  for (int g = 0; g <= limit; ++g) {
    if (is_won(state)) {
      result.won_at = state.round;
      break;
    }
    if (g == limit) break;
    Side side = pattern[static_cast<std::size_t>(g)];
    TraceRound round;
    round.side = side;
    const BoardSet& chosen = side == Side::exists ? state.left : state.right;
    for (const auto& b : chosen) {
      round.choices.push_back({b.text(), strategy.choose(b, g + 1)});
    }
    result.trace.rounds.push_back(std::move(round));
    state = spoiler_move(
        state, side, [&](const Board& b) { return strategy.choose(b, g + 1); },
        prune_after, limit - (g + 1));
    result.trace.rounds.back().state = state;
  }
  result.trace.won_at = result.won_at;
  result.final_state = std::move(state);
  return result;
}

auto replay_trace(const Trace& t) -> std::vector<ReplayRound> {
  GameState state{t.initial.left, t.initial.right, 0, {}};
  std::vector<ReplayRound> out;
  out.reserve(t.rounds.size());
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    const TraceRound& r = t.rounds[i];
    std::unordered_map<std::string, int> choice;
    for (const auto& c : r.choices) choice.emplace(c.board_id, c.position);
    auto chooser = [&](const Board& b) {
      auto it = choice.find(b.text());
      if (it == choice.end())
        throw_domain("trace records no choice for board " + b.text());
      return it->second;
    };
    auto [next, outcome] = step(state, r.side, chooser, t.pruned,
                                t.limit - (static_cast<int>(i) + 1));
    state = std::move(next);
    ReplayRound round;
    round.side = r.side;
    round.state = state;
    bool moved_left = r.side == Side::exists;
    round.dropped_left = std::move(moved_left ? outcome.dropped_moved
                                              : outcome.dropped_responses);
    round.dropped_right = std::move(moved_left ? outcome.dropped_responses
                                               : outcome.dropped_moved);
    out.push_back(std::move(round));
  }
  return out;
}

}  // namespace msq
