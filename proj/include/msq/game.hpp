#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msq/board.hpp"

namespace msq {

/// Which side the Spoiler plays in a round: an existential move places a
/// pebble on every left board, a universal move on every right board. The
/// Duplicator is oblivious: the opposite side expands to all placements.
enum class Side : std::uint8_t { exists, forall };

using Pattern = std::vector<Side>;

inline auto flip(Side s) -> Side {
  return s == Side::exists ? Side::forall : Side::exists;
}

auto side_char(Side s) -> char;                      // 'E' or 'A'
auto pattern_text(const Pattern& p) -> std::string;  // e.g. "AEA"
auto parse_pattern(const std::string& text) -> Pattern;

/// Whether `sub` embeds into `super` as a subsequence.
auto is_subsequence(const Pattern& sub, const Pattern& super) -> bool;

struct GameState {
  BoardSet left;
  BoardSet right;
  int round = 0;
  Pattern history;

  auto operator==(const GameState&) const -> bool = default;
};

/// The Spoiler has won when no left board matches any right board.
auto is_won(const GameState& s) -> bool;

/// One Spoiler move: `chooser` gives the pebble position for each board on
/// `side`; the other side expands obliviously to all placements. With
/// `prune_after` the resulting sides are pruned of unmatched boards. A
/// nonnegative `rounds_left` additionally canonicalizes every resulting
/// order board via truncate_gaps(b, rounds_left), which keeps oblivious
/// expansions from growing without changing outcomes over that horizon.
auto spoiler_move(const GameState& s, Side side,
                  const std::function<int(const Board&)>& chooser,
                  bool prune_after = true, int rounds_left = -1) -> GameState;

struct TraceChoice {
  std::string board_id;  // Board::text() before the move
  int position = 0;
};

struct TraceRound {
  Side side = Side::exists;
  std::vector<TraceChoice> choices;
  GameState state;  // after the move and any pruning
};

/// Record of a played game: enough to replay it from the initial instance.
/// `limit` is the round budget the game was played with; replaying must use
/// the same budget so that per-round board canonicalization matches.
struct Trace {
  Instance initial;
  std::vector<TraceRound> rounds;
  std::optional<int> won_at;
  bool pruned = true;
  int limit = 0;
};

/// JSON object {rounds: [{side, choices: [{board_id, position}]}], won_at}.
auto trace_to_json(const Trace& t) -> std::string;

/// Per-round outcome of a replayed trace: the reproduced post-move state
/// plus one representative board for every atomic type that pruning
/// discarded from each side during that round.
struct ReplayRound {
  Side side = Side::exists;
  GameState state;
  std::vector<Board> dropped_left;
  std::vector<Board> dropped_right;
};

/// Replays a recorded trace from its initial instance using the recorded
/// per-board choices, with the same pruning and canonicalization as the
/// original run. Throws a domain error when a choice is missing for a board
/// the replay reaches.
auto replay_trace(const Trace& t) -> std::vector<ReplayRound>;

/// A deterministic Spoiler strategy: a declared pattern plus a pebble
/// position for each board as a function of board content and the 1-based
/// round number only.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual auto pattern() const -> const Pattern& = 0;
  virtual auto choose(const Board& b, int round) const -> int = 0;
  virtual auto name() const -> std::string = 0;
};

struct PlayResult {
  Trace trace;
  GameState final_state;
  std::optional<int> won_at;
};

/// Plays the strategy from the initial instance, stopping at the first won
/// state or after max_rounds (default: the declared pattern length).
auto play(const BoardSet& left, const BoardSet& right, const Strategy& strategy,
          int max_rounds = -1, bool prune_after = true) -> PlayResult;

}  // namespace msq
