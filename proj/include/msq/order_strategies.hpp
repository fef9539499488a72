#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "msq/game.hpp"

namespace msq {

/// Minimal quantifier rank distinguishing L_ell from longer orders:
/// 1 + floor(log2 ell).
auto rank(int ell) -> int;

enum class StartChoice { exists, forall, best };

/// Minimal rounds in which the midpoint strategy separates {L_1..L_ell}
/// from all longer orders when the first move is on the given side (best:
/// the smaller of the two). Computed by the halving recurrences.
auto q_star(int ell, StartChoice side = StartChoice::best) -> int;

/// Same values by the collapsed two-step recurrences (floor((ell+1)/4) /
/// floor((ell+2)/4)).
auto q_star_fast(int ell, StartChoice side = StartChoice::best) -> int;

/// The move pattern realized by the midpoint strategy started on `side`:
/// alternating for q-1 rounds, then a final universal round (which may
/// double the previous universal).
auto pattern_of(int ell, Side side) -> Pattern;

/// The strictly alternating pattern of length q_star(ell) ending universal;
/// its start side is forced by parity.
auto alternating_pattern(int ell) -> Pattern;

/// The side whose minimal round count equals q_star(ell) and whose pattern
/// strictly alternates (exists for every ell; checked).
auto best_alternating_side(int ell) -> Side;

/// An interval endpoint label on a board: min, max, or the pebble placed at
/// a given 1-based round.
struct Anchor {
  enum class Kind : std::uint8_t { board_min, board_max, pebble };

  static auto min() -> Anchor { return {Kind::board_min, 0}; }
  static auto max() -> Anchor { return {Kind::board_max, 0}; }
  static auto at_round(int round) -> Anchor { return {Kind::pebble, round}; }

  auto resolve(const Board& b) const -> int;

  Kind kind = Kind::board_min;
  int round = 0;
};

/// A strategy fragment confined to an interval of the boards, scheduled on
/// explicit global rounds. Off-round queries return nullopt (the caller
/// plays a dummy move).
class IntervalPlan {
 public:
  virtual ~IntervalPlan() = default;
  virtual auto move(const Board& b, int round) const -> std::optional<int> = 0;
  virtual auto rounds() const -> const std::vector<int>& = 0;
};

/// The recursive midpoint plan for separating interval lengths <= ell from
/// longer ones, first move on `side`, confined to [lo, hi], playing at the
/// given global rounds (which must number q_star(ell, side)).
auto make_cma_plan(int ell, Side side, Anchor lo, Anchor hi,
                   std::vector<int> rounds) -> std::unique_ptr<IntervalPlan>;

/// Plan separating interval length exactly ell from all other lengths,
/// confined to [lo, hi]. Requires rounds.size() == one_vs_all_rounds(ell);
/// the schedule entries must alternate starting universal.
auto make_one_vs_all_plan(int ell, Anchor lo, Anchor hi,
                          std::vector<int> rounds)
    -> std::unique_ptr<IntervalPlan>;

/// Declared length of the one-vs-all plan: q_star(ell) + 1 or + 2, whichever
/// makes an alternating universal-start pattern end universal.
auto one_vs_all_rounds(int ell) -> int;

/// Midpoint strategy for make_order_instance(ell, ...): wins in exactly
/// q_star(ell, side) rounds with pattern pattern_of(ell, side).
auto cma_strategy(int ell, Side first_side) -> std::shared_ptr<Strategy>;

/// Strategy separating {L_ell} from every other length (both shorter and
/// longer): alternating universal-start pattern, at most q_star(ell) + 2
/// rounds.
auto order_one_vs_all_strategy(int ell) -> std::shared_ptr<Strategy>;

/// A component game with its strategy, for parallel composition.
struct SubGame {
  Instance instance;
  std::shared_ptr<Strategy> strategy;
};

/// Plays disjoint sub-games in parallel under one master pattern. Each
/// sub-strategy's pattern must embed into the master as a subsequence, and
/// no board of one sub-game's left side may match a board of another's
/// right side. Boards are routed to sub-games by descent from the
/// sub-game's initial boards; off-round sub-games play the dummy move (min).
auto parallel_combine(std::vector<SubGame> subgames, Pattern master)
    -> std::shared_ptr<Strategy>;

}  // namespace msq
