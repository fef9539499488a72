#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msq/game.hpp"

namespace msq {

/// Size limits guarding the exact solver's exponential search; instances
/// beyond them raise resource errors naming the offending dimension. The
/// MSQ_CAPS environment variable overrides them as "boards,universe,rounds".
struct SolverCaps {
  int boards_per_side = 4;
  int universe = 12;
  int rounds = 6;
};

/// The caps in effect: the defaults, or MSQ_CAPS when set. A malformed
/// MSQ_CAPS raises a usage error.
auto solver_caps() -> SolverCaps;

/// One round of an optimal line: the side moved and the position chosen for
/// each board that still had matching partners; boards omitted here play the
/// dummy move on min.
struct VariationRound {
  Side side = Side::exists;
  std::vector<std::pair<std::string, int>> moves;
};

/// Exact game value within a round budget. When winnable, `rounds` is the
/// minimal round count, `pattern` one optimal side sequence, and `variation`
/// one optimal line realizing it.
struct MsValue {
  bool winnable = false;
  int rounds = 0;
  Pattern pattern;
  std::vector<VariationRound> variation;
};

/// Minimal number of rounds in which the Spoiler wins the game on the given
/// sides against the oblivious Duplicator, searching every side sequence and
/// every per-class move assignment (isomorphic boards receive the same
/// move). `first_side` restricts the first round's side. Deterministic:
/// candidate moves, assignments, and side sequences are enumerated in a
/// fixed order.
auto solve_ms(const BoardSet& left, const BoardSet& right, int max_rounds,
              std::optional<Side> first_side = std::nullopt,
              bool prune_after = true) -> MsValue;

/// Minimal separating quantifier rank: the maximum over left x right board
/// pairs of the minimal round count the Spoiler needs in the pairwise
/// back-and-forth game. nullopt when some pair cannot be separated within
/// max_rounds.
auto solve_ef(const BoardSet& left, const BoardSet& right, int max_rounds)
    -> std::optional<int>;

}  // namespace msq
