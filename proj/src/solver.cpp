#include "msq/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "msq/board.hpp"
#include "msq/error.hpp"
#include "msq/game.hpp"

namespace msq {

namespace {

auto parse_caps(const std::string& text) -> SolverCaps {
  std::vector<long> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty() ||
        item.find_first_not_of("0123456789") != std::string::npos ||
        item.size() > 6) {
      throw_usage("MSQ_CAPS must be \"boards,universe,rounds\" with positive "
                  "integers, got \"" +
                  text + "\"");
    }
    parts.push_back(std::stol(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3 || parts[0] < 1 || parts[1] < 1 || parts[2] < 0) {
    throw_usage("MSQ_CAPS must be \"boards,universe,rounds\" with positive "
                "integers, got \"" +
                text + "\"");
  }
  return SolverCaps{static_cast<int>(parts[0]), static_cast<int>(parts[1]),
                    static_cast<int>(parts[2])};
}

/// One side of the input, truncated for the full budget and deduplicated:
/// the isomorphism classes the search actually works on.
auto canonical_side(const BoardSet& side, int horizon) -> std::vector<Board> {
  std::set<Board> seen;
  for (const Board& b : side) seen.insert(truncate_gaps(b, horizon));
  return {seen.begin(), seen.end()};
}

void check_caps(const std::vector<Board>& left,
                const std::vector<Board>& right, int max_rounds,
                const SolverCaps& caps) {
  if (max_rounds > caps.rounds) {
    throw_resource("max_rounds " + std::to_string(max_rounds) +
                   " exceeds the cap of " + std::to_string(caps.rounds) +
                   " rounds (override with MSQ_CAPS)");
  }
  auto check_side = [&caps](const std::vector<Board>& boards,
                            const std::string& name) {
    if (static_cast<int>(boards.size()) > caps.boards_per_side) {
      throw_resource(name + " side has " + std::to_string(boards.size()) +
                     " isomorphism classes, above the cap of " +
                     std::to_string(caps.boards_per_side) +
                     " boards per side (override with MSQ_CAPS)");
    }
    for (const Board& b : boards) {
      if (b.size() > caps.universe) {
        throw_resource("board " + b.text() + " has universe size " +
                       std::to_string(b.size()) + ", above the cap of " +
                       std::to_string(caps.universe) +
                       " (override with MSQ_CAPS)");
      }
    }
  };
  check_side(left, "left");
  check_side(right, "right");
}

/// A maximal set of boards sharing one atomic type with both sides present:
/// exactly the pairs still matching. Types only refine as pebbles are
/// placed, so distinct components never interact again and the game value
/// decomposes over them.
struct Component {
  std::vector<Board> left;
  std::vector<Board> right;
};

auto component_key(const Component& c) -> std::string {
  std::string key;
  for (const Board& b : c.left) {
    key += b.text();
    key += ';';
  }
  key += '|';
  for (const Board& b : c.right) {
    key += b.text();
    key += ';';
  }
  return key;
}

/// Groups boards by atomic type and keeps the groups with boards on both
/// sides. Boards in pair-free groups are dead weight and play no further
/// part in the game value.
auto decompose(const std::vector<Board>& left, const std::vector<Board>& right)
    -> std::vector<Component> {
  std::map<AtomicType, Component> buckets;
  for (const Board& b : left) buckets[atomic_type(b)].left.push_back(b);
  for (const Board& b : right) buckets[atomic_type(b)].right.push_back(b);
  std::vector<Component> out;
  for (auto& [type, c] : buckets) {
    if (c.left.empty() || c.right.empty()) continue;
    std::sort(c.left.begin(), c.left.end());
    std::sort(c.right.begin(), c.right.end());
    out.push_back(std::move(c));
  }
  return out;
}

struct Candidate {
  int position = 0;
  Board moved;
};

/// Distinct moves on a board, one position per distinct truncated result,
/// ordered middle-out so interval-halving lines are tried first.
auto candidate_moves(const Board& b, int horizon) -> std::vector<Candidate> {
  std::vector<int> positions(static_cast<std::size_t>(b.size()));
  std::iota(positions.begin(), positions.end(), 0);
  const int doubled_mid = b.size() - 1;
  std::stable_sort(positions.begin(), positions.end(),
                   [doubled_mid](int x, int y) {
                     return std::abs(2 * x - doubled_mid) <
                            std::abs(2 * y - doubled_mid);
                   });
  std::vector<Candidate> out;
  std::set<Board> seen;
  for (int x : positions) {
    Board moved = truncate_gaps(b.with_pebble(x), horizon);
    if (seen.insert(moved).second) out.push_back({x, std::move(moved)});
  }
  return out;
}

/// All single-pebble extensions of the given boards, truncated and
/// deduplicated: the oblivious response to a move on the other side.
auto expanded_placements(const std::vector<Board>& boards, int horizon)
    -> std::vector<Board> {
  std::set<Board> seen;
  for (const Board& b : boards) {
    for (const Board& p : all_placements(b)) {
      seen.insert(truncate_gaps(p, horizon));
    }
  }
  return {seen.begin(), seen.end()};
}

using MoveList = std::vector<std::pair<std::string, int>>;

class ExactSolver {
 public:
  explicit ExactSolver(bool prune_after) : prune_(prune_after) {}

  /// Whether the Spoiler, playing the sides `pattern[at..]`, can break every
  /// pair of the component within those rounds.
  auto killable(const Component& c, const Pattern& pattern, std::size_t at)
      -> bool {
    if (at == pattern.size()) return false;
    const int remaining = static_cast<int>(pattern.size() - at);
    std::string key = component_key(c);
    key += '#';
    for (std::size_t i = at; i < pattern.size(); ++i) {
      key += side_char(pattern[i]);
    }
    if (auto it = kill_memo_.find(key); it != kill_memo_.end()) {
      return it->second;
    }
    bool result = true;
    // A pair the Spoiler cannot break even with free choice of sides
    // survives every play of the remaining rounds.
    for (const Board& a : c.left) {
      for (const Board& b : c.right) {
        if (!ef_separable(a, b, remaining)) {
          result = false;
          break;
        }
      }
      if (!result) break;
    }
    if (result) {
      result = remaining == 1
                   ? final_round_wins(c, pattern[at], nullptr)
                   : some_assignment_wins(c, pattern, at, nullptr, nullptr);
    }
    kill_memo_[key] = result;
    return result;
  }

  /// Minimal rounds to break the pair in the pairwise back-and-forth game,
  /// bounded by `budget`: true when the Spoiler can force a type mismatch.
  auto ef_separable(const Board& a0, const Board& b0, int budget) -> bool {
    if (!matches(a0, b0)) return true;
    if (budget == 0) return false;
    const Board a = truncate_gaps(a0, budget);
    const Board b = truncate_gaps(b0, budget);
    const std::string ta = a.text();
    const std::string tb = b.text();
    std::string key = ta <= tb ? ta + '|' + tb : tb + '|' + ta;
    key += '#';
    key += std::to_string(budget);
    if (auto it = ef_memo_.find(key); it != ef_memo_.end()) {
      return it->second;
    }
    bool result = false;
    for (int mover_is_b = 0; mover_is_b < 2 && !result; ++mover_is_b) {
      const Board& mover = mover_is_b == 0 ? a : b;
      const Board& other = mover_is_b == 0 ? b : a;
      const auto responses = expanded_placements({other}, budget - 1);
      for (const Candidate& cand : candidate_moves(mover, budget - 1)) {
        bool all = true;
        for (const Board& resp : responses) {
          if (!ef_separable(cand.moved, resp, budget - 1)) {
            all = false;
            break;
          }
        }
        if (all) {
          result = true;
          break;
        }
      }
    }
    ef_memo_[key] = result;
    return result;
  }

  /// Replays one optimal line of a pattern already known to kill all root
  /// components, collecting the per-round moves.
  auto reconstruct(const std::vector<Component>& roots, const Pattern& pattern)
      -> std::vector<VariationRound> {
    std::vector<VariationRound> out;
    std::vector<Component> live = roots;
    for (std::size_t at = 0; at < pattern.size() && !live.empty(); ++at) {
      VariationRound round;
      round.side = pattern[at];
      std::vector<Component> next;
      for (const Component& c : live) {
        if (pattern.size() - at == 1) {
          final_round_wins(c, pattern[at], &round.moves);
        } else {
          std::vector<Component> successors;
          some_assignment_wins(c, pattern, at, &round.moves, &successors);
          next.insert(next.end(), successors.begin(), successors.end());
        }
      }
      out.push_back(std::move(round));
      live = std::move(next);
    }
    return out;
  }

 private:
  /// The last round decouples: every board on the moved side must reach a
  /// type no placement on any of its partners can reach, and distinct boards
  /// constrain distinct moves.
  auto final_round_wins(const Component& c, Side side, MoveList* moves_out)
      -> bool {
    const auto& movers = side == Side::exists ? c.left : c.right;
    const auto& others = side == Side::exists ? c.right : c.left;
    std::vector<std::set<AtomicType>> reachable;
    reachable.reserve(others.size());
    for (const Board& o : others) {
      std::set<AtomicType> types;
      for (const Board& p : all_placements(o)) types.insert(atomic_type(p));
      reachable.push_back(std::move(types));
    }
    for (const Board& m : movers) {
      const Candidate* breaker = nullptr;
      const auto candidates = candidate_moves(m, 0);
      for (const Candidate& cand : candidates) {
        const AtomicType type = atomic_type(cand.moved);
        bool escapes = true;
        for (const auto& types : reachable) {
          if (types.count(type) != 0) {
            escapes = false;
            break;
          }
        }
        if (escapes) {
          breaker = &cand;
          break;
        }
      }
      if (breaker == nullptr) return false;
      if (moves_out != nullptr) {
        moves_out->emplace_back(m.text(), breaker->position);
      }
    }
    return true;
  }

  /// Searches the per-class move assignments of one round (Cartesian product
  /// of the per-board candidate lists) for one whose successor components
  /// are all killable by the rest of the pattern.
  auto some_assignment_wins(const Component& c, const Pattern& pattern,
                            std::size_t at, MoveList* moves_out,
                            std::vector<Component>* next_out) -> bool {
    const Side side = pattern[at];
    const int horizon = static_cast<int>(pattern.size() - at) - 1;
    const auto& movers = side == Side::exists ? c.left : c.right;
    const auto& others = side == Side::exists ? c.right : c.left;
    const std::vector<Board> expanded = expanded_placements(others, horizon);
    // A candidate whose own successor component already resists the rest of
    // the pattern cannot take part in any winning assignment: joint moves
    // only add boards next to it, and killability is antitone in adding
    // boards. Filtering per mover keeps the product over live choices only.
    std::vector<std::vector<Candidate>> options;
    options.reserve(movers.size());
    for (const Board& m : movers) {
      std::vector<Candidate> viable;
      for (Candidate& cand : candidate_moves(m, horizon)) {
        const auto alone = next_components({cand.moved}, expanded, side);
        bool ok = true;
        for (const Component& sub : alone) {
          if (!killable(sub, pattern, at + 1)) {
            ok = false;
            break;
          }
        }
        if (ok) viable.push_back(std::move(cand));
      }
      if (viable.empty()) return false;
      options.push_back(std::move(viable));
    }
    std::vector<std::size_t> pick(movers.size(), 0);
    while (true) {
      std::vector<Board> moved;
      moved.reserve(movers.size());
      for (std::size_t i = 0; i < pick.size(); ++i) {
        moved.push_back(options[i][pick[i]].moved);
      }
      auto successors = next_components(std::move(moved), expanded, side);
      bool all = true;
      for (const Component& sub : successors) {
        if (!killable(sub, pattern, at + 1)) {
          all = false;
          break;
        }
      }
      if (all) {
        if (moves_out != nullptr) {
          for (std::size_t i = 0; i < pick.size(); ++i) {
            moves_out->emplace_back(movers[i].text(),
                                    options[i][pick[i]].position);
          }
        }
        if (next_out != nullptr) *next_out = std::move(successors);
        return true;
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) {
        pick[i] = 0;
        ++i;
      }
      if (i == pick.size()) return false;
    }
  }

  auto next_components(std::vector<Board> moved,
                       const std::vector<Board>& expanded, Side side)
      -> std::vector<Component> {
    std::sort(moved.begin(), moved.end());
    moved.erase(std::unique(moved.begin(), moved.end()), moved.end());
    const std::vector<Board>& new_left = side == Side::exists ? moved : expanded;
    const std::vector<Board>& new_right =
        side == Side::exists ? expanded : moved;
    if (prune_) {
      PruneResult pruned = prune(BoardSet(new_left), BoardSet(new_right));
      return decompose(pruned.left.boards(), pruned.right.boards());
    }
    return decompose(new_left, new_right);
  }

  bool prune_;
  std::unordered_map<std::string, bool> kill_memo_;
  std::unordered_map<std::string, bool> ef_memo_;
};

auto is_alternating(const Pattern& p) -> bool {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i] == p[i + 1]) return false;
  }
  return true;
}

/// All side sequences of the given length honoring a forced first side,
/// alternating sequences first and lexicographic (exists before forall)
/// within each group. Alternating prefixes are where winning lines live, so
/// trying them first finds witnesses before universal-heavy refutations.
auto patterns_of(int length, std::optional<Side> first)
    -> std::vector<Pattern> {
  std::vector<Pattern> out;
  if (length >= 30) {
    throw_resource("side-sequence search over " + std::to_string(length) +
                   " rounds is out of reach");
  }
  for (unsigned code = 0; code < (1u << length); ++code) {
    Pattern p(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
      const bool forall = ((code >> (length - 1 - i)) & 1u) != 0;
      p[static_cast<std::size_t>(i)] = forall ? Side::forall : Side::exists;
    }
    if (first.has_value() && p.front() != *first) continue;
    out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Pattern& a, const Pattern& b) {
                     return is_alternating(a) && !is_alternating(b);
                   });
  return out;
}

}  // namespace

auto solver_caps() -> SolverCaps {
  const char* env = std::getenv("MSQ_CAPS");
  if (env == nullptr || *env == '\0') return SolverCaps{};
  return parse_caps(env);
}

auto solve_ms(const BoardSet& left, const BoardSet& right, int max_rounds,
              std::optional<Side> first_side, bool prune_after) -> MsValue {
  if (max_rounds < 0) throw_usage("max_rounds must be nonnegative");
  const SolverCaps caps = solver_caps();
  const auto root_left = canonical_side(left, max_rounds);
  const auto root_right = canonical_side(right, max_rounds);
  check_caps(root_left, root_right, max_rounds, caps);
  const auto components = decompose(root_left, root_right);
  if (components.empty()) return MsValue{true, 0, {}, {}};
  ExactSolver solver(prune_after);
  for (int target = 1; target <= max_rounds; ++target) {
    for (const Pattern& pattern : patterns_of(target, first_side)) {
      bool all = true;
      for (const Component& c : components) {
        if (!solver.killable(c, pattern, 0)) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      MsValue value;
      value.winnable = true;
      value.rounds = target;
      value.pattern = pattern;
      value.variation = solver.reconstruct(components, pattern);
      return value;
    }
  }
  return MsValue{};
}

auto solve_ef(const BoardSet& left, const BoardSet& right, int max_rounds)
    -> std::optional<int> {
  if (max_rounds < 0) throw_usage("max_rounds must be nonnegative");
  const SolverCaps caps = solver_caps();
  const auto root_left = canonical_side(left, max_rounds);
  const auto root_right = canonical_side(right, max_rounds);
  check_caps(root_left, root_right, max_rounds, caps);
  ExactSolver solver(true);
  int value = 0;
  for (const Board& a : root_left) {
    for (const Board& b : root_right) {
      int pair_value = -1;
      for (int r = 0; r <= max_rounds; ++r) {
        if (solver.ef_separable(a, b, r)) {
          pair_value = r;
          break;
        }
      }
      if (pair_value < 0) return std::nullopt;
      value = std::max(value, pair_value);
    }
  }
  return value;
}

}  // namespace msq
