#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace msq {

enum class BoardKind : std::uint8_t { order, bits };

/// A pebbled structure: either a finite linear order with endpoint constants
/// or a binary string (a linear order with endpoint constants and a unary
/// bit predicate). Positions are 0-indexed; min is position 0 and max is
/// position size-1. Pebbles are stored in the order they were placed and may
/// repeat positions.
class Board {
 public:
  /// Linear order of the given length (number of edges); it has
  /// `length + 1` elements.
  static auto order(int length) -> Board;

  /// Binary string board over characters '0'/'1'; one position per
  /// character.
  static auto bits(const std::string& content) -> Board;

  auto kind() const -> BoardKind { return kind_; }

  /// Number of elements in the universe.
  auto size() const -> int { return size_; }

  /// Number of edges (size - 1); the natural measure for linear orders.
  auto length() const -> int { return size_ - 1; }

  auto pebbles() const -> const std::vector<int>& { return pebbles_; }

  /// Bit at a position; boards of kind order report 0 everywhere.
  auto bit_at(int position) const -> int;

  /// The string content ('0'/'1' characters); empty for orders.
  auto content() const -> const std::string& { return content_; }

  /// Copy of this board with one additional pebble.
  auto with_pebble(int position) const -> Board;

  /// Canonical text form, e.g. "L5:2,4" or "S0110:1". Doubles as a stable
  /// identifier in traces and reports.
  auto text() const -> std::string;

  auto operator<=>(const Board&) const = default;

 private:
  Board(BoardKind kind, int size, std::string content)
      : kind_(kind), size_(size), content_(std::move(content)) {}

  BoardKind kind_;
  int size_;
  std::string content_;     // empty for kind order
  std::vector<int> pebbles_;
};

/// The atomic type of a pebbled board: the labels min, p1..pk, max sorted by
/// position, equal positions grouped, with the group's bit appended for
/// string boards. Two boards match exactly when their types are equal.
using AtomicType = std::string;

auto atomic_type(const Board& b) -> AtomicType;

/// Whether two boards have the same atomic configuration: identical relative
/// order and coincidence pattern of min, max, and same-index pebbles, and
/// identical bits at those points. Implemented by direct pairwise
/// comparison, independently of the type serialization. Boards with
/// different pebble counts never match.
auto matches(const Board& a, const Board& b) -> bool;

/// All single-pebble extensions of a board, one per position.
auto all_placements(const Board& b) -> std::vector<Board>;

/// Canonical representative of a linear order for the next `rounds_left`
/// rounds: every gap between consecutive labels (min, pebbles, max) is
/// capped at 2^rounds_left and positions are renumbered. Boards that agree
/// after capping cannot be told apart in that many further rounds, so sets
/// of boards may be deduplicated this way without changing game outcomes.
/// The atomic type is preserved. String boards are returned unchanged.
auto truncate_gaps(const Board& b, int rounds_left) -> Board;

/// A duplicate-free, canonically ordered set of boards.
class BoardSet {
 public:
  BoardSet() = default;
  explicit BoardSet(std::vector<Board> boards);

  auto boards() const -> const std::vector<Board>& { return boards_; }
  auto size() const -> int { return static_cast<int>(boards_.size()); }
  auto empty() const -> bool { return boards_.empty(); }
  auto begin() const { return boards_.begin(); }
  auto end() const { return boards_.end(); }

  auto operator<=>(const BoardSet&) const = default;

 private:
  std::vector<Board> boards_;
};

/// Removes from each side every board whose type matches no board on the
/// other side (one simultaneous pass; removal cannot create new orphans).
struct PruneResult {
  BoardSet left;
  BoardSet right;
  std::vector<Board> dropped_left;
  std::vector<Board> dropped_right;
};

auto prune(const BoardSet& left, const BoardSet& right) -> PruneResult;

struct Instance {
  BoardSet left;
  BoardSet right;
};

/// Left side {L_1..L_ell}, right side {L_(ell+1)..L_max_len}. max_len
/// defaults to 2*ell + 2 when <= 0.
auto make_order_instance(int ell, int max_len = -1) -> Instance;

/// All length-n binary strings not in `targets`. Guarded by a cap on n
/// (default 20) because the result has 2^n - |targets| elements.
auto string_complement(const std::vector<std::string>& targets, int n,
                       int cap = 20) -> std::vector<std::string>;

}  // namespace msq
