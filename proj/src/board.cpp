#include "msq/board.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "msq/error.hpp"

namespace msq {

auto Board::order(int length) -> Board {
  if (length < 1) throw_domain("order length must be >= 1");
  return Board(BoardKind::order, length + 1, "");
}

auto Board::bits(const std::string& content) -> Board {
  if (content.empty()) throw_domain("string board must be nonempty");
  for (char c : content) {
    if (c != '0' && c != '1') throw_domain("string board characters must be 0 or 1");
  }
  return Board(BoardKind::bits, static_cast<int>(content.size()), content);
}

auto Board::bit_at(int position) const -> int {
  if (kind_ == BoardKind::order) return 0;
  return content_[static_cast<std::size_t>(position)] == '1' ? 1 : 0;
}

auto Board::with_pebble(int position) const -> Board {
  if (position < 0 || position >= size_) throw_domain("pebble position out of range");
  Board next = *this;
  next.pebbles_.push_back(position);
  return next;
}

auto Board::text() const -> std::string {
  std::ostringstream out;
  if (kind_ == BoardKind::order) {
    out << "L" << length();
  } else {
    out << "S" << content_;
  }
  if (!pebbles_.empty()) {
    out << ":";
    for (std::size_t i = 0; i < pebbles_.size(); ++i) {
      if (i > 0) out << ",";
      out << pebbles_[i];
    }
  }
  return out.str();
}

namespace {

struct Label {
  int position;
  int rank;  // 0 = min, 1..k = pebbles, k+1 = max
  std::string name;
};

auto labeled_points(const Board& b) -> std::vector<Label> {
  std::vector<Label> labels;
  const auto& pebbles = b.pebbles();
  labels.push_back({0, 0, "min"});
  for (std::size_t i = 0; i < pebbles.size(); ++i) {
    labels.push_back({pebbles[i], static_cast<int>(i) + 1,
                      "p" + std::to_string(i + 1)});
  }
  labels.push_back({b.size() - 1, static_cast<int>(pebbles.size()) + 1, "max"});
  std::stable_sort(labels.begin(), labels.end(),
                   [](const Label& a, const Label& c) {
                     if (a.position != c.position) return a.position < c.position;
                     return a.rank < c.rank;
                   });
  return labels;
}

}  // namespace

auto atomic_type(const Board& b) -> AtomicType {
  auto labels = labeled_points(b);
  std::ostringstream out;
  std::size_t i = 0;
  bool first_group = true;
  while (i < labels.size()) {
    std::size_t j = i;
    while (j < labels.size() && labels[j].position == labels[i].position) ++j;
    if (!first_group) out << "<";
    for (std::size_t k = i; k < j; ++k) {
      if (k > i) out << "=";
      out << labels[k].name;
    }
    if (b.kind() == BoardKind::bits) out << ":" << b.bit_at(labels[i].position);
    first_group = false;
    i = j;
  }
  return out.str();
}

auto matches(const Board& a, const Board& b) -> bool {
  if (a.pebbles().size() != b.pebbles().size()) return false;
  auto points = [](const Board& x) {
    std::vector<int> pts;
    pts.push_back(0);
    for (int p : x.pebbles()) pts.push_back(p);
    pts.push_back(x.size() - 1);
    return pts;
  };
  auto pa = points(a);
  auto pb = points(b);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    for (std::size_t j = i + 1; j < pa.size(); ++j) {
      auto cmp_a = pa[i] <=> pa[j];
      auto cmp_b = pb[i] <=> pb[j];
      if (cmp_a != cmp_b) return false;
    }
  }
  if (a.kind() != b.kind()) return false;
  if (a.kind() == BoardKind::bits) {
    for (std::size_t i = 0; i < pa.size(); ++i) {
      if (a.bit_at(pa[i]) != b.bit_at(pb[i])) return false;
    }
  }
  return true;
}

auto all_placements(const Board& b) -> std::vector<Board> {
  std::vector<Board> result;
  result.reserve(static_cast<std::size_t>(b.size()));
  for (int p = 0; p < b.size(); ++p) result.push_back(b.with_pebble(p));
  return result;
}

auto truncate_gaps(const Board& b, int rounds_left) -> Board {
  if (b.kind() != BoardKind::order) return b;
  if (rounds_left < 0) rounds_left = 0;
  int cap = rounds_left >= 24 ? (1 << 24) : (1 << rounds_left);

  std::vector<int> points;
  points.reserve(b.pebbles().size() + 2);
  points.push_back(0);
  points.push_back(b.size() - 1);
  for (int p : b.pebbles()) points.push_back(p);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<int> renumbered(points.size());
  renumbered[0] = 0;
  bool changed = false;
  for (std::size_t i = 1; i < points.size(); ++i) {
    int gap = points[i] - points[i - 1];
    if (gap > cap) {
      gap = cap;
      changed = true;
    }
    renumbered[i] = renumbered[i - 1] + gap;
  }
  if (!changed) return b;

  Board out = Board::order(renumbered.back());
  for (int p : b.pebbles()) {
    auto it = std::lower_bound(points.begin(), points.end(), p);
    out = out.with_pebble(renumbered[static_cast<std::size_t>(
        it - points.begin())]);
  }
  return out;
}

BoardSet::BoardSet(std::vector<Board> boards) : boards_(std::move(boards)) {
  std::sort(boards_.begin(), boards_.end());
  boards_.erase(std::unique(boards_.begin(), boards_.end()), boards_.end());
}

auto prune(const BoardSet& left, const BoardSet& right) -> PruneResult {
  std::unordered_set<AtomicType> left_types;
  std::unordered_set<AtomicType> right_types;
  for (const auto& b : left) left_types.insert(atomic_type(b));
  for (const auto& b : right) right_types.insert(atomic_type(b));

  PruneResult result;
  std::vector<Board> kept_left;
  std::vector<Board> kept_right;
  for (const auto& b : left) {
    if (right_types.contains(atomic_type(b))) {
      kept_left.push_back(b);
    } else {
      result.dropped_left.push_back(b);
    }
  }
  for (const auto& b : right) {
    if (left_types.contains(atomic_type(b))) {
      kept_right.push_back(b);
    } else {
      result.dropped_right.push_back(b);
    }
  }
  result.left = BoardSet(std::move(kept_left));
  result.right = BoardSet(std::move(kept_right));
  return result;
}

auto make_order_instance(int ell, int max_len) -> Instance {
  if (ell < 1) throw_domain("ell must be >= 1");
  if (max_len <= 0) max_len = 2 * ell + 2;
  if (max_len < ell + 1) throw_domain("max_len must be >= ell + 1");
  std::vector<Board> left;
  std::vector<Board> right;
  for (int len = 1; len <= ell; ++len) left.push_back(Board::order(len));
  for (int len = ell + 1; len <= max_len; ++len) right.push_back(Board::order(len));
  return Instance{BoardSet(std::move(left)), BoardSet(std::move(right))};
}

auto string_complement(const std::vector<std::string>& targets, int n, int cap)
    -> std::vector<std::string> {
  if (n < 1) throw_domain("string length must be >= 1");
  if (n > cap) {
    throw_resource("string complement over length " + std::to_string(n) +
                   " exceeds cap " + std::to_string(cap));
  }
  std::unordered_set<std::string> excluded;
  for (const auto& t : targets) {
    if (static_cast<int>(t.size()) != n) {
      throw_domain("complement targets must all have length n");
    }
    excluded.insert(t);
  }
  std::vector<std::string> result;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
      if ((v >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
    }
    if (!excluded.contains(s)) result.push_back(std::move(s));
  }
  return result;
}

}  // namespace msq
