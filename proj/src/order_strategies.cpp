#include "msq/order_strategies.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <string>
#include <utility>

#include "msq/error.hpp"

namespace msq {

namespace {

void check_ell(int ell) {
  if (ell < 1) throw_domain("ell must be >= 1, got " + std::to_string(ell));
}

auto q_forall(int ell) -> int;

auto q_exists(int ell) -> int {
  if (ell == 1) return 2;
  return q_forall((ell + 1) / 2) + 1;
}

auto q_forall(int ell) -> int {
  if (ell == 1) return 1;
  if (ell == 2) return 2;
  return q_exists(ell / 2) + 1;
}

auto q_exists_fast(int ell) -> int {
  if (ell <= 2) return 2;
  if (ell <= 4) return 3;
  return 2 + q_exists_fast((ell + 1) / 4);
}

auto q_forall_fast(int ell) -> int {
  if (ell == 1) return 1;
  if (ell == 2) return 2;
  return 2 + q_forall_fast((ell + 2) / 4);
}

constexpr int dummy_position = 0;

auto midpoint(int lo, int hi) -> int { return lo + (hi - lo) / 2; }

}  // namespace

auto rank(int ell) -> int {
  check_ell(ell);
  return static_cast<int>(std::bit_width(static_cast<unsigned>(ell)));
}

auto q_star(int ell, StartChoice side) -> int {
  check_ell(ell);
  switch (side) {
    case StartChoice::exists:
      return q_exists(ell);
    case StartChoice::forall:
      return q_forall(ell);
    case StartChoice::best:
      return std::min(q_exists(ell), q_forall(ell));
  }
  throw_domain("bad side");
}

auto q_star_fast(int ell, StartChoice side) -> int {
  check_ell(ell);
  switch (side) {
    case StartChoice::exists:
      return q_exists_fast(ell);
    case StartChoice::forall:
      return q_forall_fast(ell);
    case StartChoice::best:
      return std::min(q_exists_fast(ell), q_forall_fast(ell));
  }
  throw_domain("bad side");
}

auto pattern_of(int ell, Side side) -> Pattern {
  int q = q_star(ell, side == Side::exists ? StartChoice::exists
                                           : StartChoice::forall);
  Pattern p;
  p.reserve(q);
  Side cur = side;
  for (int i = 0; i + 1 < q; ++i) {
    p.push_back(cur);
    cur = flip(cur);
  }
  p.push_back(Side::forall);
  return p;
}

auto alternating_pattern(int ell) -> Pattern {
  int q = q_star(ell);
  Pattern p;
  p.reserve(q);
  Side cur = q % 2 == 1 ? Side::forall : Side::exists;
  for (int i = 0; i < q; ++i) {
    p.push_back(cur);
    cur = flip(cur);
  }
  return p;
}

auto best_alternating_side(int ell) -> Side {
  int q = q_star(ell);
  Side side = q % 2 == 1 ? Side::forall : Side::exists;
  int qs = q_star(ell, side == Side::exists ? StartChoice::exists
                                            : StartChoice::forall);
  if (qs != q)
    throw_domain("no alternating pattern of optimal length for ell=" +
                 std::to_string(ell));
  return side;
}

auto Anchor::resolve(const Board& b) const -> int {
  switch (kind) {
    case Kind::board_min:
      return 0;
    case Kind::board_max:
      return b.size() - 1;
    case Kind::pebble:
      if (round < 1 || round > static_cast<int>(b.pebbles().size()))
        throw_domain("anchor pebble from round " + std::to_string(round) +
                     " is not on the board");
      return b.pebbles()[round - 1];
  }
  throw_domain("bad anchor");
}

namespace {

/// Node of the recursive midpoint plan. Base games handle interval targets
/// (1, forall), (2, forall) and (1, exists); every other target splits at
/// the midpoint and routes each board to the child interval that is still
/// longer than the child's target.
class CmaNode {
 public:
  CmaNode(int ell, Side side, Anchor lo, Anchor hi, std::vector<int> rounds)
      : ell_(ell),
        side_(side),
        lo_(lo),
        hi_(hi),
        rounds_(std::move(rounds)) {
    int need = q_star(ell_, side_ == Side::exists ? StartChoice::exists
                                                  : StartChoice::forall);
    if (static_cast<int>(rounds_.size()) != need)
      throw_domain("plan for ell=" + std::to_string(ell_) + " needs " +
                   std::to_string(need) + " rounds, got " +
                   std::to_string(rounds_.size()));
    if (side_ == Side::forall && ell_ == 1) {
      kind_ = Kind::single_forall;
    } else if (side_ == Side::forall && ell_ == 2) {
      kind_ = Kind::double_forall;
    } else if (side_ == Side::exists && ell_ == 1) {
      kind_ = Kind::padded_forall;
    } else {
      kind_ = Kind::split;
      if (side_ == Side::exists) {
        target_lo_ = ell_ / 2;
        target_hi_ = (ell_ + 1) / 2;
      } else {
        target_lo_ = (ell_ - 1) / 2;
        target_hi_ = ell_ / 2;
      }
      Side child_side = flip(side_);
      std::vector<int> rest(rounds_.begin() + 1, rounds_.end());
      Anchor split = Anchor::at_round(rounds_[0]);
      child_hi_ = std::make_unique<CmaNode>(target_hi_, child_side, split, hi_,
                                            rest);
      child_lo_ = std::make_unique<CmaNode>(
          target_lo_, child_side, lo_, split,
          embed_rounds(pattern_of(target_lo_, child_side),
                       pattern_of(target_hi_, child_side), rest));
    }
  }

  auto move(const Board& b, int round) const -> std::optional<int> {
    if (rounds_.empty() || round < rounds_[0]) return std::nullopt;
    int lo = lo_.resolve(b);
    int hi = hi_.resolve(b);
    if (round == rounds_[0]) {
      // The length-1 existential base has no real first move; the pebble
      // goes on the interval's lower anchor so that later routing by pebble
      // position still identifies the branch.
      if (kind_ == Kind::padded_forall) return lo;
      return midpoint(lo, hi);
    }
    switch (kind_) {
      case Kind::single_forall:
        return std::nullopt;
      case Kind::padded_forall:
        if (round == rounds_[1]) return midpoint(lo, hi);
        return std::nullopt;
      case Kind::double_forall: {
        if (round != rounds_[1]) return std::nullopt;
        int first = b.pebbles()[rounds_[0] - 1];
        int second = first > lo + 1 ? first - 1 : first + 1;
        if (second <= lo || second >= hi) second = first;
        return second;
      }
      case Kind::split: {
        const CmaNode& child = route(b, lo, round);
        return child.move(b, round);
      }
    }
    return std::nullopt;
  }

 private:
  enum class Kind : std::uint8_t {
    single_forall,
    double_forall,
    padded_forall,
    split
  };

  /// Global rounds for the shorter child: greedily match its pattern as a
  /// subsequence of the longer child's.
  static auto embed_rounds(const Pattern& sub, const Pattern& sup,
                           const std::vector<int>& sup_rounds)
      -> std::vector<int> {
    std::vector<int> out;
    out.reserve(sub.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < sup.size() && j < sub.size(); ++i) {
      if (sub[j] == sup[i]) {
        out.push_back(sup_rounds[i]);
        ++j;
      }
    }
    if (j != sub.size()) throw_domain("child pattern does not embed");
    return out;
  }

  auto route(const Board& b, int lo, int round) const -> const CmaNode& {
    int split_round = rounds_[0];
    int split_pos = b.pebbles()[split_round - 1];
    int g2 = rounds_[1];
    bool take_lo = false;
    if (round == g2) {
      int gap_lo = split_pos - lo;
      take_lo = side_ == Side::exists ? gap_lo > target_lo_
                                      : gap_lo <= target_lo_;
    } else {
      take_lo = b.pebbles()[g2 - 1] < split_pos;
    }
    return take_lo ? *child_lo_ : *child_hi_;
  }

  int ell_;
  Side side_;
  Anchor lo_;
  Anchor hi_;
  std::vector<int> rounds_;
  Kind kind_ = Kind::split;
  int target_lo_ = 0;
  int target_hi_ = 0;
  std::unique_ptr<CmaNode> child_lo_;
  std::unique_ptr<CmaNode> child_hi_;
};

class CmaPlan final : public IntervalPlan {
 public:
  CmaPlan(int ell, Side side, Anchor lo, Anchor hi, std::vector<int> rounds)
      : root_(ell, side, lo, hi, rounds), rounds_(std::move(rounds)) {}

  auto move(const Board& b, int round) const -> std::optional<int> override {
    return root_.move(b, round);
  }

  auto rounds() const -> const std::vector<int>& override { return rounds_; }

 private:
  CmaNode root_;
  std::vector<int> rounds_;
};

/// Plan for separating interval length exactly ell from every other length.
/// Round one pebbles the interval max on the boards of one branch while the
/// other branch's strategy leads; afterwards the branch of a board is read
/// off its first pebble.
class OneVsAllPlan final : public IntervalPlan {
 public:
  OneVsAllPlan(int ell, Anchor lo, Anchor hi, std::vector<int> rounds)
      : ell_(ell), lo_(lo), hi_(hi), rounds_(std::move(rounds)) {
    check_ell(ell_);
    int total = one_vs_all_rounds(ell_);
    if (static_cast<int>(rounds_.size()) != total)
      throw_domain("one-vs-all plan for ell=" + std::to_string(ell_) +
                   " needs " + std::to_string(total) + " rounds, got " +
                   std::to_string(rounds_.size()));
    int q = q_star(ell_);
    Side upper_side = best_alternating_side(ell_);
    bool upper_leads = upper_side == Side::forall;
    std::vector<int> upper_rounds(
        rounds_.begin() + (upper_leads ? 0 : 1),
        rounds_.begin() + (upper_leads ? q : q + 1));
    upper_ = std::make_unique<CmaPlan>(ell_, upper_side, lo_, hi_,
                                       std::move(upper_rounds));
    if (ell_ >= 2) {
      int q_low = q_star(ell_ - 1);
      Side lower_side = best_alternating_side(ell_ - 1);
      std::vector<int> lower_rounds(
          rounds_.begin() + (upper_leads ? 1 : 0) + (q - q_low),
          rounds_.begin() + (upper_leads ? q + 1 : q));
      lower_ = std::make_unique<CmaPlan>(ell_ - 1, lower_side, lo_, hi_,
                                         std::move(lower_rounds));
    }
    max_branch_is_upper_ = !upper_leads;
  }

  auto move(const Board& b, int round) const -> std::optional<int> override {
    if (round < rounds_[0]) return std::nullopt;
    int lo = lo_.resolve(b);
    int hi = hi_.resolve(b);
    if (round == rounds_[0]) {
      int len = hi - lo;
      bool max_branch = max_branch_is_upper_ ? len > ell_ : len < ell_;
      if (max_branch) return hi;
      const IntervalPlan* leader = max_branch_is_upper_ ? lower_.get()
                                                        : upper_.get();
      if (leader == nullptr) return dummy_position;
      return leader->move(b, round).value_or(dummy_position);
    }
    const IntervalPlan* branch =
        in_max_branch(b, hi) == max_branch_is_upper_ ? upper_.get()
                                                     : lower_.get();
    if (branch == nullptr) return std::nullopt;
    return branch->move(b, round);
  }

  auto rounds() const -> const std::vector<int>& override { return rounds_; }

 private:
  auto in_max_branch(const Board& b, int hi) const -> bool {
    return b.pebbles()[rounds_[0] - 1] == hi;
  }

  int ell_;
  Anchor lo_;
  Anchor hi_;
  std::vector<int> rounds_;
  std::unique_ptr<IntervalPlan> upper_;
  std::unique_ptr<IntervalPlan> lower_;
  bool max_branch_is_upper_ = false;
};

}  // namespace

auto make_cma_plan(int ell, Side side, Anchor lo, Anchor hi,
                   std::vector<int> rounds) -> std::unique_ptr<IntervalPlan> {
  check_ell(ell);
  return std::make_unique<CmaPlan>(ell, side, lo, hi, std::move(rounds));
}

auto make_one_vs_all_plan(int ell, Anchor lo, Anchor hi,
                          std::vector<int> rounds)
    -> std::unique_ptr<IntervalPlan> {
  return std::make_unique<OneVsAllPlan>(ell, lo, hi, std::move(rounds));
}

auto one_vs_all_rounds(int ell) -> int {
  check_ell(ell);
  int q = q_star(ell);
  return q % 2 == 0 ? q + 1 : q + 2;
}

namespace {

class PlanStrategy final : public Strategy {
 public:
  PlanStrategy(std::unique_ptr<IntervalPlan> plan, Pattern pattern,
               std::string name)
      : plan_(std::move(plan)),
        pattern_(std::move(pattern)),
        name_(std::move(name)) {}

  auto pattern() const -> const Pattern& override { return pattern_; }

  auto choose(const Board& b, int round) const -> int override {
    return plan_->move(b, round).value_or(dummy_position);
  }

  auto name() const -> std::string override { return name_; }

 private:
  std::unique_ptr<IntervalPlan> plan_;
  Pattern pattern_;
  std::string name_;
};

auto iota_rounds(int n) -> std::vector<int> {
  std::vector<int> r(n);
  for (int i = 0; i < n; ++i) r[i] = i + 1;
  return r;
}

}  // namespace

auto cma_strategy(int ell, Side first_side) -> std::shared_ptr<Strategy> {
  check_ell(ell);
  Pattern pattern = pattern_of(ell, first_side);
  auto plan = make_cma_plan(ell, first_side, Anchor::min(), Anchor::max(),
                            iota_rounds(static_cast<int>(pattern.size())));
  std::ostringstream name;
  name << "cma(ell=" << ell << ", side=" << side_char(first_side) << ")";
  return std::make_shared<PlanStrategy>(std::move(plan), std::move(pattern),
                                        name.str());
}

auto order_one_vs_all_strategy(int ell) -> std::shared_ptr<Strategy> {
  check_ell(ell);
  int total = one_vs_all_rounds(ell);
  Pattern pattern;
  pattern.reserve(total);
  for (int i = 0; i < total; ++i)
    pattern.push_back(i % 2 == 0 ? Side::forall : Side::exists);
  auto plan = make_one_vs_all_plan(ell, Anchor::min(), Anchor::max(),
                                   iota_rounds(total));
  std::ostringstream name;
  name << "order-one-vs-all(ell=" << ell << ")";
  return std::make_shared<PlanStrategy>(std::move(plan), std::move(pattern),
                                        name.str());
}

namespace {

/// Greedy subsequence embedding of a sub-pattern into the master; 1-based
/// global rounds of the matches.
auto embed_into_master(const Pattern& sub, const Pattern& master)
    -> std::vector<int> {
  std::vector<int> out;
  out.reserve(sub.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < master.size() && j < sub.size(); ++i) {
    if (sub[j] == master[i]) {
      out.push_back(static_cast<int>(i) + 1);
      ++j;
    }
  }
  if (j != sub.size()) throw_domain("sub-pattern does not embed into master");
  return out;
}

/// True when `b` descends from `origin`: same structure and origin's
/// pebbles are a prefix of b's.
auto descends_from(const Board& b, const Board& origin) -> bool {
  if (b.kind() != origin.kind() || b.size() != origin.size()) return false;
  if (b.kind() == BoardKind::bits && b.content() != origin.content())
    return false;
  const auto& bp = b.pebbles();
  const auto& op = origin.pebbles();
  if (op.size() > bp.size()) return false;
  return std::equal(op.begin(), op.end(), bp.begin());
}

class CombinedStrategy final : public Strategy {
 public:
  CombinedStrategy(std::vector<SubGame> subgames, Pattern master)
      : subgames_(std::move(subgames)), master_(std::move(master)) {
    for (const auto& sub : subgames_) {
      round_maps_.push_back(
          embed_into_master(sub.strategy->pattern(), master_));
    }
    for (std::size_t i = 0; i < subgames_.size(); ++i) {
      for (std::size_t j = 0; j < subgames_.size(); ++j) {
        if (i == j) continue;
        for (const auto& a : subgames_[i].instance.left.boards())
          for (const auto& b : subgames_[j].instance.right.boards())
            if (matches(a, b))
              throw_domain(
                  "parallel sub-games are not independent: " + a.text() +
                  " matches " + b.text());
      }
    }
  }

  auto pattern() const -> const Pattern& override { return master_; }

  auto choose(const Board& b, int round) const -> int override {
    for (std::size_t i = 0; i < subgames_.size(); ++i) {
      const auto& inst = subgames_[i].instance;
      const Board* origin = nullptr;
      auto consider = [&](const Board& o) {
        if (descends_from(b, o) &&
            (origin == nullptr ||
             o.pebbles().size() > origin->pebbles().size()))
          origin = &o;
      };
      for (const auto& o : inst.left.boards()) consider(o);
      for (const auto& o : inst.right.boards()) consider(o);
      if (origin == nullptr) continue;
      const auto& map = round_maps_[i];
      auto it = std::find(map.begin(), map.end(), round);
      if (it == map.end()) return dummy_position;
      int local = static_cast<int>(it - map.begin()) + 1;
      return subgames_[i].strategy->choose(project(b, *origin, map, round),
                                           local);
    }
    return dummy_position;
  }

  auto name() const -> std::string override {
    std::ostringstream out;
    out << "parallel(";
    for (std::size_t i = 0; i < subgames_.size(); ++i) {
      if (i > 0) out << ", ";
      out << subgames_[i].strategy->name();
    }
    out << ")";
    return out.str();
  }

 private:
  /// Rebuilds `b` as the sub-game sees it at this round: the origin's
  /// pebbles plus those placed at the sub-game's earlier global rounds.
  static auto project(const Board& b, const Board& origin,
                      const std::vector<int>& map, int round) -> Board {
    Board out = origin;
    std::size_t base = origin.pebbles().size();
    for (int g : map) {
      if (g >= round) break;
      out = out.with_pebble(b.pebbles()[base + g - 1]);
    }
    return out;
  }

  std::vector<SubGame> subgames_;
  Pattern master_;
  std::vector<std::vector<int>> round_maps_;
};

}  // namespace

auto parallel_combine(std::vector<SubGame> subgames, Pattern master)
    -> std::shared_ptr<Strategy> {
  if (subgames.empty()) throw_domain("parallel_combine needs a sub-game");
  return std::make_shared<CombinedStrategy>(std::move(subgames),
                                            std::move(master));
}

}  // namespace msq
