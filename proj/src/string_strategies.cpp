#include "msq/string_strategies.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "msq/bounds.hpp"
#include "msq/error.hpp"
#include "msq/order_strategies.hpp"

namespace msq {

namespace {

// Fallback position for rounds where a board has no scheduled move; pebbling
// min never un-breaks a pair, it can only refine types further.
constexpr int dummy_position = 0;

void check_bit_string(const std::string& w) {
  if (w.empty()) {
    throw_usage("strings must be nonempty");
  }
  for (char c : w) {
    if (c != '0' && c != '1') {
      throw_usage("strings must be over {0,1}, got \"" + w + "\"");
    }
  }
}

void check_params(const StrategyParams& params) {
  if (params.t < 2) {
    throw_usage("radix t must be at least 2, got " + std::to_string(params.t));
  }
  if (!(params.r_real > 2.0)) {
    throw_usage("r_real must be greater than 2");
  }
}

/// Smallest k with t^k >= n.
auto ceil_log(int t, long long n) -> int {
  int k = 0;
  long long power = 1;
  while (power < n) {
    power *= t;
    ++k;
  }
  return k;
}

/// Rounds needed by the longest interval endgame over prefix cut positions
/// 1..n-2; cuts at 0 or n-1 collide with an endpoint and die immediately.
auto endgame_length(int n) -> int {
  int best = 0;
  for (int p = 1; p <= n - 2; ++p) {
    best = std::max(best, one_vs_all_rounds(p));
  }
  return best;
}

/// Separates {w} from {other}: round 1 pebbles the first differing index on
/// w, turning both boards into marked prefixes of different lengths (equal
/// lengths would force equal bits under the pebble). The interval one-vs-all
/// plan on the prefix finishes the job. A cut at an endpoint already
/// mismatches the endpoint coincidence, so the game ends at round 1.
class OneVsOneStrategy final : public Strategy {
 public:
  OneVsOneStrategy(std::string w, std::string other)
      : w_(std::move(w)), other_(std::move(other)), diff_(first_diff(w_, other_)) {
    auto n = static_cast<int>(w_.size());
    pattern_.push_back(Side::exists);
    if (diff_ > 0 && diff_ < n - 1) {
      int k = one_vs_all_rounds(diff_);
      std::vector<int> schedule(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        schedule[static_cast<std::size_t>(i)] = 2 + i;
        pattern_.push_back(i % 2 == 0 ? Side::forall : Side::exists);
      }
      plan_ = make_one_vs_all_plan(diff_, Anchor::min(), Anchor::at_round(1),
                                   std::move(schedule));
    }
  }

  auto pattern() const -> const Pattern& override { return pattern_; }

  auto choose(const Board& b, int round) const -> int override {
    if (round == 1) {
      return diff_;
    }
    if (plan_ == nullptr) {
      return dummy_position;
    }
    return plan_->move(b, round).value_or(dummy_position);
  }

  auto name() const -> std::string override {
    std::ostringstream out;
    out << "string-one-vs-one(n=" << w_.size() << ", diff=" << diff_ << ")";
    return out.str();
  }

 private:
  std::string w_;
  std::string other_;
  int diff_;
  Pattern pattern_;
  std::unique_ptr<IntervalPlan> plan_;
};

/// Shared core of the one-vs-all, many-vs-all, and any-vs-any strategies.
/// Phases, in declared-pattern order:
///   1. preprocessing (many/any only): existential rounds placing each
///      target's pebbles in its own permutation of the low positions, so
///      opponents matching different targets can never re-merge;
///   2. one universal round pebbling every opponent at its first difference
///      from the target its type follows;
///   3. isolation rounds placing each duplicator copy of a target in a
///      distinct permutation, splitting the copies into independent classes;
///   4. parallel interval endgames, one per surviving cut position, each
///      scheduled on the final rounds of one shared alternating tail.
/// Boards are routed to phases by round number and to classes by the atomic
/// type of their phase-prefix pebbles; type equality is exactly the match
/// relation, so every matched opponent finds its class.
class IsolationStrategy final : public Strategy {
 public:
  IsolationStrategy(std::vector<std::string> targets, int preprocessing,
                    int isolation, std::string name)
      : targets_(std::move(targets)),
        pre_rounds_(preprocessing),
        iso_rounds_(isolation),
        name_(std::move(name)) {
    n_ = static_cast<int>(targets_[0].size());
    base_rounds_ = pre_rounds_ + 1 + iso_rounds_;

    for (int i = 0; i < pre_rounds_; ++i) {
      pattern_.push_back(Side::exists);
    }
    pattern_.push_back(Side::forall);
    for (int i = 0; i < iso_rounds_; ++i) {
      pattern_.push_back(Side::exists);
    }
    int tail = endgame_length(n_);
    for (int i = 0; i < tail; ++i) {
      pattern_.push_back(i % 2 == 0 ? Side::forall : Side::exists);
    }

    if (pre_rounds_ > 0) {
      pre_perms_ = permutation_encoder(static_cast<long long>(targets_.size()),
                                       pre_rounds_);
    }
    iso_perms_ = permutation_encoder(n_, iso_rounds_);

    plans_.resize(static_cast<std::size_t>(n_));
    for (int p = 1; p <= n_ - 2; ++p) {
      int k = one_vs_all_rounds(p);
      // Interval plans of different lengths share the tail's final rounds;
      // both k and tail are odd, so every schedule starts on a universal
      // tail round and alternates with it.
      std::vector<int> schedule(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        schedule[static_cast<std::size_t>(i)] = base_rounds_ + (tail - k) + 1 + i;
      }
      plans_[static_cast<std::size_t>(p)] = make_one_vs_all_plan(
          p, Anchor::min(), Anchor::at_round(pre_rounds_ + 1),
          std::move(schedule));
    }

    for (std::size_t c = 0; c < targets_.size(); ++c) {
      target_index_.emplace(targets_[c], static_cast<int>(c));
      Board pre = Board::bits(targets_[c]);
      if (pre_rounds_ > 0) {
        for (int j = 0; j < pre_rounds_; ++j) {
          pre = pre.with_pebble(pre_perms_[c][static_cast<std::size_t>(j)]);
        }
        if (!pre_types_.emplace(atomic_type(pre), static_cast<int>(c)).second) {
          throw_domain("internal: preprocessing permutation classes collide");
        }
      }
      for (int p = 0; p < n_; ++p) {
        Board full = pre.with_pebble(p);
        for (int j = 0; j < iso_rounds_; ++j) {
          full = full.with_pebble(
              iso_perms_[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)]);
        }
        if (!full_types_
                 .emplace(atomic_type(full),
                          std::pair<int, int>{static_cast<int>(c), p})
                 .second) {
          throw_domain("internal: isolation permutation classes collide");
        }
      }
    }
  }

  auto pattern() const -> const Pattern& override { return pattern_; }

  auto choose(const Board& b, int round) const -> int override {
    if (round <= pre_rounds_) {
      auto it = target_index_.find(b.content());
      if (it == target_index_.end()) {
        return dummy_position;
      }
      return pre_perms_[static_cast<std::size_t>(it->second)]
                       [static_cast<std::size_t>(round - 1)];
    }
    if (round == pre_rounds_ + 1) {
      int cls = 0;
      if (pre_rounds_ > 0) {
        auto it = pre_types_.find(atomic_type(prefix_board(b, pre_rounds_)));
        if (it == pre_types_.end()) {
          return dummy_position;
        }
        cls = it->second;
      }
      const std::string& target = targets_[static_cast<std::size_t>(cls)];
      if (b.content().size() != target.size() || b.content() == target) {
        return dummy_position;
      }
      return first_diff(target, b.content());
    }
    if (round <= base_rounds_) {
      if (static_cast<int>(b.pebbles().size()) <= pre_rounds_) {
        return dummy_position;
      }
      int p = b.pebbles()[static_cast<std::size_t>(pre_rounds_)];
      return iso_perms_[static_cast<std::size_t>(p)]
                       [static_cast<std::size_t>(round - pre_rounds_ - 2)];
    }
    auto it = full_types_.find(atomic_type(prefix_board(b, base_rounds_)));
    if (it == full_types_.end()) {
      return dummy_position;
    }
    const auto& plan = plans_[static_cast<std::size_t>(it->second.second)];
    if (plan == nullptr) {
      return dummy_position;
    }
    return plan->move(b, round).value_or(dummy_position);
  }

  auto name() const -> std::string override { return name_; }

 private:
  /// The board reduced to its first `count` pebbles; class routing keys on
  /// the type of this prefix, which later pebbles must not disturb.
  auto prefix_board(const Board& b, int count) const -> Board {
    Board out = Board::bits(b.content());
    auto limit = std::min<std::size_t>(static_cast<std::size_t>(count),
                                       b.pebbles().size());
    for (std::size_t i = 0; i < limit; ++i) {
      out = out.with_pebble(b.pebbles()[i]);
    }
    return out;
  }

  std::vector<std::string> targets_;
  int pre_rounds_;
  int iso_rounds_;
  std::string name_;
  int n_ = 0;
  int base_rounds_ = 0;
  Pattern pattern_;
  std::vector<std::vector<int>> pre_perms_;
  std::vector<std::vector<int>> iso_perms_;
  std::vector<std::unique_ptr<IntervalPlan>> plans_;
  std::unordered_map<std::string, int> target_index_;
  std::unordered_map<AtomicType, int> pre_types_;
  std::unordered_map<AtomicType, std::pair<int, int>> full_types_;
};

/// Validated, sorted, deduplicated copy of a same-length string set.
auto canonical_targets(const std::vector<std::string>& targets, const char* role)
    -> std::vector<std::string> {
  if (targets.empty()) {
    throw_usage(std::string(role) + " set must be nonempty");
  }
  for (const auto& w : targets) {
    check_bit_string(w);
  }
  std::vector<std::string> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& w : sorted) {
    if (w.size() != sorted.front().size()) {
      throw_usage(std::string(role) + " strings must share one length");
    }
  }
  return sorted;
}

}  // namespace

auto first_diff(const std::string& w, const std::string& other) -> int {
  if (w.size() != other.size()) {
    throw_usage("first_diff needs equal lengths, got " +
                std::to_string(w.size()) + " and " +
                std::to_string(other.size()));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != other[i]) {
      return static_cast<int>(i);
    }
  }
  throw_usage("first_diff needs distinct strings");
}

auto hard_pair(int k) -> std::pair<std::string, std::string> {
  if (k < 2) {
    throw_usage("hard_pair needs k >= 2, got " + std::to_string(k));
  }
  if (k > 30) {
    throw_usage("hard_pair limited to k <= 30");
  }
  std::string zeros(static_cast<std::size_t>(1) << (k - 1), '0');
  return {zeros + "10" + zeros, zeros + "01" + zeros};
}

auto permutation_encoder(long long count, int m)
    -> std::vector<std::vector<int>> {
  if (count < 1) {
    throw_usage("permutation_encoder needs count >= 1");
  }
  if (m < 1) {
    throw_usage("permutation_encoder needs m >= 1");
  }
  if (min_m(count) > m) {
    throw_domain(std::to_string(m) + " positions cannot encode " +
                 std::to_string(count) + " classes (m! < count)");
  }
  std::vector<int> current(static_cast<std::size_t>(m));
  std::iota(current.begin(), current.end(), 0);
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    out.push_back(current);
    std::next_permutation(current.begin(), current.end());
  }
  return out;
}

auto string_one_vs_one(const std::string& w, const std::string& other)
    -> std::shared_ptr<Strategy> {
  check_bit_string(w);
  check_bit_string(other);
  return std::make_shared<OneVsOneStrategy>(w, other);
}

auto string_one_vs_all(const std::string& w, const StrategyParams& params)
    -> std::shared_ptr<Strategy> {
  check_bit_string(w);
  check_params(params);
  auto n = static_cast<int>(w.size());
  int m = std::max(ceil_log(params.t, n), min_m(n));
  if (m > n) {
    throw_domain("isolation needs " + std::to_string(m) +
                 " rounds but the strings have only " + std::to_string(n) +
                 " positions");
  }
  std::ostringstream name;
  name << "string-one-vs-all(n=" << n << ", m=" << m << ")";
  return std::make_shared<IsolationStrategy>(std::vector<std::string>{w}, 0, m,
                                             name.str());
}

auto string_many_vs_all(const std::vector<std::string>& targets,
                        const StrategyParams& params)
    -> std::shared_ptr<Strategy> {
  check_params(params);
  auto sorted = canonical_targets(targets, "target");
  auto n = static_cast<int>(sorted.front().size());
  if (n < 63 &&
      sorted.size() >= (static_cast<unsigned long long>(1) << n)) {
    throw_usage("targets must form a strict subset of the length-" +
                std::to_string(n) + " strings");
  }
  if (sorted.size() == 1) {
    return string_one_vs_all(sorted.front(), params);
  }
  auto count = static_cast<long long>(sorted.size());
  int pre = std::max(ceil_log(params.t, count), min_m(count));
  if (pre > n) {
    throw_domain("preprocessing needs " + std::to_string(pre) +
                 " rounds but the strings have only " + std::to_string(n) +
                 " positions; the target set is too dense for its length");
  }
  int iso = std::max(ceil_log(params.t, n), min_m(n));
  std::ostringstream name;
  name << "string-many-vs-all(|A|=" << sorted.size() << ", n=" << n
       << ", m0=" << pre << ", m=" << iso << ")";
  return std::make_shared<IsolationStrategy>(std::move(sorted), pre, iso,
                                             name.str());
}

auto string_any_vs_any(const std::vector<std::string>& targets,
                       const std::vector<std::string>& others,
                       const StrategyParams& params)
    -> std::shared_ptr<Strategy> {
  check_params(params);
  auto sorted = canonical_targets(targets, "target");
  auto sorted_others = canonical_targets(others, "opponent");
  auto n = static_cast<int>(sorted.front().size());
  if (static_cast<int>(sorted_others.front().size()) != n) {
    throw_usage("both sets must share one string length");
  }
  for (const auto& w : sorted) {
    if (std::binary_search(sorted_others.begin(), sorted_others.end(), w)) {
      throw_usage("the two sets must be disjoint, both contain \"" + w + "\"");
    }
  }
  auto count = static_cast<long long>(sorted.size());
  int pre = min_m(count);
  if (n > 1) {
    double log_r_n =
        std::log2(static_cast<double>(n)) / std::log2(params.r_real);
    pre = std::max(
        static_cast<int>(std::ceil(static_cast<double>(n) / log_r_n)), pre);
  }
  if (pre > n) {
    throw_domain("preprocessing needs " + std::to_string(pre) +
                 " rounds but the strings have only " + std::to_string(n) +
                 " positions; the target set is too dense for its length");
  }
  int iso = std::max(ceil_log(params.t, n), min_m(n));
  std::ostringstream name;
  name << "string-any-vs-any(|A|=" << sorted.size() << ", n=" << n
       << ", m0=" << pre << ", m=" << iso << ")";
  return std::make_shared<IsolationStrategy>(std::move(sorted), pre, iso,
                                             name.str());
}

}  // namespace msq
