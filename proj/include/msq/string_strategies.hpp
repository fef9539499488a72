#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "msq/game.hpp"

namespace msq {

/// Tuning knobs for the string-separation strategies. The radix t drives the
/// isolation-round count (larger t, fewer rounds, wider endgame), r_real
/// drives the dense preprocessing count, and prune selects pruned
/// simulation.
struct StrategyParams {
  int t = 3;
  double r_real = 2.5;
  bool prune = true;
};

/// Least index at which two equal-length distinct strings differ.
auto first_diff(const std::string& w, const std::string& other) -> int;

/// The classic difficult pair: two strings of length 2^k + 2 that are all
/// zeros except for a single one at adjacent central positions. Separating
/// them takes logarithmically many rounds.
auto hard_pair(int k) -> std::pair<std::string, std::string>;

/// First `count` permutations of {0..m-1} in lexicographic order; requires
/// m! >= count.
auto permutation_encoder(long long count, int m)
    -> std::vector<std::vector<int>>;

/// Strategy separating {w} from {other}: one existential pebble at the
/// first differing index, then the interval one-vs-all endgame on the
/// prefix it cuts off. Wins within ceil(log2 n) + 6 rounds.
auto string_one_vs_one(const std::string& w, const std::string& other)
    -> std::shared_ptr<Strategy>;

/// Strategy separating {w} from every other string of the same length: a
/// universal round pointing at each opponent's first difference, isolation
/// rounds placing the duplicator's copies in distinct permutations, and
/// parallel interval endgames. Wins within 1 + m + ceil(log2 n) + 4 rounds
/// where m = max(ceil(log_t n), min_m(n)).
auto string_one_vs_all(const std::string& w, const StrategyParams& params = {})
    -> std::shared_ptr<Strategy>;

/// Strategy separating a set of same-length strings from every other string
/// of that length: preprocessing rounds give each target its own
/// permutation class, then the targets' one-vs-all games run in parallel
/// under one shared pattern.
auto string_many_vs_all(const std::vector<std::string>& targets,
                        const StrategyParams& params = {})
    -> std::shared_ptr<Strategy>;

/// Strategy separating two disjoint sets of same-length strings, with the
/// preprocessing count driven by r_real: m = max(ceil(n / log_r n),
/// min_m(|targets|)).
auto string_any_vs_any(const std::vector<std::string>& targets,
                       const std::vector<std::string>& others,
                       const StrategyParams& params = {})
    -> std::shared_ptr<Strategy>;

}  // namespace msq
