#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <msq/board.hpp>
#include <msq/error.hpp>
#include <msq/game.hpp>
#include <msq/order_strategies.hpp>
#include <msq/solver.hpp>
#include <msq/string_strategies.hpp>

using namespace msq;

namespace {

auto orders(std::initializer_list<int> lengths) -> BoardSet {
  std::vector<Board> boards;
  for (int n : lengths) boards.push_back(Board::order(n));
  return BoardSet(std::move(boards));
}

auto strings(std::initializer_list<const char*> contents) -> BoardSet {
  std::vector<Board> boards;
  for (const char* s : contents) boards.push_back(Board::bits(s));
  return BoardSet(std::move(boards));
}

/// Scoped MSQ_CAPS override; restores the previous state on destruction.
class CapsGuard {
 public:
  explicit CapsGuard(const char* value) {
    const char* old = std::getenv("MSQ_CAPS");
    if (old != nullptr) saved_ = old;
    setenv("MSQ_CAPS", value, 1);
  }
  ~CapsGuard() {
    if (saved_.empty()) {
      unsetenv("MSQ_CAPS");
    } else {
      setenv("MSQ_CAPS", saved_.c_str(), 1);
    }
  }
  CapsGuard(const CapsGuard&) = delete;
  auto operator=(const CapsGuard&) -> CapsGuard& = delete;

 private:
  std::string saved_;
};

/// Draws one side of a micro instance: up to three boards, orders up to L_5
/// or strings up to length four.
auto draw_micro_side(std::mt19937& rng, bool string_kind) -> BoardSet {
  std::vector<Board> boards;
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < count; ++i) {
    if (string_kind) {
      const int n = 1 + static_cast<int>(rng() % 4);
      std::string s;
      for (int j = 0; j < n; ++j) s += (rng() % 2 == 0) ? '0' : '1';
      boards.push_back(Board::bits(s));
    } else {
      boards.push_back(Board::order(1 + static_cast<int>(rng() % 5)));
    }
  }
  return BoardSet(std::move(boards));
}

}  // namespace

TEST_CASE("singleton order pairs have the documented values") {
  auto one = solve_ms(orders({1}), orders({2}), 3, Side::forall);
  CHECK(one.winnable);
  CHECK(one.rounds == 1);
  CHECK(pattern_text(one.pattern) == "A");
  REQUIRE(one.variation.size() == 1);
  CHECK(one.variation[0].side == Side::forall);
  REQUIRE(one.variation[0].moves.size() == 1);
  CHECK(one.variation[0].moves[0].first == "L2");
  CHECK(one.variation[0].moves[0].second == 1);

  auto blocked = solve_ms(orders({2}), orders({3}), 1, Side::forall);
  CHECK_FALSE(blocked.winnable);

  auto two = solve_ms(orders({2}), orders({3}), 2, Side::forall);
  CHECK(two.winnable);
  CHECK(two.rounds == 2);
  CHECK(pattern_text(two.pattern) == "AA");
}

TEST_CASE("an unforced first side may find a shorter or different line") {
  auto v = solve_ms(orders({2}), orders({3}), 3);
  CHECK(v.winnable);
  CHECK(v.rounds == 2);
  CHECK(v.pattern.size() == 2);
  CHECK(v.variation.size() == 2);
}

TEST_CASE("an already won instance needs zero rounds") {
  auto v = solve_ms(strings({"01"}), strings({"11"}), 3);
  CHECK(v.winnable);
  CHECK(v.rounds == 0);
  CHECK(v.pattern.empty());
  CHECK(v.variation.empty());
}

TEST_CASE("identical singletons are never winnable") {
  auto v = solve_ms(orders({3}), orders({3}), 6);
  CHECK_FALSE(v.winnable);
  CHECK(solve_ef(orders({3}), orders({3}), 6) == std::nullopt);
}

TEST_CASE("hard string pairs resist below the log threshold") {
  // floor(log2 n) rounds are necessary: k = 2 gives n = 6, k = 3 gives
  // n = 10, so one round and two rounds respectively cannot win.
  auto [w2, v2] = hard_pair(2);
  auto below2 = solve_ms(strings({w2.c_str()}), strings({v2.c_str()}), 1);
  CHECK_FALSE(below2.winnable);

  auto [w3, v3] = hard_pair(3);
  auto below3 = solve_ms(strings({w3.c_str()}), strings({v3.c_str()}), 2);
  CHECK_FALSE(below3.winnable);
}

TEST_CASE("hard string pairs are won in exactly three rounds") {
  for (int k : {2, 3}) {
    CAPTURE(k);
    auto [w, v] = hard_pair(k);
    auto value =
        solve_ms(strings({w.c_str()}), strings({v.c_str()}), 4);
    CHECK(value.winnable);
    CHECK(value.rounds == 3);
    CHECK(pattern_text(value.pattern) == "EAE");
    CHECK(value.variation.size() == 3);
  }
}

TEST_CASE("pairwise game values on the documented instances") {
  CHECK(solve_ef(orders({1}), orders({2}), 4) == 1);
  CapsGuard caps("16,16,6");
  auto inst = make_order_instance(4, 10);
  CHECK(solve_ef(inst.left, inst.right, 6) == 3);
}

TEST_CASE("pairwise game value matches the rank formula on order instances") {
  CapsGuard caps("16,16,6");
  for (int ell = 1; ell <= 6; ++ell) {
    CAPTURE(ell);
    auto inst = make_order_instance(ell);
    CHECK(solve_ef(inst.left, inst.right, 6) == rank(ell));
  }
}

TEST_CASE("game value sits between rank and the strategy bound") {
  CapsGuard caps("16,16,6");
  for (int ell = 1; ell <= 5; ++ell) {
    CAPTURE(ell);
    auto inst = make_order_instance(ell);
    auto value = solve_ms(inst.left, inst.right, q_star(ell));
    REQUIRE(value.winnable);
    CHECK(value.rounds >= rank(ell));
    CHECK(value.rounds <= q_star(ell));
  }
}

TEST_CASE("pruning does not change values on micro instances") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    CAPTURE(trial);
    const bool string_kind = rng() % 2 == 0;
    BoardSet left = draw_micro_side(rng, string_kind);
    BoardSet right = draw_micro_side(rng, string_kind);
    const int max_rounds = 1 + static_cast<int>(rng() % 4);
    auto with = solve_ms(left, right, max_rounds, std::nullopt, true);
    auto without = solve_ms(left, right, max_rounds, std::nullopt, false);
    CHECK(with.winnable == without.winnable);
    CHECK(with.rounds == without.rounds);
    CHECK(pattern_text(with.pattern) == pattern_text(without.pattern));
  }
}

TEST_CASE("winnable values persist under a larger budget") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    CAPTURE(trial);
    const bool string_kind = rng() % 2 == 0;
    BoardSet left = draw_micro_side(rng, string_kind);
    BoardSet right = draw_micro_side(rng, string_kind);
    const int max_rounds = 1 + static_cast<int>(rng() % 3);
    auto value = solve_ms(left, right, max_rounds);
    auto wider = solve_ms(left, right, max_rounds + 1);
    if (value.winnable) {
      CHECK(wider.winnable);
      CHECK(wider.rounds == value.rounds);
    }
  }
}

TEST_CASE("the pairwise value never exceeds the game value") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    CAPTURE(trial);
    const bool string_kind = rng() % 2 == 0;
    BoardSet left = draw_micro_side(rng, string_kind);
    BoardSet right = draw_micro_side(rng, string_kind);
    auto value = solve_ms(left, right, 4);
    if (!value.winnable) continue;
    auto pairwise = solve_ef(left, right, 4);
    REQUIRE(pairwise.has_value());
    CHECK(pairwise.value() <= value.rounds);
  }
}

TEST_CASE("caps raise resource errors naming the dimension") {
  auto category_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.category();
    }
    return ErrorCategory::domain;
  };

  // Strings never merge under truncation, so five of them exceed the
  // default cap of four classes per side.
  CHECK(category_of([] {
    solve_ms(strings({"0000", "0001", "0010", "0100", "1000"}),
             strings({"1111"}), 2);
  }) == ErrorCategory::resource);
  CHECK_THROWS_WITH_AS(
      solve_ms(strings({"0000", "0001", "0010", "0100", "1000"}),
               strings({"1111"}), 2),
      doctest::Contains("isomorphism classes"), Error);

  CHECK_THROWS_WITH_AS(
      solve_ms(BoardSet({Board::bits(std::string(13, '0'))}),
               BoardSet({Board::bits(std::string(13, '1'))}), 2),
      doctest::Contains("universe size 13"), Error);

  CHECK_THROWS_WITH_AS(solve_ms(orders({1}), orders({2}), 7),
                       doctest::Contains("max_rounds 7"), Error);
  CHECK(category_of([] { solve_ef(orders({1}), orders({2}), 7); }) ==
        ErrorCategory::resource);

  CHECK_THROWS_AS(solve_ms(orders({1}), orders({2}), -1), Error);
}

TEST_CASE("the caps override is read from the environment") {
  {
    CapsGuard caps("5,16,6");
    auto v = solve_ms(strings({"0000", "0001", "0010", "0100", "1000"}),
                      strings({"1111"}), 1);
    CHECK(v.winnable);
  }
  {
    CapsGuard caps("two,3,4");
    CHECK_THROWS_WITH_AS(solve_ms(orders({1}), orders({2}), 1),
                         doctest::Contains("MSQ_CAPS"), Error);
  }
  {
    CapsGuard caps("1,2");
    CHECK_THROWS_AS(solve_ms(orders({1}), orders({2}), 1), Error);
  }
}

TEST_CASE("deep order boards are truncated before cap checks") {
  // At two remaining rounds, gaps beyond 4 are indistinguishable, so even
  // L_100 reduces to a small canonical board and stays inside the caps.
  auto v = solve_ms(orders({100}), orders({101}), 2);
  CHECK_FALSE(v.winnable);
}
