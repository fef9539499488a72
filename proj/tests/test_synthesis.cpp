#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "msq/error.hpp"
#include "msq/formula.hpp"
#include "msq/game.hpp"
#include "msq/order_strategies.hpp"
#include "msq/synthesis.hpp"

using namespace msq;

namespace {

/// Plays one fixed position every round, clamped to the board.
class FixedStrategy : public Strategy {
 public:
  FixedStrategy(Pattern pattern, int position)
      : pattern_(std::move(pattern)), position_(position) {}
  auto pattern() const -> const Pattern& override { return pattern_; }
  auto choose(const Board& b, int) const -> int override {
    return std::min(position_, b.size() - 1);
  }
  auto name() const -> std::string override { return "fixed"; }

 private:
  Pattern pattern_;
  int position_;
};

auto order_range(int lo, int hi) -> BoardSet {
  std::vector<Board> boards;
  for (int len = lo; len <= hi; ++len) boards.push_back(Board::order(len));
  return BoardSet(std::move(boards));
}

auto lt(Term a, Term b) -> FormulaPtr { return Formula::lt(a, b); }
auto eq(Term a, Term b) -> FormulaPtr { return Formula::eq(a, b); }

auto between(Term lo, Term mid, Term hi) -> FormulaPtr {
  return Formula::conjunction({lt(lo, mid), lt(mid, hi)});
}

/// u <= v on a linear order.
auto at_most(Term u, Term v) -> FormulaPtr {
  return Formula::negation(lt(v, u));
}

}  // namespace

TEST_CASE("one-round existential win synthesizes a separating sentence") {
  BoardSet left(std::vector<Board>{Board::order(2)});
  BoardSet right(std::vector<Board>{Board::order(1)});
  auto result = play(left, right, FixedStrategy({Side::exists}, 1));
  REQUIRE(result.won_at == 1);

  auto sentence = synthesize_from_trace(result.trace);
  CHECK(pattern_text(prenex_pattern(sentence)) == "E");
  CHECK(qcount(sentence) == 1);
  CHECK(separates(sentence, left, right));
}

TEST_CASE("one-round universal win synthesizes with a universal prefix") {
  BoardSet left(std::vector<Board>{Board::order(1)});
  BoardSet right(std::vector<Board>{Board::order(2)});
  auto result = play(left, right, FixedStrategy({Side::forall}, 1));
  REQUIRE(result.won_at == 1);

  auto sentence = synthesize_from_trace(result.trace);
  CHECK(pattern_text(prenex_pattern(sentence)) == "A");
  CHECK(qcount(sentence) == 1);
  CHECK(separates(sentence, left, right));
}

TEST_CASE("midpoint traces synthesize separating sentences of declared size") {
  for (int ell = 1; ell <= 6; ++ell) {
    for (Side side : {Side::exists, Side::forall}) {
      auto instance = make_order_instance(ell);
      auto strategy = cma_strategy(ell, side);
      auto result = play(instance.left, instance.right, *strategy);
      auto choice =
          side == Side::exists ? StartChoice::exists : StartChoice::forall;
      REQUIRE(result.won_at == q_star(ell, choice));

      auto sentence = synthesize_from_trace(result.trace);
      CHECK(qcount(sentence) ==
            static_cast<int>(result.trace.rounds.size()));
      CHECK(prenex_pattern(sentence) == pattern_of(ell, side));
      CHECK(qrank(sentence) <= qcount(sentence));
      CHECK(separates(sentence, instance.left, instance.right));
    }
  }
}

TEST_CASE("a universal-side midpoint trace at five has three quantifiers") {
  auto instance = make_order_instance(5);
  auto result = play(instance.left, instance.right, *cma_strategy(5, Side::forall));
  auto sentence = synthesize_from_trace(result.trace);
  CHECK(qcount(sentence) == 3);
  CHECK(q_star(5, StartChoice::forall) == 3);
  CHECK(separates(sentence, instance.left, instance.right));
}

TEST_CASE("full diagrams synthesize equivalent separating sentences") {
  auto instance = make_order_instance(3);
  auto result = play(instance.left, instance.right, *cma_strategy(3, Side::exists));
  auto reduced = synthesize_from_trace(result.trace);
  auto full = synthesize_from_trace(result.trace, {.full_diagrams = true});
  CHECK(separates(full, instance.left, instance.right));
  CHECK(prenex_pattern(full) == prenex_pattern(reduced));
  CHECK(formula_text(full).size() >= formula_text(reduced).size());
}

TEST_CASE("string endpoints can decide a game before any round") {
  BoardSet left(std::vector<Board>{Board::bits("01")});
  BoardSet right(std::vector<Board>{Board::bits("10")});
  auto result = play(left, right, FixedStrategy({}, 0));
  REQUIRE(result.won_at == 0);

  auto sentence = synthesize_from_trace(result.trace);
  CHECK(qcount(sentence) == 0);
  CHECK(prenex_pattern(sentence).empty());
  CHECK(separates(sentence, left, right));
}

TEST_CASE("a one-round string win separates by an interior bit") {
  BoardSet left(std::vector<Board>{Board::bits("010")});
  BoardSet right(std::vector<Board>{Board::bits("000")});
  auto result = play(left, right, FixedStrategy({Side::exists}, 1));
  REQUIRE(result.won_at == 1);

  auto sentence = synthesize_from_trace(result.trace);
  CHECK(pattern_text(prenex_pattern(sentence)) == "E");
  CHECK(separates(sentence, left, right));
}

TEST_CASE("synthesis rejects unpruned and unfinished traces") {
  auto instance = make_order_instance(5);
  auto strategy = cma_strategy(5, Side::exists);

  auto unpruned = play(instance.left, instance.right, *strategy, -1, false);
  CHECK_THROWS_AS(synthesize_from_trace(unpruned.trace), Error);

  auto unfinished = play(instance.left, instance.right, *strategy, 1);
  REQUIRE(!unfinished.won_at.has_value());
  CHECK_THROWS_AS(synthesize_from_trace(unfinished.trace), Error);
}

TEST_CASE("alpha and epsilon sentences hold exactly up to their length") {
  CHECK(eval(build_alpha(1), Board::order(1)));
  CHECK_THROWS_AS(build_alpha(0), Error);
  CHECK_THROWS_AS(build_epsilon(1), Error);

  for (int ell = 1; ell <= 32; ++ell) {
    auto alpha = build_alpha(ell);
    CHECK(qrank(alpha) <= qcount(alpha));
    CHECK(separates(alpha, order_range(1, ell), order_range(ell + 1, 100)));
    if (ell >= 2) {
      auto epsilon = build_epsilon(ell);
      CHECK(separates(epsilon, order_range(1, ell), order_range(ell + 1, 100)));
    }
  }
}

TEST_CASE("the three-or-fewer alpha sentence separates against twenty") {
  CHECK(separates(build_alpha(3), order_range(1, 3), order_range(4, 20)));
}

TEST_CASE("epsilon four splits into two alphas at an existential midpoint") {
  auto e4 = build_epsilon(4);
  REQUIRE(e4->kind() == Formula::Kind::exists);
  const auto& body = e4->parts()[0];
  REQUIRE(body->kind() == Formula::Kind::conjunction);
  CHECK(body->parts().size() == 2);
  CHECK(qcount(e4) == 5);
  CHECK(separates(e4, order_range(1, 4), order_range(5, 20)));
}

TEST_CASE("pull out hoists a single guarded branch") {
  Term x1 = Term::var("x1");
  Term r = Term::var("r");
  auto psi = lt(Term::min(), x1);
  auto guard = eq(Term::min(), Term::min());
  auto consequent = Formula::exists("r", lt(x1, r));

  auto merged = pull_out({Side::exists}, {"x1"}, psi, {{guard, consequent}});
  CHECK(pattern_text(prenex_pattern(merged)) == "EE");

  auto direct = Formula::exists(
      "x1", Formula::conjunction({psi, Formula::implication(guard, consequent)}));
  for (int len = 1; len <= 8; ++len) {
    Board b = Board::order(len);
    CHECK(eval(merged, b) == eval(direct, b));
    CHECK(eval(merged, b) == (len >= 2));
  }
}

TEST_CASE("pull out pads a shorter branch with a leading dummy") {
  Term x1 = Term::var("x1");
  auto psi = eq(Term::min(), Term::min());
  auto guard_low = lt(x1, Term::max());
  auto guard_high = eq(x1, Term::max());

  auto long_branch = Formula::forall(
      "a", Formula::exists(
               "b", Formula::forall(
                        "c", Formula::implication(
                                 between(Term::var("a"), Term::var("b"),
                                         Term::var("c")),
                                 lt(x1, Term::var("b"))))));
  auto short_branch = Formula::exists(
      "d", Formula::forall("e", Formula::implication(
                                    lt(Term::var("d"), Term::var("e")),
                                    lt(x1, Term::var("e")))));

  auto merged = pull_out({Side::forall}, {"x1"}, psi,
                         {{guard_low, long_branch}, {guard_high, short_branch}});
  CHECK(pattern_text(prenex_pattern(merged)) == "AAEA");

  std::string text = formula_text(merged);
  CHECK(text.find("(imp (lt y2 y3) (lt x1 y3))") != std::string::npos);

  auto direct = Formula::forall(
      "x1",
      Formula::conjunction({psi, Formula::implication(guard_low, long_branch),
                            Formula::implication(guard_high, short_branch)}));
  for (int len = 1; len <= 6; ++len) {
    Board b = Board::order(len);
    CHECK(eval(merged, b) == eval(direct, b));
  }
}

TEST_CASE("pull out rejects structural violations") {
  auto truth = eq(Term::min(), Term::min());
  auto ea = Formula::exists("a", Formula::forall("b", truth));
  auto ae = Formula::forall("c", Formula::exists("d", truth));

  CHECK_THROWS_AS(pull_out({}, {}, truth, {{truth, ea}, {truth, ae}}), Error);
  CHECK_THROWS_AS(
      pull_out({Side::exists}, {"a"}, truth, {{truth, ea}}), Error);
  CHECK_THROWS_AS(
      pull_out({Side::exists, Side::exists}, {"x1", "x1"}, truth, {}), Error);
  CHECK_THROWS_AS(pull_out({Side::exists}, {"x1"},
                           Formula::exists("z", truth), {}),
                  Error);
  CHECK_THROWS_AS(pull_out({Side::exists}, {"x1"}, truth,
                           {{Formula::exists("z", truth), ea}}),
                  Error);
  CHECK(pattern_text(prenex_pattern(pull_out({}, {}, truth, {}))).empty());
}

namespace {

/// Prenex consequents for the merged split sentences: each one asserts that
/// the open interval (lo, hi) around a probed point keeps the half-distance
/// bound of the matching alpha sentence.

/// Interval (lo, hi) contains no element: the guarded branch body is false.
auto falsum() -> FormulaPtr { return lt(Term::min(), Term::min()); }

/// Prenex form of: some b in (lo, hi) covers, with s, every interior point.
auto third_witness(Term lo, Term s, Term hi) -> FormulaPtr {
  Term b = Term::var("b");
  Term g = Term::var("g");
  return Formula::exists(
      "b",
      Formula::forall(
          "g", Formula::conjunction(
                   {between(lo, b, hi),
                    Formula::implication(
                        between(lo, g, hi),
                        Formula::disjunction({eq(g, s), eq(g, b)}))})));
}

/// Quantifier-free matrix of epsilon-1 of (u, v) with midpoint w and
/// universal probe t.
auto eps1_matrix(Term u, Term v, Term w, Term t) -> FormulaPtr {
  return Formula::conjunction({eq(w, u), at_most(w, v),
                               Formula::negation(between(w, t, v))});
}

/// Quantifier-free matrix of epsilon-2 of (u, v): w splits (u, v) into two
/// empty open halves probed by t.
auto eps2_matrix(Term u, Term v, Term w, Term t) -> FormulaPtr {
  return Formula::conjunction({at_most(u, w), at_most(w, v),
                               Formula::negation(between(u, t, w)),
                               Formula::negation(between(w, t, v))});
}

/// Quantifier-free matrix of epsilon-3 of (u, v): the lower half (u, w) is
/// empty and the upper half holds at most one element; t2 doubles as the
/// lower probe and as one of the upper pair t2, t3.
auto eps3_matrix(Term u, Term v, Term w, Term t2, Term t3) -> FormulaPtr {
  return Formula::conjunction(
      {at_most(u, w), at_most(w, v), Formula::negation(between(u, t2, w)),
       Formula::implication(
           Formula::conjunction({between(w, t2, v), between(w, t3, v)}),
           eq(t2, t3))});
}

/// Prenex disjunction "epsilon_a(lo, s) or epsilon_b(s, hi)" for the
/// half-bound pairs used by alpha recurrences with ell in {4, 5, 6}; the
/// existential midpoints merge and the universal probe blocks pad.
auto half_split(int ell, Term lo, Term s, Term hi) -> FormulaPtr {
  Term w = Term::var("w");
  Term t = Term::var("t");
  Term t2 = Term::var("t2");
  Term t3 = Term::var("t3");
  if (ell == 4)
    return Formula::exists(
        "w", Formula::forall(
                 "t", Formula::forall(
                          "t2", Formula::disjunction(
                                    {eps1_matrix(lo, s, w, t),
                                     eps2_matrix(s, hi, w, t2)}))));
  if (ell == 5)
    return Formula::exists(
        "w", Formula::forall(
                 "t", Formula::forall(
                          "t2", Formula::disjunction(
                                    {eps2_matrix(lo, s, w, t),
                                     eps2_matrix(s, hi, w, t2)}))));
  return Formula::exists(
      "w",
      Formula::forall(
          "t", Formula::forall(
                   "t2", Formula::forall(
                             "t3", Formula::disjunction(
                                       {eps2_matrix(lo, s, w, t),
                                        eps3_matrix(s, hi, w, t2, t3)})))));
}

/// Prenex sentence equivalent to "alpha_ell(lo, r) and alpha_ell(r, hi)"
/// for an interior r, merging both halves through one shared probe prefix.
/// `sides` selects which halves are asserted: both for the interior case,
/// one for the endpoint cases.
auto merged_alpha_pair(int ell, Term lo, Term r, Term hi, bool keep_low,
                       bool keep_high) -> FormulaPtr {
  Term s = Term::var("s");
  Term s2 = Term::var("s2");
  std::vector<FormulaPtr> context;
  if (keep_low) context.push_back(at_most(lo, r));
  if (keep_high) context.push_back(at_most(r, hi));
  auto psi = Formula::conjunction(context);

  std::vector<GuardedBranch> branches;
  if (ell == 1) {
    if (keep_low) branches.push_back({between(lo, s, r), falsum()});
    if (keep_high) branches.push_back({between(r, s, hi), falsum()});
    return pull_out({Side::forall}, {"s"}, psi, branches);
  }
  if (ell == 2) {
    if (keep_low)
      branches.push_back(
          {Formula::conjunction({between(lo, s, r), between(lo, s2, r)}),
           eq(s, s2)});
    if (keep_high)
      branches.push_back(
          {Formula::conjunction({between(r, s, hi), between(r, s2, hi)}),
           eq(s, s2)});
    return pull_out({Side::forall, Side::forall}, {"s", "s2"}, psi, branches);
  }
  if (ell == 3) {
    if (keep_low) branches.push_back({between(lo, s, r), third_witness(lo, s, r)});
    if (keep_high)
      branches.push_back({between(r, s, hi), third_witness(r, s, hi)});
    return pull_out({Side::forall}, {"s"}, psi, branches);
  }
  if (keep_low) branches.push_back({between(lo, s, r), half_split(ell, lo, s, r)});
  if (keep_high)
    branches.push_back({between(r, s, hi), half_split(ell, r, s, hi)});
  return pull_out({Side::forall}, {"s"}, psi, branches);
}

/// Prenex sentence equivalent to build_epsilon(2 * ell), assembled with
/// pull_out from a three-way case split on the existential midpoint.
auto merged_epsilon(int ell) -> FormulaPtr {
  Term r = Term::var("r");
  auto low_case = merged_alpha_pair(ell, Term::min(), r, Term::max(), false, true);
  auto high_case = merged_alpha_pair(ell, Term::min(), r, Term::max(), true, false);
  auto mid_case = merged_alpha_pair(ell, Term::min(), r, Term::max(), true, true);
  return pull_out({Side::exists}, {"r"}, eq(Term::min(), Term::min()),
                  {{eq(r, Term::min()), low_case},
                   {eq(r, Term::max()), high_case},
                   {between(Term::min(), r, Term::max()), mid_case}});
}

}  // namespace

TEST_CASE("merged split sentences agree with the epsilon builder") {
  for (int ell = 1; ell <= 6; ++ell) {
    auto merged = merged_epsilon(ell);
    auto reference = build_epsilon(2 * ell);
    CHECK(qcount(merged) <= qcount(reference));
    CHECK(separates(merged, order_range(1, 2 * ell), order_range(2 * ell + 1, 30)));
    CHECK(separates(reference, order_range(1, 2 * ell),
                    order_range(2 * ell + 1, 30)));
    for (int len : {1, ell, 2 * ell, 2 * ell + 1, 30}) {
      Board b = Board::order(len);
      CHECK(eval(merged, b) == eval(reference, b));
    }
  }
}
