#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "msq/error.hpp"
#include "msq/formula.hpp"

using namespace msq;

namespace {

auto lt(Term a, Term b) -> FormulaPtr { return Formula::lt(a, b); }
auto eq(Term a, Term b) -> FormulaPtr { return Formula::eq(a, b); }

auto between(Term lo, Term mid, Term hi) -> FormulaPtr {
  return Formula::conjunction({lt(lo, mid), lt(mid, hi)});
}

/// x < y and every element above x equals y.
auto paper_alpha_one(Term x, Term y) -> FormulaPtr {
  return Formula::conjunction(
      {lt(x, y), Formula::forall("r", Formula::implication(
                                          lt(x, Term::var("r")),
                                          eq(y, Term::var("r"))))});
}

/// x < y with at most one element strictly between them.
auto paper_alpha_two(Term x, Term y) -> FormulaPtr {
  Term r = Term::var("r");
  Term b = Term::var("b");
  return Formula::conjunction(
      {lt(x, y),
       Formula::forall(
           "r", Formula::forall(
                    "b", Formula::implication(
                             Formula::conjunction(
                                 {between(x, r, y), between(x, b, y)}),
                             eq(r, b))))});
}

auto order_range(int lo, int hi) -> BoardSet {
  std::vector<Board> boards;
  for (int len = lo; len <= hi; ++len) boards.push_back(Board::order(len));
  return BoardSet(std::move(boards));
}

/// Rewrites implications away and pushes negations onto atoms.
auto normalize(const FormulaPtr& f, bool negated) -> FormulaPtr {
  auto each = [&](bool flip) {
    std::vector<FormulaPtr> out;
    for (const auto& p : f->parts()) out.push_back(normalize(p, flip));
    return out;
  };
  switch (f->kind()) {
    case Formula::Kind::lt:
    case Formula::Kind::eq:
    case Formula::Kind::bit:
      return negated ? Formula::negation(f) : f;
    case Formula::Kind::negation:
      return normalize(f->parts()[0], !negated);
    case Formula::Kind::conjunction:
      return negated ? Formula::disjunction(each(true))
                     : Formula::conjunction(each(false));
    case Formula::Kind::disjunction:
      return negated ? Formula::conjunction(each(true))
                     : Formula::disjunction(each(false));
    case Formula::Kind::implication:
      if (negated)
        return Formula::conjunction({normalize(f->parts()[0], false),
                                     normalize(f->parts()[1], true)});
      return Formula::disjunction({normalize(f->parts()[0], true),
                                   normalize(f->parts()[1], false)});
    case Formula::Kind::exists:
      return negated ? Formula::forall(f->var(), normalize(f->parts()[0], true))
                     : Formula::exists(f->var(),
                                       normalize(f->parts()[0], false));
    case Formula::Kind::forall:
      return negated ? Formula::exists(f->var(), normalize(f->parts()[0], true))
                     : Formula::forall(f->var(),
                                       normalize(f->parts()[0], false));
  }
  return f;
}

}  // namespace

TEST_CASE("terms validate their names") {
  CHECK(Term::min().text() == "min");
  CHECK(Term::max().text() == "max");
  CHECK(Term::var("x1").text() == "x1");
  CHECK_THROWS_AS(Term::var(""), Error);
  CHECK_THROWS_AS(Term::var("min"), Error);
  CHECK_THROWS_AS(Term::var("forall"), Error);
  CHECK_THROWS_AS(Term::var("2x"), Error);
  CHECK_THROWS_AS(Term::var("a b"), Error);
}

TEST_CASE("connective factories validate arity") {
  CHECK_THROWS_AS(Formula::conjunction({}), Error);
  CHECK_THROWS_AS(Formula::disjunction({}), Error);
  CHECK_THROWS_AS(Formula::exists("min", Formula::eq(Term::min(), Term::min())),
                  Error);
  auto atom = Formula::lt(Term::min(), Term::max());
  CHECK(formula_text(Formula::conjunction({atom})) == formula_text(atom));
}

TEST_CASE("successor formula holds exactly on the one-edge order") {
  auto alpha = paper_alpha_one(Term::var("x"), Term::var("y"));
  Board one = Board::order(1);
  Board two = Board::order(2);
  CHECK(eval(alpha, one, {{"x", 0}, {"y", 1}}));
  CHECK_FALSE(eval(alpha, two, {{"x", 0}, {"y", 2}}));
}

TEST_CASE("interior-element sentence is false on the one-edge order") {
  Term x = Term::var("x");
  auto interior = Formula::exists("x", between(Term::min(), x, Term::max()));
  CHECK_FALSE(eval(interior, Board::order(1)));
  CHECK(eval(interior, Board::order(2)));
}

TEST_CASE("bit atoms read string content") {
  auto s_min = Formula::bit(Term::min());
  CHECK(eval(s_min, Board::bits("10")));
  CHECK_FALSE(eval(s_min, Board::bits("01")));
  CHECK_THROWS_AS(eval(s_min, Board::order(2)), Error);
}

TEST_CASE("eval rejects unbound and off-board assignments") {
  auto f = Formula::lt(Term::var("x"), Term::max());
  CHECK_THROWS_AS(eval(f, Board::order(2)), Error);
  CHECK_THROWS_AS(eval(f, Board::order(2), {{"x", 9}}), Error);
  CHECK(eval(f, Board::order(2), {{"x", 1}}));
}

TEST_CASE("quantifier counters distinguish count from rank") {
  auto alpha2 = paper_alpha_two(Term::var("x"), Term::var("y"));
  CHECK(qcount(alpha2) == 2);
  CHECK(qrank(alpha2) == 2);

  auto t = Formula::eq(Term::min(), Term::min());
  auto wide = Formula::conjunction(
      {Formula::exists("x", t), Formula::exists("y", t)});
  CHECK(qcount(wide) == 2);
  CHECK(qrank(wide) == 1);
}

TEST_CASE("prenex pattern reads the quantifier spine") {
  auto t = Formula::eq(Term::min(), Term::min());
  auto f = Formula::forall("x", Formula::exists("y", t));
  CHECK(pattern_text(prenex_pattern(f)) == "AE");
  CHECK(prenex_pattern(t).empty());

  auto hidden = Formula::conjunction({t, Formula::exists("x", t)});
  CHECK_THROWS_AS(prenex_pattern(hidden), Error);
}

TEST_CASE("closed two-or-fewer sentence separates short from long orders") {
  auto alpha2 = paper_alpha_two(Term::min(), Term::max());
  CHECK(separates(alpha2, order_range(1, 2), order_range(3, 10)));
  CHECK_FALSE(separates(alpha2, order_range(1, 3), order_range(4, 10)));

  BoardSet empty;
  CHECK(separates(alpha2, empty, empty));
  auto negated = Formula::negation(alpha2);
  bool direct = separates(alpha2, order_range(1, 2), order_range(3, 4));
  bool inverse = separates(negated, order_range(1, 2), order_range(3, 4));
  CHECK_FALSE((direct && inverse));

  CHECK_THROWS_AS(
      separates(Formula::lt(Term::var("x"), Term::max()), empty, empty),
      Error);
}

TEST_CASE("three-interior-elements sentence thresholds at length four") {
  Term a = Term::var("a");
  Term b = Term::var("b");
  Term c = Term::var("c");
  auto body = Formula::conjunction(
      {between(Term::min(), a, Term::max()), between(a, b, c),
       between(Term::min(), c, Term::max()), lt(a, b), lt(b, c)});
  auto three = Formula::exists(
      "a", Formula::exists("b", Formula::exists("c", body)));
  CHECK(separates(three, order_range(4, 40), order_range(1, 3)));
}

TEST_CASE("rendering round-trips through the parser") {
  std::vector<FormulaPtr> samples = {
      paper_alpha_one(Term::min(), Term::max()),
      paper_alpha_two(Term::var("u"), Term::var("v")),
      Formula::implication(Formula::bit(Term::min()),
                           Formula::negation(Formula::bit(Term::max()))),
      Formula::disjunction({Formula::eq(Term::min(), Term::max()),
                            Formula::lt(Term::min(), Term::max())}),
  };
  for (const auto& f : samples) {
    std::string text = formula_text(f);
    CHECK(formula_text(parse_formula(text)) == text);
  }
}

TEST_CASE("parser accepts comments and loose whitespace") {
  auto f = parse_formula(R"(# a sentence
    (and   (lt min max)    # trailing note
      (not (S max)))
  )");
  CHECK(formula_text(f) == "(and (lt min max) (not (S max)))");
}

TEST_CASE("parser rejects malformed sentences") {
  CHECK_THROWS_AS(parse_formula("(and)"), Error);
  CHECK_THROWS_AS(parse_formula("(foo min)"), Error);
  CHECK_THROWS_AS(parse_formula("(lt min)"), Error);
  CHECK_THROWS_AS(parse_formula("(lt min max) (lt min max)"), Error);
  CHECK_THROWS_AS(parse_formula("(exists min (eq min min))"), Error);
  CHECK_THROWS_AS(parse_formula("(not (lt min max)"), Error);
  CHECK_THROWS_AS(parse_formula(""), Error);
  CHECK_THROWS_AS(parse_formula("(lt min exists)"), Error);
}

TEST_CASE("normalized connectives evaluate identically on random sentences") {
  std::mt19937 rng(0);
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };

  std::vector<std::string> vars;
  auto random_term = [&]() -> Term {
    int c = pick(static_cast<int>(vars.size()) + 2);
    if (c == 0) return Term::min();
    if (c == 1) return Term::max();
    return Term::var(vars[static_cast<std::size_t>(c - 2)]);
  };

  std::function<FormulaPtr(int, bool)> random_matrix =
      [&](int depth, bool strings) -> FormulaPtr {
    int c = pick(depth > 0 ? 7 : 3);
    switch (c) {
      case 0: return Formula::lt(random_term(), random_term());
      case 1: return Formula::eq(random_term(), random_term());
      case 2:
        if (strings) return Formula::bit(random_term());
        return Formula::lt(random_term(), random_term());
      case 3: return Formula::negation(random_matrix(depth - 1, strings));
      case 4:
        return Formula::conjunction({random_matrix(depth - 1, strings),
                                     random_matrix(depth - 1, strings)});
      case 5:
        return Formula::disjunction({random_matrix(depth - 1, strings),
                                     random_matrix(depth - 1, strings)});
      default:
        return Formula::implication(random_matrix(depth - 1, strings),
                                    random_matrix(depth - 1, strings));
    }
  };

  for (int round = 0; round < 1000; ++round) {
    bool strings = round % 2 == 1;
    int prefix = pick(5);
    vars.clear();
    for (int i = 0; i < prefix; ++i) vars.push_back("x" + std::to_string(i + 1));

    FormulaPtr f = random_matrix(3, strings);
    for (int i = prefix - 1; i >= 0; --i) {
      f = Formula::quantify(pick(2) == 0 ? Side::exists : Side::forall,
                            vars[static_cast<std::size_t>(i)], f);
    }
    FormulaPtr g = normalize(f, false);

    Board board = Board::order(1);
    if (strings) {
      int n = 1 + pick(6);
      std::string content;
      for (int i = 0; i < n; ++i) content.push_back(pick(2) == 0 ? '0' : '1');
      board = Board::bits(content);
    } else {
      board = Board::order(1 + pick(8));
    }
    CHECK(eval(f, board) == eval(g, board));
  }
}
