#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "msq/board.hpp"
#include "msq/game.hpp"

namespace msq {

/// A term of the shared vocabulary: one of the two positional constants or
/// a variable reference. Variable names are nonempty identifiers and may not
/// shadow a reserved word of the sentence grammar.
class Term {
 public:
  enum class Kind : std::uint8_t { min_const, max_const, variable };

  static auto min() -> Term { return Term(Kind::min_const, ""); }
  static auto max() -> Term { return Term(Kind::max_const, ""); }
  static auto var(const std::string& name) -> Term;

  auto kind() const -> Kind { return kind_; }

  /// Variable name; empty for the constants.
  auto name() const -> const std::string& { return name_; }

  auto text() const -> std::string;

  auto operator<=>(const Term&) const = default;

 private:
  Term(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// An immutable first-order formula over the vocabulary {<, S; min, max}.
/// Nodes are shared by pointer and built through the static factories; the
/// S atom may only be evaluated on bit-string boards.
class Formula {
 public:
  enum class Kind : std::uint8_t {
    lt,
    eq,
    bit,
    negation,
    conjunction,
    disjunction,
    implication,
    exists,
    forall,
  };

  static auto lt(Term a, Term b) -> FormulaPtr;
  static auto eq(Term a, Term b) -> FormulaPtr;
  static auto bit(Term t) -> FormulaPtr;
  static auto negation(FormulaPtr f) -> FormulaPtr;
  static auto conjunction(std::vector<FormulaPtr> parts) -> FormulaPtr;
  static auto disjunction(std::vector<FormulaPtr> parts) -> FormulaPtr;
  static auto implication(FormulaPtr premise, FormulaPtr conclusion)
      -> FormulaPtr;
  static auto exists(const std::string& var, FormulaPtr body) -> FormulaPtr;
  static auto forall(const std::string& var, FormulaPtr body) -> FormulaPtr;

  /// exists for Side::exists, forall for Side::forall.
  static auto quantify(Side side, const std::string& var, FormulaPtr body)
      -> FormulaPtr;

  auto kind() const -> Kind { return kind_; }
  auto is_atom() const -> bool {
    return kind_ == Kind::lt || kind_ == Kind::eq || kind_ == Kind::bit;
  }

  /// Terms of an atom: two for lt and eq, one for bit; empty otherwise.
  auto terms() const -> const std::vector<Term>& { return terms_; }

  /// Subformulas: one for negation and the quantifiers, two for implication
  /// (premise, conclusion), one or more for conjunction and disjunction.
  auto parts() const -> const std::vector<FormulaPtr>& { return parts_; }

  /// Bound variable name of a quantifier node; empty otherwise.
  auto var() const -> const std::string& { return var_; }

 protected:
  Formula(Kind kind, std::vector<Term> terms, std::vector<FormulaPtr> parts,
          std::string var)
      : kind_(kind),
        terms_(std::move(terms)),
        parts_(std::move(parts)),
        var_(std::move(var)) {}

  Kind kind_;
  std::vector<Term> terms_;
  std::vector<FormulaPtr> parts_;
  std::string var_;
};

/// Names with a free occurrence in f, sorted.
auto free_vars(const FormulaPtr& f) -> std::vector<std::string>;

/// Total number of quantifier occurrences.
auto qcount(const FormulaPtr& f) -> int;

/// Maximum quantifier nesting depth.
auto qrank(const FormulaPtr& f) -> int;

/// The quantifier spine of a prenex formula as a Pattern. Throws a usage
/// error when a quantifier occurs below a connective.
auto prenex_pattern(const FormulaPtr& f) -> Pattern;

/// S-expression rendering; parse_formula round-trips it.
auto formula_text(const FormulaPtr& f) -> std::string;

/// Parses one formula from prefix s-expression text: terms `min`, `max`, or
/// an identifier; atoms `(lt t t)`, `(eq t t)`, `(S t)`; `(not f)`,
/// `(and f+)`, `(or f+)`, `(imp f f)`, `(exists v f)`, `(forall v f)`.
/// Whitespace-insensitive; `#` starts a comment running to end of line.
auto parse_formula(const std::string& text) -> FormulaPtr;

/// Free-variable assignment used by eval.
using Env = std::map<std::string, int>;

/// Evaluates f on a board under env, which must bind every free variable of
/// f to a position on the board. Brute-force quantifier semantics with
/// board-type-aware memoization.
auto eval(const FormulaPtr& f, const Board& b, const Env& env = {}) -> bool;

/// True iff the closed formula f holds on every accept board and fails on
/// every reject board. Throws a usage error when f has free variables.
auto separates(const FormulaPtr& f, const BoardSet& accept,
               const BoardSet& reject) -> bool;

}  // namespace msq
