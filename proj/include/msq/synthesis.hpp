#pragma once

#include <string>
#include <vector>

#include "msq/formula.hpp"
#include "msq/game.hpp"

namespace msq {

/// Options for synthesize_from_trace.
struct SynthesisOptions {
  /// Emit every pairwise comparison atom in matrix diagrams instead of the
  /// transitivity-reduced chain.
  bool full_diagrams = false;
};

/// Builds a separating prenex sentence from a winning pruned trace. The
/// quantifier prefix equals the trace pattern, binding x1, x2, ... in round
/// order; the matrix is a disjunction of board diagrams collected as boards
/// drop out of the game, so the sentence is true on every board of the
/// trace's initial left set and false on every board of its right set.
auto synthesize_from_trace(const Trace& trace,
                           const SynthesisOptions& options = {}) -> FormulaPtr;

/// A guard implying a prenex consequent, one branch of a pull_out input.
struct GuardedBranch {
  FormulaPtr guard;
  FormulaPtr consequent;
};

/// Hoists the consequent prefixes of mutually exclusive guarded branches over
/// the outer prefix, producing one prenex sentence equivalent to
///   Q1 x1 ... Qk xk (psi and (guard_1 -> consequent_1) and ...).
/// psi and every guard must be quantifier-free; consequents must be prenex,
/// must not requantify outer variables, and each consequent's prefix must be
/// a final segment of the longest one. Shorter branches are padded with
/// leading dummy quantifiers; their variables are renamed positionally onto
/// the shared fresh suffix variables. The caller asserts that at most one
/// guard holds under any assignment.
auto pull_out(const Pattern& outer, const std::vector<std::string>& outer_vars,
              const FormulaPtr& psi, const std::vector<GuardedBranch>& branches)
    -> FormulaPtr;

/// Sentence true on a linear order exactly when its length is at most ell
/// (ell >= 1). Naively nested, so the quantifier count grows linearly with
/// ell; intended as a semantic oracle.
auto build_alpha(int ell) -> FormulaPtr;

/// Sentence true on a linear order exactly when its length is at most ell
/// (ell >= 2), split at an existentially chosen midpoint.
auto build_epsilon(int ell) -> FormulaPtr;

}  // namespace msq
