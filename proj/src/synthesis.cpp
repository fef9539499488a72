#include "msq/synthesis.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msq/error.hpp"

namespace msq {

namespace {

/// Conjunction of atoms pinning a board's atomic type: the relative order
/// and coincidences of min, max, x1..xk (xi naming the i-th pebble), plus
/// the bit at each labeled point on strings. The reduced form chains
/// adjacent comparisons; the full form compares every pair.
auto diagram(const Board& b, bool full) -> FormulaPtr {
  std::map<int, std::vector<Term>> groups;
  groups[0].push_back(Term::min());
  groups[b.size() - 1].push_back(Term::max());
  const auto& pebbles = b.pebbles();
  for (std::size_t i = 0; i < pebbles.size(); ++i)
    groups[pebbles[i]].push_back(Term::var("x" + std::to_string(i + 1)));

  std::vector<FormulaPtr> atoms;
  auto bit_atom = [&](const Term& t, int position) -> FormulaPtr {
    auto s = Formula::bit(t);
    return b.bit_at(position) != 0 ? s : Formula::negation(s);
  };

  if (full) {
    std::vector<std::pair<Term, int>> labels;
    for (const auto& [position, terms] : groups)
      for (const auto& t : terms) labels.emplace_back(t, position);
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        if (labels[i].second == labels[j].second)
          atoms.push_back(Formula::eq(labels[i].first, labels[j].first));
        else
          atoms.push_back(Formula::lt(labels[i].first, labels[j].first));
      }
    if (b.kind() == BoardKind::bits)
      for (const auto& [t, position] : labels)
        atoms.push_back(bit_atom(t, position));
  } else {
    const std::vector<Term>* previous = nullptr;
    for (const auto& [position, terms] : groups) {
      for (std::size_t i = 0; i + 1 < terms.size(); ++i)
        atoms.push_back(Formula::eq(terms[i], terms[i + 1]));
      if (previous != nullptr)
        atoms.push_back(Formula::lt(previous->front(), terms.front()));
      if (b.kind() == BoardKind::bits)
        atoms.push_back(bit_atom(terms.front(), position));
      previous = &terms;
    }
  }
  return Formula::conjunction(std::move(atoms));
}

}  // namespace

auto synthesize_from_trace(const Trace& trace, const SynthesisOptions& options)
    -> FormulaPtr {
  if (!trace.pruned)
    throw_domain("synthesis requires a trace recorded with pruning on");
  if (!trace.won_at.has_value()) throw_domain("trace not won");

  std::vector<FormulaPtr> disjuncts;
  {
    std::set<AtomicType> right_types;
    for (const auto& b : trace.initial.right)
      right_types.insert(atomic_type(b));
    std::set<AtomicType> seen;
    for (const auto& b : trace.initial.left) {
      AtomicType type = atomic_type(b);
      if (right_types.contains(type) || !seen.insert(type).second) continue;
      disjuncts.push_back(diagram(b, options.full_diagrams));
    }
  }

  auto rounds = replay_trace(trace);
  for (const auto& round : rounds)
    for (const auto& b : round.dropped_left)
      disjuncts.push_back(diagram(b, options.full_diagrams));

  GameState final_state{trace.initial.left, trace.initial.right, 0, {}};
  if (!rounds.empty()) final_state = rounds.back().state;
  if (!is_won(final_state)) throw_domain("trace not won");

  FormulaPtr sentence = disjuncts.empty()
                            ? Formula::lt(Term::min(), Term::min())
                            : Formula::disjunction(std::move(disjuncts));
  for (auto i = static_cast<int>(trace.rounds.size()); i >= 1; --i)
    sentence = Formula::quantify(trace.rounds[static_cast<std::size_t>(i - 1)].side,
                                 "x" + std::to_string(i), sentence);
  return sentence;
}

namespace {

/// Fresh bound-variable names r1, r2, ... for the alpha/epsilon builders.
class FreshNames {
 public:
  auto next() -> Term { return Term::var("r" + std::to_string(++count_)); }

 private:
  int count_ = 0;
};

auto not_above(Term u, Term v) -> FormulaPtr {
  return Formula::negation(Formula::lt(v, u));
}

auto strictly_between(Term lo, Term mid, Term hi) -> FormulaPtr {
  return Formula::conjunction({Formula::lt(lo, mid), Formula::lt(mid, hi)});
}

auto alpha(int ell, Term u, Term v, FreshNames& names) -> FormulaPtr;

auto epsilon(int ell, Term u, Term v, FreshNames& names) -> FormulaPtr {
  Term r = names.next();
  if (ell == 1)
    return Formula::exists(
        r.name(),
        Formula::conjunction({Formula::eq(r, u), alpha(1, r, v, names)}));
  int half = ell / 2;
  FormulaPtr lower = alpha(half, u, r, names);
  FormulaPtr upper = alpha(ell - half, r, v, names);
  return Formula::exists(r.name(),
                         Formula::conjunction({std::move(lower), std::move(upper)}));
}

auto alpha(int ell, Term u, Term v, FreshNames& names) -> FormulaPtr {
  if (ell == 1) {
    Term r = names.next();
    return Formula::conjunction(
        {not_above(u, v),
         Formula::forall(r.name(),
                         Formula::negation(strictly_between(u, r, v)))});
  }
  if (ell == 2) {
    Term r = names.next();
    Term s = names.next();
    return Formula::conjunction(
        {not_above(u, v),
         Formula::forall(
             r.name(),
             Formula::forall(
                 s.name(),
                 Formula::implication(
                     Formula::conjunction({strictly_between(u, r, v),
                                           strictly_between(u, s, v)}),
                     Formula::eq(r, s))))});
  }
  if (ell == 3) {
    Term r = names.next();
    Term s = names.next();
    Term t = names.next();
    return Formula::conjunction(
        {not_above(u, v),
         Formula::forall(
             r.name(),
             Formula::implication(
                 strictly_between(u, r, v),
                 Formula::exists(
                     s.name(),
                     Formula::conjunction(
                         {strictly_between(u, s, v),
                          Formula::forall(
                              t.name(),
                              Formula::implication(
                                  strictly_between(u, t, v),
                                  Formula::disjunction(
                                      {Formula::eq(t, r),
                                       Formula::eq(t, s)})))}))))});
  }
  Term r = names.next();
  int half = ell / 2;
  FormulaPtr lower = epsilon(ell % 2 == 0 ? half - 1 : half, u, r, names);
  FormulaPtr upper = epsilon(half, r, v, names);
  return Formula::conjunction(
      {not_above(u, v),
       Formula::forall(
           r.name(),
           Formula::implication(
               strictly_between(u, r, v),
               Formula::disjunction({std::move(lower), std::move(upper)})))});
}

}  // namespace

auto build_alpha(int ell) -> FormulaPtr {
  if (ell < 1) throw_usage("build_alpha requires ell >= 1");
  FreshNames names;
  return alpha(ell, Term::min(), Term::max(), names);
}

auto build_epsilon(int ell) -> FormulaPtr {
  if (ell < 2) throw_usage("build_epsilon requires ell >= 2");
  FreshNames names;
  return epsilon(ell, Term::min(), Term::max(), names);
}

namespace {

void collect_identifiers(const FormulaPtr& f, std::set<std::string>& out) {
  for (const auto& t : f->terms())
    if (t.kind() == Term::Kind::variable) out.insert(t.name());
  if (!f->var().empty()) out.insert(f->var());
  for (const auto& p : f->parts()) collect_identifiers(p, out);
}

auto rename_term(const Term& t, const std::map<std::string, std::string>& sub)
    -> Term {
  if (t.kind() != Term::Kind::variable) return t;
  auto hit = sub.find(t.name());
  return hit == sub.end() ? t : Term::var(hit->second);
}

/// Renames free variables of a quantifier-free formula.
auto rename_free(const FormulaPtr& f,
                 const std::map<std::string, std::string>& sub) -> FormulaPtr {
  switch (f->kind()) {
    case Formula::Kind::lt:
      return Formula::lt(rename_term(f->terms()[0], sub),
                         rename_term(f->terms()[1], sub));
    case Formula::Kind::eq:
      return Formula::eq(rename_term(f->terms()[0], sub),
                         rename_term(f->terms()[1], sub));
    case Formula::Kind::bit:
      return Formula::bit(rename_term(f->terms()[0], sub));
    case Formula::Kind::negation:
      return Formula::negation(rename_free(f->parts()[0], sub));
    case Formula::Kind::implication:
      return Formula::implication(rename_free(f->parts()[0], sub),
                                  rename_free(f->parts()[1], sub));
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      std::vector<FormulaPtr> parts;
      for (const auto& p : f->parts()) parts.push_back(rename_free(p, sub));
      return f->kind() == Formula::Kind::conjunction
                 ? Formula::conjunction(std::move(parts))
                 : Formula::disjunction(std::move(parts));
    }
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      throw_domain("pull_out consequent matrix must be quantifier-free");
  }
  throw_domain("unreachable formula kind");
}

}  // namespace

auto pull_out(const Pattern& outer, const std::vector<std::string>& outer_vars,
              const FormulaPtr& psi, const std::vector<GuardedBranch>& branches)
    -> FormulaPtr {
  if (outer.size() != outer_vars.size())
    throw_usage("outer prefix and outer variable list differ in length");
  std::set<std::string> outer_set;
  for (const auto& v : outer_vars) {
    (void)Term::var(v);
    if (!outer_set.insert(v).second)
      throw_usage("outer variables must be distinct");
  }
  if (psi == nullptr || qcount(psi) != 0)
    throw_domain("pull_out context must be quantifier-free");

  struct Piece {
    Pattern prefix;
    std::vector<std::string> vars;
    FormulaPtr matrix;
  };
  std::vector<Piece> pieces;
  for (const auto& branch : branches) {
    if (branch.guard == nullptr || qcount(branch.guard) != 0)
      throw_domain("pull_out guards must be quantifier-free");
    if (branch.consequent == nullptr)
      throw_domain("pull_out consequent is missing");
    Piece piece;
    piece.prefix = prenex_pattern(branch.consequent);
    FormulaPtr cursor = branch.consequent;
    std::set<std::string> own;
    while (cursor->kind() == Formula::Kind::exists ||
           cursor->kind() == Formula::Kind::forall) {
      if (outer_set.contains(cursor->var()))
        throw_domain("pull_out consequent requantifies an outer variable");
      if (!own.insert(cursor->var()).second)
        throw_domain("pull_out consequent requantifies its own variable");
      piece.vars.push_back(cursor->var());
      cursor = cursor->parts()[0];
    }
    piece.matrix = cursor;
    pieces.push_back(std::move(piece));
  }

  const Piece* longest = nullptr;
  for (const auto& piece : pieces)
    if (longest == nullptr || piece.prefix.size() > longest->prefix.size())
      longest = &piece;
  std::size_t depth = longest == nullptr ? 0 : longest->prefix.size();
  for (const auto& piece : pieces) {
    std::size_t offset = depth - piece.prefix.size();
    for (std::size_t j = 0; j < piece.prefix.size(); ++j)
      if (piece.prefix[j] != longest->prefix[offset + j])
        throw_domain(
            "pull_out consequent prefix is not a final segment of the longest "
            "prefix");
  }

  std::set<std::string> used = outer_set;
  collect_identifiers(psi, used);
  for (const auto& branch : branches) {
    collect_identifiers(branch.guard, used);
    collect_identifiers(branch.consequent, used);
  }
  std::string base = "y";
  auto taken = [&] {
    for (std::size_t j = 1; j <= depth; ++j)
      if (used.contains(base + std::to_string(j))) return true;
    return false;
  };
  while (taken()) base += "y";
  std::vector<std::string> fresh;
  for (std::size_t j = 1; j <= depth; ++j)
    fresh.push_back(base + std::to_string(j));

  std::vector<FormulaPtr> parts{psi};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::map<std::string, std::string> sub;
    std::size_t offset = depth - pieces[i].vars.size();
    for (std::size_t j = 0; j < pieces[i].vars.size(); ++j)
      sub.emplace(pieces[i].vars[j], fresh[offset + j]);
    parts.push_back(Formula::implication(branches[i].guard,
                                         rename_free(pieces[i].matrix, sub)));
  }
  FormulaPtr body = Formula::conjunction(std::move(parts));
  for (auto j = static_cast<int>(depth); j >= 1; --j)
    body = Formula::quantify(longest->prefix[static_cast<std::size_t>(j - 1)],
                             fresh[static_cast<std::size_t>(j - 1)], body);
  for (auto i = static_cast<int>(outer.size()); i >= 1; --i)
    body = Formula::quantify(outer[static_cast<std::size_t>(i - 1)],
                             outer_vars[static_cast<std::size_t>(i - 1)], body);
  return body;
}

}  // namespace msq
