#include "msq/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "msq/error.hpp"

namespace msq {

namespace {

const std::set<std::string> reserved_words = {
    "min", "max", "lt", "eq", "S", "not", "and", "or", "imp", "exists",
    "forall"};

auto is_identifier(const std::string& name) -> bool {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
    return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void require_identifier(const std::string& name) {
  if (!is_identifier(name))
    throw_usage("variable name must be an identifier: '" + name + "'");
  if (reserved_words.contains(name))
    throw_usage("variable name is reserved: '" + name + "'");
}

}  // namespace

auto Term::var(const std::string& name) -> Term {
  require_identifier(name);
  return Term(Kind::variable, name);
}

auto Term::text() const -> std::string {
  switch (kind_) {
    case Kind::min_const: return "min";
    case Kind::max_const: return "max";
    case Kind::variable: return name_;
  }
  return {};
}

namespace {

auto make_node(Formula::Kind kind, std::vector<Term> terms,
               std::vector<FormulaPtr> parts, std::string var) -> FormulaPtr {
  for (const auto& p : parts) {
    if (!p) throw_usage("formula part must not be null");
  }
  struct Access : Formula {
    Access(Kind k, std::vector<Term> t, std::vector<FormulaPtr> p,
           std::string v)
        : Formula(k, std::move(t), std::move(p), std::move(v)) {}
  };
  return std::make_shared<const Access>(kind, std::move(terms),
                                        std::move(parts), std::move(var));
}

}  // namespace

auto Formula::lt(Term a, Term b) -> FormulaPtr {
  return make_node(Kind::lt, {std::move(a), std::move(b)}, {}, "");
}

auto Formula::eq(Term a, Term b) -> FormulaPtr {
  return make_node(Kind::eq, {std::move(a), std::move(b)}, {}, "");
}

auto Formula::bit(Term t) -> FormulaPtr {
  return make_node(Kind::bit, {std::move(t)}, {}, "");
}

auto Formula::negation(FormulaPtr f) -> FormulaPtr {
  return make_node(Kind::negation, {}, {std::move(f)}, "");
}

auto Formula::conjunction(std::vector<FormulaPtr> parts) -> FormulaPtr {
  if (parts.empty()) throw_usage("conjunction needs at least one part");
  if (parts.size() == 1) return parts.front();
  return make_node(Kind::conjunction, {}, std::move(parts), "");
}

auto Formula::disjunction(std::vector<FormulaPtr> parts) -> FormulaPtr {
  if (parts.empty()) throw_usage("disjunction needs at least one part");
  if (parts.size() == 1) return parts.front();
  return make_node(Kind::disjunction, {}, std::move(parts), "");
}

auto Formula::implication(FormulaPtr premise, FormulaPtr conclusion)
    -> FormulaPtr {
  return make_node(Kind::implication, {},
                   {std::move(premise), std::move(conclusion)}, "");
}

auto Formula::exists(const std::string& var, FormulaPtr body) -> FormulaPtr {
  require_identifier(var);
  return make_node(Kind::exists, {}, {std::move(body)}, var);
}

auto Formula::forall(const std::string& var, FormulaPtr body) -> FormulaPtr {
  require_identifier(var);
  return make_node(Kind::forall, {}, {std::move(body)}, var);
}

auto Formula::quantify(Side side, const std::string& var, FormulaPtr body)
    -> FormulaPtr {
  return side == Side::exists ? exists(var, std::move(body))
                              : forall(var, std::move(body));
}

namespace {

void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  for (const Term& t : f->terms()) {
    if (t.kind() == Term::Kind::variable && !bound.contains(t.name()))
      out.insert(t.name());
  }
  bool quantifier = f->kind() == Formula::Kind::exists ||
                    f->kind() == Formula::Kind::forall;
  bool fresh = quantifier && bound.insert(f->var()).second;
  for (const auto& p : f->parts()) collect_free(p, bound, out);
  if (fresh) bound.erase(f->var());
}

}  // namespace

auto free_vars(const FormulaPtr& f) -> std::vector<std::string> {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return {out.begin(), out.end()};
}

auto qcount(const FormulaPtr& f) -> int {
  int n = f->kind() == Formula::Kind::exists ||
                  f->kind() == Formula::Kind::forall
              ? 1
              : 0;
  for (const auto& p : f->parts()) n += qcount(p);
  return n;
}

auto qrank(const FormulaPtr& f) -> int {
  int deepest = 0;
  for (const auto& p : f->parts()) deepest = std::max(deepest, qrank(p));
  bool quantifier = f->kind() == Formula::Kind::exists ||
                    f->kind() == Formula::Kind::forall;
  return deepest + (quantifier ? 1 : 0);
}

auto prenex_pattern(const FormulaPtr& f) -> Pattern {
  Pattern p;
  const Formula* node = f.get();
  while (node->kind() == Formula::Kind::exists ||
         node->kind() == Formula::Kind::forall) {
    p.push_back(node->kind() == Formula::Kind::exists ? Side::exists
                                                      : Side::forall);
    node = node->parts().front().get();
  }
  std::vector<FormulaPtr> pending(node->parts());
  while (!pending.empty()) {
    FormulaPtr current = std::move(pending.back());
    pending.pop_back();
    if (current->kind() == Formula::Kind::exists ||
        current->kind() == Formula::Kind::forall)
      throw_usage("formula is not in prenex form");
    pending.insert(pending.end(), current->parts().begin(),
                   current->parts().end());
  }
  return p;
}

namespace {

void print_formula(const FormulaPtr& f, std::ostream& os) {
  switch (f->kind()) {
    case Formula::Kind::lt:
      os << "(lt " << f->terms()[0].text() << ' ' << f->terms()[1].text()
         << ')';
      return;
    case Formula::Kind::eq:
      os << "(eq " << f->terms()[0].text() << ' ' << f->terms()[1].text()
         << ')';
      return;
    case Formula::Kind::bit:
      os << "(S " << f->terms()[0].text() << ')';
      return;
    case Formula::Kind::negation:
      os << "(not ";
      print_formula(f->parts()[0], os);
      os << ')';
      return;
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction:
      os << (f->kind() == Formula::Kind::conjunction ? "(and" : "(or");
      for (const auto& p : f->parts()) {
        os << ' ';
        print_formula(p, os);
      }
      os << ')';
      return;
    case Formula::Kind::implication:
      os << "(imp ";
      print_formula(f->parts()[0], os);
      os << ' ';
      print_formula(f->parts()[1], os);
      os << ')';
      return;
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      os << (f->kind() == Formula::Kind::exists ? "(exists " : "(forall ")
         << f->var() << ' ';
      print_formula(f->parts()[0], os);
      os << ')';
      return;
  }
}

struct Token {
  enum class Kind { lparen, rparen, symbol } kind;
  std::string text;
};

auto tokenize(const std::string& text) -> std::vector<Token> {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      tokens.push_back({Token::Kind::lparen, "("});
      ++i;
    } else if (c == ')') {
      tokens.push_back({Token::Kind::rparen, ")"});
      ++i;
    } else {
      std::size_t start = i;
      while (i < text.size() && text[i] != '(' && text[i] != ')' &&
             text[i] != '#' &&
             !std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
      tokens.push_back({Token::Kind::symbol, text.substr(start, i - start)});
    }
  }
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  auto parse() -> FormulaPtr {
    FormulaPtr f = parse_formula_expr();
    if (pos_ != tokens_.size())
      throw_domain("unexpected trailing input after sentence");
    return f;
  }

 private:
  auto peek() -> const Token& {
    if (pos_ >= tokens_.size()) throw_domain("unexpected end of sentence");
    return tokens_[pos_];
  }

  auto next() -> Token {
    Token t = peek();
    ++pos_;
    return t;
  }

  auto next_symbol(const std::string& role) -> std::string {
    Token t = next();
    if (t.kind != Token::Kind::symbol)
      throw_domain("expected " + role + ", found '" + t.text + "'");
    return t.text;
  }

  void expect_rparen() {
    if (next().kind != Token::Kind::rparen)
      throw_domain("expected ')' in sentence");
  }

  auto parse_term() -> Term {
    std::string s = next_symbol("a term");
    if (s == "min") return Term::min();
    if (s == "max") return Term::max();
    if (!is_identifier(s) || reserved_words.contains(s))
      throw_domain("invalid term: '" + s + "'");
    return Term::var(s);
  }

  auto parse_variable() -> std::string {
    std::string s = next_symbol("a variable");
    if (!is_identifier(s) || reserved_words.contains(s))
      throw_domain("invalid variable: '" + s + "'");
    return s;
  }

  auto parse_formula_expr() -> FormulaPtr {
    if (next().kind != Token::Kind::lparen)
      throw_domain("expected '(' at start of formula");
    std::string head = next_symbol("an operator");
    if (head == "lt" || head == "eq") {
      Term a = parse_term();
      Term b = parse_term();
      expect_rparen();
      return head == "lt" ? Formula::lt(a, b) : Formula::eq(a, b);
    }
    if (head == "S") {
      Term t = parse_term();
      expect_rparen();
      return Formula::bit(t);
    }
    if (head == "not") {
      FormulaPtr f = parse_formula_expr();
      expect_rparen();
      return Formula::negation(std::move(f));
    }
    if (head == "and" || head == "or") {
      std::vector<FormulaPtr> parts;
      while (peek().kind != Token::Kind::rparen)
        parts.push_back(parse_formula_expr());
      expect_rparen();
      if (parts.empty())
        throw_domain("'" + head + "' needs at least one part");
      return head == "and" ? Formula::conjunction(std::move(parts))
                           : Formula::disjunction(std::move(parts));
    }
    if (head == "imp") {
      FormulaPtr a = parse_formula_expr();
      FormulaPtr b = parse_formula_expr();
      expect_rparen();
      return Formula::implication(std::move(a), std::move(b));
    }
    if (head == "exists" || head == "forall") {
      std::string v = parse_variable();
      FormulaPtr body = parse_formula_expr();
      expect_rparen();
      return head == "exists" ? Formula::exists(v, std::move(body))
                              : Formula::forall(v, std::move(body));
    }
    throw_domain("unknown operator: '" + head + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

auto formula_text(const FormulaPtr& f) -> std::string {
  std::ostringstream os;
  print_formula(f, os);
  return os.str();
}

auto parse_formula(const std::string& text) -> FormulaPtr {
  return Parser(tokenize(text)).parse();
}

namespace {

constexpr int max_memo_rank = 24;

/// Memoizing evaluator. Quantifier subformulas are cached per assignment of
/// their free variables; on linear orders two assignments whose label
/// configurations agree after capping every gap at 2^rank are
/// indistinguishable for that many nested quantifiers, so they share one
/// cache entry across boards of any size.
class Evaluator {
 public:
  explicit Evaluator(const FormulaPtr& root) : root_(root) { analyze(root_); }

  auto run(const Board& b, const std::vector<std::pair<std::string, int>>& env)
      -> bool {
    board_ = &b;
    env_ = env;
    if (board_->kind() == BoardKind::bits) {
      auto [it, added] = string_ids_.try_emplace(
          board_->content(), static_cast<int>(string_ids_.size()));
      string_id_ = it->second;
    }
    return eval_node(root_.get());
  }

 private:
  struct NodeInfo {
    std::vector<std::string> free_sorted;
    int rank = 0;
    std::map<std::vector<int>, bool> memo;
    // Quantifier-free matrix under a pure quantifier chain, when one exists;
    // lets the node resolve early once the outer bindings already decide the
    // matrix.
    const Formula* matrix = nullptr;
    std::vector<std::string> pending;
    bool matrix_has_bit = false;
  };

  static auto quantifier_free(const Formula* f) -> bool {
    if (f->kind() == Formula::Kind::exists ||
        f->kind() == Formula::Kind::forall)
      return false;
    for (const auto& p : f->parts())
      if (!quantifier_free(p.get())) return false;
    return true;
  }

  static auto contains_bit(const Formula* f) -> bool {
    if (f->kind() == Formula::Kind::bit) return true;
    for (const auto& p : f->parts())
      if (contains_bit(p.get())) return true;
    return false;
  }

  void analyze(const FormulaPtr& f) {
    if (!visited_.insert(f.get()).second) return;
    bool quantifier = f->kind() == Formula::Kind::exists ||
                      f->kind() == Formula::Kind::forall;
    if (quantifier) {
      std::set<std::string> bound;
      std::set<std::string> free;
      collect_free(f, bound, free);
      NodeInfo info;
      info.free_sorted = {free.begin(), free.end()};
      info.rank = qrank(f);
      const Formula* cur = f.get();
      std::vector<std::string> pending;
      while (cur->kind() == Formula::Kind::exists ||
             cur->kind() == Formula::Kind::forall) {
        pending.push_back(cur->var());
        cur = cur->parts()[0].get();
      }
      if (quantifier_free(cur)) {
        info.matrix = cur;
        info.pending = std::move(pending);
        info.matrix_has_bit = contains_bit(cur);
      }
      info_.emplace(f.get(), std::move(info));
    }
    for (const auto& p : f->parts()) analyze(p);
  }

  auto lookup(const std::string& name) -> int {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw_usage("unbound variable: '" + name + "'");
  }

  auto try_lookup(const std::string& name) const -> const int* {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }

  auto term_value_partial(const Term& t) const -> std::optional<int> {
    switch (t.kind()) {
      case Term::Kind::min_const:
        return 0;
      case Term::Kind::max_const:
        return board_->size() - 1;
      case Term::Kind::variable: {
        const int* v = try_lookup(t.name());
        if (v == nullptr) return std::nullopt;
        return *v;
      }
    }
    return std::nullopt;
  }

  // Three-valued evaluation of a quantifier-free matrix under the current
  // partial assignment: 0 false, 1 true, 2 undecided.
  auto three_val(const Formula* f) const -> int {
    switch (f->kind()) {
      case Formula::Kind::lt: {
        auto a = term_value_partial(f->terms()[0]);
        auto b = term_value_partial(f->terms()[1]);
        if (!a.has_value() || !b.has_value()) return 2;
        return *a < *b ? 1 : 0;
      }
      case Formula::Kind::eq: {
        auto a = term_value_partial(f->terms()[0]);
        auto b = term_value_partial(f->terms()[1]);
        if (!a.has_value() || !b.has_value()) return 2;
        return *a == *b ? 1 : 0;
      }
      case Formula::Kind::bit: {
        auto a = term_value_partial(f->terms()[0]);
        if (!a.has_value()) return 2;
        return board_->bit_at(*a) == 1 ? 1 : 0;
      }
      case Formula::Kind::negation: {
        int v = three_val(f->parts()[0].get());
        return v == 2 ? 2 : 1 - v;
      }
      case Formula::Kind::conjunction: {
        int out = 1;
        for (const auto& p : f->parts()) {
          int v = three_val(p.get());
          if (v == 0) return 0;
          if (v == 2) out = 2;
        }
        return out;
      }
      case Formula::Kind::disjunction: {
        int out = 0;
        for (const auto& p : f->parts()) {
          int v = three_val(p.get());
          if (v == 1) return 1;
          if (v == 2) out = 2;
        }
        return out;
      }
      case Formula::Kind::implication: {
        int a = three_val(f->parts()[0].get());
        int b = three_val(f->parts()[1].get());
        if (a == 0 || b == 1) return 1;
        if (a == 1 && b == 0) return 0;
        return 2;
      }
      case Formula::Kind::exists:
      case Formula::Kind::forall:
        return 2;
    }
    return 2;
  }

  auto shortcut_allowed(const NodeInfo& info) const -> bool {
    if (info.matrix == nullptr) return false;
    if (info.matrix_has_bit && board_->kind() != BoardKind::bits) return false;
    for (const auto& name : info.pending) {
      if (try_lookup(name) != nullptr) return false;
    }
    return true;
  }

  auto term_value(const Term& t) -> int {
    switch (t.kind()) {
      case Term::Kind::min_const: return 0;
      case Term::Kind::max_const: return board_->size() - 1;
      case Term::Kind::variable: return lookup(t.name());
    }
    return 0;
  }

  auto config_key(NodeInfo& info) -> std::vector<int> {
    std::vector<int> key;
    if (board_->kind() == BoardKind::bits) {
      key.push_back(1);
      key.push_back(string_id_);
      for (const auto& name : info.free_sorted) key.push_back(lookup(name));
      return key;
    }
    std::vector<int> points;
    points.push_back(0);
    points.push_back(board_->size() - 1);
    std::vector<int> values;
    values.reserve(info.free_sorted.size());
    for (const auto& name : info.free_sorted) {
      values.push_back(lookup(name));
      points.push_back(values.back());
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    key.push_back(0);
    for (int v : values) {
      key.push_back(static_cast<int>(
          std::lower_bound(points.begin(), points.end(), v) - points.begin()));
    }
    int cap = 1 << std::min(info.rank, max_memo_rank);
    for (std::size_t i = 1; i < points.size(); ++i)
      key.push_back(std::min(points[i] - points[i - 1], cap));
    return key;
  }

  auto eval_node(const Formula* f) -> bool {
    switch (f->kind()) {
      case Formula::Kind::lt:
        return term_value(f->terms()[0]) < term_value(f->terms()[1]);
      case Formula::Kind::eq:
        return term_value(f->terms()[0]) == term_value(f->terms()[1]);
      case Formula::Kind::bit:
        if (board_->kind() != BoardKind::bits)
          throw_usage("S atom evaluated on a linear order");
        return board_->bit_at(term_value(f->terms()[0])) == 1;
      case Formula::Kind::negation:
        return !eval_node(f->parts()[0].get());
      case Formula::Kind::conjunction:
        for (const auto& p : f->parts()) {
          if (!eval_node(p.get())) return false;
        }
        return true;
      case Formula::Kind::disjunction:
        for (const auto& p : f->parts()) {
          if (eval_node(p.get())) return true;
        }
        return false;
      case Formula::Kind::implication:
        return !eval_node(f->parts()[0].get()) ||
               eval_node(f->parts()[1].get());
      case Formula::Kind::exists:
      case Formula::Kind::forall: {
        NodeInfo& info = info_.at(f);
        std::vector<int> key = config_key(info);
        if (auto it = info.memo.find(key); it != info.memo.end())
          return it->second;
        if (shortcut_allowed(info)) {
          int v = three_val(info.matrix);
          if (v != 2) {
            bool decided = v == 1;
            info.memo.emplace(std::move(key), decided);
            return decided;
          }
        }
        bool want = f->kind() == Formula::Kind::exists;
        bool result = !want;
        const Formula* body = f->parts()[0].get();
        env_.emplace_back(f->var(), 0);
        for (int p = 0; p < board_->size(); ++p) {
          env_.back().second = p;
          if (eval_node(body) == want) {
            result = want;
            break;
          }
        }
        env_.pop_back();
        info.memo.emplace(std::move(key), result);
        return result;
      }
    }
    return false;
  }

  FormulaPtr root_;
  std::unordered_set<const Formula*> visited_;
  std::unordered_map<const Formula*, NodeInfo> info_;
  std::unordered_map<std::string, int> string_ids_;
  const Board* board_ = nullptr;
  int string_id_ = 0;
  std::vector<std::pair<std::string, int>> env_;
};

auto env_to_stack(const Env& env, const Board& b)
    -> std::vector<std::pair<std::string, int>> {
  std::vector<std::pair<std::string, int>> stack;
  stack.reserve(env.size());
  for (const auto& [name, pos] : env) {
    if (pos < 0 || pos >= b.size())
      throw_usage("assignment of '" + name + "' is off the board");
    stack.emplace_back(name, pos);
  }
  return stack;
}

}  // namespace

auto eval(const FormulaPtr& f, const Board& b, const Env& env) -> bool {
  return Evaluator(f).run(b, env_to_stack(env, b));
}

auto separates(const FormulaPtr& f, const BoardSet& accept,
               const BoardSet& reject) -> bool {
  if (!free_vars(f).empty())
    throw_usage("separates needs a closed sentence");
  Evaluator evaluator(f);
  for (const auto& b : accept) {
    if (!evaluator.run(b, {})) return false;
  }
  for (const auto& b : reject) {
    if (evaluator.run(b, {})) return false;
  }
  return true;
}

}  // namespace msq
