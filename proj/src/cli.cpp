#include "msq/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "msq/board.hpp"
#include "msq/bounds.hpp"
#include "msq/error.hpp"
#include "msq/formula.hpp"
#include "msq/game.hpp"
#include "msq/order_strategies.hpp"
#include "msq/solver.hpp"
#include "msq/string_strategies.hpp"
#include "msq/synthesis.hpp"

namespace msq {

namespace {

using nlohmann::ordered_json;

/// Flag storage shared by all subcommands; CLI11 writes a field only when
/// the matching flag is present, so presence is checked through count().
struct Options {
  int ell = 1;
  int max = 127;
  std::string side = "best";
  int t = 3;
  double r = 2.5;
  long long n = 1;
  int k = 1;
  std::string target;
  std::string left_file;
  std::string right_file;
  std::string accept_file;
  std::string reject_file;
  std::string sentence_file;
  int max_rounds = -1;
  int max_right = 0;
  bool no_prune = false;
  std::string format = "text";
  long long seed = 0;
  std::string game = "ms";
  std::string first;
  std::string strategy;
};

auto start_choice_of(const std::string& name) -> StartChoice {
  if (name == "exists") return StartChoice::exists;
  if (name == "forall") return StartChoice::forall;
  if (name == "best") return StartChoice::best;
  throw_usage("unknown side '" + name + "' (expected exists, forall, or best)");
}

auto resolve_side(const std::string& name, int ell) -> Side {
  const StartChoice choice = start_choice_of(name);
  if (choice == StartChoice::exists) return Side::exists;
  if (choice == StartChoice::forall) return Side::forall;
  return best_alternating_side(ell);
}

auto side_name(Side side) -> std::string {
  return side == Side::exists ? "exists" : "forall";
}

auto two_decimals(double value) -> std::string {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

void ensure_bits(const std::string& value, const std::string& flag) {
  if (value.empty()) throw_usage(flag + " must be a nonempty 0/1 string");
  for (char c : value) {
    if (c != '0' && c != '1') throw_usage(flag + " must be a 0/1 string");
  }
}

/// Reads a string-set file: newline-delimited 0/1 strings, '#' comment
/// lines ignored, all strings of one shared length, no duplicates.
auto load_string_set(const std::string& path) -> std::vector<std::string> {
  std::ifstream in(path);
  if (!in) throw_usage("cannot read string-set file '" + path + "'");
  std::vector<std::string> strings;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string where = path + ":" + std::to_string(line_no);
    for (char c : line) {
      if (c != '0' && c != '1') {
        throw_usage(where + ": strings must be over {0,1}");
      }
    }
    if (!strings.empty() && line.size() != strings.front().size()) {
      throw_usage(where + ": all strings in a set must share one length");
    }
    if (!seen.insert(line).second) {
      throw_usage(where + ": duplicate string '" + line + "'");
    }
    strings.push_back(line);
  }
  if (strings.empty()) {
    throw_usage("string-set file '" + path + "' contains no strings");
  }
  return strings;
}

auto boards_of(const std::vector<std::string>& strings) -> BoardSet {
  std::vector<Board> boards;
  boards.reserve(strings.size());
  for (const std::string& s : strings) boards.push_back(Board::bits(s));
  return BoardSet(std::move(boards));
}

auto load_sentence(const std::string& path) -> FormulaPtr {
  std::ifstream in(path);
  if (!in) throw_usage("cannot read sentence file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_formula(text.str());
}

auto random_bits(std::mt19937_64& rng, int n) -> std::string {
  std::string s(static_cast<std::size_t>(n), '0');
  for (char& c : s) c = (rng() & 1u) != 0 ? '1' : '0';
  return s;
}

/// An instance plus the strategy to play on it, shared by simulate and
/// synthesize.
struct Prepared {
  BoardSet left;
  BoardSet right;
  std::shared_ptr<Strategy> strategy;
};

auto prepare_cma(const CLI::App& cmd, const Options& opt, Report& report)
    -> Prepared {
  if (cmd.count("--ell") == 0) throw_usage("cma needs --ell");
  const int ell = opt.ell;
  const int max_right = cmd.count("--max-right") != 0 ? opt.max_right
                                                      : 2 * ell + 2;
  const Side side = resolve_side(opt.side, ell);
  report.parameters["ell"] = ell;
  report.parameters["side"] = side_name(side);
  report.parameters["max_right"] = max_right;
  Instance instance = make_order_instance(ell, max_right);
  return {std::move(instance.left), std::move(instance.right),
          cma_strategy(ell, side)};
}

auto prepare_order_one_vs_all(const CLI::App& cmd, const Options& opt,
                              Report& report) -> Prepared {
  if (cmd.count("--ell") == 0) throw_usage("order-one-vs-all needs --ell");
  const int ell = opt.ell;
  const int max_right = cmd.count("--max-right") != 0 ? opt.max_right
                                                      : 2 * ell + 2;
  report.parameters["ell"] = ell;
  report.parameters["max_right"] = max_right;
  std::vector<Board> right;
  for (int len = 1; len <= max_right; ++len) {
    if (len != ell) right.push_back(Board::order(len));
  }
  if (right.empty()) {
    throw_usage("--max-right leaves no boards on the right side");
  }
  return {BoardSet({Board::order(ell)}), BoardSet(std::move(right)),
          order_one_vs_all_strategy(ell)};
}

auto prepare_one_vs_one(const CLI::App& cmd, const Options& opt,
                        Report& report) -> Prepared {
  std::string w;
  std::string other;
  if (cmd.count("--k") != 0) {
    const auto pair = hard_pair(opt.k);
    w = pair.first;
    other = pair.second;
    report.parameters["k"] = opt.k;
  } else if (cmd.count("--left") != 0 || cmd.count("--right") != 0) {
    if (cmd.count("--left") == 0 || cmd.count("--right") == 0) {
      throw_usage("one-vs-one needs both --left and --right");
    }
    const auto left_strings = load_string_set(opt.left_file);
    const auto right_strings = load_string_set(opt.right_file);
    if (left_strings.size() != 1 || right_strings.size() != 1) {
      throw_usage("one-vs-one expects exactly one string in each file");
    }
    w = left_strings.front();
    other = right_strings.front();
    report.parameters["left"] = opt.left_file;
    report.parameters["right"] = opt.right_file;
  } else if (cmd.count("--n") != 0) {
    const int n = static_cast<int>(opt.n);
    std::mt19937_64 rng(static_cast<std::uint64_t>(opt.seed));
    w = random_bits(rng, n);
    do {
      other = random_bits(rng, n);
    } while (other == w);
    report.parameters["n"] = n;
    report.parameters["seed"] = opt.seed;
  } else {
    throw_usage("one-vs-one needs --k, --n, or --left/--right");
  }
  report.parameters["left_string"] = w;
  report.parameters["right_string"] = other;
  return {BoardSet({Board::bits(w)}), BoardSet({Board::bits(other)}),
          string_one_vs_one(w, other)};
}

auto prepare_one_vs_all(const CLI::App& cmd, const Options& opt,
                        Report& report) -> Prepared {
  if (cmd.count("--target") == 0) throw_usage("one-vs-all needs --target");
  ensure_bits(opt.target, "--target");
  const int n = static_cast<int>(opt.target.size());
  report.parameters["target"] = opt.target;
  report.parameters["t"] = opt.t;
  const StrategyParams params{opt.t, opt.r, !opt.no_prune};
  return {BoardSet({Board::bits(opt.target)}),
          boards_of(string_complement({opt.target}, n)),
          string_one_vs_all(opt.target, params)};
}

auto prepare_many_vs_all(const CLI::App& cmd, const Options& opt,
                         Report& report) -> Prepared {
  if (cmd.count("--accept") == 0) throw_usage("many-vs-all needs --accept");
  const auto targets = load_string_set(opt.accept_file);
  const int n = static_cast<int>(targets.front().size());
  report.parameters["accept"] = opt.accept_file;
  report.parameters["t"] = opt.t;
  const StrategyParams params{opt.t, opt.r, !opt.no_prune};
  return {boards_of(targets), boards_of(string_complement(targets, n)),
          string_many_vs_all(targets, params)};
}

auto prepare_any_vs_any(const CLI::App& cmd, const Options& opt,
                        Report& report) -> Prepared {
  if (!(opt.r > 1.0)) throw_usage("--r must be greater than 1");
  std::vector<std::string> accept;
  std::vector<std::string> reject;
  if (cmd.count("--accept") != 0 || cmd.count("--reject") != 0) {
    if (cmd.count("--accept") == 0 || cmd.count("--reject") == 0) {
      throw_usage("any-vs-any needs both --accept and --reject");
    }
    accept = load_string_set(opt.accept_file);
    reject = load_string_set(opt.reject_file);
    if (accept.front().size() != reject.front().size()) {
      throw_usage("accept and reject sets must share one length");
    }
    const std::set<std::string> accepted(accept.begin(), accept.end());
    for (const std::string& s : reject) {
      if (accepted.count(s) != 0) {
        throw_usage("accept and reject sets overlap on '" + s + "'");
      }
    }
    report.parameters["accept"] = opt.accept_file;
    report.parameters["reject"] = opt.reject_file;
  } else if (cmd.count("--n") != 0) {
    if (opt.n > 16) {
      throw_usage("--n above 16 is not supported for seeded partitions");
    }
    const int n = static_cast<int>(opt.n);
    const auto all = string_complement({}, n);
    std::mt19937_64 rng(static_cast<std::uint64_t>(opt.seed));
    do {
      accept.clear();
      reject.clear();
      for (const std::string& s : all) {
        ((rng() & 1u) != 0 ? accept : reject).push_back(s);
      }
    } while (accept.empty() || reject.empty());
    report.parameters["n"] = n;
    report.parameters["seed"] = opt.seed;
  } else {
    throw_usage("any-vs-any needs --accept/--reject or --n");
  }
  report.parameters["t"] = opt.t;
  report.parameters["r"] = opt.r;
  const StrategyParams params{opt.t, opt.r, !opt.no_prune};
  return {boards_of(accept), boards_of(reject),
          string_any_vs_any(accept, reject, params)};
}

auto prepare_simulation(const std::string& strategy, const CLI::App& cmd,
                        const Options& opt, Report& report) -> Prepared {
  if (strategy == "cma") return prepare_cma(cmd, opt, report);
  if (strategy == "order-one-vs-all") {
    return prepare_order_one_vs_all(cmd, opt, report);
  }
  if (strategy == "one-vs-one") return prepare_one_vs_one(cmd, opt, report);
  if (strategy == "one-vs-all") return prepare_one_vs_all(cmd, opt, report);
  if (strategy == "many-vs-all") return prepare_many_vs_all(cmd, opt, report);
  if (strategy == "any-vs-any") return prepare_any_vs_any(cmd, opt, report);
  throw_usage("unknown strategy '" + strategy + "'");
}

auto run_table(const Options& opt) -> Report {
  Report report;
  report.command = "table";
  report.parameters["max"] = opt.max;
  ordered_json rows = ordered_json::array();
  for (int ell = 1; ell <= opt.max; ++ell) {
    rows.push_back({ell, q_star(ell, StartChoice::forall),
                    q_star(ell, StartChoice::exists),
                    q_star(ell, StartChoice::best), rank(ell)});
  }
  report.results["columns"] = {"ell", "q_forall", "q_exists", "q_star",
                               "rank"};
  report.results["rows"] = std::move(rows);
  report.results["count"] = opt.max;
  return report;
}

auto run_qstar(const Options& opt) -> Report {
  Report report;
  report.command = "qstar";
  report.parameters["ell"] = opt.ell;
  report.parameters["side"] = opt.side;
  report.results["q_star"] = q_star(opt.ell, start_choice_of(opt.side));
  report.results["rank"] = rank(opt.ell);
  return report;
}

auto run_pattern(const Options& opt) -> Report {
  Report report;
  report.command = "pattern";
  report.parameters["ell"] = opt.ell;
  report.parameters["side"] = opt.side;
  const StartChoice choice = start_choice_of(opt.side);
  const Pattern pattern =
      choice == StartChoice::best
          ? alternating_pattern(opt.ell)
          : pattern_of(opt.ell, resolve_side(opt.side, opt.ell));
  report.results["pattern"] = pattern_text(pattern);
  report.results["rounds"] = static_cast<int>(pattern.size());
  report.results["first_side"] = std::string(1, side_char(pattern.front()));
  return report;
}

auto run_simulate(const CLI::App& cmd, const Options& opt) -> Report {
  Report report;
  report.command = "simulate";
  report.parameters["strategy"] = opt.strategy;
  Prepared prepared = prepare_simulation(opt.strategy, cmd, opt, report);
  const int max_rounds = cmd.count("--max-rounds") != 0 ? opt.max_rounds : -1;
  if (max_rounds >= 0) report.parameters["max_rounds"] = max_rounds;
  const bool prune_after = !opt.no_prune;
  report.parameters["prune"] = prune_after;
  const PlayResult outcome =
      play(prepared.left, prepared.right, *prepared.strategy, max_rounds,
           prune_after);
  report.results["strategy"] = prepared.strategy->name();
  report.results["left_size"] = prepared.left.size();
  report.results["right_size"] = prepared.right.size();
  report.results["pattern"] = pattern_text(prepared.strategy->pattern());
  report.results["declared_rounds"] =
      static_cast<int>(prepared.strategy->pattern().size());
  report.results["rounds_played"] =
      static_cast<int>(outcome.trace.rounds.size());
  report.results["won"] = outcome.won_at.has_value();
  if (outcome.won_at.has_value()) {
    report.results["won_at"] = *outcome.won_at;
  } else {
    report.results["won_at"] = nullptr;
  }
  if (opt.strategy == "one-vs-all" || opt.strategy == "many-vs-all") {
    report.results["epsilon"] = 1.0 / std::log2(static_cast<double>(opt.t));
    report.results["epsilon_formula"] = "1/log2(t)";
  } else if (opt.strategy == "any-vs-any") {
    report.results["epsilon"] = std::log2(opt.r) - 1.0;
    report.results["epsilon_formula"] = "log2(r)-1";
  }
  return report;
}

auto run_synthesize(const CLI::App& cmd, const Options& opt) -> Report {
  Report report;
  report.command = "synthesize";
  const int modes = (cmd.count("--ell") != 0 ? 1 : 0) +
                    (cmd.count("--k") != 0 ? 1 : 0) +
                    (cmd.count("--target") != 0 ? 1 : 0);
  if (modes != 1) {
    throw_usage("synthesize needs exactly one of --ell, --k, --target");
  }
  Prepared prepared;
  if (cmd.count("--ell") != 0) {
    report.parameters["mode"] = "cma";
    prepared = prepare_cma(cmd, opt, report);
  } else if (cmd.count("--k") != 0) {
    report.parameters["mode"] = "one-vs-one";
    prepared = prepare_one_vs_one(cmd, opt, report);
  } else {
    report.parameters["mode"] = "one-vs-all";
    prepared = prepare_one_vs_all(cmd, opt, report);
  }
  const int max_rounds = cmd.count("--max-rounds") != 0 ? opt.max_rounds : -1;
  if (max_rounds >= 0) report.parameters["max_rounds"] = max_rounds;
  const bool prune_after = !opt.no_prune;
  report.parameters["prune"] = prune_after;
  const PlayResult outcome =
      play(prepared.left, prepared.right, *prepared.strategy, max_rounds,
           prune_after);
  if (!outcome.won_at.has_value()) {
    throw_domain(
        "the strategy did not win within the budget, so no separating "
        "sentence can be synthesized from this run");
  }
  const FormulaPtr sentence = synthesize_from_trace(outcome.trace);
  report.results["sentence"] = formula_text(sentence);
  report.results["qcount"] = qcount(sentence);
  report.results["qrank"] = qrank(sentence);
  report.results["pattern"] = pattern_text(prenex_pattern(sentence));
  report.results["won_at"] = *outcome.won_at;
  if (cmd.count("--sentence") != 0) {
    std::ofstream out(opt.sentence_file);
    if (!out) {
      throw_usage("cannot write sentence file '" + opt.sentence_file + "'");
    }
    out << formula_text(sentence) << "\n";
    report.results["sentence_file"] = opt.sentence_file;
  }
  return report;
}

auto run_verify(const Options& opt) -> Report {
  Report report;
  report.command = "verify";
  report.parameters["sentence"] = opt.sentence_file;
  report.parameters["accept"] = opt.accept_file;
  report.parameters["reject"] = opt.reject_file;
  const FormulaPtr sentence = load_sentence(opt.sentence_file);
  const BoardSet accept = boards_of(load_string_set(opt.accept_file));
  const BoardSet reject = boards_of(load_string_set(opt.reject_file));
  report.results["separates"] = separates(sentence, accept, reject);
  report.results["qcount"] = qcount(sentence);
  report.results["qrank"] = qrank(sentence);
  report.results["pattern"] = pattern_text(prenex_pattern(sentence));
  report.results["accept_size"] = accept.size();
  report.results["reject_size"] = reject.size();
  return report;
}

auto variation_json(const std::vector<VariationRound>& variation)
    -> ordered_json {
  ordered_json rounds = ordered_json::array();
  for (const VariationRound& round : variation) {
    ordered_json moves = ordered_json::array();
    for (const auto& [board, position] : round.moves) {
      moves.push_back({{"board", board}, {"position", position}});
    }
    rounds.push_back(
        {{"side", std::string(1, side_char(round.side))}, {"moves", moves}});
  }
  return rounds;
}

auto run_solve(const CLI::App& cmd, const Options& opt) -> Report {
  Report report;
  report.command = "solve";
  report.parameters["game"] = opt.game;
  const bool by_ell = cmd.count("--ell") != 0;
  const bool by_files = cmd.count("--left") != 0 || cmd.count("--right") != 0;
  if (by_ell && by_files) {
    throw_usage("solve takes either --ell or --left/--right, not both");
  }
  if (!by_ell && !by_files) {
    throw_usage("solve needs --ell or --left/--right");
  }
  BoardSet left;
  BoardSet right;
  if (by_ell) {
    const int max_right = cmd.count("--max-right") != 0 ? opt.max_right
                                                        : 2 * opt.ell + 2;
    report.parameters["ell"] = opt.ell;
    report.parameters["max_right"] = max_right;
    Instance instance = make_order_instance(opt.ell, max_right);
    left = std::move(instance.left);
    right = std::move(instance.right);
  } else {
    if (cmd.count("--left") == 0 || cmd.count("--right") == 0) {
      throw_usage("solve needs both --left and --right");
    }
    report.parameters["left"] = opt.left_file;
    report.parameters["right"] = opt.right_file;
    left = boards_of(load_string_set(opt.left_file));
    right = boards_of(load_string_set(opt.right_file));
  }
  const int max_rounds = cmd.count("--max-rounds") != 0
                             ? opt.max_rounds
                             : solver_caps().rounds;
  report.parameters["max_rounds"] = max_rounds;
  if (opt.game == "ms") {
    std::optional<Side> first;
    if (cmd.count("--first") != 0) {
      first = opt.first == "exists" ? Side::exists : Side::forall;
      report.parameters["first"] = opt.first;
    }
    const bool prune_after = !opt.no_prune;
    report.parameters["prune"] = prune_after;
    const MsValue value = solve_ms(left, right, max_rounds, first,
                                   prune_after);
    report.results["winnable"] = value.winnable;
    if (value.winnable) {
      report.results["rounds"] = value.rounds;
      report.results["pattern"] = pattern_text(value.pattern);
      report.results["variation"] = variation_json(value.variation);
    } else {
      report.results["note"] =
          "no Spoiler win within " + std::to_string(max_rounds) +
          " rounds; definite for the instance truncated at this budget";
    }
    return report;
  }
  if (cmd.count("--first") != 0) {
    throw_usage("--first applies only to --game ms");
  }
  const std::optional<int> value = solve_ef(left, right, max_rounds);
  report.results["separable"] = value.has_value();
  if (value.has_value()) {
    report.results["value"] = *value;
  } else {
    report.results["value"] = nullptr;
    report.results["note"] =
        "no pairwise separation within " + std::to_string(max_rounds) +
        " rounds; definite for the instance truncated at this budget";
  }
  return report;
}

auto run_hardpair(const Options& opt) -> Report {
  Report report;
  report.command = "hardpair";
  report.parameters["k"] = opt.k;
  const auto pair = hard_pair(opt.k);
  const auto n = static_cast<long long>(pair.first.size());
  int log_floor = 0;
  while ((1LL << (log_floor + 1)) <= n) ++log_floor;
  report.results["n"] = n;
  report.results["left"] = pair.first;
  report.results["right"] = pair.second;
  report.results["log_n_floor"] = log_floor;
  return report;
}

auto run_bound(const Options& opt) -> Report {
  Report report;
  report.command = "bound";
  const int n = static_cast<int>(opt.n);
  report.parameters["n"] = n;
  report.results["bound"] = counting_lower_bound(n);
  const double ratio = static_cast<double>(n) / std::log2(n);
  report.results["note"] = "≥ n/log n = " + two_decimals(ratio);
  return report;
}

auto run_feasible(const CLI::App& cmd, const Options& opt) -> Report {
  Report report;
  report.command = "feasible";
  const int modes = (cmd.count("--n") != 0 ? 1 : 0) +
                    (cmd.count("--t") != 0 ? 1 : 0) +
                    (cmd.count("--r") != 0 ? 1 : 0);
  if (modes != 1) {
    throw_usage("feasible needs exactly one of --n, --t, --r");
  }
  if (cmd.count("--n") != 0) {
    report.parameters["n"] = opt.n;
    report.results["min_m"] = min_m(opt.n);
    report.results["note"] = "smallest m with m! >= n";
    return report;
  }
  if (cmd.count("--t") != 0) {
    const int window = cmd.count("--max") != 0 ? opt.max : 10000;
    report.parameters["t"] = opt.t;
    report.parameters["window"] = window;
    report.results["threshold"] = stirling_threshold(opt.t, window);
    report.results["epsilon"] = 1.0 / std::log2(static_cast<double>(opt.t));
    report.results["epsilon_formula"] = "1/log2(t)";
    report.results["note"] =
        "ceil(log_t n)! >= n holds for n in [threshold, threshold+window]";
    return report;
  }
  if (!(opt.r > 1.0)) throw_usage("--r must be greater than 1");
  const int window = cmd.count("--max") != 0 ? opt.max : 200;
  report.parameters["r"] = opt.r;
  report.parameters["window"] = window;
  report.results["threshold"] = realr_threshold(opt.r, window);
  report.results["epsilon"] = std::log2(opt.r) - 1.0;
  report.results["epsilon_formula"] = "log2(r)-1";
  report.results["note"] =
      "ceil(n/log_r n)! >= 2^n holds for n in [threshold, threshold+window]";
  return report;
}

auto run_command(const CLI::App& cmd, const Options& opt) -> Report {
  const std::string name = cmd.get_name();
  if (name == "table") return run_table(opt);
  if (name == "qstar") return run_qstar(opt);
  if (name == "pattern") return run_pattern(opt);
  if (name == "simulate") return run_simulate(cmd, opt);
  if (name == "synthesize") return run_synthesize(cmd, opt);
  if (name == "verify") return run_verify(opt);
  if (name == "solve") return run_solve(cmd, opt);
  if (name == "hardpair") return run_hardpair(opt);
  if (name == "bound") return run_bound(opt);
  if (name == "feasible") return run_feasible(cmd, opt);
  throw_usage("unknown subcommand '" + name + "'");
}

void add_format_option(CLI::App* sub, Options& opt) {
  sub->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "tsv", "text"}));
}

void register_commands(CLI::App& app, Options& opt) {
  const auto side_values = CLI::IsMember({"exists", "forall", "best"});

  auto* table = app.add_subcommand(
      "table", "round counts and rank for every length up to --max");
  table->add_option("--max", opt.max, "largest length")
      ->check(CLI::Range(1, 1 << 20));
  add_format_option(table, opt);

  auto* qstar = app.add_subcommand(
      "qstar", "alternation-strategy round count for one length");
  qstar->add_option("--ell", opt.ell, "order length")
      ->required()
      ->check(CLI::Range(1, 1 << 20));
  qstar->add_option("--side", opt.side, "first side")->check(side_values);
  add_format_option(qstar, opt);

  auto* pattern = app.add_subcommand(
      "pattern", "quantifier pattern played on one length");
  pattern->add_option("--ell", opt.ell, "order length")
      ->required()
      ->check(CLI::Range(1, 1 << 20));
  pattern->add_option("--side", opt.side, "first side")->check(side_values);
  add_format_option(pattern, opt);

  auto* simulate = app.add_subcommand(
      "simulate", "play a named strategy and report the outcome");
  simulate
      ->add_option("strategy", opt.strategy,
                   "cma | order-one-vs-all | one-vs-one | one-vs-all | "
                   "many-vs-all | any-vs-any")
      ->required()
      ->check(CLI::IsMember({"cma", "order-one-vs-all", "one-vs-one",
                             "one-vs-all", "many-vs-all", "any-vs-any"}));
  simulate->add_option("--ell", opt.ell, "order length")
      ->check(CLI::Range(1, 4096));
  simulate->add_option("--side", opt.side, "first side")->check(side_values);
  simulate->add_option("--t", opt.t, "encoding radix")
      ->check(CLI::Range(2, 1000000));
  simulate->add_option("--r", opt.r, "real radix");
  simulate->add_option("--n", opt.n, "string length / partition size")
      ->check(CLI::Range(1, 4096));
  simulate->add_option("--k", opt.k, "hard-pair index")
      ->check(CLI::Range(1, 20));
  simulate->add_option("--target", opt.target, "target 0/1 string");
  simulate->add_option("--left", opt.left_file, "left string-set file");
  simulate->add_option("--right", opt.right_file, "right string-set file");
  simulate->add_option("--accept", opt.accept_file, "accept string-set file");
  simulate->add_option("--reject", opt.reject_file, "reject string-set file");
  simulate->add_option("--max-rounds", opt.max_rounds, "round budget")
      ->check(CLI::Range(0, 1 << 20));
  simulate->add_option("--max-right", opt.max_right, "largest right length")
      ->check(CLI::Range(2, 1 << 20));
  simulate->add_flag("--no-prune", opt.no_prune, "keep dead boards");
  simulate->add_option("--seed", opt.seed, "random seed")
      ->check(CLI::NonNegativeNumber);
  add_format_option(simulate, opt);

  auto* synthesize = app.add_subcommand(
      "synthesize", "derive a separating sentence from a strategy run");
  synthesize->add_option("--ell", opt.ell, "order length")
      ->check(CLI::Range(1, 1024));
  synthesize->add_option("--side", opt.side, "first side")
      ->check(side_values);
  synthesize->add_option("--k", opt.k, "hard-pair index")
      ->check(CLI::Range(1, 20));
  synthesize->add_option("--target", opt.target, "target 0/1 string");
  synthesize->add_option("--t", opt.t, "encoding radix")
      ->check(CLI::Range(2, 1000000));
  synthesize->add_option("--max-rounds", opt.max_rounds, "round budget")
      ->check(CLI::Range(0, 1 << 20));
  synthesize->add_option("--max-right", opt.max_right, "largest right length")
      ->check(CLI::Range(2, 1 << 20));
  synthesize->add_flag("--no-prune", opt.no_prune, "keep dead boards");
  synthesize->add_option("--sentence", opt.sentence_file,
                         "write the sentence to this file");
  add_format_option(synthesize, opt);

  auto* verify = app.add_subcommand(
      "verify", "model-check a sentence against string sets");
  verify->add_option("--sentence", opt.sentence_file, "sentence file")
      ->required();
  verify->add_option("--accept", opt.accept_file, "accept string-set file")
      ->required();
  verify->add_option("--reject", opt.reject_file, "reject string-set file")
      ->required();
  add_format_option(verify, opt);

  auto* solve = app.add_subcommand(
      "solve", "exact minimal rounds on a small instance");
  solve->add_option("--game", opt.game, "ms | ef")
      ->check(CLI::IsMember({"ms", "ef"}));
  solve->add_option("--first", opt.first, "forced first side")
      ->check(CLI::IsMember({"exists", "forall"}));
  solve->add_option("--ell", opt.ell, "order length")
      ->check(CLI::Range(1, 4096));
  solve->add_option("--left", opt.left_file, "left string-set file");
  solve->add_option("--right", opt.right_file, "right string-set file");
  solve->add_option("--max-rounds", opt.max_rounds, "round budget")
      ->check(CLI::Range(0, 1 << 20));
  solve->add_option("--max-right", opt.max_right, "largest right length")
      ->check(CLI::Range(2, 1 << 20));
  solve->add_flag("--no-prune", opt.no_prune, "keep dead boards");
  add_format_option(solve, opt);

  auto* hardpair = app.add_subcommand(
      "hardpair", "the log-threshold witness pair of strings");
  hardpair->add_option("--k", opt.k, "hard-pair index")
      ->required()
      ->check(CLI::Range(1, 20));
  add_format_option(hardpair, opt);

  auto* bound = app.add_subcommand(
      "bound", "counting lower bound on quantifier number");
  bound->add_option("--n", opt.n, "string length")
      ->required()
      ->check(CLI::Range(2LL, 1000000000LL));
  add_format_option(bound, opt);

  auto* feasible = app.add_subcommand(
      "feasible", "factorial feasibility searches");
  feasible->add_option("--n", opt.n, "count to cover with m!")
      ->check(CLI::PositiveNumber);
  feasible->add_option("--t", opt.t, "integer radix")
      ->check(CLI::Range(2, 1000000));
  feasible->add_option("--r", opt.r, "real radix");
  feasible->add_option("--max", opt.max, "verification window")
      ->check(CLI::Range(1, 10000000));
  add_format_option(feasible, opt);
}

}  // namespace

auto dispatch(const std::vector<std::string>& args) -> DispatchResult {
  DispatchResult result;
  CLI::App app{"multi-structural game workbench"};
  app.name("msq");
  app.require_subcommand(1);
  Options opt;
  register_commands(app, opt);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("msq");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    result.output = app.help();
    result.exit_code = 0;
    return result;
  } catch (const CLI::ParseError& e) {
    result.error = std::string("error: ") + e.what() + "\n";
    result.exit_code = 2;
    return result;
  }

  try {
    const ReportFormat format = parse_format(opt.format);
    const CLI::App& chosen = *app.get_subcommands().front();
    const auto started = std::chrono::steady_clock::now();
    Report report = run_command(chosen, opt);
    const auto finished = std::chrono::steady_clock::now();
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(finished - started).count();
    result.output = render(report, format);
    result.report = std::move(report);
    result.exit_code = 0;
    return result;
  } catch (const Error& e) {
    result.error = std::string("error: ") + e.what() + "\n";
    switch (e.category()) {
      case ErrorCategory::usage:
        result.exit_code = 2;
        break;
      case ErrorCategory::resource:
        result.exit_code = 3;
        break;
      case ErrorCategory::domain:
        result.exit_code = 1;
        break;
    }
    return result;
  } catch (const std::exception& e) {
    result.error = std::string("error: ") + e.what() + "\n";
    result.exit_code = 1;
    return result;
  }
}

auto run_cli(int argc, const char* const* argv) -> int {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc) - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const DispatchResult result = dispatch(args);
  if (!result.output.empty()) std::fputs(result.output.c_str(), stdout);
  if (!result.error.empty()) std::fputs(result.error.c_str(), stderr);
  return result.exit_code;
}

}  // namespace msq
