#include "cli.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "slp/error.hpp"
#include "slp/frontier.hpp"
#include "slp/numtheory.hpp"
#include "slp/store.hpp"

namespace slp::cli {

std::string current_timestamp() {
  std::time_t t = 0;
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::atoll(e));
  } else {
    t = std::time(nullptr);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

FactorBudget budget_from_ms(std::uint64_t ms) {
  return FactorBudget{ms * kRhoIterationsPerMs};
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const unsigned v = static_cast<unsigned>(std::stoul(text));
      return {v, v};
    }
    const unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
    const unsigned hi = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
    if (lo > hi) throw InvalidInputError("range is empty: '" + text + "'");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw InvalidInputError("cannot parse target range: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw InvalidInputError("target range out of range: '" + text + "'");
  }
}

void print_outcome(const SearchOutcome& outcome) {
  std::cout << "== " << outcome.target.description << " ("
            << target_mode_name(outcome.target.mode) << " of " << outcome.target.n.str()
            << ") ==\n";
  if (outcome.best_length) {
    std::cout << "f=" << *outcome.best_length << ", "
              << (outcome.optimal ? std::string("Opt")
                                  : "lower bound " + std::to_string(outcome.lower_bound))
              << "\n";
    if (!outcome.found.empty()) {
      std::cout << "program: " << render_program(outcome.found.front()) << "\n";
      if (outcome.found.size() > 1) {
        std::cout << "classes: " << outcome.found.size() << "\n";
      }
    }
  } else {
    std::cout << "no program up to K=" << outcome.max_depth_searched << ", lower bound "
              << outcome.lower_bound << "\n";
  }
  if (!outcome.complete) {
    std::cout << "search incomplete: node budget exhausted in at least one subtree\n";
  }
}

}  // namespace

int cmd_enumerate(const RunConfig& config) {
  if (config.max_length < 1) {
    std::cerr << "error: --max-len must be at least 1\n";
    return exit_config;
  }
  if (config.out_dir.empty()) {
    std::cerr << "error: --out is required\n";
    return exit_config;
  }
  if (config.workers < 1) {
    std::cerr << "error: --workers must be at least 1\n";
    return exit_config;
  }
  RunLevelsConfig rl;
  rl.max_length = config.max_length;
  rl.out_dir = config.out_dir;
  rl.workers = config.workers;
  rl.factor_budget = budget_from_ms(config.factor_budget_ms);
  rl.stats_only_last = config.stats_only_last;
  rl.resume = config.resume;
  if (config.verbosity > 0) {
    rl.on_level = [](const LevelStats& s) {
      std::cerr << "level " << s.k << ": reached=" << s.reached_count
                << " initial_interval=" << s.initial_interval
                << " covered_interval=" << s.covered_interval
                << " covered=" << s.covered_count
                << (s.covered_complete ? "" : " (covered is a lower bound)") << "\n";
    };
  }
  std::vector<LevelStats> stats;
  try {
    stats = run_levels(rl);
  } catch (const CorruptFileError& e) {
    std::cerr << "storage error: " << e.what() << "\n";
    return exit_storage;
  }
  std::cout << "k\treached\tinitial_interval\tcovered_interval\tcovered\tcovered_complete\n";
  for (const LevelStats& s : stats) {
    std::cout << s.k << '\t' << s.reached_count << '\t' << s.initial_interval << '\t'
              << s.covered_interval << '\t' << s.covered_count << '\t'
              << (s.covered_complete ? 1 : 0) << '\n';
  }
  bool all_complete = true;
  for (const LevelStats& s : stats) all_complete = all_complete && s.covered_complete;
  if (!all_complete) {
    std::cerr << "warning: some covered counts are lower bounds (factorization budget)\n";
  }
  return exit_ok;
}

int cmd_search(const RunConfig& config) {
  if (config.max_length < 1) {
    std::cerr << "error: --max-len must be at least 1\n";
    return exit_config;
  }
  if (config.handoff < 0 || config.handoff > config.max_length) {
    std::cerr << "error: --handoff must lie in [0, --max-len]\n";
    return exit_config;
  }
  if (config.handoff > 0 && config.out_dir.empty()) {
    std::cerr << "error: --store is required when --handoff > 0\n";
    return exit_config;
  }
  if (config.range_text.empty()) {
    std::cerr << "error: a target is required (--n or --p)\n";
    return exit_config;
  }

  SearchConfig sc;
  sc.max_length = config.max_length;
  sc.handoff = config.handoff;
  sc.frontier_dir = config.out_dir;
  sc.workers = config.workers;
  sc.value_bound_prune = config.prune;
  sc.max_nodes_per_seed = config.max_nodes_per_seed;

  std::vector<SearchOutcome> outcomes;
  try {
    const auto [lo, hi] = parse_range(config.range_text);
    outcomes = batch_targets(config.kind, lo, hi, config.mode, sc);
  } catch (const CorruptFileError& e) {
    std::cerr << "storage error: " << e.what() << "\n";
    return exit_storage;
  }

  bool any_incomplete = false;
  for (const SearchOutcome& outcome : outcomes) {
    print_outcome(outcome);
    any_incomplete = any_incomplete || !outcome.complete;
    if (!config.ledger.empty()) {
      ResultRecord record;
      record.description = outcome.target.description;
      record.n = outcome.target.n;
      record.mode = outcome.target.mode;
      record.best_length = outcome.best_length;
      record.lower_bound = outcome.lower_bound;
      record.optimal = outcome.optimal;
      record.exemplar =
          outcome.found.empty() ? std::string() : render_program(outcome.found.front());
      record.timestamp = current_timestamp();
      record.max_length = outcome.max_depth_searched;
      record.handoff = config.handoff;
      append_result(record, config.ledger);
    }
  }
  if (any_incomplete && !config.allow_partial) {
    std::cerr << "error: search incomplete (re-run with --allow-partial to accept)\n";
    return exit_incomplete;
  }
  return exit_ok;
}

int cmd_verify(const RunConfig& config) {
  std::string text = config.program_text;
  if (!config.program_file.empty()) {
    std::ifstream is(config.program_file);
    if (!is) {
      std::cerr << "error: cannot read '" << config.program_file.string() << "'\n";
      return exit_config;
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }
  if (config.range_text.empty()) {
    std::cerr << "error: a target is required (--n or --p)\n";
    return exit_config;
  }

  TargetSpec target;
  try {
    target = make_target(config.kind, parse_decimal(config.range_text), config.mode);
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  }

  Program program;
  try {
    program = parse_program(text);
  } catch (const SyntaxError& e) {
    std::cout << "parse error: " << e.what() << "\n";
    std::cout << "verdict: FAIL (unparseable)\n";
    return exit_verify;
  } catch (const InvalidIndexError& e) {
    std::cout << "parse error: " << e.what() << "\n";
    std::cout << "verdict: FAIL (invalid reference)\n";
    return exit_verify;
  }

  const Evaluation ev = evaluate(program);
  std::cout << "x1 = 1\n";
  for (std::size_t i = 0; i < program.steps.size(); ++i) {
    const Step& s = program.steps[i];
    std::cout << "x" << (i + 2) << " = {" << s.a << "," << s.b << "," << op_symbol(s.op)
              << "} = " << ev.values[i + 1].str() << "\n";
  }

  const bool normalized = is_normalized(ev);
  std::cout << "normalized: " << (normalized ? "yes" : "no") << "\n";
  bool hit = false;
  for (std::size_t i = 0; i < ev.values.size(); ++i) {
    if (value_hits_target(ev.values[i], target.n, target.mode)) {
      std::cout << "target " << target.description << " ("
                << target_mode_name(target.mode) << " of " << target.n.str()
                << "): HIT at position " << (i + 1) << "\n";
      hit = true;
      break;
    }
  }
  if (!hit) {
    std::cout << "target " << target.description << " (" << target_mode_name(target.mode)
              << " of " << target.n.str() << "): MISS\n";
  }
  const bool pass = normalized && hit;
  std::cout << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? exit_ok : exit_verify;
}

int cmd_tables(const RunConfig& config) {
  if (config.ledger.empty()) {
    std::cerr << "error: --ledger is required\n";
    return exit_config;
  }
  std::vector<ResultRecord> records;
  try {
    records = load_ledger(config.ledger);
  } catch (const CorruptLedgerError& e) {
    std::cerr << "storage error: " << e.what() << "\n";
    return exit_storage;
  } catch (const CorruptFileError& e) {
    std::cerr << "storage error: " << e.what() << "\n";
    return exit_storage;
  }

  bool all_verified = true;
  std::vector<const ResultRecord*> flagged;
  for (const ResultRecord& r : records) {
    if (!verify_record(r)) {
      all_verified = false;
      flagged.push_back(&r);
    }
  }

  struct Section {
    const char* title;
    const char* prefix;
    TargetMode mode;
  };
  const Section sections[] = {
      {"multiples of n!", "factorial", TargetMode::multiple},
      {"exact n!", "factorial", TargetMode::exact},
      {"multiples of p#", "primorial", TargetMode::multiple},
      {"exact p#", "primorial", TargetMode::exact},
      {"integer targets (multiple)", "integer", TargetMode::multiple},
      {"integer targets (exact)", "integer", TargetMode::exact},
  };
  for (const Section& sec : sections) {
    std::vector<ResultRecord> rows;
    for (const ResultRecord& r : records) {
      if (r.mode == sec.mode && r.description.starts_with(sec.prefix)) rows.push_back(r);
    }
    if (rows.empty()) continue;
    std::cout << "== " << sec.title << " ==\n";
    std::cout << render_results_table(rows);
    std::cout << "\n";
  }
  for (const ResultRecord* r : flagged) {
    std::cout << "FLAGGED: " << r->description << " (" << target_mode_name(r->mode)
              << "): exemplar does not re-verify\n";
  }
  return all_verified ? exit_ok : exit_verify;
}

}  // namespace slp::cli
