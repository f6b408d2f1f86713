#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"
#include "slp/error.hpp"

namespace {

using slp::cli::RunConfig;

void add_target_flags(CLI::App* cmd, RunConfig& config, std::string& kind_text,
                      std::string& mode_text, std::string& p_text) {
  cmd->add_option("--kind", kind_text, "target kind: factorial, primorial or integer")
      ->check(CLI::IsMember({"factorial", "primorial", "integer"}));
  cmd->add_option("--n", config.range_text, "target parameter n, or a range like 2..14");
  cmd->add_option("--p", p_text, "target prime p for primorials, or a range");
  cmd->add_option("--mode", mode_text, "exact or multiple")
      ->check(CLI::IsMember({"exact", "multiple"}));
}

void finish_target_flags(RunConfig& config, const std::string& kind_text,
                         const std::string& mode_text, const std::string& p_text) {
  if (!kind_text.empty()) {
    if (kind_text == "factorial") config.kind = slp::TargetKind::factorial;
    if (kind_text == "primorial") config.kind = slp::TargetKind::primorial;
    if (kind_text == "integer") config.kind = slp::TargetKind::integer;
  }
  if (!mode_text.empty()) config.mode = slp::parse_target_mode(mode_text);
  if (!p_text.empty()) {
    if (!config.range_text.empty()) {
      throw slp::InvalidInputError("give either --n or --p, not both");
    }
    config.range_text = p_text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exhaustive search and verification of shortest straight-line programs"};
  app.require_subcommand(1);

  RunConfig config;
  std::string kind_text, mode_text, p_text;

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "breadth-first enumeration of program classes by length");
  enumerate->add_option("--max-len", config.max_length, "largest program length to expand")
      ->required();
  enumerate->add_option("--out", config.out_dir, "output directory")->required();
  enumerate->add_option("--workers", config.workers, "worker thread count");
  enumerate->add_option("--factor-budget-ms", config.factor_budget_ms,
                        "per-value factorization budget (deterministic iterations)");
  enumerate->add_flag("--stats-only-last", config.stats_only_last,
                      "stream the final level's statistics without storing its frontier");
  enumerate->add_flag("!--no-resume", config.resume, "ignore existing checkpoints");
  enumerate->add_flag("--verify-digests", config.verify_digests,
                      "re-compare full value sequences on digest repeats");

  CLI::App* search = app.add_subcommand("search", "targeted search for optimal programs");
  add_target_flags(search, config, kind_text, mode_text, p_text);
  search->add_option("--max-len", config.max_length, "search depth K")->required();
  search->add_option("--handoff", config.handoff,
                     "depth of the stored frontier to hand off to the depth-first stage");
  search->add_option("--store", config.out_dir, "frontier store directory");
  search->add_option("--workers", config.workers, "worker thread count");
  search->add_option("--ledger", config.ledger, "append results to this ledger");
  search->add_option("--max-nodes-per-seed", config.max_nodes_per_seed,
                     "abort any seed subtree after this many nodes (0 = unlimited)");
  search->add_flag("--allow-partial", config.allow_partial,
                   "exit 0 even if some subtree hit its node budget");
  search->add_flag("!--no-prune", config.prune, "disable the value-bound pruning rule");

  CLI::App* verify = app.add_subcommand("verify", "check a program against a target");
  add_target_flags(verify, config, kind_text, mode_text, p_text);
  verify->add_option("--program", config.program_text, "program text");
  verify->add_option("--file", config.program_file, "file containing program text");

  CLI::App* tables = app.add_subcommand("tables", "render result tables from a ledger");
  tables->add_option("--ledger", config.ledger, "ledger path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return slp::cli::exit_config;
  }

  try {
    finish_target_flags(config, kind_text, mode_text, p_text);
    if (enumerate->parsed()) return slp::cli::cmd_enumerate(config);
    if (search->parsed()) return slp::cli::cmd_search(config);
    if (verify->parsed()) return slp::cli::cmd_verify(config);
    if (tables->parsed()) return slp::cli::cmd_tables(config);
  } catch (const slp::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return slp::cli::exit_config;
  } catch (const slp::CorruptLedgerError& e) {
    std::cerr << "storage error: " << e.what() << "\n";
    return slp::cli::exit_storage;
  } catch (const slp::CorruptFileError& e) {
    std::cerr << "storage error: " << e.what() << "\n";
    return slp::cli::exit_storage;
  } catch (const slp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return slp::cli::exit_verify;
  }
  return slp::cli::exit_config;
}
