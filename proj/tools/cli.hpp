#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "slp/evaluation.hpp"
#include "slp/search.hpp"

namespace slp::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_verify = 1,      // verification or target failure
  exit_config = 2,      // invalid configuration
  exit_storage = 3,     // storage corruption
  exit_incomplete = 4,  // search aborted on budget without --allow-partial
};

struct RunConfig {
  int max_length = 0;
  int handoff = 0;  // 0 = from-scratch search
  TargetKind kind = TargetKind::integer;
  std::string range_text;  // "5" or "2..14"
  TargetMode mode = TargetMode::multiple;
  int workers = 1;
  std::filesystem::path out_dir;       // enumerate output / frontier store
  std::filesystem::path ledger;        // search appends, tables reads
  std::string program_text;            // verify
  std::filesystem::path program_file;  // verify
  std::uint64_t factor_budget_ms = 10'000;
  std::uint64_t max_nodes_per_seed = 0;
  bool stats_only_last = false;
  bool resume = true;
  bool verify_digests = false;
  bool allow_partial = false;
  bool prune = true;
  int verbosity = 1;
};

int cmd_enumerate(const RunConfig& config);
int cmd_search(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_tables(const RunConfig& config);

// UTC ISO-8601; honors SOURCE_DATE_EPOCH for reproducible ledgers.
std::string current_timestamp();

}  // namespace slp::cli
