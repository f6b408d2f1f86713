#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "slp/evaluation.hpp"
#include "slp/frontier.hpp"

namespace slp {

// Frontier file: magic "SLPF1", u32 LE format version, u32 LE length k,
// u64 LE program count, u32 LE digest width in bits, then the packed
// program blob (k triples of a, b, op bytes per program, ascending
// lexicographic order). One byte per index caps k at 254.
inline constexpr char kFrontierMagic[5] = {'S', 'L', 'P', 'F', '1'};
inline constexpr std::uint32_t kFrontierFormatVersion = 1;
inline constexpr std::uint32_t kDigestWidthBits = 128;

std::filesystem::path frontier_path(const std::filesystem::path& dir, int k);

void write_frontier(const Frontier& frontier, const std::filesystem::path& path);
Frontier read_frontier(const std::filesystem::path& path);

// One row of the results ledger, mirroring a published-table row.
struct ResultRecord {
  std::string description;  // e.g. "factorial 11"
  Int n;
  TargetMode mode = TargetMode::multiple;
  std::optional<int> best_length;
  int lower_bound = 0;
  bool optimal = false;
  std::string exemplar;  // program text, "-" if none
  std::string timestamp;
  int max_length = 0;  // K
  int handoff = 0;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

// Ledger: UTF-8 lines, tab-separated fields in ResultRecord order,
// append-only.
void append_result(const ResultRecord& record, const std::filesystem::path& ledger);
std::vector<ResultRecord> load_ledger(const std::filesystem::path& path);

// True iff the exemplar parses, is normalized, has length best_length and
// computes the record's target. Records without an exemplar verify iff
// they claim no best length.
bool verify_record(const ResultRecord& record);

// Published-table layout: "target | f | program | Opt-or-lower-bound".
std::string render_results_table(std::span<const ResultRecord> records);

}  // namespace slp
