#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/functional/hash.hpp>

#include "slp/canonical.hpp"
#include "slp/evaluation.hpp"
#include "slp/numtheory.hpp"
#include "slp/program.hpp"

namespace slp {

// One representative program per range-isomorphism class at a fixed
// length. Stored as a packed step blob (3 bytes per step) in ascending
// lexicographic encoding order; the order doubles as the set structure.
struct Frontier {
  int length = 0;
  std::vector<std::uint8_t> blob;  // count() * 3 * length bytes

  std::size_t count() const {
    return length == 0 ? (blob.empty() ? 1 : 0)
                       : blob.size() / (3 * static_cast<std::size_t>(length));
  }
  std::span<const std::uint8_t> encoding_at(std::size_t i) const;
  Program program_at(std::size_t i) const;
  void append_encoding(std::span<const std::uint8_t> enc);
};

// Level 0: just the program computing {1}.
Frontier initial_frontier();

struct ExpandOptions {
  int workers = 1;
  // Re-compare full sorted value sequences whenever a digest repeats, to
  // surface 128-bit collisions. Off by default: a repeat is normally just
  // a range-isomorphic duplicate.
  bool verify_digests = false;
};

// Called once per new class, in deterministic candidate order, with the
// value the final step produced.
using NewClassFn = std::function<void(const Int&)>;

// All normalized one-step extensions, one representative per canonical
// key (lexicographically least encoding). Deterministic for any worker
// count.
Frontier expand(const Frontier& parent, const ExpandOptions& options = {},
                const NewClassFn& on_new_class = {});

struct IntHash {
  std::size_t operator()(const Int& v) const { return boost::hash<Int>()(v); }
};
using IntSet = std::unordered_set<Int, IntHash>;

// Values reached by normalized extensions of `parent` that are absent
// from `already`, sorted ascending. This is the stats-only expansion path:
// no class dedup, nothing retained but the values.
std::vector<Int> collect_new_values(const Frontier& parent, int workers,
                                    const IntSet& already);

// value -> first length at which it was reached
class ReachedMap {
 public:
  bool insert(const Int& value, int level);  // keeps the earliest level
  bool contains(const Int& value) const { return first_.count(value) != 0; }
  int first_level(const Int& value) const;   // -1 if absent
  std::uint64_t size() const { return first_.size(); }
  std::uint64_t initial_interval() const;    // largest x with 1..x reached
  const std::unordered_map<Int, int, IntHash>& entries() const { return first_; }
  const IntSet& values() const { return values_; }

 private:
  std::unordered_map<Int, int, IntHash> first_;
  IntSet values_;
  mutable Int interval_cursor_ = 0;
};

// Union of the divisor sets of every value added. Values whose
// factorization exhausts the budget are recorded; the covered count is
// then only a lower bound.
class CoverageTracker {
 public:
  explicit CoverageTracker(const FactorBudget& budget) : budget_(budget) {}
  void add_values(const std::vector<Int>& values, int workers);
  std::uint64_t covered_count() const { return covered_.size(); }
  std::uint64_t covered_interval() const;
  bool complete() const { return unfactored_.empty(); }
  const std::vector<Int>& unfactored() const { return unfactored_; }

 private:
  FactorBudget budget_;
  IntSet covered_;
  std::vector<Int> unfactored_;
  mutable Int interval_cursor_ = 0;
};

struct LevelStats {
  int k = 0;
  std::uint64_t reached_count = 0;
  std::uint64_t initial_interval = 0;
  std::uint64_t covered_interval = 0;
  std::uint64_t covered_count = 0;
  bool covered_complete = true;

  friend bool operator==(const LevelStats&, const LevelStats&) = default;
};

// --- whole-level statistics over in-memory frontiers (small scales) ---

std::set<Int> reached_set(std::span<const Frontier> frontiers);
std::uint64_t initial_interval(const std::set<Int>& reached);

struct CoveredSet {
  std::set<Int> values;
  bool complete = true;
  std::vector<Int> unfactored;
};
CoveredSet covered_set(std::span<const Frontier> frontiers,
                       const FactorBudget& budget = {});

// --- the level-by-level driver with checkpointing ---

struct RunLevelsConfig {
  int max_length = 1;
  std::filesystem::path out_dir;
  int workers = 1;
  FactorBudget factor_budget;
  // Compute the final level's statistics by streaming extensions instead
  // of materializing its frontier (no dedup, no file).
  bool stats_only_last = false;
  bool resume = true;
  std::function<void(const LevelStats&)> on_level;
};

// Writes frontier_<k>.slpf per stored level plus stats.tsv and
// reached.tsv; resumes from existing frontier files when present.
std::vector<LevelStats> run_levels(const RunLevelsConfig& config);

}  // namespace slp
