#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "slp/evaluation.hpp"
#include "slp/frontier.hpp"
#include "slp/program.hpp"

namespace slp {

struct TargetSpec {
  Int n;
  TargetMode mode = TargetMode::multiple;
  std::string description;
};

enum class TargetKind { factorial, primorial, integer };

std::string_view target_kind_name(TargetKind kind);
TargetSpec make_target(TargetKind kind, const Int& parameter, TargetMode mode);

struct SearchOutcome {
  TargetSpec target;
  int max_depth_searched = 0;  // K
  // Minimal-length hits, one lexicographically-least exemplar per
  // range-isomorphism class, in ascending encoding order.
  std::vector<Program> found;
  std::optional<int> best_length;
  int lower_bound = 0;  // no program shorter than this computes the target
  bool optimal = false;
  bool complete = true;  // false iff some subtree aborted on budget
  std::uint64_t nodes_explored = 0;
};

// Pruning rule: discard a length-k node whose largest computed value x
// satisfies x^(2^(K-k)) < N — it cannot grow to N within K steps. Only
// valid for k >= 2; never applied below that. The running square is
// capped at the first power >= N.
bool prune_value_bound(const Int& max_value, int k, int max_length, const Int& n);

struct DfsOptions {
  bool value_bound_prune = true;  // rule 3
  std::uint64_t max_nodes = 0;    // per-seed budget, 0 = unlimited
};

// Depth-first extension of one seed up to length K: stop at hits (never
// extending a program that already computes the target), discard
// non-normalized extensions, apply the value-bound rule. Returns the
// minimal-length hits found in this subtree.
std::vector<std::pair<Program, int>> dfs_extend(const Program& seed,
                                                const TargetSpec& target, int max_length,
                                                const DfsOptions& options = {});

struct SearchConfig {
  int max_length = 1;  // K
  int handoff = 0;     // scan stored frontiers up to this length; 0 = from scratch
  std::filesystem::path frontier_dir;
  int workers = 1;
  bool value_bound_prune = true;
  std::uint64_t max_nodes_per_seed = 0;
};

// Frontier levels 0..handoff preloaded once and shared across a batch.
struct FrontierSet {
  std::vector<Frontier> levels;
};
FrontierSet load_frontiers(const std::filesystem::path& dir, int up_to);

// Two phases: scan the stored class representatives level by level (an
// exhaustive search of every length <= handoff), then extend each
// handoff-level representative depth-first to K. Every reported hit is
// re-verified with computes_target before recording.
SearchOutcome search_target(const TargetSpec& target, const SearchConfig& config,
                            const FrontierSet* preloaded = nullptr);

// Same extension machinery restricted to caller-chosen seeds. Results are
// upper bounds only; no lower-bound or optimality claim is made.
std::vector<std::pair<Program, int>> heuristic_extend(const std::vector<Program>& seeds,
                                                      const TargetSpec& target,
                                                      int max_length,
                                                      const DfsOptions& options = {});

// One search per target; factorial/integer ranges step through every n in
// [lo, hi], primorial ranges through the primes in [lo, hi].
std::vector<SearchOutcome> batch_targets(TargetKind kind, unsigned lo, unsigned hi,
                                         TargetMode mode, const SearchConfig& config);

}  // namespace slp
