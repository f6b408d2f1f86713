#include "slp/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "slp/error.hpp"
#include "slp/numtheory.hpp"
#include "slp/store.hpp"

namespace slp {

std::string_view target_kind_name(TargetKind kind) {
  switch (kind) {
    case TargetKind::factorial: return "factorial";
    case TargetKind::primorial: return "primorial";
    case TargetKind::integer: return "integer";
  }
  return "?";
}

TargetSpec make_target(TargetKind kind, const Int& parameter, TargetMode mode) {
  TargetSpec spec;
  spec.mode = mode;
  spec.description = std::string(target_kind_name(kind)) + " " + parameter.str();
  switch (kind) {
    case TargetKind::factorial:
      if (parameter < 0) throw InvalidInputError("factorial parameter must be >= 0");
      spec.n = factorial(parameter.convert_to<unsigned>());
      break;
    case TargetKind::primorial:
      spec.n = primorial(parameter.convert_to<unsigned>());
      break;
    case TargetKind::integer:
      if (parameter < 1) throw InvalidInputError("integer targets must be >= 1");
      spec.n = parameter;
      break;
  }
  return spec;
}

bool prune_value_bound(const Int& max_value, int k, int max_length, const Int& n) {
  if (k < 2) return false;  // the bound is only justified from length 2 on
  Int p = max_value;
  for (int i = k; i < max_length; ++i) {
    if (p >= n) return false;  // early exit: never square past the target
    p *= p;
  }
  return p < n;
}

namespace {

void run_workers(int workers, const std::function<void(int)>& fn) {
  if (workers <= 1) {
    fn(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(fn, w);
  fn(0);
  for (auto& t : pool) t.join();
}

// T[k] = least x such that x^(2^(K-k)) >= N, via T[K] = N and
// T[k] = ceil(sqrt(T[k+1])). Rule 3 then reads: prune a length-k node iff
// its maximum value is below T[k].
std::vector<Int> prune_thresholds(const Int& n, int max_length) {
  std::vector<Int> t(static_cast<std::size_t>(max_length) + 1);
  t[static_cast<std::size_t>(max_length)] = n;
  for (int k = max_length - 1; k >= 0; --k) {
    t[static_cast<std::size_t>(k)] = ceil_sqrt(t[static_cast<std::size_t>(k) + 1]);
  }
  return t;
}

struct HitCollector {
  int best = INT_MAX;
  std::map<Digest128, std::vector<std::uint8_t>> classes;  // key -> least encoding

  void record(int length, const Digest128& key, std::vector<std::uint8_t> enc) {
    if (length > best) return;
    if (length < best) {
      best = length;
      classes.clear();
    }
    auto [it, fresh] = classes.try_emplace(key, std::move(enc));
    if (!fresh && enc < it->second) it->second = std::move(enc);
  }

  void merge(HitCollector&& other) {
    if (other.best > best) return;
    if (other.best < best) {
      best = other.best;
      classes = std::move(other.classes);
      return;
    }
    for (auto& [key, enc] : other.classes) {
      auto [it, fresh] = classes.try_emplace(key, std::move(enc));
      if (!fresh && enc < it->second) it->second = std::move(enc);
    }
  }
};

struct DfsConfig {
  const TargetSpec& target;
  int max_length;
  bool prune3;
  std::uint64_t max_nodes;  // per seed, 0 = unlimited
  const std::vector<Int>& thresholds;
  std::atomic<int>* shared_best;  // nullptr when budgeted, for determinism
};

struct DfsRunner {
  explicit DfsRunner(const DfsConfig& config) : cfg(config) {}

  const DfsConfig& cfg;
  std::vector<Int> values;
  std::vector<std::uint8_t> enc;
  HitCollector hits;
  std::uint64_t nodes = 0;
  bool aborted = false;

  // run() holds references into `values` across push_back; capacity must
  // cover the whole search depth before recursion starts
  void prepare(const Evaluation& seed_eval, const Program& seed) {
    values = seed_eval.values;
    values.reserve(static_cast<std::size_t>(cfg.max_length) + 1);
    enc = encode_steps(seed);
    enc.reserve(3 * static_cast<std::size_t>(cfg.max_length));
  }

  int best_cap() const {
    int b = hits.best;
    if (cfg.shared_best) b = std::min(b, cfg.shared_best->load(std::memory_order_relaxed));
    return b;
  }

  void record_hit(int length, const Int& extra) {
    std::vector<Int> sorted(values);
    sorted.push_back(extra);
    std::sort(sorted.begin(), sorted.end());
    const Digest128 key = digest_sorted_values(sorted);
    hits.record(length, key, enc);  // enc already includes the hit step
    if (cfg.shared_best) {
      int cur = cfg.shared_best->load(std::memory_order_relaxed);
      while (length < cur &&
             !cfg.shared_best->compare_exchange_weak(cur, length, std::memory_order_relaxed)) {
      }
    }
  }

  void run(int k, const Int& cur_max) {
    if (aborted) return;
    const std::size_t n = values.size();
    Int v;
    for (std::size_t a = 1; a <= n; ++a) {
      const Int& x = values[a - 1];
      for (std::size_t b = a; b <= n; ++b) {
        const Int& y = values[b - 1];
        for (int opc = 0; opc < 3; ++opc) {
          const Op op = static_cast<Op>(opc);
          if (op == Op::sub && a == b) continue;
          switch (op) {
            case Op::add: v = x + y; break;
            case Op::sub: v = x >= y ? Int(x - y) : Int(y - x); break;
            case Op::mul: v = x * y; break;
          }
          // rule 2: drop non-normalized extensions (duplicate value)
          bool dup = false;
          for (const Int& u : values) {
            if (u == v) {
              dup = true;
              break;
            }
          }
          if (dup) continue;
          ++nodes;
          if (cfg.max_nodes != 0 && nodes > cfg.max_nodes) {
            aborted = true;
            return;
          }
          const int child_len = k + 1;
          enc.push_back(static_cast<std::uint8_t>(a));
          enc.push_back(static_cast<std::uint8_t>(b));
          enc.push_back(static_cast<std::uint8_t>(opc));
          if (value_hits_target(v, cfg.target.n, cfg.target.mode)) {
            // rule 1: save and never extend a hit
            record_hit(child_len, v);
          } else if (child_len < cfg.max_length && child_len < best_cap()) {
            const Int& child_max = v > cur_max ? v : cur_max;
            const bool pruned =
                cfg.prune3 && child_len >= 2 &&
                child_max < cfg.thresholds[static_cast<std::size_t>(child_len)];
            if (!pruned) {
              const Int saved_max = child_max;
              values.push_back(v);
              run(child_len, saved_max);
              values.pop_back();
              if (aborted) {
                enc.resize(enc.size() - 3);
                return;
              }
            }
          }
          enc.resize(enc.size() - 3);
        }
      }
    }
  }
};

}  // namespace

std::vector<std::pair<Program, int>> dfs_extend(const Program& seed, const TargetSpec& target,
                                                int max_length, const DfsOptions& options) {
  if (seed.length() > max_length) {
    throw InvalidInputError("seed is longer than the search depth");
  }
  const Evaluation ev = evaluate(seed);
  if (!is_normalized(ev)) throw NotNormalizedError("dfs seeds must be normalized");

  HitCollector collector;
  if (computes_target(ev, target.n, target.mode)) {
    // rule 1 applies to the seed itself
    std::vector<Int> sorted(ev.values);
    std::sort(sorted.begin(), sorted.end());
    collector.record(seed.length(), digest_sorted_values(sorted), encode_steps(seed));
  } else if (max_length > seed.length()) {
    const auto thresholds = prune_thresholds(target.n, max_length);
    DfsConfig cfg{target, max_length, options.value_bound_prune, options.max_nodes,
                  thresholds, nullptr};
    DfsRunner runner(cfg);
    runner.prepare(ev, seed);
    runner.run(seed.length(), *std::max_element(ev.values.begin(), ev.values.end()));
    collector = std::move(runner.hits);
  }

  std::vector<std::pair<Program, int>> out;
  std::vector<std::vector<std::uint8_t>> encs;
  encs.reserve(collector.classes.size());
  for (auto& [key, enc] : collector.classes) encs.push_back(enc);
  std::sort(encs.begin(), encs.end());
  for (const auto& enc : encs) out.emplace_back(decode_steps(enc), collector.best);
  return out;
}

FrontierSet load_frontiers(const std::filesystem::path& dir, int up_to) {
  FrontierSet set;
  for (int k = 0; k <= up_to; ++k) {
    set.levels.push_back(read_frontier(frontier_path(dir, k)));
  }
  return set;
}

namespace {

// Scan one stored level for representatives whose value set hits the
// target. Returns (digest, encoding) pairs in encoding order.
std::vector<std::pair<Digest128, std::vector<std::uint8_t>>> scan_level(
    const Frontier& frontier, const TargetSpec& target, int workers) {
  const std::size_t count = frontier.count();
  std::vector<std::vector<std::pair<std::size_t, Digest128>>> locals(
      static_cast<std::size_t>(std::max(1, workers)));
  std::atomic<std::size_t> next{0};
  constexpr std::size_t chunk = 1024;
  run_workers(std::max(1, workers), [&](int w) {
    auto& local = locals[static_cast<std::size_t>(w)];
    while (true) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) break;
      const std::size_t end = std::min(count, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        const Evaluation ev = evaluate(frontier.program_at(i));
        if (computes_target(ev, target.n, target.mode)) {
          std::vector<Int> sorted(ev.values);
          std::sort(sorted.begin(), sorted.end());
          local.emplace_back(i, digest_sorted_values(sorted));
        }
      }
    }
  });
  std::vector<std::pair<std::size_t, Digest128>> merged;
  for (auto& local : locals) {
    merged.insert(merged.end(), local.begin(), local.end());
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Digest128, std::vector<std::uint8_t>>> out;
  out.reserve(merged.size());
  for (const auto& [idx, digest] : merged) {
    const auto enc = frontier.encoding_at(idx);
    out.emplace_back(digest, std::vector<std::uint8_t>(enc.begin(), enc.end()));
  }
  return out;
}

}  // namespace

SearchOutcome search_target(const TargetSpec& target, const SearchConfig& config,
                            const FrontierSet* preloaded) {
  if (target.n < 1) throw InvalidInputError("target must be >= 1");
  if (config.max_length < 0) throw InvalidInputError("max_length must be >= 0");
  if (config.handoff < 0) throw InvalidInputError("handoff must be >= 0");

  SearchOutcome outcome;
  outcome.target = target;
  outcome.max_depth_searched = config.max_length;

  const int scan_depth = std::min(config.handoff, config.max_length);
  FrontierSet local_set;
  const FrontierSet* frontiers = preloaded;
  if (frontiers == nullptr) {
    if (config.handoff > 0) {
      local_set = load_frontiers(config.frontier_dir, scan_depth);
    } else {
      local_set.levels.push_back(initial_frontier());
    }
    frontiers = &local_set;
  }
  if (static_cast<int>(frontiers->levels.size()) <= scan_depth) {
    throw InvalidInputError("frontier store is shallower than the requested handoff");
  }

  // phase 1: the stored levels are themselves a complete search of every
  // length <= scan_depth
  for (int k = 0; k <= scan_depth; ++k) {
    auto hits = scan_level(frontiers->levels[static_cast<std::size_t>(k)], target,
                           config.workers);
    if (!hits.empty()) {
      outcome.best_length = k;
      outcome.lower_bound = k;
      outcome.optimal = true;
      outcome.complete = true;
      for (auto& [digest, enc] : hits) outcome.found.push_back(decode_steps(enc));
      return outcome;
    }
  }

  if (config.max_length <= scan_depth) {
    outcome.lower_bound = config.max_length + 1;
    outcome.optimal = false;
    outcome.complete = true;
    return outcome;
  }

  // phase 2: depth-first extension of every representative at the handoff
  const Frontier& seeds = frontiers->levels[static_cast<std::size_t>(scan_depth)];
  const auto thresholds = prune_thresholds(target.n, config.max_length);
  std::atomic<int> shared_best{INT_MAX};
  const bool budgeted = config.max_nodes_per_seed != 0;
  DfsConfig cfg{target,           config.max_length, config.value_bound_prune,
                config.max_nodes_per_seed, thresholds, budgeted ? nullptr : &shared_best};

  const std::size_t seed_count = seeds.count();
  const int workers = std::max(1, config.workers);
  std::vector<HitCollector> collectors(static_cast<std::size_t>(workers));
  std::vector<std::uint64_t> node_counts(static_cast<std::size_t>(workers), 0);
  std::vector<char> abort_flags(static_cast<std::size_t>(workers), 0);
  std::atomic<std::size_t> next{0};

  run_workers(workers, [&](int w) {
    auto& collector = collectors[static_cast<std::size_t>(w)];
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= seed_count) break;
      const Program seed = seeds.program_at(i);
      const Evaluation ev = evaluate(seed);
      DfsRunner runner(cfg);
      runner.prepare(ev, seed);
      runner.hits.best = collector.best;  // inherit the local cap
      runner.run(seed.length(), *std::max_element(ev.values.begin(), ev.values.end()));
      node_counts[static_cast<std::size_t>(w)] += runner.nodes;
      if (runner.aborted) abort_flags[static_cast<std::size_t>(w)] = 1;
      collector.merge(std::move(runner.hits));
    }
  });

  HitCollector merged;
  for (auto& c : collectors) merged.merge(std::move(c));
  for (std::uint64_t n : node_counts) outcome.nodes_explored += n;
  const bool any_abort = std::any_of(abort_flags.begin(), abort_flags.end(),
                                     [](char f) { return f != 0; });

  outcome.complete = !any_abort;
  if (merged.best != INT_MAX) {
    outcome.best_length = merged.best;
    std::vector<std::vector<std::uint8_t>> encs;
    for (auto& [key, enc] : merged.classes) encs.push_back(enc);
    std::sort(encs.begin(), encs.end());
    for (const auto& enc : encs) {
      Program program = decode_steps(enc);
      // re-verify before recording: a hit must survive the public checks
      const Evaluation ev = evaluate(program);
      if (!is_normalized(ev) || !computes_target(ev, target.n, target.mode)) {
        throw Error("internal error: recorded hit failed re-verification");
      }
      outcome.found.push_back(std::move(program));
    }
    outcome.lower_bound = outcome.complete ? merged.best : scan_depth + 1;
    outcome.optimal = outcome.lower_bound >= merged.best;
  } else {
    outcome.lower_bound = outcome.complete ? config.max_length + 1 : scan_depth + 1;
    outcome.optimal = false;
  }
  return outcome;
}

std::vector<std::pair<Program, int>> heuristic_extend(const std::vector<Program>& seeds,
                                                      const TargetSpec& target,
                                                      int max_length,
                                                      const DfsOptions& options) {
  HitCollector merged;
  for (const Program& seed : seeds) {
    for (auto& [program, length] : dfs_extend(seed, target, max_length, options)) {
      const Evaluation ev = evaluate(program);
      std::vector<Int> sorted(ev.values);
      std::sort(sorted.begin(), sorted.end());
      merged.record(length, digest_sorted_values(sorted), encode_steps(program));
    }
  }
  std::vector<std::pair<Program, int>> out;
  std::vector<std::vector<std::uint8_t>> encs;
  for (auto& [key, enc] : merged.classes) encs.push_back(enc);
  std::sort(encs.begin(), encs.end());
  for (const auto& enc : encs) out.emplace_back(decode_steps(enc), merged.best);
  return out;
}

std::vector<SearchOutcome> batch_targets(TargetKind kind, unsigned lo, unsigned hi,
                                         TargetMode mode, const SearchConfig& config) {
  if (lo > hi) throw InvalidInputError("empty target range");
  std::vector<unsigned> params;
  if (kind == TargetKind::primorial) {
    for (std::uint32_t p : primes_in_range(lo, hi)) params.push_back(p);
  } else {
    for (unsigned v = lo; v <= hi; ++v) params.push_back(v);
  }

  FrontierSet preloaded;
  const FrontierSet* shared = nullptr;
  if (config.handoff > 0) {
    preloaded = load_frontiers(config.frontier_dir, std::min(config.handoff, config.max_length));
    shared = &preloaded;
  }

  std::vector<SearchOutcome> out;
  for (unsigned p : params) {
    out.push_back(search_target(make_target(kind, p, mode), config, shared));
  }
  return out;
}

}  // namespace slp
