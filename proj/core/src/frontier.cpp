#include "slp/frontier.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "slp/error.hpp"
#include "slp/store.hpp"

namespace slp {

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

// Open-addressing set of digests. Frontier dedup at large k is bound by
// this table's memory, so it stays at 16 bytes per slot.
class DigestSet {
 public:
  explicit DigestSet(std::size_t expected) {
    std::size_t cap = 64;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, Digest128{});
    mask_ = cap - 1;
  }

  bool insert(const Digest128& d) {
    if (d.hi == 0 && d.lo == 0) {
      const bool fresh = !has_zero_;
      has_zero_ = true;
      return fresh;
    }
    if ((size_ + 1) * 4 > slots_.size() * 3) grow();
    std::size_t i = d.lo & mask_;
    while (true) {
      Digest128& slot = slots_[i];
      if (slot.hi == 0 && slot.lo == 0) {
        slot = d;
        ++size_;
        return true;
      }
      if (slot == d) return false;
      i = (i + 1) & mask_;
    }
  }

 private:
  void grow() {
    std::vector<Digest128> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, Digest128{});
    mask_ = slots_.size() - 1;
    for (const Digest128& d : old) {
      if (d.hi == 0 && d.lo == 0) continue;
      std::size_t i = d.lo & mask_;
      while (!(slots_[i].hi == 0 && slots_[i].lo == 0)) i = (i + 1) & mask_;
      slots_[i] = d;
    }
  }

  std::vector<Digest128> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
  bool has_zero_ = false;
};

// Per-parent state reused across that parent's ~3*n^2/2 candidates.
struct ParentCtx {
  std::vector<Int> values;               // program order, x_1..x_{k+1}
  std::vector<Int> sorted;
  std::vector<std::uint8_t> enc;         // length-prefixed BE encodings, ascending
  std::vector<std::uint32_t> offsets;    // enc boundaries, size n+1

  void build(const Program& program) {
    const Evaluation ev = evaluate(program);
    values = ev.values;
    sorted = values;
    std::sort(sorted.begin(), sorted.end());
    enc.clear();
    offsets.clear();
    offsets.push_back(0);
    for (const Int& v : sorted) {
      append_length_prefixed_be(v, enc);
      offsets.push_back(static_cast<std::uint32_t>(enc.size()));
    }
  }
};

struct Candidate {
  Digest128 digest;
  std::uint32_t parent_rel;
  std::uint8_t step[3];
};

// Enumerate the normalized one-step extensions of one parent in canonical
// (a, b, op) order and hand each (digest, step) to `emit`. The parent is
// normalized, so every candidate value is positive; only duplicates are
// filtered.
template <typename Emit>
void for_each_extension(const ParentCtx& ctx, Emit&& emit) {
  const std::size_t n = ctx.values.size();
  thread_local std::vector<std::uint8_t> venc;
  Int v;
  for (std::size_t a = 1; a <= n; ++a) {
    const Int& x = ctx.values[a - 1];
    for (std::size_t b = a; b <= n; ++b) {
      const Int& y = ctx.values[b - 1];
      for (int opc = 0; opc < 3; ++opc) {
        const Op op = static_cast<Op>(opc);
        if (op == Op::sub && a == b) continue;  // yields 0
        switch (op) {
          case Op::add: v = x + y; break;
          case Op::sub: v = x >= y ? Int(x - y) : Int(y - x); break;
          case Op::mul: v = x * y; break;
        }
        const auto it = std::lower_bound(ctx.sorted.begin(), ctx.sorted.end(), v);
        if (it != ctx.sorted.end() && *it == v) continue;  // duplicate: not normalized
        const std::size_t pos = static_cast<std::size_t>(it - ctx.sorted.begin());
        venc.clear();
        append_length_prefixed_be(v, venc);
        const Digest128 d = digest_spliced(
            static_cast<std::uint32_t>(n + 1),
            std::span(ctx.enc.data(), ctx.offsets[pos]),
            std::span(venc.data(), venc.size()),
            std::span(ctx.enc.data() + ctx.offsets[pos], ctx.enc.size() - ctx.offsets[pos]));
        emit(d, static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
             static_cast<std::uint8_t>(opc), v);
      }
    }
  }
}

}  // namespace

std::span<const std::uint8_t> Frontier::encoding_at(std::size_t i) const {
  const std::size_t stride = 3 * static_cast<std::size_t>(length);
  return std::span(blob.data() + i * stride, stride);
}

Program Frontier::program_at(std::size_t i) const {
  return decode_steps(encoding_at(i));
}

void Frontier::append_encoding(std::span<const std::uint8_t> enc) {
  blob.insert(blob.end(), enc.begin(), enc.end());
}

Frontier initial_frontier() { return Frontier{}; }

Frontier expand(const Frontier& parent, const ExpandOptions& options,
                const NewClassFn& on_new_class) {
  const int k_out = parent.length + 1;
  if (k_out > 254) throw IndexOverflowError("expansion beyond length 254 is unsupported");
  Frontier out;
  out.length = k_out;
  const std::size_t parents = parent.count();
  if (parents == 0) return out;

  const int workers = std::max(1, options.workers);
  const std::size_t n_vals = static_cast<std::size_t>(parent.length) + 1;
  const std::size_t cand_per_parent = 3 * n_vals * (n_vals + 1) / 2;
  // keep per-block candidate buffers around a couple hundred MB total
  const std::size_t block_size =
      std::max<std::size_t>(256, 8'000'000 / std::max<std::size_t>(1, cand_per_parent));

  DigestSet seen(parents * 16);
  // verify-digests mode keeps each class's sorted values for exact
  // comparison on digest repeats
  std::unordered_map<std::uint64_t, std::vector<std::vector<Int>>> verify_map;

  std::vector<ParentCtx> ctxs;
  std::vector<std::vector<Candidate>> results(static_cast<std::size_t>(workers));

  for (std::size_t block_begin = 0; block_begin < parents; block_begin += block_size) {
    const std::size_t block_end = std::min(parents, block_begin + block_size);
    const std::size_t rows = block_end - block_begin;
    ctxs.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      ctxs[r].build(parent.program_at(block_begin + r));
    }

    run_workers(workers, [&](int w) {
      auto& local = results[static_cast<std::size_t>(w)];
      local.clear();
      const std::size_t lo = rows * static_cast<std::size_t>(w) / static_cast<std::size_t>(workers);
      const std::size_t hi =
          rows * (static_cast<std::size_t>(w) + 1) / static_cast<std::size_t>(workers);
      for (std::size_t r = lo; r < hi; ++r) {
        for_each_extension(ctxs[r], [&](const Digest128& d, std::uint8_t a, std::uint8_t b,
                                        std::uint8_t opc, const Int&) {
          Candidate c;
          c.digest = d;
          c.parent_rel = static_cast<std::uint32_t>(r);
          c.step[0] = a;
          c.step[1] = b;
          c.step[2] = opc;
          local.push_back(c);
        });
      }
    });

    // first insertion wins: candidates arrive in ascending full-encoding
    // order, so the survivor is the lexicographically least program
    for (const auto& local : results) {
      for (const Candidate& c : local) {
        const ParentCtx& ctx = ctxs[c.parent_rel];
        if (seen.insert(c.digest)) {
          out.append_encoding(parent.encoding_at(block_begin + c.parent_rel));
          out.blob.insert(out.blob.end(), c.step, c.step + 3);
          if (on_new_class || options.verify_digests) {
            const Step step{c.step[0], c.step[1], static_cast<Op>(c.step[2])};
            Int v = apply_step(ctx.values, step);
            if (options.verify_digests) {
              std::vector<Int> sv = ctx.sorted;
              sv.insert(std::lower_bound(sv.begin(), sv.end(), v), v);
              verify_map[c.digest.lo].push_back(std::move(sv));
            }
            if (on_new_class) on_new_class(v);
          }
        } else if (options.verify_digests) {
          const Step step{c.step[0], c.step[1], static_cast<Op>(c.step[2])};
          Int v = apply_step(ctx.values, step);
          std::vector<Int> sv = ctx.sorted;
          sv.insert(std::lower_bound(sv.begin(), sv.end(), v), v);
          bool matched = false;
          for (const auto& known : verify_map[c.digest.lo]) {
            if (known == sv) {
              matched = true;
              break;
            }
          }
          if (!matched) {
            throw Error("digest collision detected at length " + std::to_string(k_out) +
                        ": distinct value sets share a 128-bit key");
          }
        }
      }
    }
  }
  return out;
}

std::vector<Int> collect_new_values(const Frontier& parent, int workers,
                                    const IntSet& already) {
  const std::size_t parents = parent.count();
  const int w_count = std::max(1, workers);
  std::vector<std::vector<Int>> locals(static_cast<std::size_t>(w_count));
  std::atomic<std::size_t> next{0};
  constexpr std::size_t chunk = 512;

  run_workers(w_count, [&](int w) {
    IntSet seen_local;
    auto& local = locals[static_cast<std::size_t>(w)];
    ParentCtx ctx;
    while (true) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= parents) break;
      const std::size_t end = std::min(parents, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        const Program prog = parent.program_at(i);
        const Evaluation ev = evaluate(prog);
        ctx.values = ev.values;
        ctx.sorted = ev.values;
        std::sort(ctx.sorted.begin(), ctx.sorted.end());
        const std::size_t n = ctx.values.size();
        Int v;
        for (std::size_t a = 1; a <= n; ++a) {
          for (std::size_t b = a; b <= n; ++b) {
            const Int& x = ctx.values[a - 1];
            const Int& y = ctx.values[b - 1];
            for (int opc = 0; opc < 3; ++opc) {
              if (opc == static_cast<int>(Op::sub) && a == b) continue;
              switch (static_cast<Op>(opc)) {
                case Op::add: v = x + y; break;
                case Op::sub: v = x >= y ? Int(x - y) : Int(y - x); break;
                case Op::mul: v = x * y; break;
              }
              if (std::binary_search(ctx.sorted.begin(), ctx.sorted.end(), v)) continue;
              if (already.count(v) != 0) continue;
              if (seen_local.insert(v).second) local.push_back(v);
            }
          }
        }
      }
    }
  });

  std::vector<Int> merged;
  for (auto& local : locals) {
    merged.insert(merged.end(), std::make_move_iterator(local.begin()),
                  std::make_move_iterator(local.end()));
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

bool ReachedMap::insert(const Int& value, int level) {
  auto [it, fresh] = first_.try_emplace(value, level);
  if (!fresh) {
    if (level < it->second) it->second = level;
    return false;
  }
  values_.insert(value);
  return true;
}

int ReachedMap::first_level(const Int& value) const {
  const auto it = first_.find(value);
  return it == first_.end() ? -1 : it->second;
}

std::uint64_t ReachedMap::initial_interval() const {
  while (values_.count(interval_cursor_ + 1) != 0) ++interval_cursor_;
  return interval_cursor_.convert_to<std::uint64_t>();
}

void CoverageTracker::add_values(const std::vector<Int>& values, int workers) {
  const int w_count = std::max(1, workers);
  std::vector<std::vector<Int>> divisor_lists(values.size());
  std::vector<std::vector<Int>> incomplete_at(values.size());
  std::atomic<std::size_t> next{0};

  run_workers(w_count, [&](int) {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) break;
      FactoredInteger f = factorize(values[i], budget_);
      divisor_lists[i] = divisors(f);
      if (!f.complete) {
        incomplete_at[i].push_back(values[i]);
        divisor_lists[i].push_back(values[i]);  // a value always covers itself
      }
    }
  });

  for (std::size_t i = 0; i < values.size(); ++i) {
    for (Int& d : divisor_lists[i]) covered_.insert(std::move(d));
    for (Int& u : incomplete_at[i]) unfactored_.push_back(std::move(u));
  }
  std::sort(unfactored_.begin(), unfactored_.end());
}

std::uint64_t CoverageTracker::covered_interval() const {
  while (covered_.count(interval_cursor_ + 1) != 0) ++interval_cursor_;
  return interval_cursor_.convert_to<std::uint64_t>();
}

std::set<Int> reached_set(std::span<const Frontier> frontiers) {
  std::set<Int> out;
  for (const Frontier& f : frontiers) {
    for (std::size_t i = 0; i < f.count(); ++i) {
      const Evaluation ev = evaluate(f.program_at(i));
      out.insert(ev.values.begin(), ev.values.end());
    }
  }
  return out;
}

std::uint64_t initial_interval(const std::set<Int>& reached) {
  std::uint64_t x = 0;
  while (reached.count(Int(x + 1)) != 0) ++x;
  return x;
}

CoveredSet covered_set(std::span<const Frontier> frontiers, const FactorBudget& budget) {
  CoveredSet out;
  for (const Int& v : reached_set(frontiers)) {
    FactoredInteger f = factorize(v, budget);
    auto divs = divisors(f);
    out.values.insert(divs.begin(), divs.end());
    if (!f.complete) {
      out.complete = false;
      out.unfactored.push_back(v);
      out.values.insert(v);
    }
  }
  return out;
}

namespace {

void write_text_atomically(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc | std::ios::binary);
    if (!os) throw CorruptFileError("cannot write '" + tmp.string() + "'");
    os << text;
  }
  std::filesystem::rename(tmp, path);
}

std::string stats_table(std::span<const LevelStats> rows) {
  std::string out = "k\treached\tinitial_interval\tcovered_interval\tcovered\tcovered_complete\n";
  for (const LevelStats& s : rows) {
    out += std::to_string(s.k) + '\t' + std::to_string(s.reached_count) + '\t' +
           std::to_string(s.initial_interval) + '\t' + std::to_string(s.covered_interval) +
           '\t' + std::to_string(s.covered_count) + '\t' + (s.covered_complete ? "1" : "0") +
           '\n';
  }
  return out;
}

std::string reached_table(const ReachedMap& reached) {
  std::vector<std::pair<Int, int>> rows(reached.entries().begin(), reached.entries().end());
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& [v, level] : rows) {
    out += v.str() + '\t' + std::to_string(level) + '\n';
  }
  return out;
}

}  // namespace

std::vector<LevelStats> run_levels(const RunLevelsConfig& config) {
  if (config.max_length < 1) throw InvalidInputError("max_length must be >= 1");
  if (config.out_dir.empty()) throw InvalidInputError("output directory required");
  std::filesystem::create_directories(config.out_dir);

  const int store_depth = config.stats_only_last ? config.max_length - 1 : config.max_length;

  int resumable_up_to = -1;
  if (config.resume) {
    for (int k = 0; k <= store_depth; ++k) {
      if (!std::filesystem::exists(frontier_path(config.out_dir, k))) break;
      resumable_up_to = k;
    }
  }

  ReachedMap reached;
  reached.insert(1, 0);
  CoverageTracker coverage(config.factor_budget);
  coverage.add_values({Int(1)}, 1);

  std::vector<LevelStats> stats;
  Frontier current = initial_frontier();
  if (resumable_up_to < 0) {
    write_frontier(current, frontier_path(config.out_dir, 0));
  }

  const auto emit_level = [&](int k, const std::vector<Int>& news) {
    for (const Int& v : news) reached.insert(v, k);
    coverage.add_values(news, config.workers);
    LevelStats row;
    row.k = k;
    row.reached_count = reached.size();
    row.initial_interval = reached.initial_interval();
    row.covered_interval = coverage.covered_interval();
    row.covered_count = coverage.covered_count();
    row.covered_complete = coverage.complete();
    stats.push_back(row);
    write_text_atomically(config.out_dir / "stats.tsv", stats_table(stats));
    write_text_atomically(config.out_dir / "reached.tsv", reached_table(reached));
    if (config.on_level) config.on_level(row);
  };

  for (int k = 1; k <= store_depth; ++k) {
    std::vector<Int> news;
    if (k <= resumable_up_to) {
      current = read_frontier(frontier_path(config.out_dir, k));
      IntSet seen_level;
      for (std::size_t i = 0; i < current.count(); ++i) {
        const Evaluation ev = evaluate(current.program_at(i));
        for (const Int& v : ev.values) {
          if (!reached.contains(v) && seen_level.insert(v).second) news.push_back(v);
        }
      }
      std::sort(news.begin(), news.end());
    } else {
      IntSet seen_level;
      ExpandOptions opts;
      opts.workers = config.workers;
      Frontier next = expand(current, opts, [&](const Int& v) {
        if (!reached.contains(v) && seen_level.insert(v).second) news.push_back(v);
      });
      current = std::move(next);
      std::sort(news.begin(), news.end());
      write_frontier(current, frontier_path(config.out_dir, k));
    }
    emit_level(k, news);
  }

  if (config.stats_only_last) {
    const int k = config.max_length;
    std::vector<Int> news = collect_new_values(current, config.workers, reached.values());
    emit_level(k, news);
  }
  return stats;
}

}  // namespace slp
