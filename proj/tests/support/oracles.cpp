#include "oracles.hpp"

#include <algorithm>

namespace slp::testing {

namespace {

void sweep(std::vector<Int>& values, int k, int max_length,
           const std::function<void(const std::vector<Int>&, int)>& fn) {
  if (k == max_length) return;
  const std::size_t n = values.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const Int& x = values[a];
      const Int& y = values[b];
      for (int opc = 0; opc < 3; ++opc) {
        Int v;
        switch (static_cast<Op>(opc)) {
          case Op::add: v = x + y; break;
          case Op::sub:
            if (a == b) continue;
            v = x >= y ? Int(x - y) : Int(y - x);
            break;
          case Op::mul: v = x * y; break;
        }
        if (v <= 0) continue;
        if (std::find(values.begin(), values.end(), v) != values.end()) continue;
        values.push_back(v);
        fn(values, k + 1);
        sweep(values, k + 1, max_length, fn);
        values.pop_back();
      }
    }
  }
}

}  // namespace

void enumerate_normalized(int max_length,
                          const std::function<void(const std::vector<Int>&, int)>& fn) {
  std::vector<Int> values{1};
  // references into `values` are held across push_back in the sweep;
  // reserving once keeps them valid
  values.reserve(static_cast<std::size_t>(max_length) + 1);
  sweep(values, 0, max_length, fn);
}

std::map<Int, int> first_reached_levels(int max_length) {
  std::map<Int, int> first;
  first.emplace(1, 0);
  enumerate_normalized(max_length, [&](const std::vector<Int>& values, int k) {
    const Int& v = values.back();
    auto [it, fresh] = first.emplace(v, k);
    if (!fresh && k < it->second) it->second = k;
  });
  return first;
}

std::set<std::vector<Int>> distinct_value_sets(int k) {
  std::set<std::vector<Int>> sets;
  enumerate_normalized(k, [&](const std::vector<Int>& values, int length) {
    if (length != k) return;
    std::vector<Int> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    sets.insert(std::move(sorted));
  });
  return sets;
}

std::uint64_t normalized_program_count(int k) {
  std::uint64_t count = 0;
  enumerate_normalized(k, [&](const std::vector<Int>&, int length) {
    if (length == k) ++count;
  });
  return count;
}

std::set<Int> brute_divisors(const Int& v) {
  std::set<Int> out;
  for (Int d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.insert(d);
      out.insert(v / d);
    }
  }
  return out;
}

}  // namespace slp::testing
