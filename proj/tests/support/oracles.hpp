#pragma once

// Independent brute-force oracles used by the unit and acceptance suites.
// Deliberately naive: no canonical keys, no digests, no pruning, no reuse
// of the production enumeration path.

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "slp/bigint.hpp"
#include "slp/program.hpp"

namespace slp::testing {

// Visit every normalized program of length 1..max_length (no
// deduplication). `fn` receives the value sequence and its length.
void enumerate_normalized(int max_length,
                          const std::function<void(const std::vector<Int>&, int)>& fn);

// value -> least program length that computes it, from a full no-dedup
// sweep. Includes 1 -> 0.
std::map<Int, int> first_reached_levels(int max_length);

// Distinct value sets of normalized programs of exactly length k.
std::set<std::vector<Int>> distinct_value_sets(int k);

// Count of normalized programs of exactly length k, no deduplication.
std::uint64_t normalized_program_count(int k);

// Divisors by trial division; intended for moderate values only.
std::set<Int> brute_divisors(const Int& v);

}  // namespace slp::testing
