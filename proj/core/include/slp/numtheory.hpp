#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "slp/bigint.hpp"

namespace slp {

Int factorial(unsigned n);

// Product of all primes <= p. Throws InvalidInputError if p < 2.
Int primorial(unsigned p);

// Deterministic Miller-Rabin below 3.317e24 (13 fixed bases); fixed
// 40-prime witness set above that.
bool is_probable_prime(const Int& n);

struct FactoredInteger {
  Int value;
  std::vector<std::pair<Int, unsigned>> factors;  // ascending primes
  bool complete = true;
  std::vector<Int> unfactored;  // composite cofactors left on budget exhaustion
};

// Budgets are iteration counts so results are reproducible; the CLI maps
// milliseconds onto iterations at a fixed documented rate.
struct FactorBudget {
  std::uint64_t rho_iterations = 200'000'000;
};
constexpr std::uint64_t kRhoIterationsPerMs = 20'000;

// Trial division by primes up to 1e6, then Pollard rho (Brent cycle
// detection, fixed parameter sequence). Incompleteness is a flag, never an
// error. x must be >= 1.
FactoredInteger factorize(const Int& x, const FactorBudget& budget = {});

// All positive divisors, ascending. For incomplete inputs this is the
// divisor set of the factored part only.
std::vector<Int> divisors(const FactoredInteger& f);

struct TauBounds {
  int lower = 0;
  int upper = 0;
};

// lower = least k with n <= 2^(2^(k-1)), which makes the power-tower case
// 2^(2^k) come out exactly k+1; upper = floor(2*log2 n), computed as
// bit_length(n^2) - 1 to stay integer-exact. Requires n >= 2.
TauBounds tau_bounds(const Int& n);

// Primes <= 1e6, sieved once.
const std::vector<std::uint32_t>& small_primes();

std::vector<std::uint32_t> primes_in_range(std::uint32_t lo, std::uint32_t hi);

}  // namespace slp
