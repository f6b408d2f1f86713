#include "slp/numtheory.hpp"

#include <algorithm>

#include <boost/multiprecision/integer.hpp>

#include "slp/error.hpp"

namespace slp {

Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1'000'000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) {
        composite[static_cast<std::size_t>(j)] = true;
      }
    }
    return out;
  }();
  return primes;
}

std::vector<std::uint32_t> primes_in_range(std::uint32_t lo, std::uint32_t hi) {
  const auto& primes = small_primes();
  if (hi > primes.back()) {
    throw InvalidInputError("prime range exceeds the sieve limit of 1e6");
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t p : primes) {
    if (p > hi) break;
    if (p >= lo) out.push_back(p);
  }
  return out;
}

Int primorial(unsigned p) {
  if (p < 2) throw InvalidInputError("primorials are defined for p >= 2");
  Int r = 1;
  for (std::uint32_t q : primes_in_range(2, p)) r *= q;
  return r;
}

namespace {

bool miller_rabin_witness(const Int& n, const Int& base, const Int& d, unsigned s) {
  Int x = boost::multiprecision::powm(base % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // base witnesses compositeness
}

// Deterministic below this threshold with the first 13 prime bases.
const Int kDeterministicMrLimit("3317044064679887385961981");

}  // namespace

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  static constexpr std::uint32_t first_bases[] = {2,  3,  5,  7,  11, 13, 17,
                                                  19, 23, 29, 31, 37, 41};
  for (std::uint32_t p : first_bases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint32_t p : first_bases) {
    if (miller_rabin_witness(n, p, d, s)) return false;
  }
  if (n < kDeterministicMrLimit) return true;
  // fixed extra witnesses above that; error probability < 4^-27
  const auto& primes = small_primes();
  for (int i = 13; i < 40; ++i) {
    if (miller_rabin_witness(n, primes[static_cast<std::size_t>(i)], d, s)) return false;
  }
  return true;
}

namespace {

// Brent-style rho with a fixed parameter schedule; returns a nontrivial
// factor or 0 when the iteration budget runs out. n must be odd and
// composite.
Int pollard_rho_brent(const Int& n, std::uint64_t& budget) {
  constexpr std::uint64_t batch = 128;
  for (Int c = 1; budget > 0; ++c) {
    Int y = 2, q = 1, g = 1, x = 0, ys = 0;
    std::uint64_t r = 1;
    while (g == 1 && budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      for (std::uint64_t k = 0; k < r && g == 1 && budget > 0; k += batch) {
        ys = y;
        const std::uint64_t m = std::min(batch, r - k);
        for (std::uint64_t i = 0; i < m; ++i) {
          y = (y * y + c) % n;
          Int diff = x >= y ? Int(x - y) : Int(y - x);
          q = (q * diff) % n;
        }
        budget = budget > m ? budget - m : 0;
        g = boost::multiprecision::gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      // the batched gcd collapsed; replay one step at a time
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        Int diff = x >= ys ? Int(x - ys) : Int(ys - x);
        g = boost::multiprecision::gcd(diff, n);
      }
    }
    if (g > 1 && g != n) return g;
    // cycle exhausted without a factor under this c; advance the schedule
  }
  return 0;
}

void add_factor(std::vector<std::pair<Int, unsigned>>& factors, const Int& p, unsigned e) {
  for (auto& [q, k] : factors) {
    if (q == p) {
      k += e;
      return;
    }
  }
  factors.emplace_back(p, e);
}

}  // namespace

FactoredInteger factorize(const Int& x, const FactorBudget& budget) {
  if (x < 1) throw InvalidInputError("factorize requires x >= 1");
  FactoredInteger out;
  out.value = x;
  Int rest = x;

  const auto& primes = small_primes();
  const auto strip = [&](std::uint32_t lo, std::uint32_t hi) {
    for (std::uint32_t p : primes) {
      if (p < lo) continue;
      if (p > hi || rest == 1) break;
      if (Int(p) * p > rest) break;  // remaining cofactor is prime
      if (rest % p == 0) {
        unsigned e = 0;
        do {
          rest /= p;
          ++e;
        } while (rest % p == 0);
        add_factor(out.factors, p, e);
      }
    }
  };

  strip(2, 4096);
  if (rest > 1 && is_probable_prime(rest)) {
    add_factor(out.factors, rest, 1);
    rest = 1;
  }
  if (rest > 1) strip(4097, 1'000'000);
  if (rest > 1 && Int(primes.back()) * primes.back() > rest) {
    add_factor(out.factors, rest, 1);
    rest = 1;
  }
  if (rest > 1 && is_probable_prime(rest)) {
    add_factor(out.factors, rest, 1);
    rest = 1;
  }

  std::uint64_t iterations = budget.rho_iterations;
  std::vector<Int> pending;
  if (rest > 1) pending.push_back(rest);
  while (!pending.empty()) {
    Int n = pending.back();
    pending.pop_back();
    if (is_probable_prime(n)) {
      add_factor(out.factors, n, 1);
      continue;
    }
    // perfect powers fall out of rho slowly; peel them directly
    bool split_as_power = false;
    const unsigned max_exp = static_cast<unsigned>(bit_length(n));
    for (unsigned e = 2; e <= max_exp; ++e) {
      // integer e-th root by bisection
      Int lo = 1, hi = Int(1) << (bit_length(n) / e + 1);
      while (lo < hi) {
        Int mid = (lo + hi + 1) / 2;
        if (boost::multiprecision::pow(mid, static_cast<int>(e)) <= n) {
          lo = mid;
        } else {
          hi = mid - 1;
        }
      }
      if (lo > 1 && boost::multiprecision::pow(lo, static_cast<int>(e)) == n) {
        for (unsigned i = 0; i < e; ++i) pending.push_back(lo);
        split_as_power = true;
        break;
      }
    }
    if (split_as_power) continue;
    Int g = iterations > 0 ? pollard_rho_brent(n, iterations) : Int(0);
    if (g.is_zero()) {
      out.complete = false;
      out.unfactored.push_back(n);
      continue;
    }
    pending.push_back(g);
    pending.push_back(n / g);
  }

  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::sort(out.unfactored.begin(), out.unfactored.end());
  return out;
}

std::vector<Int> divisors(const FactoredInteger& f) {
  std::vector<Int> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    Int pw = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pw *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TauBounds tau_bounds(const Int& n) {
  if (n < 2) throw InvalidInputError("tau bounds are defined for n >= 2");
  TauBounds b;
  int k = 1;
  while (!within_doubling_bound(n, k)) ++k;
  b.lower = k;
  b.upper = static_cast<int>(bit_length(n * n)) - 1;
  return b;
}

}  // namespace slp
