#include <doctest.h>

#include "oracles.hpp"
#include "slp/error.hpp"
#include "slp/numtheory.hpp"

using namespace slp;

TEST_CASE("factorials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(22) == Int("1124000727777607680000"));
  for (unsigned n = 1; n <= 30; ++n) {
    CHECK(factorial(n) == Int(n) * factorial(n - 1));
  }
}

TEST_CASE("primorials") {
  CHECK(primorial(2) == 2);
  CHECK(primorial(7) == 210);
  CHECK(primorial(23) == 223092870);
  CHECK(primorial(6) == 30);  // non-prime p: product of primes <= p
  CHECK_THROWS_AS(primorial(1), InvalidInputError);
  // multiplicativity over consecutive primes
  CHECK(primorial(29) == primorial(23) * 29);
  CHECK(primorial(28) == primorial(23));
}

TEST_CASE("primality") {
  CHECK(is_probable_prime(2));
  CHECK(is_probable_prime(3));
  CHECK_FALSE(is_probable_prime(1));
  CHECK_FALSE(is_probable_prime(561));   // Carmichael
  CHECK_FALSE(is_probable_prime(65520));
  CHECK(is_probable_prime(65537));
  CHECK(is_probable_prime((Int(1) << 127) - 1));  // Mersenne prime
  CHECK_FALSE(is_probable_prime((Int(1) << 128) + 1));
}

TEST_CASE("factorize the published 6-7 row value") {
  const FactoredInteger f = factorize(65520);
  CHECK(f.complete);
  CHECK(f.factors == std::vector<std::pair<Int, unsigned>>{{2, 4}, {3, 2}, {5, 1}, {7, 1}, {13, 1}});
}

TEST_CASE("factorize edge cases") {
  const FactoredInteger one = factorize(1);
  CHECK(one.complete);
  CHECK(one.factors.empty());

  const FactoredInteger pow2 = factorize(Int(1) << 128);
  CHECK(pow2.complete);
  CHECK(pow2.factors == std::vector<std::pair<Int, unsigned>>{{2, 128}});

  CHECK_THROWS_AS(factorize(0), InvalidInputError);
}

TEST_CASE("factorize is deterministic and respects its budget") {
  // product of two 40-bit primes; rho needs ~2^20 iterations
  const Int p("549755813911"), q("549755813927");
  const Int n = p * q;
  const FactoredInteger a = factorize(n);
  const FactoredInteger b = factorize(n);
  CHECK(a.complete);
  CHECK(a.factors == b.factors);
  CHECK(a.factors.size() == 2);

  FactorBudget tiny{10};
  const FactoredInteger partial = factorize(n, tiny);
  CHECK_FALSE(partial.complete);
  CHECK(partial.value == n);
  CHECK(partial.unfactored == std::vector<Int>{n});
}

TEST_CASE("factor product reproduces the value") {
  for (Int x : {Int(2), Int(97), Int(65520), Int("18446744073709551615"), Int(1) << 64}) {
    const FactoredInteger f = factorize(x);
    REQUIRE(f.complete);
    Int prod = 1;
    for (const auto& [p, e] : f.factors) {
      CHECK(is_probable_prime(p));
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == x);
  }
}

TEST_CASE("divisor enumeration") {
  CHECK(divisors(factorize(12)) == std::vector<Int>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(factorize(97)) == std::vector<Int>{1, 97});
  CHECK(divisors(factorize(1)) == std::vector<Int>{1});
  // count frozen from a brute-force divisor scan
  CHECK(divisors(factorize(65520)).size() == 120);
  CHECK(testing::brute_divisors(65520).size() == 120);
}

TEST_CASE("divisors match brute force on a dense range and random values") {
  for (int x = 1; x <= 3000; ++x) {
    const auto via_factors = divisors(factorize(x));
    const auto brute = testing::brute_divisors(x);
    CHECK(std::set<Int>(via_factors.begin(), via_factors.end()) == brute);
  }
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (int trial = 0; trial < 200; ++trial) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const Int x = 1 + (state >> 12) % 1'000'000;
    const auto via_factors = divisors(factorize(x));
    CHECK(std::set<Int>(via_factors.begin(), via_factors.end()) ==
          testing::brute_divisors(x));
  }
}

TEST_CASE("divisor count equals the product of exponent+1") {
  for (int x : {360, 1024, 700128, 65520}) {
    const FactoredInteger f = factorize(x);
    std::size_t expected = 1;
    for (const auto& [p, e] : f.factors) expected *= e + 1;
    CHECK(divisors(f).size() == expected);
  }
}

TEST_CASE("tau bounds") {
  // the tower case is tight: tau(2^(2^k)) = k+1
  CHECK(tau_bounds(256).lower == 4);   // 256 = 2^(2^3)
  CHECK(tau_bounds(Int(1) << 16).lower == 5);
  CHECK(tau_bounds(2).lower == 1);
  CHECK(tau_bounds(2).upper == 2);
  CHECK(tau_bounds(65536).upper == 32);
  CHECK_THROWS_AS(tau_bounds(1), InvalidInputError);
  // lower <= upper throughout a sweep
  for (int n = 2; n <= 4096; ++n) {
    const TauBounds b = tau_bounds(n);
    CHECK(b.lower <= b.upper);
  }
}
