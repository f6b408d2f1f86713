#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "slp/evaluation.hpp"

namespace slp {

// 128-bit truncation of SHA-256 over the canonical byte encoding of a
// sorted value sequence. Stable across runs and platforms.
struct Digest128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend auto operator<=>(const Digest128&, const Digest128&) = default;
};

// Identifier of a range-isomorphism class: two normalized programs have
// equal sorted value sequences iff they compute the same value set.
struct CanonicalKey {
  std::vector<Int> sorted_values;
  Digest128 digest;
};

// Canonical digest input: u32 big-endian value count, then each value in
// ascending order as a u32 big-endian byte count plus magnitude bytes.
void encode_sorted_values(std::span<const Int> sorted_values,
                          std::vector<std::uint8_t>& out);

Digest128 digest_bytes(std::span<const std::uint8_t> bytes);
Digest128 digest_sorted_values(std::span<const Int> sorted_values);

// Digest of [u32 BE count][pre][mid][post] without concatenating the
// parts. The expansion hot loop splices one new value encoding into a
// parent's cached encoding this way.
Digest128 digest_spliced(std::uint32_t count, std::span<const std::uint8_t> pre,
                         std::span<const std::uint8_t> mid,
                         std::span<const std::uint8_t> post);

// Requires a normalized evaluation; throws NotNormalizedError otherwise.
CanonicalKey canonical_key(const Evaluation& evaluation);

}  // namespace slp
