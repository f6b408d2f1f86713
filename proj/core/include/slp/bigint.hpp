#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace slp {

using Int = boost::multiprecision::cpp_int;

inline std::size_t bit_length(const Int& v) {
  return v.is_zero() ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(v)) + 1;
}

// Largest value any length-k program can compute is 2^(2^(k-1)):
// one doubling followed by repeated squaring. k = 0 computes only 1.
bool within_doubling_bound(const Int& v, int k);

// Smallest integer r with r*r >= v.
Int ceil_sqrt(const Int& v);

// Strict decimal parse; throws InvalidInputError on anything else.
Int parse_decimal(std::string_view text);

// Appends a u32 big-endian byte count followed by the magnitude bytes,
// most significant first. Used for the canonical digest encoding.
void append_length_prefixed_be(const Int& v, std::vector<std::uint8_t>& out);

}  // namespace slp
