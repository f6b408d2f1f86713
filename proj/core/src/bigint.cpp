#include "slp/bigint.hpp"

#include <boost/multiprecision/integer.hpp>

#include "slp/error.hpp"

namespace slp {

bool within_doubling_bound(const Int& v, int k) {
  if (v <= 0) return false;
  if (k <= 0) return v == 1;
  // v <= 2^m with m = 2^(k-1). For k-1 >= 64 the bound dwarfs any value
  // whose bit length fits in memory.
  if (k - 1 >= 64) return true;
  const std::uint64_t m = std::uint64_t{1} << (k - 1);
  const std::size_t bl = bit_length(v);
  if (bl <= m) return true;
  if (bl == m + 1) {
    // only 2^m itself has m+1 bits and still satisfies the bound
    return (v & (v - 1)) == 0;
  }
  return false;
}

Int ceil_sqrt(const Int& v) {
  if (v <= 0) return 0;
  Int r = boost::multiprecision::sqrt(v);
  if (r * r < v) ++r;
  return r;
}

Int parse_decimal(std::string_view text) {
  if (text.empty()) throw InvalidInputError("empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw InvalidInputError("invalid decimal integer: '" + std::string(text) + "'");
    }
  }
  return Int(std::string(text));
}

void append_length_prefixed_be(const Int& v, std::vector<std::uint8_t>& out) {
  const std::size_t len_pos = out.size();
  out.resize(out.size() + 4);
  const std::size_t before = out.size();
  if (!v.is_zero()) {
    export_bits(v, std::back_inserter(out), 8);  // most significant first
  }
  const std::uint32_t n = static_cast<std::uint32_t>(out.size() - before);
  out[len_pos + 0] = static_cast<std::uint8_t>(n >> 24);
  out[len_pos + 1] = static_cast<std::uint8_t>(n >> 16);
  out[len_pos + 2] = static_cast<std::uint8_t>(n >> 8);
  out[len_pos + 3] = static_cast<std::uint8_t>(n);
}

}  // namespace slp
