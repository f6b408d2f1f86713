#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slp {

enum class Op : std::uint8_t { add = 0, sub = 1, mul = 2 };

char op_symbol(Op op);

// One step of a straight-line program: combine the values at positions
// `a` and `b` (1-based; position 1 holds the constant 1). Add and Mul are
// stored with a <= b; Sub keeps its written order and evaluates as the
// absolute difference.
struct Step {
  std::uint16_t a = 0;
  std::uint16_t b = 0;
  Op op = Op::add;

  friend bool operator==(const Step&, const Step&) = default;
};

Step make_step(std::uint16_t a, std::uint16_t b, Op op);

struct Program {
  std::vector<Step> steps;

  int length() const { return static_cast<int>(steps.size()); }
  friend bool operator==(const Program&, const Program&) = default;
};

// Step t may only reference positions 1..t (x_1 plus earlier results).
// Throws InvalidIndexError describing the first violation.
void validate_indices(const Program& program);

// Text form "{1,1,+},{1,2,+},{2,3,*}". Whitespace between tokens is
// ignored on input; empty input is the zero-length program.
Program parse_program(std::string_view text);
std::string render_program(const Program& program);

// Packed byte form: one (a, b, op) triple per step. This is both the
// frontier file body format and the total order used to pick class
// representatives (lexicographically least encoding wins).
// Throws IndexOverflowError if any index exceeds 255.
std::vector<std::uint8_t> encode_steps(const Program& program);
void append_step_encoding(const Step& step, std::vector<std::uint8_t>& out);
Program decode_steps(std::span<const std::uint8_t> bytes);

}  // namespace slp
