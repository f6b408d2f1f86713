#include "slp/program.hpp"

#include <cctype>

#include "slp/error.hpp"

namespace slp {

char op_symbol(Op op) {
  switch (op) {
    case Op::add: return '+';
    case Op::sub: return '-';
    case Op::mul: return '*';
  }
  return '?';
}

Step make_step(std::uint16_t a, std::uint16_t b, Op op) {
  if (op != Op::sub && a > b) std::swap(a, b);
  return Step{a, b, op};
}

void validate_indices(const Program& program) {
  for (std::size_t i = 0; i < program.steps.size(); ++i) {
    const Step& s = program.steps[i];
    const std::size_t avail = i + 1;  // positions 1..i+1 exist before step i+1
    if (s.a < 1 || s.b < 1 || s.a > avail || s.b > avail) {
      throw InvalidIndexError("step " + std::to_string(i + 1) + " references position " +
                              std::to_string(s.a > avail || s.a < 1 ? s.a : s.b) +
                              " but only 1.." + std::to_string(avail) + " are computed");
    }
  }
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() const { return text[pos]; }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      throw SyntaxError(std::string("expected '") + c + "'", pos);
    }
    ++pos;
  }
  std::uint16_t parse_index() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw SyntaxError("expected index", pos);
    }
    unsigned long v = 0;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<unsigned long>(text[pos] - '0');
      if (v > 65535) throw SyntaxError("index too large", start);
      ++pos;
    }
    if (v < 1) throw SyntaxError("indices are 1-based", start);
    return static_cast<std::uint16_t>(v);
  }
  Op parse_op() {
    skip_ws();
    if (pos >= text.size()) throw SyntaxError("expected operator", pos);
    const char c = text[pos];
    // an operator is exactly one of + - * ; anything longer (e.g. "-1")
    // must fail rather than be silently accepted
    Op op;
    switch (c) {
      case '+': op = Op::add; break;
      case '-': op = Op::sub; break;
      case '*': op = Op::mul; break;
      default: throw SyntaxError("expected one of '+', '-', '*'", pos);
    }
    ++pos;
    skip_ws();
    if (pos < text.size() && text[pos] != '}') {
      throw SyntaxError("expected '}' after operator", pos);
    }
    return op;
  }
};

}  // namespace

Program parse_program(std::string_view text) {
  Program program;
  Cursor cur{text};
  if (cur.done()) return program;  // zero-length program
  while (true) {
    cur.expect('{');
    const std::uint16_t a = cur.parse_index();
    cur.expect(',');
    const std::uint16_t b = cur.parse_index();
    cur.expect(',');
    const Op op = cur.parse_op();
    cur.expect('}');
    program.steps.push_back(make_step(a, b, op));
    if (cur.done()) break;
    cur.expect(',');
    if (cur.done()) throw SyntaxError("trailing comma", cur.pos);
  }
  validate_indices(program);
  return program;
}

std::string render_program(const Program& program) {
  std::string out;
  for (std::size_t i = 0; i < program.steps.size(); ++i) {
    const Step& s = program.steps[i];
    if (i) out += ',';
    out += '{';
    out += std::to_string(s.a);
    out += ',';
    out += std::to_string(s.b);
    out += ',';
    out += op_symbol(s.op);
    out += '}';
  }
  return out;
}

void append_step_encoding(const Step& step, std::vector<std::uint8_t>& out) {
  if (step.a > 255 || step.b > 255) {
    throw IndexOverflowError("step index exceeds the one-byte encoding limit");
  }
  out.push_back(static_cast<std::uint8_t>(step.a));
  out.push_back(static_cast<std::uint8_t>(step.b));
  out.push_back(static_cast<std::uint8_t>(step.op));
}

std::vector<std::uint8_t> encode_steps(const Program& program) {
  std::vector<std::uint8_t> out;
  out.reserve(program.steps.size() * 3);
  for (const Step& s : program.steps) append_step_encoding(s, out);
  return out;
}

Program decode_steps(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 3 != 0) {
    throw CorruptFileError("step blob length is not a multiple of 3");
  }
  Program program;
  program.steps.reserve(bytes.size() / 3);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    if (bytes[i + 2] > 2) throw CorruptFileError("invalid op byte in step blob");
    program.steps.push_back(Step{bytes[i], bytes[i + 1], static_cast<Op>(bytes[i + 2])});
  }
  validate_indices(program);
  return program;
}

}  // namespace slp
