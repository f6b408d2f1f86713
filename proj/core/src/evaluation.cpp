#include "slp/evaluation.hpp"

#include <algorithm>

#include "slp/error.hpp"

namespace slp {

std::string_view target_mode_name(TargetMode mode) {
  return mode == TargetMode::exact ? "exact" : "multiple";
}

TargetMode parse_target_mode(std::string_view name) {
  if (name == "exact") return TargetMode::exact;
  if (name == "multiple") return TargetMode::multiple;
  throw InvalidInputError("unknown target mode: '" + std::string(name) + "'");
}

Int apply_step(std::span<const Int> values, const Step& step) {
  const Int& x = values[step.a - 1];
  const Int& y = values[step.b - 1];
  switch (step.op) {
    case Op::add: return x + y;
    case Op::mul: return x * y;
    case Op::sub: return x >= y ? Int(x - y) : Int(y - x);
  }
  return 0;
}

Evaluation evaluate(const Program& program) {
  validate_indices(program);
  Evaluation ev;
  ev.values.reserve(program.steps.size() + 1);
  ev.values.emplace_back(1);
  for (const Step& s : program.steps) {
    ev.values.push_back(apply_step(ev.values, s));
  }
  return ev;
}

bool is_normalized(const Evaluation& evaluation) {
  for (const Int& v : evaluation.values) {
    if (v <= 0) return false;
  }
  std::vector<Int> sorted(evaluation.values);
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool value_hits_target(const Int& value, const Int& n, TargetMode mode) {
  if (value < n || value.is_zero()) return false;
  if (mode == TargetMode::exact) return value == n;
  return value % n == 0;
}

bool computes_target(const Evaluation& evaluation, const Int& n, TargetMode mode) {
  if (n < 1) throw InvalidInputError("target must be a positive integer");
  for (const Int& v : evaluation.values) {
    if (value_hits_target(v, n, mode)) return true;
  }
  return false;
}

}  // namespace slp
