#pragma once

#include "slp/bigint.hpp"
#include "slp/program.hpp"

namespace slp {

// The value sequence x_1 = 1, x_2, ..., x_{f+1} of a program. Subtraction
// yields the absolute difference, so every entry is nonnegative.
struct Evaluation {
  std::vector<Int> values;
};

enum class TargetMode { exact, multiple };

std::string_view target_mode_name(TargetMode mode);
TargetMode parse_target_mode(std::string_view name);

Evaluation evaluate(const Program& program);

// Apply one step to an existing value sequence (no allocation beyond the
// result). Indices must already be validated.
Int apply_step(std::span<const Int> values, const Step& step);

// True iff all values are strictly positive and pairwise distinct.
bool is_normalized(const Evaluation& evaluation);

// Exact: some value equals n. Multiple: some value is a positive multiple
// of n. n must be >= 1.
bool computes_target(const Evaluation& evaluation, const Int& n, TargetMode mode);
bool value_hits_target(const Int& value, const Int& n, TargetMode mode);

}  // namespace slp
