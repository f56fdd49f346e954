// Copyright 2026 The asrq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line surface. Everything runs through run_cli so tests can drive
// the exact same code path as the binary.
//
// Exit codes: 0 success, 2 verification failure, 3 input error,
// 4 capacity guard.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asrq/walk.hpp"

namespace asrq {

enum ExitCode : int { kExitOk = 0, kExitVerification = 2, kExitInput = 3, kExitCapacity = 4 };

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ScalingRow {
  std::uint64_t n = 0;
  WalkParams params;
  std::uint64_t queries = 0;
  double success_prob = 0;
  double baseline_prob = 0;
  WalkMode mode = WalkMode::collapsed;
  /// Sorted claw finding evaluates both sides once: 2N.
  std::uint64_t classical_queries = 0;
  /// Set when a guard refused the run; the numeric fields are then empty.
  std::string skipped;
};

/// One planted-claw walk per N = 2^bits for bits in [min_bits, max_bits]
/// with the standard parameters (clamped to N - 1). Empty when min > max.
std::vector<ScalingRow> scaling_rows(unsigned min_bits, unsigned max_bits, WalkMode mode,
                                     unsigned outer_multiplier, std::uint64_t seed);

std::string scaling_csv(const std::vector<ScalingRow>& rows);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace asrq
