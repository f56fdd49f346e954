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

// Multi-equation claw problems: f_i(x1) == g_i(x2) for every i, classical
// solvers, and the reduction to a single function on a doubled domain.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

namespace asrq {

/// Concatenated output of all equations, f_1 in the most significant bits.
using ClawValue = std::uint64_t;

struct ClawProblem {
  unsigned domain_bits = 0;  // u
  unsigned range_bits = 0;   // v
  unsigned eq_count = 1;     // w
  /// eq is 0-based; outputs must be < 2^range_bits.
  std::function<std::uint32_t(unsigned eq, std::uint32_t x)> f;
  std::function<std::uint32_t(unsigned eq, std::uint32_t x)> g;
  bool expected_unique = false;

  std::uint64_t domain_size() const { return std::uint64_t{1} << domain_bits; }
  ClawValue eval_f(std::uint32_t x) const;
  ClawValue eval_g(std::uint32_t x) const;
  /// Throws ParameterError when the widths do not fit a ClawValue.
  void validate() const;
};

/// Problem backed by explicit lookup tables, tables[eq][x].
ClawProblem table_claw_problem(unsigned domain_bits, unsigned range_bits,
                               std::vector<std::vector<std::uint32_t>> f_tables,
                               std::vector<std::vector<std::uint32_t>> g_tables);

struct Claw {
  std::uint32_t x1 = 0;
  std::uint32_t x2 = 0;
  friend auto operator<=>(const Claw&, const Claw&) = default;
};

std::ostream& operator<<(std::ostream& os, const Claw& c);

/// Single function on u+1 bits: F(c||x) is f(x) for c = 0 and g(x) for c = 1,
/// so J1 = [0, N) and J2 = [N, 2N).
class CombinedFunction {
 public:
  explicit CombinedFunction(ClawProblem p);

  ClawValue operator()(std::uint64_t j) const;
  std::uint64_t half_size() const { return problem_.domain_size(); }
  unsigned input_bits() const { return problem_.domain_bits + 1; }
  unsigned output_bits() const { return problem_.range_bits * problem_.eq_count; }
  const ClawProblem& problem() const { return problem_; }

  static std::uint64_t join(unsigned c, std::uint32_t x, unsigned domain_bits) {
    return (std::uint64_t{c} << domain_bits) | x;
  }
  std::uint32_t strip(std::uint64_t j) const {
    return static_cast<std::uint32_t>(j & (half_size() - 1));
  }

 private:
  ClawProblem problem_;
};

CombinedFunction concat_multi(const ClawProblem& p);

inline constexpr unsigned kExhaustiveMaxBits = 12;
inline constexpr unsigned kSortedMaxBits = 24;

/// Every simultaneous claw by direct pair scan, ascending (x1, x2).
/// Refuses (CapacityError) above max_bits.
std::vector<Claw> find_claws_exhaustive(const ClawProblem& p, unsigned max_bits = kExhaustiveMaxBits);

/// Claws of the combined function restricted to cross pairs (j1 in J1,
/// j2 in J2), with the control bit stripped. Pair scan; same guard.
std::vector<Claw> find_combined_claws_exhaustive(const CombinedFunction& F,
                                                 unsigned max_bits = kExhaustiveMaxBits);

struct SortedClawResult {
  std::optional<Claw> claw;
  std::uint64_t evaluations = 0;
};

/// Sort both value tables and merge. Returns the claw with the smallest
/// value, ties broken by (x1, x2). Costs exactly 2 * 2^u evaluations.
SortedClawResult find_claw_sorted(const ClawProblem& p, unsigned max_bits = kSortedMaxBits);

/// One group of claws sharing a value: every pair in xs1 x xs2 is a claw.
struct ClawComponent {
  ClawValue value = 0;
  std::vector<std::uint32_t> xs1;
  std::vector<std::uint32_t> xs2;

  std::size_t claw_count() const { return xs1.size() * xs2.size(); }
};

struct ClawCensus {
  std::vector<ClawComponent> components;  // ascending value
  std::uint64_t evaluations = 0;

  std::size_t claw_count() const;
  /// All claws in sorted-value order, then (x1, x2).
  std::vector<Claw> claws_in_value_order() const;
  bool contains(const Claw& c) const;
};

/// Full claw structure via the sorted tables (same cost as find_claw_sorted).
ClawCensus claw_census(const ClawProblem& p, unsigned max_bits = kSortedMaxBits);

/// CSV rows "value,x1,x2" in sorted-value order, with a header.
void write_claw_census_csv(std::ostream& os, const ClawCensus& census, const ClawProblem& p);

}  // namespace asrq
