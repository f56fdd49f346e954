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

// Stage order: claw (K2', K6) -> K5 -> K4 -> c* = K1 ^ K3 -> K1 (with K2, K3
// following). Every stage yields candidates lazily; a dead end backtracks to
// the previous stage. Final arbitration is trial encryption of every pair.
// Unless first_solution is set, every chain is explored and the smallest
// verified key is reported.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asrq/attack.hpp"
#include "asrq/walk.hpp"
#include "json.hpp"

namespace asrq {

enum class ClawBackend { sorted, exhaustive, walk };
enum class SearchBackend { exhaustive, grover };

const char* to_string(ClawBackend b);
const char* to_string(SearchBackend b);
ClawBackend parse_claw_backend(const std::string& s);
SearchBackend parse_search_backend(const std::string& s);

struct Backends {
  ClawBackend claw = ClawBackend::sorted;
  SearchBackend search = SearchBackend::exhaustive;
  WalkMode walk_mode = WalkMode::collapsed;
  std::uint64_t seed = 0;
  /// Fresh-seed reruns after a failed measurement (walk and Grover stages).
  unsigned retries = 5;
  unsigned outer_multiplier = 1;
  /// Stop at the first chain that verifies instead of collecting them all.
  /// The collected answer is the smallest (K1..K6) and does not depend on
  /// the order in which a backend yields candidates.
  bool first_solution = false;
  /// Also sweep k3_check_paper over every K3 and report how many pass.
  bool literal_k3 = false;
};

struct StageReport {
  std::string name;
  std::string backend;
  /// Oracle applications for quantum backends, function evaluations for
  /// classical ones.
  std::uint64_t queries = 0;
  /// Classical checks of measured candidates.
  std::uint64_t classical_checks = 0;
  unsigned runs = 0;
  std::string result_hex;
  std::string note;
  std::optional<double> success_prob;
  std::optional<double> baseline_prob;
};

struct QueryStats {
  std::vector<StageReport> stages;
  unsigned data_complexity = 0;
  double wall_seconds = 0;

  std::uint64_t total_queries() const;
  const StageReport* stage(const std::string& name) const;
};

struct AttackResult {
  RecoveredKeys keys;
  QueryStats stats;
  bool verified = false;
  /// Claws whose K5/K4/K1 stages were run.
  std::size_t claws_tried = 0;
  /// 1-based position of the reported chain's claw in candidate order.
  std::size_t solution_claw_index = 0;
  /// (K2', K6, K5, K4) chains with at least one K1 reproducing every pair.
  std::size_t consistent_chains = 0;
};

/// Throws VerificationError when no candidate chain survives (no claw, or
/// every candidate fails trial encryption), ParameterError on invalid input.
AttackResult run_asr_attack(const ChosenPairSet& set, const FeistelSpec& spec, const Backends& backends);

/// Report in a fixed key order; wall time only when include_timing is set.
nlohmann::json attack_report_json(const FeistelSpec& spec, const ChosenPairSet& set, const Backends& backends,
                                  const AttackResult& result, bool include_timing = false);

}  // namespace asrq
