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

#include "asrq/grover.hpp"

#include <algorithm>
#include <numbers>

namespace asrq {

std::uint64_t grover_iterations(std::uint64_t n, std::uint64_t m) {
  if (m == 0) throw ParameterError("Grover search needs at least one marked element");
  if (m > n) throw ParameterError("more marked elements than the domain holds");
  return static_cast<std::uint64_t>(
      std::floor(std::numbers::pi / 4 * std::sqrt(static_cast<double>(n) / static_cast<double>(m))));
}

double grover_success_prob(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  if (n == 0 || m > n) throw ParameterError("need 0 <= M <= N and N > 0");
  const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
  const double s = std::sin((2.0 * static_cast<double>(r) + 1.0) * theta);
  return s * s;
}

GroverSample grover_sample(const std::function<bool(std::uint64_t)>& predicate, std::uint64_t n,
                           std::uint64_t seed, std::optional<std::uint64_t> iterations) {
  if (n == 0) throw ParameterError("Grover domain is empty");
  GroverSample out;
  out.iterations = iterations ? *iterations : grover_iterations(n, 1);
  std::mt19937_64 rng(seed);
  if (n <= kGroverStatevectorMax) {
    auto run = grover_run_statevector<double>({n, predicate, out.iterations, seed});
    out.index = sample_index(run.distribution(), rng);
    out.marked_count = run.marked_count;
    out.success_prob = run.marked_probability;
    out.ledger = run.ledger;
    out.statevector = true;
    return out;
  }
  std::vector<std::uint64_t> marked;
  for (std::uint64_t x = 0; x < n; ++x) {
    if (predicate(x)) marked.push_back(x);
  }
  out.marked_count = marked.size();
  out.success_prob = marked.empty() ? 0.0 : grover_success_prob(n, marked.size(), out.iterations);
  out.ledger.charge(out.iterations);
  if (!marked.empty() && uniform01(rng) < out.success_prob) {
    out.index = marked[rng() % marked.size()];
  } else {
    // Uniform over the unmarked indices: rejection against the sorted list.
    do {
      out.index = rng() % n;
    } while (std::binary_search(marked.begin(), marked.end(), out.index) && marked.size() < n);
  }
  return out;
}

GroverSearchResult grover_search(const std::function<bool(std::uint64_t)>& predicate, std::uint64_t n,
                                 std::uint64_t seed, unsigned retries) {
  GroverSearchResult res;
  for (unsigned attempt = 0; attempt <= retries; ++attempt) {
    auto s = grover_sample(predicate, n, child_seed(seed, attempt));
    ++res.attempts;
    res.iterations = s.iterations;
    res.success_prob = s.success_prob;
    res.ledger.charge(s.ledger.oracle_queries());
    ++res.classical_checks;
    if (predicate(s.index)) {
      res.index = s.index;
      break;
    }
  }
  return res;
}

}  // namespace asrq
