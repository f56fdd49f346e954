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

// Grover search as an amplitude vector: uniform start, R rounds of the
// phase oracle followed by the inversion about the mean.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "asrq/errors.hpp"
#include "asrq/ledger.hpp"
#include "asrq/rng.hpp"

namespace asrq {

inline constexpr std::uint64_t kGroverStatevectorMax = std::uint64_t{1} << 20;

/// floor((pi/4) sqrt(N/M)). ParameterError unless 1 <= M <= N.
std::uint64_t grover_iterations(std::uint64_t n, std::uint64_t m);

/// sin^2((2R+1) asin(sqrt(M/N))).
double grover_success_prob(std::uint64_t n, std::uint64_t m, std::uint64_t r);

struct GroverInstance {
  std::uint64_t domain_size = 0;
  std::function<bool(std::uint64_t)> marked;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
};

template <typename Scalar = double>
struct GroverRun {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> amplitudes;
  std::uint64_t marked_count = 0;
  double marked_probability = 0;
  /// Largest | ||a||^2 - 1 | seen after any operator.
  double max_norm_deviation = 0;
  QueryLedger ledger;

  std::vector<double> distribution() const {
    std::vector<double> p(static_cast<std::size_t>(amplitudes.size()));
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) p[i] = std::norm(std::complex<double>(amplitudes[i]));
    return p;
  }
};

/// Exact state after inst.iterations rounds. Refuses (CapacityError) above
/// kGroverStatevectorMax. Each round charges one oracle query.
template <typename Scalar = double>
GroverRun<Scalar> grover_run_statevector(const GroverInstance& inst) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const std::uint64_t n = inst.domain_size;
  if (n == 0) throw ParameterError("Grover domain is empty");
  if (n > kGroverStatevectorMax) throw CapacityError("Grover statevector above 2^20 entries");
  Eigen::Array<Scalar, Eigen::Dynamic, 1> sign(static_cast<Eigen::Index>(n));
  GroverRun<Scalar> run;
  for (std::uint64_t x = 0; x < n; ++x) {
    const bool m = inst.marked(x);
    sign[static_cast<Eigen::Index>(x)] = m ? Scalar(-1) : Scalar(1);
    run.marked_count += m;
  }
  Vec a = Vec::Constant(static_cast<Eigen::Index>(n), Scalar(1.0 / std::sqrt(double(n))));
  auto track = [&run](const Vec& v) {
    run.max_norm_deviation = std::max(run.max_norm_deviation, std::abs(double(v.squaredNorm()) - 1.0));
  };
  for (std::uint64_t it = 0; it < inst.iterations; ++it) {
    a.array() *= sign;
    run.ledger.charge();
    track(a);
    // 2|phi><phi| - I as a rank-one update.
    const Scalar mean = a.mean();
    a = (Scalar(2) * mean - a.array()).matrix();
    track(a);
  }
  double pm = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    if (sign[static_cast<Eigen::Index>(x)] == Scalar(-1)) pm += std::norm(std::complex<double>(a[x]));
  }
  run.marked_probability = pm;
  run.amplitudes = std::move(a);
  return run;
}

struct GroverSample {
  std::uint64_t index = 0;
  std::uint64_t iterations = 0;
  std::uint64_t marked_count = 0;
  /// Probability that the measurement lands on a marked index.
  double success_prob = 0;
  QueryLedger ledger;
  bool statevector = false;
};

/// One measured index. Iterations default to the M = 1 count. Up to
/// kGroverStatevectorMax the full distribution is simulated; above it the
/// outcome is drawn from the closed-form marked/unmarked split with a uniform
/// choice inside each class, which is exact by symmetry.
GroverSample grover_sample(const std::function<bool(std::uint64_t)>& predicate, std::uint64_t n,
                           std::uint64_t seed, std::optional<std::uint64_t> iterations = {});

struct GroverSearchResult {
  std::optional<std::uint64_t> index;
  unsigned attempts = 0;
  std::uint64_t iterations = 0;
  std::uint64_t classical_checks = 0;
  double success_prob = 0;
  QueryLedger ledger;
};

/// Samples, checks the outcome classically, and retries with fresh seeds
/// (retries + 1 attempts in total).
GroverSearchResult grover_search(const std::function<bool(std::uint64_t)>& predicate, std::uint64_t n,
                                 std::uint64_t seed, unsigned retries = 5);

}  // namespace asrq
