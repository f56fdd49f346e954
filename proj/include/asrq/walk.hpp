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

// Two-sided Johnson-graph walk for claw finding on F: J1 u J2 -> values.
//
// Each side holds a basis state (S, z) with |S| = r and z outside S. One walk
// step on a side is
//   D_A : reflect z about the uniform state on J - S
//   Q_ins: (S, z) -> (S + z, z), one query
//   D_B : reflect z about the uniform state on S + z
//   Q_rem: (S', z) -> (S' - z, z), one query
// The joint amplitudes are stored as a d1 x d2 matrix Psi, so a side-1
// operator U acts as Psi <- U Psi and a side-2 operator as Psi <- Psi U^T.
//
// Two bases are available. `full` enumerates every (S, z). `collapsed` keeps
// one amplitude per symmetry class: how many elements S takes from each claw
// component plus where z sits. Amplitudes are uniform inside a class under
// every operator here, so the class dynamics are exact; class amplitudes
// carry the sqrt(class size) factor so squared norms add up directly.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "asrq/claw.hpp"
#include "asrq/ledger.hpp"

namespace asrq {

struct WalkParams {
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
  std::uint64_t t1 = 0;
  std::uint64_t t2 = 0;
  std::uint64_t outer_reps = 0;

  friend bool operator==(const WalkParams&, const WalkParams&) = default;
  /// r1 + r2 + outer_reps * (t1 + t2) * 2.
  std::uint64_t query_count() const { return r1 + r2 + outer_reps * (t1 + t2) * 2; }
};

/// Smallest r with r^3 >= x.
std::uint64_t ceil_cbrt(std::uint64_t x);

/// ceil((pi/4) sqrt(r)).
std::uint64_t walk_inner_steps(std::uint64_t r);

/// Subset sizes for the m^2 <= n, m > n^2 and balanced regimes,
/// t_b = ceil((pi/4) sqrt(r_b)),
/// outer_reps = multiplier * ceil(sqrt(mn / (r1 r2))).
WalkParams walk_params(std::uint64_t m, std::uint64_t n, unsigned outer_multiplier = 1);

/// Caps r_b at side size - 1 (z needs somewhere to live) and recomputes t_b.
WalkParams clamp_walk_params(WalkParams p, std::uint64_t m, std::uint64_t n);

/// Claw components seen from the two sides: members1[c] x members2[c] are
/// all claws. Everything else on a side has no partner.
struct ClawStructure {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::vector<std::vector<std::uint32_t>> members1;
  std::vector<std::vector<std::uint32_t>> members2;

  std::size_t components() const { return members1.size(); }
  std::uint64_t claw_count() const;
  bool unique_claw() const { return claw_count() == 1; }

  static ClawStructure from_census(const ClawCensus& census, std::uint64_t n);
  /// One planted claw (j1, j2) on sides of size n.
  static ClawStructure planted(std::uint64_t n, std::uint32_t j1, std::uint32_t j2);
  static ClawStructure claw_free(std::uint64_t n);
};

enum class WalkMode { full, collapsed };

const char* to_string(WalkMode m);

/// Full mode refuses above this many joint basis states.
inline constexpr std::uint64_t kFullWalkMaxBasis = 10'000'000;
/// Collapsed mode refuses above this many joint classes.
inline constexpr std::uint64_t kCollapsedWalkMaxClasses = std::uint64_t{1} << 22;

/// Block-diagonal reflection 2 u u^T - I, one unit vector u per group.
struct GroupedReflection {
  std::vector<std::uint32_t> offsets{0};
  std::vector<std::uint32_t> index;
  std::vector<double> weight;

  std::size_t groups() const { return offsets.size() - 1; }
  void add_group(const std::vector<std::uint32_t>& idx, const std::vector<double>& w);
};

/// One side of the walk in either basis.
struct WalkSideModel {
  WalkMode mode = WalkMode::full;
  std::uint64_t n = 0;
  std::uint64_t r = 0;
  std::size_t dim = 0;
  Eigen::VectorXd initial;           // (S, z) basis, uniform start
  GroupedReflection diffuse_out;     // D_A, indexed in the (S, z) basis
  GroupedReflection diffuse_in;      // D_B, indexed in the (S + z, z) basis
  std::vector<std::uint32_t> insert; // (S, z) index -> (S + z, z) index
  std::vector<std::uint32_t> remove; // inverse of insert
  std::vector<std::uint64_t> hits;   // bit c set when S meets component c
  std::vector<std::uint64_t> subset;                // full: S as a bit mask
  std::vector<std::vector<std::uint16_t>> counts;   // collapsed: |S n component c|
};

/// Basis sizes, so guards can be checked before anything is allocated.
std::uint64_t full_side_dim(std::uint64_t n, std::uint64_t r);
/// Stops counting once `limit` is exceeded and returns limit + 1.
std::uint64_t collapsed_side_dim(std::uint64_t n, std::uint64_t r, const std::vector<std::size_t>& sizes,
                                 std::uint64_t limit);

WalkSideModel full_side_model(std::uint64_t n, std::uint64_t r,
                              const std::vector<std::vector<std::uint32_t>>& members);
WalkSideModel collapsed_side_model(std::uint64_t n, std::uint64_t r,
                                   const std::vector<std::vector<std::uint32_t>>& members);

/// Joint state plus query ledger. Scalar may be real or complex.
template <typename Scalar = double>
class WalkSimulator {
 public:
  using State = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  WalkSimulator(WalkSideModel side1, WalkSideModel side2, bool check_norm = true);

  /// Step 4: compute F on both initial subsets (r1 + r2 queries).
  void load();
  void phase_flip();
  void diffuse_out(int side);
  void insert(int side);
  void diffuse_in(int side);
  void remove(int side);
  /// D_A, Q_ins, D_B, Q_rem on one side.
  void step(int side);

  /// Probability that (S1, S2) contains a claw.
  double marked_probability() const;
  double squared_norm() const { return static_cast<double>(psi_.squaredNorm()); }
  double max_norm_deviation() const { return max_dev_; }
  const State& state() const { return psi_; }
  const QueryLedger& ledger() const { return ledger_; }
  const WalkSideModel& side(int b) const { return b == 1 ? s1_ : s2_; }
  bool marked(std::size_t i1, std::size_t i2) const { return (s1_.hits[i1] & s2_.hits[i2]) != 0; }

 private:
  template <typename Op>
  void on_side(int side, Op&& op);
  void reflect_rows(const GroupedReflection& g);
  void permute_rows(const std::vector<std::uint32_t>& perm);
  void track();

  WalkSideModel s1_;
  WalkSideModel s2_;
  State psi_;
  QueryLedger ledger_;
  bool check_norm_;
  double max_dev_ = 0;
};

extern template class WalkSimulator<double>;
extern template class WalkSimulator<std::complex<double>>;

struct WalkInstance {
  ClawStructure structure;
  WalkParams params;  // applied as given; clamp first if needed
  WalkMode mode = WalkMode::collapsed;
  std::uint64_t seed = 0;
  bool check_norm = true;
};

/// Measured outcome: the claws inside the sampled (S1, S2), ascending.
/// Empty means the walk rejects.
struct WalkOutcome {
  bool marked = false;
  std::vector<Claw> claws;
};

struct WalkRun {
  WalkMode mode = WalkMode::collapsed;
  WalkParams params;
  double success_prob = 0;
  /// Same probability for the uniform start, i.e. random subsets.
  double baseline_prob = 0;
  double max_norm_deviation = 0;
  QueryLedger ledger;
  std::size_t dim1 = 0;
  std::size_t dim2 = 0;
  WalkOutcome outcome;
};

/// Builds both sides, checking the mode's guard (CapacityError on refusal).
std::pair<WalkSideModel, WalkSideModel> build_walk_sides(const ClawStructure& s, const WalkParams& p,
                                                         WalkMode mode);

template <typename Scalar = double>
WalkRun claw_walk_run(const WalkInstance& inst);

extern template WalkRun claw_walk_run<double>(const WalkInstance&);
extern template WalkRun claw_walk_run<std::complex<double>>(const WalkInstance&);

struct WalkSampleOptions {
  WalkMode mode = WalkMode::collapsed;
  unsigned retries = 5;
  unsigned outer_multiplier = 1;
};

struct WalkSampleResult {
  std::optional<Claw> claw;        // smallest verified claw of the last measurement
  std::vector<Claw> candidates;    // every verified claw of that measurement
  unsigned attempts = 0;
  WalkMode mode = WalkMode::collapsed;
  WalkParams params;
  double success_prob = 0;
  double baseline_prob = 0;
  std::uint64_t classical_checks = 0;
  QueryLedger ledger;
};

/// Runs the claw walk on concat_multi(problem): measure, strip the control
/// bit, verify classically, retry with a fresh seed on rejection.
WalkSampleResult claw_walk_sample(const ClawProblem& problem, std::uint64_t seed,
                                  const WalkSampleOptions& opts = {});

}  // namespace asrq
