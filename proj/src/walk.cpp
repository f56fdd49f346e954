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

#include "asrq/walk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "asrq/errors.hpp"
#include "asrq/rng.hpp"

namespace asrq {

namespace {

double lchoose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1);
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

void check_r(std::uint64_t n, std::uint64_t r) {
  if (n < 2) throw ParameterError("walk side needs at least 2 elements");
  if (r < 1 || r >= n) {
    throw ParameterError("walk subset size r=" + std::to_string(r) + " must satisfy 1 <= r < N=" +
                         std::to_string(n));
  }
}

std::vector<std::size_t> component_sizes(const std::vector<std::vector<std::uint32_t>>& members) {
  std::vector<std::size_t> sizes;
  for (const auto& m : members) sizes.push_back(m.size());
  return sizes;
}

// Calls emit(k, o) for every count vector k (k_c <= sizes[c]) whose leftover
// o = target - sum(k) fits in the n0 unpartnered elements. Lexicographic.
template <typename Emit>
void for_each_counts(const std::vector<std::size_t>& sizes, std::uint64_t n0, std::uint64_t target,
                     Emit&& emit) {
  std::vector<std::uint16_t> k(sizes.size(), 0);
  std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t c, std::uint64_t left) -> bool {
    if (c == sizes.size()) {
      if (left > n0) return true;
      return emit(k, left);
    }
    const std::uint64_t hi = std::min<std::uint64_t>(sizes[c], left);
    for (std::uint64_t v = 0; v <= hi; ++v) {
      k[c] = static_cast<std::uint16_t>(v);
      if (!rec(c + 1, left - v)) return false;
    }
    k[c] = 0;
    return true;
  };
  rec(0, target);
}

struct Simulated {
  WalkRun run;
  WalkSideModel side1;
  WalkSideModel side2;
  std::vector<double> weights;  // |Psi|^2, row-major
};

template <typename Scalar>
Simulated simulate(const WalkInstance& inst) {
  auto [a, b] = build_walk_sides(inst.structure, inst.params, inst.mode);
  WalkSimulator<Scalar> sim(std::move(a), std::move(b), inst.check_norm);
  Simulated out;
  out.run.mode = inst.mode;
  out.run.params = inst.params;
  out.run.dim1 = sim.side(1).dim;
  out.run.dim2 = sim.side(2).dim;
  out.run.baseline_prob = sim.marked_probability();
  sim.load();
  const std::uint64_t steps = std::max(inst.params.t1, inst.params.t2);
  for (std::uint64_t k = 0; k < inst.params.outer_reps; ++k) {
    sim.phase_flip();
    // Side operators commute, so interleaving them matches t1 steps on side 1
    // followed by t2 steps on side 2.
    for (std::uint64_t t = 0; t < steps; ++t) {
      if (t < inst.params.t1) sim.step(1);
      if (t < inst.params.t2) sim.step(2);
    }
  }
  out.run.success_prob = sim.marked_probability();
  out.run.max_norm_deviation = sim.max_norm_deviation();
  out.run.ledger = sim.ledger();
  const auto& psi = sim.state();
  out.weights.resize(static_cast<std::size_t>(psi.size()));
  for (Eigen::Index i = 0; i < psi.rows(); ++i) {
    for (Eigen::Index j = 0; j < psi.cols(); ++j) {
      out.weights[static_cast<std::size_t>(i * psi.cols() + j)] = std::norm(std::complex<double>(psi(i, j)));
    }
  }
  out.side1 = sim.side(1);
  out.side2 = sim.side(2);
  return out;
}

std::vector<std::uint32_t> pick(const std::vector<std::uint32_t>& pool, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::uint32_t> v = pool;
  for (std::size_t i = 0; i < k; ++i) std::swap(v[i], v[i + rng() % (v.size() - i)]);
  v.resize(k);
  return v;
}

WalkOutcome measure(const Simulated& sim, const ClawStructure& s, std::mt19937_64& rng) {
  const std::size_t idx = sample_index(sim.weights, rng);
  const std::size_t i1 = idx / sim.side2.dim;
  const std::size_t i2 = idx % sim.side2.dim;
  WalkOutcome out;
  const std::uint64_t both = sim.side1.hits[i1] & sim.side2.hits[i2];
  out.marked = both != 0;
  for (std::size_t c = 0; c < s.components(); ++c) {
    if (!((both >> c) & 1)) continue;
    std::vector<std::uint32_t> in1, in2;
    if (sim.side1.mode == WalkMode::full) {
      for (auto x : s.members1[c]) {
        if ((sim.side1.subset[i1] >> x) & 1) in1.push_back(x);
      }
      for (auto x : s.members2[c]) {
        if ((sim.side2.subset[i2] >> x) & 1) in2.push_back(x);
      }
    } else {
      // A class fixes only how many members S holds; draw which ones.
      in1 = pick(s.members1[c], sim.side1.counts[i1][c], rng);
      in2 = pick(s.members2[c], sim.side2.counts[i2][c], rng);
    }
    for (auto x1 : in1) {
      for (auto x2 : in2) out.claws.push_back({x1, x2});
    }
  }
  std::sort(out.claws.begin(), out.claws.end());
  return out;
}

}  // namespace

std::uint64_t ceil_cbrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::llround(std::cbrt(static_cast<double>(x))));
  while (r > 0 && (r - 1) * (r - 1) * (r - 1) >= x) --r;
  while (r * r * r < x) ++r;
  return r;
}

std::uint64_t walk_inner_steps(std::uint64_t r) {
  return static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 4 * std::sqrt(static_cast<double>(r))));
}

WalkParams walk_params(std::uint64_t m, std::uint64_t n, unsigned outer_multiplier) {
  if (m < 2 || n < 2) throw ParameterError("walk sides need at least 2 elements");
  if (m > (1ull << 31) || n > (1ull << 31)) throw ParameterError("walk sides above 2^31");
  if (outer_multiplier < 1) throw ParameterError("outer multiplier must be >= 1");
  const std::uint64_t mn = m * n;
  WalkParams p;
  if (m * m <= n) {
    p.r1 = m;
    p.r2 = std::max(m, ceil_cbrt(mn));
  } else if (m > n * n) {
    p.r2 = n;
    p.r1 = std::max(n, ceil_cbrt(mn));
  } else {
    p.r1 = p.r2 = ceil_cbrt(mn);
  }
  p.t1 = walk_inner_steps(p.r1);
  p.t2 = walk_inner_steps(p.r2);
  // Smallest k with k^2 r1 r2 >= mn.
  std::uint64_t k = 1;
  while (k * k * p.r1 * p.r2 < mn) ++k;
  p.outer_reps = k * outer_multiplier;
  return p;
}

WalkParams clamp_walk_params(WalkParams p, std::uint64_t m, std::uint64_t n) {
  p.r1 = std::clamp<std::uint64_t>(p.r1, 1, m - 1);
  p.r2 = std::clamp<std::uint64_t>(p.r2, 1, n - 1);
  p.t1 = walk_inner_steps(p.r1);
  p.t2 = walk_inner_steps(p.r2);
  return p;
}

std::uint64_t ClawStructure::claw_count() const {
  std::uint64_t n = 0;
  for (std::size_t c = 0; c < members1.size(); ++c) n += members1[c].size() * members2[c].size();
  return n;
}

ClawStructure ClawStructure::from_census(const ClawCensus& census, std::uint64_t n) {
  ClawStructure s;
  s.n1 = s.n2 = n;
  for (const auto& c : census.components) {
    s.members1.push_back(c.xs1);
    s.members2.push_back(c.xs2);
  }
  return s;
}

ClawStructure ClawStructure::planted(std::uint64_t n, std::uint32_t j1, std::uint32_t j2) {
  if (j1 >= n || j2 >= n) throw ParameterError("planted claw outside the sides");
  ClawStructure s;
  s.n1 = s.n2 = n;
  s.members1 = {{j1}};
  s.members2 = {{j2}};
  return s;
}

ClawStructure ClawStructure::claw_free(std::uint64_t n) {
  ClawStructure s;
  s.n1 = s.n2 = n;
  return s;
}

const char* to_string(WalkMode m) { return m == WalkMode::full ? "full" : "collapsed"; }

void GroupedReflection::add_group(const std::vector<std::uint32_t>& idx, const std::vector<double>& w) {
  index.insert(index.end(), idx.begin(), idx.end());
  weight.insert(weight.end(), w.begin(), w.end());
  offsets.push_back(static_cast<std::uint32_t>(index.size()));
}

std::uint64_t full_side_dim(std::uint64_t n, std::uint64_t r) {
  check_r(n, r);
  const double c = std::exp(lchoose(n, r)) * double(n - r);
  if (c >= 1.8e19) return UINT64_MAX;
  return static_cast<std::uint64_t>(std::llround(c));
}

std::uint64_t collapsed_side_dim(std::uint64_t n, std::uint64_t r, const std::vector<std::size_t>& sizes,
                                 std::uint64_t limit) {
  check_r(n, r);
  std::uint64_t partnered = 0;
  for (auto a : sizes) partnered += a;
  if (partnered > n) throw ParameterError("claw components larger than the side");
  const std::uint64_t n0 = n - partnered;
  std::uint64_t count = 0;
  for_each_counts(sizes, n0, r, [&](const std::vector<std::uint16_t>& k, std::uint64_t o) {
    count += (n0 > o);
    for (std::size_t c = 0; c < sizes.size(); ++c) count += (sizes[c] > k[c]);
    return count <= limit;
  });
  return count > limit ? limit + 1 : count;
}

WalkSideModel full_side_model(std::uint64_t n, std::uint64_t r,
                              const std::vector<std::vector<std::uint32_t>>& members) {
  check_r(n, r);
  if (n > 48) throw CapacityError("full walk basis needs N <= 48");
  if (members.size() > 64) throw CapacityError("more than 64 claw components");
  std::vector<int> comp(n, -1);
  for (std::size_t c = 0; c < members.size(); ++c) {
    for (auto x : members[c]) comp.at(x) = static_cast<int>(c);
  }
  WalkSideModel m;
  m.mode = WalkMode::full;
  m.n = n;
  m.r = r;

  auto subsets_of_size = [n](std::uint64_t k) {
    std::vector<std::uint64_t> out;
    if (k == 0) return std::vector<std::uint64_t>{0};
    std::uint64_t s = (std::uint64_t{1} << k) - 1;
    while (s < (std::uint64_t{1} << n)) {
      out.push_back(s);
      const std::uint64_t lo = s & -s;
      const std::uint64_t hi = s + lo;
      s = (((hi ^ s) >> 2) / lo) | hi;  // next subset with the same popcount
    }
    return out;
  };

  // (S, z) basis and D_A.
  const double wa = 1.0 / std::sqrt(double(n - r));
  for (std::uint64_t s : subsets_of_size(r)) {
    std::vector<std::uint32_t> grp;
    std::uint64_t hit = 0;
    for (std::uint64_t x = 0; x < n; ++x) {
      if (((s >> x) & 1) && comp[x] >= 0) hit |= std::uint64_t{1} << comp[x];
    }
    for (std::uint64_t z = 0; z < n; ++z) {
      if ((s >> z) & 1) continue;
      grp.push_back(static_cast<std::uint32_t>(m.subset.size()));
      m.subset.push_back(s | (z << 56));
      m.hits.push_back(hit);
    }
    m.diffuse_out.add_group(grp, std::vector<double>(grp.size(), wa));
  }
  m.dim = m.subset.size();

  // (S', z) basis with z in S', and D_B.
  std::unordered_map<std::uint64_t, std::uint32_t> b_index;
  const double wb = 1.0 / std::sqrt(double(r + 1));
  std::uint32_t next = 0;
  for (std::uint64_t s : subsets_of_size(r + 1)) {
    std::vector<std::uint32_t> grp;
    for (std::uint64_t z = 0; z < n; ++z) {
      if (!((s >> z) & 1)) continue;
      b_index[s | (z << 56)] = next;
      grp.push_back(next++);
    }
    m.diffuse_in.add_group(grp, std::vector<double>(grp.size(), wb));
  }
  if (next != m.dim) throw std::logic_error("insert is not a bijection");

  m.insert.resize(m.dim);
  m.remove.resize(m.dim);
  for (std::uint32_t a = 0; a < m.dim; ++a) {
    const std::uint64_t z = m.subset[a] >> 56;
    const std::uint64_t s = m.subset[a] & ((std::uint64_t{1} << 56) - 1);
    const std::uint32_t b = b_index.at((s | (std::uint64_t{1} << z)) | (z << 56));
    m.insert[a] = b;
    m.remove[b] = a;
    m.subset[a] = s;
  }
  m.initial = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m.dim), 1.0 / std::sqrt(double(m.dim)));
  return m;
}

WalkSideModel collapsed_side_model(std::uint64_t n, std::uint64_t r,
                                   const std::vector<std::vector<std::uint32_t>>& members) {
  check_r(n, r);
  if (members.size() > 64) throw CapacityError("more than 64 claw components");
  const auto sizes = component_sizes(members);
  std::uint64_t partnered = 0;
  for (auto a : sizes) partnered += a;
  if (partnered > n) throw ParameterError("claw components larger than the side");
  const std::uint64_t n0 = n - partnered;
  const std::size_t other = sizes.size();  // location index for "z has no partner"

  WalkSideModel m;
  m.mode = WalkMode::collapsed;
  m.n = n;
  m.r = r;
  const double log_total = lchoose(n, r) + std::log(double(n - r));
  std::vector<double> init;
  std::vector<std::size_t> loc;  // z location per class

  for_each_counts(sizes, n0, r, [&](const std::vector<std::uint16_t>& k, std::uint64_t o) {
    double log_s = lchoose(n0, o);
    std::uint64_t hit = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      log_s += lchoose(sizes[c], k[c]);
      if (k[c] > 0) hit |= std::uint64_t{1} << c;
    }
    std::vector<std::uint32_t> grp;
    std::vector<double> w;
    for (std::size_t l = 0; l <= other; ++l) {
      const std::uint64_t avail = l == other ? n0 - o : sizes[l] - k[l];
      if (avail == 0) continue;
      grp.push_back(static_cast<std::uint32_t>(m.counts.size()));
      w.push_back(std::sqrt(double(avail) / double(n - r)));
      m.counts.push_back(k);
      m.hits.push_back(hit);
      loc.push_back(l);
      init.push_back(std::exp(0.5 * (log_s + std::log(double(avail)) - log_total)));
    }
    m.diffuse_out.add_group(grp, w);
    return true;
  });
  m.dim = m.counts.size();

  std::map<std::vector<std::uint16_t>, std::uint32_t> b_index;  // (k', location) -> index
  std::uint32_t next = 0;
  for_each_counts(sizes, n0, r + 1, [&](const std::vector<std::uint16_t>& k, std::uint64_t o) {
    std::vector<std::uint32_t> grp;
    std::vector<double> w;
    for (std::size_t l = 0; l <= other; ++l) {
      const std::uint64_t held = l == other ? o : k[l];
      if (held == 0) continue;
      auto key = k;
      key.push_back(static_cast<std::uint16_t>(l));
      b_index[key] = next;
      grp.push_back(next++);
      w.push_back(std::sqrt(double(held) / double(r + 1)));
    }
    m.diffuse_in.add_group(grp, w);
    return true;
  });
  if (next != m.dim) throw std::logic_error("collapsed insert is not a bijection");

  m.insert.resize(m.dim);
  m.remove.resize(m.dim);
  for (std::uint32_t a = 0; a < m.dim; ++a) {
    auto key = m.counts[a];
    if (loc[a] != other) ++key[loc[a]];
    key.push_back(static_cast<std::uint16_t>(loc[a]));
    const std::uint32_t b = b_index.at(key);
    m.insert[a] = b;
    m.remove[b] = a;
  }
  m.initial = Eigen::Map<Eigen::VectorXd>(init.data(), static_cast<Eigen::Index>(init.size()));
  m.initial.normalize();  // absorbs lgamma rounding
  return m;
}

std::pair<WalkSideModel, WalkSideModel> build_walk_sides(const ClawStructure& s, const WalkParams& p,
                                                         WalkMode mode) {
  if (s.members1.size() != s.members2.size()) throw ParameterError("claw structure sides disagree");
  check_r(s.n1, p.r1);
  check_r(s.n2, p.r2);
  if (mode == WalkMode::full) {
    const std::uint64_t d = saturating_mul(full_side_dim(s.n1, p.r1), full_side_dim(s.n2, p.r2));
    if (d > kFullWalkMaxBasis) {
      throw CapacityError("full walk basis of " + std::to_string(d) + " joint states exceeds " +
                          std::to_string(kFullWalkMaxBasis));
    }
    return {full_side_model(s.n1, p.r1, s.members1), full_side_model(s.n2, p.r2, s.members2)};
  }
  if (s.components() > 64) throw CapacityError("collapsed walk supports at most 64 claw components");
  const std::uint64_t d1 =
      collapsed_side_dim(s.n1, p.r1, component_sizes(s.members1), kCollapsedWalkMaxClasses);
  const std::uint64_t d2 =
      collapsed_side_dim(s.n2, p.r2, component_sizes(s.members2), kCollapsedWalkMaxClasses);
  const std::uint64_t d = saturating_mul(d1, d2);
  if (d > kCollapsedWalkMaxClasses) {
    throw CapacityError("collapsed walk needs " + (d == UINT64_MAX ? std::string("too many") : std::to_string(d)) +
                        " joint classes (limit " + std::to_string(kCollapsedWalkMaxClasses) + ")");
  }
  return {collapsed_side_model(s.n1, p.r1, s.members1), collapsed_side_model(s.n2, p.r2, s.members2)};
}

template <typename Scalar>
WalkSimulator<Scalar>::WalkSimulator(WalkSideModel side1, WalkSideModel side2, bool check_norm)
    : s1_(std::move(side1)), s2_(std::move(side2)), check_norm_(check_norm) {
  psi_ = (s1_.initial * s2_.initial.transpose()).template cast<Scalar>();
  track();
}

template <typename Scalar>
void WalkSimulator<Scalar>::track() {
  if (!check_norm_) return;
  // Plain double summation over ~10^6 amplitudes drifts by a few 1e-12 on
  // its own, which would mask the operator check.
  long double s = 0;
  for (Eigen::Index i = 0; i < psi_.size(); ++i) s += std::norm(std::complex<double>(psi_.data()[i]));
  max_dev_ = std::max(max_dev_, double(std::abs(s - 1.0L)));
}

template <typename Scalar>
template <typename Op>
void WalkSimulator<Scalar>::on_side(int side, Op&& op) {
  if (side == 1) {
    op(s1_);
  } else if (side == 2) {
    psi_.transposeInPlace();
    op(s2_);
    psi_.transposeInPlace();
  } else {
    throw ParameterError("walk side must be 1 or 2");
  }
}

template <typename Scalar>
void WalkSimulator<Scalar>::reflect_rows(const GroupedReflection& g) {
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> acc(psi_.cols());
  for (std::size_t grp = 0; grp < g.groups(); ++grp) {
    acc.setZero();
    for (auto i = g.offsets[grp]; i < g.offsets[grp + 1]; ++i) acc += Scalar(g.weight[i]) * psi_.row(g.index[i]);
    for (auto i = g.offsets[grp]; i < g.offsets[grp + 1]; ++i) {
      psi_.row(g.index[i]) = Scalar(2 * g.weight[i]) * acc - psi_.row(g.index[i]);
    }
  }
}

template <typename Scalar>
void WalkSimulator<Scalar>::permute_rows(const std::vector<std::uint32_t>& perm) {
  State next(psi_.rows(), psi_.cols());
  for (Eigen::Index i = 0; i < psi_.rows(); ++i) next.row(perm[i]) = psi_.row(i);
  psi_.swap(next);
}

template <typename Scalar>
void WalkSimulator<Scalar>::load() {
  ledger_.charge(s1_.r + s2_.r);
}

template <typename Scalar>
void WalkSimulator<Scalar>::phase_flip() {
  for (Eigen::Index i = 0; i < psi_.rows(); ++i) {
    const std::uint64_t h = s1_.hits[i];
    if (h == 0) continue;
    for (Eigen::Index j = 0; j < psi_.cols(); ++j) {
      if (h & s2_.hits[j]) psi_(i, j) = -psi_(i, j);
    }
  }
  track();
}

template <typename Scalar>
void WalkSimulator<Scalar>::diffuse_out(int side) {
  on_side(side, [this](const WalkSideModel& m) { reflect_rows(m.diffuse_out); });
  track();
}

template <typename Scalar>
void WalkSimulator<Scalar>::insert(int side) {
  on_side(side, [this](const WalkSideModel& m) { permute_rows(m.insert); });
  ledger_.charge();
  track();
}

template <typename Scalar>
void WalkSimulator<Scalar>::diffuse_in(int side) {
  on_side(side, [this](const WalkSideModel& m) { reflect_rows(m.diffuse_in); });
  track();
}

template <typename Scalar>
void WalkSimulator<Scalar>::remove(int side) {
  on_side(side, [this](const WalkSideModel& m) { permute_rows(m.remove); });
  ledger_.charge();
  track();
}

template <typename Scalar>
void WalkSimulator<Scalar>::step(int side) {
  on_side(side, [this](const WalkSideModel& m) {
    reflect_rows(m.diffuse_out);
    track();
    permute_rows(m.insert);
    ledger_.charge();
    track();
    reflect_rows(m.diffuse_in);
    track();
    permute_rows(m.remove);
    ledger_.charge();
    track();
  });
}

template <typename Scalar>
double WalkSimulator<Scalar>::marked_probability() const {
  double p = 0;
  for (Eigen::Index i = 0; i < psi_.rows(); ++i) {
    const std::uint64_t h = s1_.hits[i];
    if (h == 0) continue;
    for (Eigen::Index j = 0; j < psi_.cols(); ++j) {
      if (h & s2_.hits[j]) p += std::norm(std::complex<double>(psi_(i, j)));
    }
  }
  return p;
}

template class WalkSimulator<double>;
template class WalkSimulator<std::complex<double>>;

template <typename Scalar>
WalkRun claw_walk_run(const WalkInstance& inst) {
  Simulated sim = simulate<Scalar>(inst);
  std::mt19937_64 rng(inst.seed);
  sim.run.outcome = measure(sim, inst.structure, rng);
  return sim.run;
}

template WalkRun claw_walk_run<double>(const WalkInstance&);
template WalkRun claw_walk_run<std::complex<double>>(const WalkInstance&);

WalkSampleResult claw_walk_sample(const ClawProblem& problem, std::uint64_t seed, const WalkSampleOptions& opts) {
  const CombinedFunction F = concat_multi(problem);
  const std::uint64_t n = F.half_size();
  // The simulator needs the claw structure to build its basis; this is
  // simulation bookkeeping and is not charged to the ledger.
  const ClawStructure structure = ClawStructure::from_census(claw_census(problem), n);
  WalkInstance inst;
  inst.structure = structure;
  inst.params = clamp_walk_params(walk_params(n, n, opts.outer_multiplier), n, n);
  inst.mode = opts.mode;
  inst.check_norm = false;
  const Simulated sim = simulate<double>(inst);

  WalkSampleResult res;
  res.mode = opts.mode;
  res.params = inst.params;
  res.success_prob = sim.run.success_prob;
  res.baseline_prob = sim.run.baseline_prob;
  for (unsigned attempt = 0; attempt <= opts.retries; ++attempt) {
    // Every attempt is a fresh run of the algorithm and pays its queries.
    ++res.attempts;
    res.ledger.charge(sim.run.ledger.oracle_queries());
    std::mt19937_64 rng(child_seed(seed, attempt));
    const WalkOutcome out = measure(sim, structure, rng);
    res.candidates.clear();
    for (const Claw& c : out.claws) {
      res.classical_checks += 2;
      const std::uint64_t j1 = CombinedFunction::join(0, c.x1, problem.domain_bits);
      const std::uint64_t j2 = CombinedFunction::join(1, c.x2, problem.domain_bits);
      if (F(j1) == F(j2)) res.candidates.push_back({F.strip(j1), F.strip(j2)});
    }
    if (!res.candidates.empty()) {
      res.claw = res.candidates.front();
      break;
    }
  }
  return res;
}

}  // namespace asrq
