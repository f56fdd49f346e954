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

#include "asrq/claw.hpp"

#include <algorithm>
#include <iomanip>
#include <memory>
#include <string>
#include <utility>

#include "asrq/errors.hpp"

namespace asrq {

namespace {

void check_domain(unsigned bits, unsigned max_bits) {
  if (bits > max_bits) {
    throw CapacityError("claw domain of " + std::to_string(bits) + " bits exceeds the " +
                        std::to_string(max_bits) + "-bit guard");
  }
}

using Entry = std::pair<ClawValue, std::uint32_t>;

std::vector<Entry> sorted_table(const ClawProblem& p, bool g_side) {
  std::vector<Entry> t(p.domain_size());
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = {g_side ? p.eval_g(x) : p.eval_f(x), x};
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

ClawValue ClawProblem::eval_f(std::uint32_t x) const {
  ClawValue v = 0;
  for (unsigned i = 0; i < eq_count; ++i) v = (v << range_bits) | f(i, x);
  return v;
}

ClawValue ClawProblem::eval_g(std::uint32_t x) const {
  ClawValue v = 0;
  for (unsigned i = 0; i < eq_count; ++i) v = (v << range_bits) | g(i, x);
  return v;
}

void ClawProblem::validate() const {
  if (!f || !g) throw ParameterError("claw problem needs both function families");
  if (eq_count < 1) throw ParameterError("claw problem needs at least one equation");
  if (domain_bits < 1 || domain_bits > 31) throw ParameterError("claw domain width out of range");
  if (range_bits < 1 || range_bits * eq_count > 63) {
    throw ParameterError("combined claw range of " + std::to_string(range_bits * eq_count) +
                         " bits does not fit");
  }
}

ClawProblem table_claw_problem(unsigned domain_bits, unsigned range_bits,
                               std::vector<std::vector<std::uint32_t>> f_tables,
                               std::vector<std::vector<std::uint32_t>> g_tables) {
  if (f_tables.empty() || f_tables.size() != g_tables.size()) {
    throw ParameterError("f and g need the same nonzero number of tables");
  }
  const std::size_t n = std::size_t{1} << domain_bits;
  const std::uint32_t limit = range_bits >= 32 ? 0xFFFFFFFFu : (1u << range_bits) - 1;
  for (const auto* side : {&f_tables, &g_tables}) {
    for (const auto& t : *side) {
      if (t.size() != n) throw ParameterError("table size does not match the domain");
      for (auto v : t) {
        if (v > limit) throw ParameterError("table entry exceeds the range width");
      }
    }
  }
  ClawProblem p;
  p.domain_bits = domain_bits;
  p.range_bits = range_bits;
  p.eq_count = static_cast<unsigned>(f_tables.size());
  auto ft = std::make_shared<const std::vector<std::vector<std::uint32_t>>>(std::move(f_tables));
  auto gt = std::make_shared<const std::vector<std::vector<std::uint32_t>>>(std::move(g_tables));
  p.f = [ft](unsigned eq, std::uint32_t x) { return (*ft)[eq][x]; };
  p.g = [gt](unsigned eq, std::uint32_t x) { return (*gt)[eq][x]; };
  p.validate();
  return p;
}

std::ostream& operator<<(std::ostream& os, const Claw& c) {
  return os << "(" << c.x1 << ", " << c.x2 << ")";
}

CombinedFunction::CombinedFunction(ClawProblem p) : problem_(std::move(p)) { problem_.validate(); }

ClawValue CombinedFunction::operator()(std::uint64_t j) const {
  const std::uint64_t n = half_size();
  if (j >= 2 * n) throw ParameterError("combined index outside J1 u J2");
  const auto x = static_cast<std::uint32_t>(j & (n - 1));
  return j < n ? problem_.eval_f(x) : problem_.eval_g(x);
}

CombinedFunction concat_multi(const ClawProblem& p) { return CombinedFunction(p); }

std::vector<Claw> find_claws_exhaustive(const ClawProblem& p, unsigned max_bits) {
  p.validate();
  check_domain(p.domain_bits, max_bits);
  const std::uint32_t n = static_cast<std::uint32_t>(p.domain_size());
  std::vector<ClawValue> fv(n), gv(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    fv[x] = p.eval_f(x);
    gv[x] = p.eval_g(x);
  }
  std::vector<Claw> out;
  for (std::uint32_t x1 = 0; x1 < n; ++x1) {
    for (std::uint32_t x2 = 0; x2 < n; ++x2) {
      if (fv[x1] == gv[x2]) out.push_back({x1, x2});
    }
  }
  return out;
}

std::vector<Claw> find_combined_claws_exhaustive(const CombinedFunction& F, unsigned max_bits) {
  check_domain(F.problem().domain_bits, max_bits);
  const std::uint64_t n = F.half_size();
  std::vector<ClawValue> values(2 * n);
  for (std::uint64_t j = 0; j < 2 * n; ++j) values[j] = F(j);
  std::vector<Claw> out;
  for (std::uint64_t j1 = 0; j1 < n; ++j1) {
    for (std::uint64_t j2 = n; j2 < 2 * n; ++j2) {
      if (values[j1] == values[j2]) out.push_back({F.strip(j1), F.strip(j2)});
    }
  }
  return out;
}

SortedClawResult find_claw_sorted(const ClawProblem& p, unsigned max_bits) {
  p.validate();
  check_domain(p.domain_bits, max_bits);
  auto ft = sorted_table(p, false);
  auto gt = sorted_table(p, true);
  SortedClawResult res;
  res.evaluations = 2 * p.domain_size();
  std::size_t i = 0, j = 0;
  while (i < ft.size() && j < gt.size()) {
    if (ft[i].first < gt[j].first) {
      ++i;
    } else if (gt[j].first < ft[i].first) {
      ++j;
    } else {
      // Entries with equal value are sorted by x, so these are the smallest.
      res.claw = Claw{ft[i].second, gt[j].second};
      break;
    }
  }
  return res;
}

std::size_t ClawCensus::claw_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.claw_count();
  return n;
}

std::vector<Claw> ClawCensus::claws_in_value_order() const {
  std::vector<Claw> out;
  out.reserve(claw_count());
  for (const auto& c : components) {
    for (auto x1 : c.xs1) {
      for (auto x2 : c.xs2) out.push_back({x1, x2});
    }
  }
  return out;
}

bool ClawCensus::contains(const Claw& claw) const {
  for (const auto& c : components) {
    if (std::binary_search(c.xs1.begin(), c.xs1.end(), claw.x1) &&
        std::binary_search(c.xs2.begin(), c.xs2.end(), claw.x2)) {
      return true;
    }
  }
  return false;
}

ClawCensus claw_census(const ClawProblem& p, unsigned max_bits) {
  p.validate();
  check_domain(p.domain_bits, max_bits);
  auto ft = sorted_table(p, false);
  auto gt = sorted_table(p, true);
  ClawCensus census;
  census.evaluations = 2 * p.domain_size();
  std::size_t i = 0, j = 0;
  while (i < ft.size() && j < gt.size()) {
    if (ft[i].first < gt[j].first) {
      ++i;
    } else if (gt[j].first < ft[i].first) {
      ++j;
    } else {
      ClawComponent comp;
      comp.value = ft[i].first;
      for (; i < ft.size() && ft[i].first == comp.value; ++i) comp.xs1.push_back(ft[i].second);
      for (; j < gt.size() && gt[j].first == comp.value; ++j) comp.xs2.push_back(gt[j].second);
      census.components.push_back(std::move(comp));
    }
  }
  return census;
}

void write_claw_census_csv(std::ostream& os, const ClawCensus& census, const ClawProblem& p) {
  const int digits = static_cast<int>((p.range_bits * p.eq_count + 3) / 4);
  const int xdigits = static_cast<int>((p.domain_bits + 3) / 4);
  os << "value,x1,x2\n";
  const auto flags = os.flags();
  const auto fill = os.fill();
  os << std::hex << std::uppercase << std::setfill('0');
  for (const auto& c : census.components) {
    for (auto x1 : c.xs1) {
      for (auto x2 : c.xs2) {
        os << std::setw(digits) << c.value << ',' << std::setw(xdigits) << x1 << ',' << std::setw(xdigits)
           << x2 << '\n';
      }
    }
  }
  os.flags(flags);
  os.fill(fill);
}

}  // namespace asrq
