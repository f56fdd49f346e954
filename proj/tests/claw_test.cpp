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

#include <random>
#include <set>
#include <sstream>

#include "gtest/gtest.h"

#include "asrq/errors.hpp"

using namespace asrq;

namespace {

ClawProblem random_tables(std::mt19937_64& rng, unsigned u, unsigned v, unsigned eqs) {
  std::uniform_int_distribution<std::uint32_t> val(0, (1u << v) - 1);
  std::vector<std::vector<std::uint32_t>> f(eqs), g(eqs);
  for (unsigned e = 0; e < eqs; ++e) {
    for (std::uint32_t x = 0; x < (1u << u); ++x) {
      f[e].push_back(val(rng));
      g[e].push_back(val(rng));
    }
  }
  return table_claw_problem(u, v, f, g);
}

}  // namespace

TEST(claw_exhaustive, toy_table) {
  const auto p = table_claw_problem(2, 3, {{5, 1, 7, 2}}, {{4, 7, 0, 6}});
  EXPECT_EQ(find_claws_exhaustive(p), (std::vector<Claw>{{2, 1}}));
}

TEST(claw_exhaustive, identity_gives_diagonal) {
  const auto p = table_claw_problem(2, 2, {{0, 1, 2, 3}}, {{0, 1, 2, 3}});
  EXPECT_EQ(find_claws_exhaustive(p), (std::vector<Claw>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
}

TEST(claw_exhaustive, disjoint_ranges_are_empty) {
  const auto p = table_claw_problem(2, 3, {{0, 1, 2, 3}}, {{4, 5, 6, 7}});
  EXPECT_TRUE(find_claws_exhaustive(p).empty());
  const auto s = find_claw_sorted(p);
  EXPECT_FALSE(s.claw.has_value());
  EXPECT_EQ(s.evaluations, 8u);
}

TEST(claw_exhaustive, refuses_large_domains) {
  ClawProblem p;
  p.domain_bits = 13;
  p.range_bits = 8;
  p.f = p.g = [](unsigned, std::uint32_t x) { return x & 0xFF; };
  EXPECT_THROW(find_claws_exhaustive(p), CapacityError);
  EXPECT_THROW(find_claw_sorted(p, 12), CapacityError);
}

TEST(concat_multi, single_equation_is_f_then_g) {
  const auto p = table_claw_problem(2, 3, {{5, 1, 7, 2}}, {{4, 7, 0, 6}});
  const auto F = concat_multi(p);
  for (std::uint32_t x = 0; x < 4; ++x) {
    EXPECT_EQ(F(CombinedFunction::join(0, x, 2)), p.eval_f(x));
    EXPECT_EQ(F(CombinedFunction::join(1, x, 2)), p.eval_g(x));
  }
  EXPECT_EQ(F.input_bits(), 3u);
}

TEST(concat_multi, first_equation_is_most_significant) {
  const auto p = table_claw_problem(2, 2, {{0, 1, 2, 3}, {3, 2, 1, 0}}, {{0, 0, 0, 0}, {0, 0, 0, 0}});
  const auto F = concat_multi(p);
  EXPECT_EQ(F(CombinedFunction::join(0, 2, 2)), (2u << 2) | 1u);
  EXPECT_EQ(F.output_bits(), 4u);
  EXPECT_EQ(F.strip(CombinedFunction::join(1, 3, 2)), 3u);
}

TEST(concat_multi, combined_claws_equal_simultaneous_claws) {
  std::mt19937_64 rng(11);
  for (unsigned u = 1; u <= 8; ++u) {
    for (int rep = 0; rep < 5; ++rep) {
      // Small ranges so that claws actually occur.
      const auto p = random_tables(rng, u, std::max(1u, u / 2), 2);
      EXPECT_EQ(find_combined_claws_exhaustive(concat_multi(p)), find_claws_exhaustive(p)) << "u=" << u;
    }
  }
}

TEST(claw_sorted, member_of_exhaustive_set_and_ledger) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const auto p = random_tables(rng, 8, 6, 2);
    const auto all = find_claws_exhaustive(p);
    const auto s = find_claw_sorted(p);
    EXPECT_EQ(s.evaluations, 2u << 8);
    ASSERT_EQ(s.claw.has_value(), !all.empty());
    if (s.claw) {
      EXPECT_TRUE(std::binary_search(all.begin(), all.end(), *s.claw));
    }
    const auto census = claw_census(p);
    EXPECT_EQ(census.claw_count(), all.size());
    auto ordered = census.claws_in_value_order();
    std::sort(ordered.begin(), ordered.end());
    EXPECT_EQ(ordered, all);
    if (s.claw) EXPECT_EQ(census.claws_in_value_order().front(), *s.claw);
  }
}

TEST(claw_sorted, unique_claw_matches_exhaustive) {
  const auto p = table_claw_problem(3, 4, {{0, 1, 2, 3, 4, 5, 6, 7}}, {{15, 14, 13, 12, 11, 3, 9, 8}});
  EXPECT_EQ(find_claws_exhaustive(p), (std::vector<Claw>{{3, 5}}));
  EXPECT_EQ(find_claw_sorted(p).claw, (Claw{3, 5}));
}

TEST(claw_census, csv_rows) {
  const auto p = table_claw_problem(2, 3, {{5, 1, 7, 2}}, {{4, 7, 0, 6}});
  std::ostringstream os;
  write_claw_census_csv(os, claw_census(p), p);
  EXPECT_EQ(os.str(), "value,x1,x2\n7,2,1\n");
}
