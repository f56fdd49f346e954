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


#include "asrq/attack.hpp"

#include <random>

#include "gtest/gtest.h"

#include "asrq/errors.hpp"
#include "asrq/reference_vectors.hpp"

using namespace asrq;

namespace {

Word w16(WordValue v) { return Word(v, 16); }

Word true_k2_prime(const AttackInstance& inst) {
  return DerivedKeys::from_keys(inst.keys[1], inst.keys[2], inst.pairs.constant_c, inst.spec).k2_prime;
}

ChosenPairSet identical_pairs(const FeistelSpec& spec) {
  const Word z(0, spec.word_width());
  const Block p = make_chosen_plaintext(Word(3, spec.word_width()), z, spec);
  ChosenPairSet set;
  set.constant_c = z;
  set.pairs = {KnownPair{p, {Word(5, spec.word_width()), Word(9, spec.word_width())}},
               KnownPair{p, {Word(5, spec.word_width()), Word(9, spec.word_width())}},
               KnownPair{p, {Word(5, spec.word_width()), Word(9, spec.word_width())}}};
  return set;
}

}  // namespace

TEST(chosen_plaintext, rule_examples) {
  const auto spec = FeistelSpec::simeck(16);
  EXPECT_EQ(make_chosen_plaintext(w16(0xCDF5), w16(0xFFEE), spec), (Block{w16(0xCDF5), w16(0xE8B4)}));
  EXPECT_EQ(make_chosen_plaintext(w16(0), w16(0), spec), (Block{w16(0), w16(0)}));
  // The printed right half of this row is 0xFCDD, one bit off the rule.
  EXPECT_EQ(make_chosen_plaintext(w16(0xC191), w16(0xFFEE), spec).right, w16(0x7CDD));
  EXPECT_EQ(make_chosen_plaintext(w16(0xD0C4), w16(0xFFEE), spec).right, w16(0x4EE7));
}

TEST(pair_set, validation) {
  const auto spec = FeistelSpec::simeck(8);
  auto inst = make_attack_instance(spec, 3);
  EXPECT_NO_THROW(inst.pairs.validate(spec));
  EXPECT_EQ(inst.pairs.data_complexity(), 4u);

  auto broken = inst.pairs;
  broken.pairs[1].plaintext.right = broken.pairs[1].plaintext.right ^ Word(1, 8);
  EXPECT_THROW(broken.validate(spec), ParameterError);

  auto dup = inst.pairs;
  dup.pairs[2] = dup.pairs[1];
  EXPECT_THROW(dup.validate(spec), ParameterError);

  auto rule_extra = inst.pairs;
  rule_extra.extra_pair = rule_extra.pairs[0];
  EXPECT_THROW(rule_extra.validate(spec), ParameterError);

  EXPECT_THROW(inst.pairs.validate(FeistelSpec::simeck(16)), ParameterError);
}

TEST(pair_set, json_round_trip) {
  const auto spec = FeistelSpec::simeck(8);
  const auto inst = make_attack_instance(spec, 9);
  const auto j = pair_set_json(inst.pairs);
  const auto back = pair_set_from_json(j, 8);
  EXPECT_EQ(back.constant_c, inst.pairs.constant_c);
  EXPECT_EQ(back.pairs, inst.pairs.pairs);
  EXPECT_EQ(back.extra_pair, inst.pairs.extra_pair);
  EXPECT_THROW(pair_set_from_json(nlohmann::json::parse(R"({"constant_c":"FF"})"), 8), ParseError);
  EXPECT_THROW(pair_set_from_json(nlohmann::json::parse(R"({"constant_c":"ZZ","pairs":[]})"), 8), ParseError);
}

TEST(attack_instance, default_constant_at_full_width) {
  const auto spec = FeistelSpec::simeck(16);
  const auto inst = make_attack_instance(spec, 1);
  EXPECT_EQ(inst.pairs.constant_c, w16(0xFFEE));
  EXPECT_TRUE(verify_pairs(inst.keys, inst.pairs, spec));
  InstanceOptions opts;
  opts.extra_pair = false;
  EXPECT_EQ(make_attack_instance(spec, 1, opts).pairs.data_complexity(), 3u);
}

TEST(diff_functions, forward_difference_is_l4_difference) {
  const auto spec = FeistelSpec::simeck(8);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = make_attack_instance(spec, seed);
    const auto ks = to_partial(inst.keys);
    const Word l4_1 = partial_encrypt(inst.pairs.pair(1).plaintext, ks, 1, 3, spec).left;
    for (unsigned idx : {2u, 3u}) {
      const Word l4_p = partial_encrypt(inst.pairs.pair(idx).plaintext, ks, 1, 3, spec).left;
      EXPECT_EQ(diff_f(true_k2_prime(inst), inst.pairs, idx, spec), l4_1 ^ l4_p);
    }
  }
}

TEST(diff_functions, true_keys_form_a_claw) {
  for (unsigned w : {6u, 8u, 10u}) {
    const auto spec = FeistelSpec::simeck(w);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto inst = make_attack_instance(spec, seed);
      for (unsigned idx : {2u, 3u}) {
        EXPECT_EQ(diff_f(true_k2_prime(inst), inst.pairs, idx, spec), diff_g(inst.keys[6], inst.pairs, idx, spec));
      }
    }
  }
  const auto tspec = FeistelSpec::random_tables(4, 6, 77);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = make_attack_instance(tspec, seed);
    for (unsigned idx : {2u, 3u}) {
      EXPECT_EQ(diff_f(true_k2_prime(inst), inst.pairs, idx, tspec), diff_g(inst.keys[6], inst.pairs, idx, tspec));
    }
  }
}

TEST(diff_functions, worked_example_claw) {
  const auto rv = reference_vectors(false);
  const auto& spec = rv.spec;
  EXPECT_EQ(simeck_f(w16(0xB0AE ^ 0xFFEE), spec), w16(0xD680));
  EXPECT_EQ(DerivedKeys::from_keys(w16(0xB0AE), w16(0xC7E9), w16(0xFFEE), spec).k2_prime, w16(0x1169));
  for (unsigned idx : {2u, 3u}) {
    EXPECT_EQ(diff_g(w16(0xFE40), rv.pairs, idx, spec), diff_f(w16(0x1169), rv.pairs, idx, spec));
  }
  EXPECT_EQ(diff_f(w16(0), rv.pairs, 2, spec),
            simeck_f(w16(0xCDF5), spec) ^ simeck_f(w16(0xC191), spec));
}

TEST(diff_functions, identical_pairs_cancel) {
  const auto spec = FeistelSpec::simeck(8);
  const auto set = identical_pairs(spec);
  for (WordValue x = 0; x < 256; ++x) {
    EXPECT_EQ(diff_g(Word(x, 8), set, 2, spec).value(), 0u);
    EXPECT_TRUE(k4_check(Word(x, 8), Word(1, 8), Word(2, 8), set, 3, spec));
    EXPECT_TRUE(k3_check_paper(Word(x, 8), Word(4, 8), Word(1, 8), Word(2, 8), set, 2, spec));
  }
}

TEST(claw_problem, census_contains_true_claw) {
  const auto spec = FeistelSpec::simeck(8);
  double spurious = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = make_attack_instance(spec, seed);
    const auto p = build_claw_problem(inst.pairs, spec);
    EXPECT_EQ(p.eq_count, 2u);
    const Claw truth{true_k2_prime(inst).value(), inst.keys[6].value()};
    EXPECT_EQ(p.eval_f(truth.x1), p.eval_g(truth.x2));
    const auto census = claw_census(p);
    EXPECT_TRUE(census.contains(truth));
    spurious += static_cast<double>(census.claw_count() - 1);
  }
  RecordProperty("mean_spurious_claws", std::to_string(spurious / 100));
}

TEST(key_checks, worked_example_keys_pass) {
  const auto rv = reference_vectors(false);
  const auto& k = rv.subkeys;
  for (unsigned idx : {2u, 3u}) {
    EXPECT_TRUE(k5_check(k[5], k[6], rv.pairs, idx, rv.spec));
    EXPECT_TRUE(k4_check(k[4], k[5], k[6], rv.pairs, idx, rv.spec));
  }
  EXPECT_EQ(k1k3_constant(rv.pairs, w16(0x1169), k[5], k[6], rv.spec), w16(0x7360));
}

TEST(key_checks, wrong_k5_rejected_at_full_width) {
  const auto rv = reference_vectors(false);
  std::mt19937_64 rng(2);
  int rejected = 0, total = 0;
  while (total < 1000) {
    const Word k5(static_cast<WordValue>(rng() & 0xFFFF), 16);
    if (k5 == rv.subkeys[5]) continue;
    ++total;
    rejected += !k5_check(k5, rv.subkeys[6], rv.pairs, 2, rv.spec);
  }
  EXPECT_GE(rejected, 990);
}

TEST(key_checks, exhaustive_survivors_contain_truth) {
  const auto spec = FeistelSpec::simeck(8);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = make_attack_instance(spec, seed);
    const auto& k = inst.keys;
    bool k5_found = false, k4_found = false;
    for (WordValue x = 0; x < 256; ++x) {
      const Word g(x, 8);
      if (k5_check(g, k[6], inst.pairs, 2, spec) && k5_check(g, k[6], inst.pairs, 3, spec)) k5_found |= g == k[5];
      if (k4_check(g, k[5], k[6], inst.pairs, 2, spec) && k4_check(g, k[5], k[6], inst.pairs, 3, spec)) {
        k4_found |= g == k[4];
      }
    }
    EXPECT_TRUE(k5_found);
    EXPECT_TRUE(k4_found);
  }
}

TEST(key_checks, k3_verdict_ignores_k3) {
  const auto spec = FeistelSpec::simeck(8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = make_attack_instance(spec, seed);
    const auto& k = inst.keys;
    for (unsigned idx : {2u, 3u}) {
      for (WordValue k3 = 0; k3 < 256; ++k3) {
        EXPECT_TRUE(k3_check_paper(Word(k3, 8), k[4], k[5], k[6], inst.pairs, idx, spec));
      }
    }
  }
}

TEST(key_checks, k3_check_rejects_wrong_k4) {
  const auto spec = FeistelSpec::simeck(16);
  std::mt19937_64 rng(4);
  int rejected = 0;
  for (int i = 0; i < 200; ++i) {
    const auto inst = make_attack_instance(spec, 100 + i);
    const auto& k = inst.keys;
    const Word bad = k[4] ^ Word(static_cast<WordValue>(1 + rng() % 0xFFFE), 16);
    rejected += !k3_check_paper(k[3], bad, k[5], k[6], inst.pairs, 2, spec);
  }
  EXPECT_GE(rejected, 195);
}

TEST(key_algebra, c_star_consistent_across_pairs) {
  const auto spec = FeistelSpec::simeck(8);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = make_attack_instance(spec, seed);
    const auto& k = inst.keys;
    const Word k2p = true_k2_prime(inst);
    for (unsigned idx : {1u, 2u, 3u}) {
      EXPECT_EQ(k1k3_from_pair(inst.pairs, idx, k2p, k[5], k[6], spec), k[1] ^ k[3]);
    }
    EXPECT_EQ(k1k3_constant(inst.pairs, k2p, k[5], k[6], spec), k[1] ^ k[3]);
  }
}

TEST(key_algebra, all_zero_instance) {
  const auto spec = FeistelSpec::simeck(8);
  const Word z(0, 8);
  const SubkeySet zero{{z, z, z, z, z, z}};
  const auto set = make_pair_set(spec, zero, z, {Word(1, 8), Word(2, 8), Word(3, 8)}, std::nullopt);
  EXPECT_EQ(k1k3_constant(set, z, z, z, spec), z);
}

TEST(key_algebra, inconsistent_c_star_throws) {
  const auto spec = FeistelSpec::simeck(8);
  const auto inst = make_attack_instance(spec, 5);
  // A wrong K6 almost always splits the per-pair values.
  int thrown = 0;
  for (WordValue d = 1; d < 40; ++d) {
    try {
      k1k3_constant(inst.pairs, true_k2_prime(inst), inst.keys[5], inst.keys[6] ^ Word(d, 8), spec);
    } catch (const VerificationError&) {
      ++thrown;
    }
  }
  EXPECT_GE(thrown, 30);
}

// Family members share K1 ^ K3 and the K2 law, so on any plaintext they
// collide exactly when they produce the same L2; after that K1 cancels.
TEST(key_algebra, family_invariance_and_separation) {
  for (unsigned w : {8u, 16u}) {
    const auto spec = FeistelSpec::simeck(w);
    const WordValue mask = spec.mask();
    std::mt19937_64 rng(21 + w);
    int separated = 0, trials = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto inst = make_attack_instance(spec, 1000 + i % 50);
      const auto& k = inst.keys;
      const Word c = inst.pairs.constant_c;
      const Word c_star = k[1] ^ k[3];
      const Word k2p = true_k2_prime(inst);
      const Word k1(static_cast<WordValue>(rng() & mask), w);
      const SubkeySet member = family_member(k1, c_star, k2p, k[4], k[5], k[6], c, spec);
      EXPECT_EQ(member[2], simeck_f(k1 ^ c, spec) ^ k2p);
      EXPECT_EQ(member[3], c_star ^ k1);
      const Block rule = make_chosen_plaintext(Word(static_cast<WordValue>(rng() & mask), w), c, spec);
      EXPECT_EQ(feistel_encrypt(rule, member, spec), feistel_encrypt(rule, k, spec));
      if (k1 == k[1]) continue;
      Block other;
      do {
        other = {Word(static_cast<WordValue>(rng() & mask), w), Word(static_cast<WordValue>(rng() & mask), w)};
      } while ((simeck_f(other.left, spec) ^ other.right) == c);
      const Word x = simeck_f(other.left, spec) ^ other.right;
      const bool same_l2 = (simeck_f(x ^ k1, spec) ^ simeck_f(c ^ k1, spec)) ==
                           (simeck_f(x ^ k[1], spec) ^ simeck_f(c ^ k[1], spec));
      const bool same_ct = feistel_encrypt(other, member, spec) == feistel_encrypt(other, k, spec);
      EXPECT_EQ(same_ct, same_l2);
      ++trials;
      separated += !same_ct;
    }
    if (w == 16) EXPECT_GE(separated, static_cast<int>(0.99 * trials));
    RecordProperty("separation_w" + std::to_string(w), std::to_string(double(separated) / trials));
  }
}
