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

#include <set>

#include "asrq/errors.hpp"

namespace asrq {

namespace {

void check_pair_idx(unsigned idx) {
  if (idx != 2 && idx != 3) throw ParameterError("pair index must be 2 or 3");
}

void check_six_rounds(const FeistelSpec& spec) {
  if (spec.rounds() != 6) throw ParameterError("the attack targets exactly 6 rounds");
}

// Right halves R6..R3 reached from a ciphertext by undoing rounds 6, 5, 4, 3.
// Entries past the supplied keys are left at zero.
struct Backward {
  WordValue r6 = 0, r5 = 0, r4 = 0, r3 = 0;
};

Backward backward(const Block& c, const FeistelSpec& spec, WordValue k6, std::optional<WordValue> k5,
                  std::optional<WordValue> k4 = {}, std::optional<WordValue> k3 = {}) {
  Backward b;
  const WordValue l7 = c.left.value(), r7 = c.right.value();
  b.r6 = l7 ^ spec.round_function(6, r7) ^ k6;
  if (!k5) return b;
  b.r5 = r7 ^ spec.round_function(5, b.r6) ^ *k5;
  if (!k4) return b;
  b.r4 = b.r6 ^ spec.round_function(4, b.r5) ^ *k4;
  if (!k3) return b;
  b.r3 = b.r5 ^ spec.round_function(3, b.r4) ^ *k3;
  return b;
}

WordValue random_word(std::mt19937_64& rng, const FeistelSpec& spec) {
  return static_cast<WordValue>(rng() & spec.mask());
}

nlohmann::json pair_json(const KnownPair& p) {
  return {{"plaintext", format_block(p.plaintext)}, {"ciphertext", format_block(p.ciphertext)}};
}

KnownPair pair_from_json(const nlohmann::json& j, unsigned width) {
  if (!j.is_object() || !j.contains("plaintext") || !j.contains("ciphertext")) {
    throw ParseError("pair entries need 'plaintext' and 'ciphertext'");
  }
  return {parse_block(j.at("plaintext").get<std::string>(), width),
          parse_block(j.at("ciphertext").get<std::string>(), width)};
}

}  // namespace

void ChosenPairSet::validate(const FeistelSpec& spec) const {
  const unsigned w = spec.word_width();
  if (constant_c.width() != w) throw ParameterError("constant C width mismatch");
  std::set<WordValue> l1s;
  for (unsigned i = 0; i < 3; ++i) {
    const auto& p = pairs[i];
    if (p.plaintext.width() != w || p.ciphertext.width() != w) {
      throw ParameterError("pair " + std::to_string(i + 1) + " width mismatch");
    }
    const Word f1 = spec.round_function(1, p.plaintext.left);
    if ((f1 ^ p.plaintext.right) != constant_c) {
      throw ParameterError("pair " + std::to_string(i + 1) + " breaks the F_1(L1) ^ R1 == C rule");
    }
    l1s.insert(p.plaintext.left.value());
  }
  if (l1s.size() != 3) throw ParameterError("the three rule pairs need distinct L1 values");
  if (extra_pair) {
    if (extra_pair->plaintext.width() != w || extra_pair->ciphertext.width() != w) {
      throw ParameterError("extra pair width mismatch");
    }
    if ((spec.round_function(1, extra_pair->plaintext.left) ^ extra_pair->plaintext.right) == constant_c) {
      throw ParameterError("the extra pair must not satisfy the chosen-plaintext rule");
    }
  }
}

DerivedKeys DerivedKeys::from_keys(Word k1, Word k2, Word c, const FeistelSpec& spec) {
  const Word k1p = spec.round_function(2, k1 ^ c);
  return {k1p, k1p ^ k2};
}

const char* to_string(Uniqueness u) {
  return u == Uniqueness::unique ? "unique" : "equivalence-family";
}

Block make_chosen_plaintext(Word l1, Word c, const FeistelSpec& spec) {
  if (l1.width() != spec.word_width() || c.width() != spec.word_width()) {
    throw ParameterError("chosen plaintext width mismatch");
  }
  return {l1, spec.round_function(1, l1) ^ c};
}

Word diff_f(Word x, const ChosenPairSet& set, unsigned pair_idx, const FeistelSpec& spec) {
  check_pair_idx(pair_idx);
  const WordValue a = set.pair(1).plaintext.left.value();
  const WordValue b = set.pair(pair_idx).plaintext.left.value();
  const WordValue v = x.value();
  return Word(spec.round_function(3, a ^ v) ^ spec.round_function(3, b ^ v), spec.word_width());
}

Word diff_g(Word x, const ChosenPairSet& set, unsigned pair_idx, const FeistelSpec& spec) {
  check_pair_idx(pair_idx);
  const Block& c1 = set.pair(1).ciphertext;
  const Block& cp = set.pair(pair_idx).ciphertext;
  const WordValue v = x.value();
  const WordValue r6a = c1.left.value() ^ spec.round_function(6, c1.right.value()) ^ v;
  const WordValue r6b = cp.left.value() ^ spec.round_function(6, cp.right.value()) ^ v;
  return Word(c1.right.value() ^ cp.right.value() ^ spec.round_function(5, r6a) ^
                  spec.round_function(5, r6b),
              spec.word_width());
}

ClawProblem build_claw_problem(const ChosenPairSet& set, const FeistelSpec& spec) {
  check_six_rounds(spec);
  const unsigned w = spec.word_width();
  // Raw kernels over the four L1 / ciphertext values, captured by value.
  const WordValue a = set.pair(1).plaintext.left.value();
  const std::array<WordValue, 2> b{set.pair(2).plaintext.left.value(), set.pair(3).plaintext.left.value()};
  const Block c1 = set.pair(1).ciphertext;
  const std::array<Block, 2> cp{set.pair(2).ciphertext, set.pair(3).ciphertext};
  ClawProblem p;
  p.domain_bits = w;
  p.range_bits = w;
  p.eq_count = 2;
  p.expected_unique = true;
  p.f = [spec, a, b](unsigned eq, std::uint32_t x) {
    return spec.round_function(3, a ^ x) ^ spec.round_function(3, b[eq] ^ x);
  };
  p.g = [spec, c1, cp](unsigned eq, std::uint32_t x) {
    const Block& c = cp[eq];
    const WordValue r6a = c1.left.value() ^ spec.round_function(6, c1.right.value()) ^ x;
    const WordValue r6b = c.left.value() ^ spec.round_function(6, c.right.value()) ^ x;
    return c1.right.value() ^ c.right.value() ^ spec.round_function(5, r6a) ^ spec.round_function(5, r6b);
  };
  p.validate();
  return p;
}

bool k5_check(Word k5, Word k6, const ChosenPairSet& set, unsigned pair_idx, const FeistelSpec& spec) {
  check_pair_idx(pair_idx);
  const Block& c1 = set.pair(1).ciphertext;
  const Block& cp = set.pair(pair_idx).ciphertext;
  const Backward a = backward(c1, spec, k6.value(), k5.value());
  const Backward b = backward(cp, spec, k6.value(), k5.value());
  // Delta R4 without K4, which cancels.
  const WordValue d_l3 = a.r6 ^ b.r6 ^ spec.round_function(4, a.r5) ^ spec.round_function(4, b.r5);
  const WordValue d_l1 = set.pair(1).plaintext.left.value() ^ set.pair(pair_idx).plaintext.left.value();
  return d_l3 == d_l1;
}

bool k4_check(Word k4, Word k5, Word k6, const ChosenPairSet& set, unsigned pair_idx,
              const FeistelSpec& spec) {
  check_pair_idx(pair_idx);
  const Backward a = backward(set.pair(1).ciphertext, spec, k6.value(), k5.value(), k4.value());
  const Backward b = backward(set.pair(pair_idx).ciphertext, spec, k6.value(), k5.value(), k4.value());
  const WordValue d_l2 = a.r5 ^ b.r5 ^ spec.round_function(3, a.r4) ^ spec.round_function(3, b.r4);
  return d_l2 == 0;
}

bool k3_check_paper(Word k3, Word k4, Word k5, Word k6, const ChosenPairSet& set, unsigned pair_idx,
                    const FeistelSpec& spec) {
  check_pair_idx(pair_idx);
  const Backward a =
      backward(set.pair(1).ciphertext, spec, k6.value(), k5.value(), k4.value(), k3.value());
  const Backward b =
      backward(set.pair(pair_idx).ciphertext, spec, k6.value(), k5.value(), k4.value(), k3.value());
  // L1 = R2 = L3 ^ F_2(R3) ^ K2 with L3 = R4; K2 cancels in the difference.
  const WordValue d_l1 = a.r4 ^ b.r4 ^ spec.round_function(2, a.r3) ^ spec.round_function(2, b.r3);
  return d_l1 == (set.pair(1).plaintext.left.value() ^ set.pair(pair_idx).plaintext.left.value());
}

Word k1k3_from_pair(const ChosenPairSet& set, unsigned pair_idx, Word k2_prime, Word k5, Word k6,
                    const FeistelSpec& spec) {
  const KnownPair& p = set.pair(pair_idx);
  const WordValue l4 = backward(p.ciphertext, spec, k6.value(), k5.value()).r5;
  const WordValue l1 = p.plaintext.left.value();
  return Word(l4 ^ spec.round_function(3, l1 ^ k2_prime.value()) ^ set.constant_c.value(),
              spec.word_width());
}

Word k1k3_constant(const ChosenPairSet& set, Word k2_prime, Word k5, Word k6, const FeistelSpec& spec) {
  const Word c = k1k3_from_pair(set, 1, k2_prime, k5, k6, spec);
  for (unsigned i = 2; i <= 3; ++i) {
    if (k1k3_from_pair(set, i, k2_prime, k5, k6, spec) != c) {
      throw VerificationError("K1 ^ K3 differs between pair 1 and pair " + std::to_string(i));
    }
  }
  return c;
}

SubkeySet family_member(Word k1, Word c_star, Word k2_prime, Word k4, Word k5, Word k6, Word c,
                        const FeistelSpec& spec) {
  const Word k2 = spec.round_function(2, k1 ^ c) ^ k2_prime;
  return {{k1, k2, c_star ^ k1, k4, k5, k6}};
}

bool verify_pairs(const SubkeySet& ks, const ChosenPairSet& set, const FeistelSpec& spec) {
  for (const auto& p : set.pairs) {
    if (feistel_encrypt(p.plaintext, ks, spec) != p.ciphertext) return false;
  }
  if (set.extra_pair && feistel_encrypt(set.extra_pair->plaintext, ks, spec) != set.extra_pair->ciphertext) {
    return false;
  }
  return true;
}

AttackInstance make_attack_instance(const FeistelSpec& spec, std::uint64_t seed, const InstanceOptions& opts) {
  check_six_rounds(spec);
  const unsigned w = spec.word_width();
  std::mt19937_64 rng(seed);
  SubkeySet keys;
  for (unsigned i = 0; i < spec.rounds(); ++i) keys.keys.emplace_back(random_word(rng, spec), w);
  Word c = opts.constant_c ? *opts.constant_c
                           : (w == 16 ? Word(0xFFEE, 16) : Word(random_word(rng, spec), w));
  std::array<Word, 3> l1s;
  std::set<WordValue> seen;
  for (auto& l1 : l1s) {
    WordValue v;
    do {
      v = random_word(rng, spec);
    } while (!seen.insert(v).second);
    l1 = Word(v, w);
  }
  std::optional<Block> extra;
  if (opts.extra_pair) {
    Block p;
    do {
      p = {Word(random_word(rng, spec), w), Word(random_word(rng, spec), w)};
    } while ((spec.round_function(1, p.left) ^ p.right) == c);
    extra = p;
  }
  return {spec, keys, make_pair_set(spec, keys, c, l1s, extra)};
}

ChosenPairSet make_pair_set(const FeistelSpec& spec, const SubkeySet& keys, Word c,
                            const std::array<Word, 3>& l1s, std::optional<Block> extra_plaintext) {
  ChosenPairSet set;
  set.constant_c = c;
  for (unsigned i = 0; i < 3; ++i) {
    const Block p = make_chosen_plaintext(l1s[i], c, spec);
    set.pairs[i] = {p, feistel_encrypt(p, keys, spec)};
  }
  if (extra_plaintext) set.extra_pair = KnownPair{*extra_plaintext, feistel_encrypt(*extra_plaintext, keys, spec)};
  set.validate(spec);
  return set;
}

nlohmann::json pair_set_json(const ChosenPairSet& set) {
  nlohmann::json j;
  j["constant_c"] = format_word(set.constant_c);
  j["pairs"] = nlohmann::json::array();
  for (const auto& p : set.pairs) j["pairs"].push_back(pair_json(p));
  if (set.extra_pair) j["extra_pair"] = pair_json(*set.extra_pair);
  return j;
}

ChosenPairSet pair_set_from_json(const nlohmann::json& j, unsigned width) {
  if (!j.is_object() || !j.contains("constant_c") || !j.contains("pairs")) {
    throw ParseError("pair file needs 'constant_c' and 'pairs'");
  }
  const auto& pairs = j.at("pairs");
  if (!pairs.is_array() || pairs.size() != 3) throw ParseError("pair file needs exactly 3 rule pairs");
  ChosenPairSet set;
  try {
    set.constant_c = parse_word(j.at("constant_c").get<std::string>(), width);
    for (unsigned i = 0; i < 3; ++i) set.pairs[i] = pair_from_json(pairs[i], width);
    if (j.contains("extra_pair") && !j.at("extra_pair").is_null()) {
      set.extra_pair = pair_from_json(j.at("extra_pair"), width);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pair file: ") + e.what());
  }
  return set;
}

}  // namespace asrq
