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

// All-subkeys recovery on 6-round Feistel-2* from three chosen plaintexts
// with F_1(L1) ^ R1 fixed.
//
// With the rule in place L2 = C ^ K1 is the same for every pair, so
//   L3 = L1 ^ K2'            with K1' = F_2(K1 ^ C), K2' = K1' ^ K2
//   L4 = C ^ K1 ^ K3 ^ F_3(L1 ^ K2')
// and the difference of L4 between pairs depends on K2' alone going forward
// and on (K5, K6) going backward. Ciphertexts are (L7, R7); undoing round i
// gives L_i = R_{i+1}, R_i = L_{i+1} ^ F_i(R_{i+1}) ^ K_i.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "asrq/cipher.hpp"
#include "asrq/claw.hpp"
#include "json.hpp"

namespace asrq {

struct KnownPair {
  Block plaintext;
  Block ciphertext;
  friend bool operator==(const KnownPair&, const KnownPair&) = default;
};

struct ChosenPairSet {
  Word constant_c;
  std::array<KnownPair, 3> pairs;
  std::optional<KnownPair> extra_pair;

  /// Checks widths, the F_1(L1) ^ R1 == C rule on the three pairs, distinct
  /// L1 values, and that the extra pair breaks the rule.
  void validate(const FeistelSpec& spec) const;
  /// Pairs consumed by the attack: 3, or 4 with an extra pair.
  unsigned data_complexity() const { return extra_pair ? 4 : 3; }
  const KnownPair& pair(unsigned idx) const { return pairs.at(idx - 1); }
};

struct DerivedKeys {
  Word k1_prime;
  Word k2_prime;

  static DerivedKeys from_keys(Word k1, Word k2, Word c, const FeistelSpec& spec);
};

enum class Uniqueness { unique, equivalence_family };

const char* to_string(Uniqueness u);

struct RecoveredKeys {
  SubkeySet subkeys;
  Word k2_prime;
  Word k1_xor_k3;
  Uniqueness uniqueness = Uniqueness::unique;
  /// K1 values consistent with every pair for this chain; the reported K1 is
  /// the smallest. Without an extra pair every K1 qualifies.
  std::uint64_t k1_candidates = 1;
};

/// (L1, F_1(L1) ^ c).
Block make_chosen_plaintext(Word l1, Word c, const FeistelSpec& spec);

/// Difference of L4 between pair 1 and pair_idx (2 or 3) computed forward
/// from a guess x of K2'.
Word diff_f(Word x, const ChosenPairSet& set, unsigned pair_idx, const FeistelSpec& spec);

/// Difference of L4 between pair 1 and pair_idx computed backward from the
/// ciphertexts and a guess x of K6, for any K5.
Word diff_g(Word x, const ChosenPairSet& set, unsigned pair_idx, const FeistelSpec& spec);

/// Two equations (pair indices 2 and 3) over 2^w inputs; (K2', K6) is a claw.
ClawProblem build_claw_problem(const ChosenPairSet& set, const FeistelSpec& spec);

/// Backward difference of L3 under (k5, k6) against the forward value L1 ^ L1'.
bool k5_check(Word k5, Word k6, const ChosenPairSet& set, unsigned pair_idx, const FeistelSpec& spec);

/// Backward difference of L2 under (k4, k5, k6) against zero.
bool k4_check(Word k4, Word k5, Word k6, const ChosenPairSet& set, unsigned pair_idx,
              const FeistelSpec& spec);

/// Backward difference of L1 under (k3..k6) against L1 ^ L1'. On rule pairs
/// R3 is pair-invariant once k4 is right, so the F_2 terms cancel and the
/// verdict does not depend on k3.
bool k3_check_paper(Word k3, Word k4, Word k5, Word k6, const ChosenPairSet& set, unsigned pair_idx,
                    const FeistelSpec& spec);

/// K1 ^ K3 = L4 ^ F_3(L1 ^ K2') ^ C for one rule pair, with L4 = R5 taken
/// from the ciphertext.
Word k1k3_from_pair(const ChosenPairSet& set, unsigned pair_idx, Word k2_prime, Word k5, Word k6,
                    const FeistelSpec& spec);

/// The common value over all three pairs; VerificationError if they disagree.
Word k1k3_constant(const ChosenPairSet& set, Word k2_prime, Word k5, Word k6, const FeistelSpec& spec);

/// (K1, F_2(K1 ^ C) ^ K2', c* ^ K1, K4, K5, K6).
SubkeySet family_member(Word k1, Word c_star, Word k2_prime, Word k4, Word k5, Word k6, Word c,
                        const FeistelSpec& spec);

/// Every pair in the set (rule pairs and extra pair) encrypts correctly.
bool verify_pairs(const SubkeySet& ks, const ChosenPairSet& set, const FeistelSpec& spec);

// ---------------------------------------------------------------------------
// Instance generation.

struct AttackInstance {
  FeistelSpec spec;
  SubkeySet keys;
  ChosenPairSet pairs;
};

struct InstanceOptions {
  std::optional<Word> constant_c;  // default: 0xFFEE at w=16, random otherwise
  bool extra_pair = true;
};

/// Hidden random subkeys, three distinct random L1 values under the rule,
/// optionally one random plaintext that breaks the rule.
AttackInstance make_attack_instance(const FeistelSpec& spec, std::uint64_t seed,
                                    const InstanceOptions& opts = {});

/// Encrypts the chosen plaintexts for an explicit key (no randomness).
ChosenPairSet make_pair_set(const FeistelSpec& spec, const SubkeySet& keys, Word c,
                            const std::array<Word, 3>& l1s, std::optional<Block> extra_plaintext);

nlohmann::json pair_set_json(const ChosenPairSet& set);
/// Inverse of pair_set_json; ParseError on malformed input.
ChosenPairSet pair_set_from_json(const nlohmann::json& j, unsigned width);

}  // namespace asrq
