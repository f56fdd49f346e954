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

// Feistel-2* structure (subkey XORed after the round function) and the
// Simeck round function / key schedule, parameterised by half-block width.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace asrq {

using WordValue = std::uint32_t;

inline constexpr unsigned kMinWordWidth = 3;
inline constexpr unsigned kMaxWordWidth = 16;

constexpr WordValue width_mask(unsigned width) {
  return static_cast<WordValue>((std::uint64_t{1} << width) - 1);
}

/// Fixed-width bit vector holding one half-block.
class Word {
 public:
  Word() = default;
  /// Throws ParameterError if the width is unsupported or value >= 2^width.
  Word(WordValue value, unsigned width);

  /// Reduces `value` modulo 2^width instead of rejecting it.
  static Word wrap(WordValue value, unsigned width);

  WordValue value() const { return value_; }
  unsigned width() const { return width_; }

  friend Word operator^(Word a, Word b);
  friend Word operator&(Word a, Word b);
  friend bool operator==(Word a, Word b) = default;

 private:
  WordValue value_ = 0;
  unsigned width_ = kMaxWordWidth;
};

/// Cyclic left rotation within the word width. Requires c < width.
Word rotl(Word x, unsigned c);

/// Raw-value rotation used by the hot kernels; c is taken modulo width.
constexpr WordValue rotl_raw(WordValue x, unsigned c, unsigned width) {
  c %= width;
  if (c == 0) return x;
  return ((x << c) | (x >> (width - c))) & width_mask(width);
}

struct Block {
  Word left;
  Word right;

  unsigned width() const { return left.width(); }
  friend bool operator==(const Block&, const Block&) = default;
};

enum class RoundFunctionKind { simeck, table };

/// Cipher parameterisation: word width, round count, rotations and the
/// round function family. Copies share the (immutable) lookup tables.
class FeistelSpec {
 public:
  /// Simeck round function with rotations (5 mod w, 1 mod w). Widths where
  /// either rotation vanishes or both coincide are rejected.
  static FeistelSpec simeck(unsigned width, unsigned rounds = 6);

  /// Independent uniformly random lookup table per round, drawn from `seed`.
  static FeistelSpec random_tables(unsigned width, unsigned rounds, std::uint64_t seed);

  unsigned word_width() const { return width_; }
  unsigned rounds() const { return rounds_; }
  unsigned rot_a() const { return rot_a_; }
  unsigned rot_b() const { return rot_b_; }
  RoundFunctionKind kind() const { return kind_; }
  WordValue mask() const { return width_mask(width_); }
  std::uint64_t table_seed() const { return table_seed_; }

  /// F_round(x) for round in 1..rounds (raw kernel, no width checks).
  WordValue round_function(unsigned round, WordValue x) const {
    if (kind_ == RoundFunctionKind::simeck) {
      return (x & rotl_raw(x, rot_a_, width_)) ^ rotl_raw(x, rot_b_, width_);
    }
    return (*tables_)[(static_cast<std::size_t>(round - 1) << width_) | x];
  }

  Word round_function(unsigned round, Word x) const;

  std::string describe() const;

 private:
  FeistelSpec() = default;

  unsigned width_ = 16;
  unsigned rounds_ = 6;
  unsigned rot_a_ = 5;
  unsigned rot_b_ = 1;
  RoundFunctionKind kind_ = RoundFunctionKind::simeck;
  std::uint64_t table_seed_ = 0;
  std::shared_ptr<const std::vector<std::uint16_t>> tables_;
};

/// Round keys K_1..K_rounds.
struct SubkeySet {
  std::vector<Word> keys;

  /// 1-based access matching the round numbering.
  Word operator[](unsigned round) const { return keys.at(round - 1); }
  std::size_t size() const { return keys.size(); }
  friend bool operator==(const SubkeySet&, const SubkeySet&) = default;
};

/// Round keys where some rounds may be unknown.
using PartialKeys = std::vector<std::optional<Word>>;

PartialKeys to_partial(const SubkeySet& keys);

/// Master key words in the order (k0, t0, t1, t2).
using MasterKey = std::array<Word, 4>;

Word simeck_f(Word x, const FeistelSpec& spec);

Block feistel_encrypt(const Block& p, const SubkeySet& ks, const FeistelSpec& spec);
Block feistel_decrypt(const Block& c, const SubkeySet& ks, const FeistelSpec& spec);

/// Inverts rounds from_round down to to_round and returns the state entering
/// to_round. An empty range (from_round < to_round) returns the input.
Block partial_decrypt(const Block& c, const PartialKeys& ks, unsigned from_round, unsigned to_round,
                      const FeistelSpec& spec);
Block partial_decrypt(const Block& c, const SubkeySet& ks, unsigned from_round, unsigned to_round,
                      const FeistelSpec& spec);

/// Applies rounds from_round..to_round in the encryption direction.
Block partial_encrypt(const Block& p, const PartialKeys& ks, unsigned from_round, unsigned to_round,
                      const FeistelSpec& spec);

/// Simeck round-constant sequence for the 32/64 variant, least significant bit first.
inline constexpr std::uint32_t kSimeckZ0 = 0x9A42BB1Fu;

/// Simeck key schedule: round key i is the current k; the state advances with
/// k' = k ^ F(t0) ^ (2^w - 4) ^ z_i. Toy widths reuse the same recurrence.
/// Passing z_sequence = 0 drops the round-constant bit, which is the variant
/// the six-round reference example was computed with.
SubkeySet simeck_key_schedule(const MasterKey& mk, unsigned rounds, const FeistelSpec& spec,
                              std::uint32_t z_sequence = kSimeckZ0);

// Hex I/O. Words print most-significant digit first with ceil(w/4) digits;
// blocks print as "L|R".
std::string format_word(Word w);
std::string format_block(const Block& b);
Word parse_word(std::string_view text, unsigned width);
Block parse_block(std::string_view text, unsigned width);
/// Accepts "B0AEC7E9C3CEE6C3", "B0AE C7E9 C3CE E6C3" or comma-separated words.
MasterKey parse_master_key(std::string_view text, unsigned width);
SubkeySet parse_subkeys(std::string_view text, unsigned width);

/// Parses a binary string (most-significant bit first, blanks ignored).
Word parse_binary_word(std::string_view bits, unsigned width);

nlohmann::json key_schedule_json(const FeistelSpec& spec, const MasterKey& mk, const SubkeySet& ks);

}  // namespace asrq
