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

#include "asrq/cipher.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "asrq/errors.hpp"

namespace asrq {

namespace {

void check_width(unsigned width) {
  if (width < kMinWordWidth || width > kMaxWordWidth) {
    throw ParameterError("word width " + std::to_string(width) + " outside " +
                         std::to_string(kMinWordWidth) + ".." + std::to_string(kMaxWordWidth));
  }
}

void check_same_width(Word a, Word b) {
  if (a.width() != b.width()) {
    throw ParameterError("word widths differ: " + std::to_string(a.width()) + " vs " +
                         std::to_string(b.width()));
  }
}

void check_block(const Block& b, const FeistelSpec& spec) {
  if (b.left.width() != spec.word_width() || b.right.width() != spec.word_width()) {
    throw ParameterError("block halves must have width " + std::to_string(spec.word_width()));
  }
}

void check_keys(const SubkeySet& ks, const FeistelSpec& spec) {
  if (ks.size() != spec.rounds()) {
    throw ParameterError("expected " + std::to_string(spec.rounds()) + " subkeys, got " +
                         std::to_string(ks.size()));
  }
  for (const Word& k : ks.keys) {
    if (k.width() != spec.word_width()) throw ParameterError("subkey width mismatch");
  }
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

unsigned hex_digits(unsigned width) { return (width + 3) / 4; }

std::string strip(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t' || c == '_') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

Word::Word(WordValue value, unsigned width) : value_(value), width_(width) {
  check_width(width);
  if (value > width_mask(width)) {
    throw ParameterError("value " + std::to_string(value) + " does not fit in " +
                         std::to_string(width) + " bits");
  }
}

Word Word::wrap(WordValue value, unsigned width) {
  check_width(width);
  return Word(value & width_mask(width), width);
}

Word operator^(Word a, Word b) {
  check_same_width(a, b);
  return Word(a.value_ ^ b.value_, a.width_);
}

Word operator&(Word a, Word b) {
  check_same_width(a, b);
  return Word(a.value_ & b.value_, a.width_);
}

Word rotl(Word x, unsigned c) {
  if (c >= x.width()) {
    throw ParameterError("rotation " + std::to_string(c) + " not below width " +
                         std::to_string(x.width()));
  }
  return Word(rotl_raw(x.value(), c, x.width()), x.width());
}

FeistelSpec FeistelSpec::simeck(unsigned width, unsigned rounds) {
  check_width(width);
  if (rounds < 1) throw ParameterError("rounds must be >= 1");
  FeistelSpec s;
  s.width_ = width;
  s.rounds_ = rounds;
  s.rot_a_ = 5 % width;
  s.rot_b_ = 1 % width;
  if (s.rot_a_ == 0 || s.rot_b_ == 0 || s.rot_a_ == s.rot_b_) {
    throw ParameterError("Simeck rotations (" + std::to_string(s.rot_a_) + ", " +
                         std::to_string(s.rot_b_) + ") degenerate at width " + std::to_string(width));
  }
  s.kind_ = RoundFunctionKind::simeck;
  return s;
}

FeistelSpec FeistelSpec::random_tables(unsigned width, unsigned rounds, std::uint64_t seed) {
  check_width(width);
  if (rounds < 1) throw ParameterError("rounds must be >= 1");
  FeistelSpec s;
  s.width_ = width;
  s.rounds_ = rounds;
  s.rot_a_ = 5 % width;
  s.rot_b_ = 1 % width;
  s.kind_ = RoundFunctionKind::table;
  s.table_seed_ = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<WordValue> dist(0, width_mask(width));
  auto tables = std::make_shared<std::vector<std::uint16_t>>(std::size_t{rounds} << width);
  for (auto& entry : *tables) entry = static_cast<std::uint16_t>(dist(rng));
  s.tables_ = std::move(tables);
  return s;
}

Word FeistelSpec::round_function(unsigned round, Word x) const {
  if (x.width() != width_) throw ParameterError("round function input width mismatch");
  if (round < 1 || round > rounds_) throw ParameterError("round index out of range");
  return Word(round_function(round, x.value()), width_);
}

std::string FeistelSpec::describe() const {
  std::ostringstream os;
  if (kind_ == RoundFunctionKind::simeck) {
    os << "simeck w=" << width_ << " rounds=" << rounds_ << " rot=(" << rot_a_ << "," << rot_b_ << ")";
  } else {
    os << "table w=" << width_ << " rounds=" << rounds_ << " seed=" << table_seed_;
  }
  return os.str();
}

PartialKeys to_partial(const SubkeySet& keys) {
  return PartialKeys(keys.keys.begin(), keys.keys.end());
}

Word simeck_f(Word x, const FeistelSpec& spec) {
  if (x.width() != spec.word_width()) throw ParameterError("simeck_f input width mismatch");
  const unsigned w = spec.word_width();
  const WordValue v = x.value();
  return Word((v & rotl_raw(v, spec.rot_a(), w)) ^ rotl_raw(v, spec.rot_b(), w), w);
}

Block feistel_encrypt(const Block& p, const SubkeySet& ks, const FeistelSpec& spec) {
  check_block(p, spec);
  check_keys(ks, spec);
  return partial_encrypt(p, to_partial(ks), 1, spec.rounds(), spec);
}

Block feistel_decrypt(const Block& c, const SubkeySet& ks, const FeistelSpec& spec) {
  check_block(c, spec);
  check_keys(ks, spec);
  return partial_decrypt(c, to_partial(ks), spec.rounds(), 1, spec);
}

Block partial_encrypt(const Block& p, const PartialKeys& ks, unsigned from_round, unsigned to_round,
                      const FeistelSpec& spec) {
  check_block(p, spec);
  if (from_round > to_round) return p;
  if (from_round < 1 || to_round > spec.rounds()) throw ParameterError("round range out of bounds");
  const unsigned w = spec.word_width();
  WordValue l = p.left.value();
  WordValue r = p.right.value();
  for (unsigned i = from_round; i <= to_round; ++i) {
    if (i > ks.size() || !ks[i - 1]) {
      throw ParameterError("missing subkey for round " + std::to_string(i));
    }
    const WordValue next = r ^ spec.round_function(i, l) ^ ks[i - 1]->value();
    r = l;
    l = next;
  }
  return {Word(l, w), Word(r, w)};
}

Block partial_decrypt(const Block& c, const PartialKeys& ks, unsigned from_round, unsigned to_round,
                      const FeistelSpec& spec) {
  check_block(c, spec);
  if (from_round < to_round) return c;
  if (to_round < 1 || from_round > spec.rounds()) throw ParameterError("round range out of bounds");
  const unsigned w = spec.word_width();
  // Inverse round: L_i = R_{i+1}, R_i = L_{i+1} ^ F_i(R_{i+1}) ^ K_i.
  WordValue l = c.left.value();
  WordValue r = c.right.value();
  for (unsigned i = from_round; i >= to_round; --i) {
    if (i > ks.size() || !ks[i - 1]) {
      throw ParameterError("missing subkey for round " + std::to_string(i));
    }
    const WordValue prev_right = l ^ spec.round_function(i, r) ^ ks[i - 1]->value();
    l = r;
    r = prev_right;
    if (i == 1) break;
  }
  return {Word(l, w), Word(r, w)};
}

Block partial_decrypt(const Block& c, const SubkeySet& ks, unsigned from_round, unsigned to_round,
                      const FeistelSpec& spec) {
  return partial_decrypt(c, to_partial(ks), from_round, to_round, spec);
}

SubkeySet simeck_key_schedule(const MasterKey& mk, unsigned rounds, const FeistelSpec& spec,
                              std::uint32_t z_sequence) {
  const unsigned w = spec.word_width();
  if (spec.kind() != RoundFunctionKind::simeck) {
    throw ParameterError("the Simeck key schedule needs the Simeck round function");
  }
  if (rounds > 32) throw ParameterError("z-sequence prefix covers at most 32 rounds");
  for (const Word& m : mk) {
    if (m.width() != w) throw ParameterError("master key word width mismatch");
  }
  const WordValue constant = (width_mask(w) - 3) & width_mask(w);  // 2^w - 4
  std::array<WordValue, 4> state{mk[0].value(), mk[1].value(), mk[2].value(), mk[3].value()};
  SubkeySet out;
  out.keys.reserve(rounds);
  for (unsigned i = 0; i < rounds; ++i) {
    out.keys.emplace_back(state[0], w);
    const WordValue z = (z_sequence >> i) & 1u;
    const WordValue next = state[0] ^ spec.round_function(1, state[1]) ^ constant ^ z;
    state = {state[1], state[2], state[3], next};
  }
  return out;
}

std::string format_word(Word w) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  const unsigned n = hex_digits(w.width());
  std::string s(n, '0');
  WordValue v = w.value();
  for (unsigned i = 0; i < n; ++i) {
    s[n - 1 - i] = kDigits[v & 0xF];
    v >>= 4;
  }
  return s;
}

std::string format_block(const Block& b) { return format_word(b.left) + "|" + format_word(b.right); }

Word parse_word(std::string_view text, unsigned width) {
  check_width(width);
  std::string s = strip(text);
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s = s.substr(2);
  if (s.empty()) throw ParseError("empty hex word");
  if (s.size() > hex_digits(width)) {
    throw ParseError("hex word '" + s + "' longer than " + std::to_string(hex_digits(width)) +
                     " digits");
  }
  WordValue v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int d = hex_digit(s[i]);
    if (d < 0) {
      throw ParseError("invalid hex digit '" + std::string(1, s[i]) + "' at position " +
                       std::to_string(i) + " in '" + s + "'");
    }
    v = (v << 4) | static_cast<WordValue>(d);
  }
  if (v > width_mask(width)) {
    throw ParseError("hex word '" + s + "' exceeds " + std::to_string(width) + " bits");
  }
  return Word(v, width);
}

Block parse_block(std::string_view text, unsigned width) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos) {
    throw ParseError("block '" + std::string(text) + "' must look like L|R");
  }
  return {parse_word(text.substr(0, bar), width), parse_word(text.substr(bar + 1), width)};
}

MasterKey parse_master_key(std::string_view text, unsigned width) {
  auto parts = split_words(text);
  if (parts.size() == 1) {
    // Contiguous form: four equal-length hex words.
    std::string s = parts[0];
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s = s.substr(2);
    const unsigned d = hex_digits(width);
    if (s.size() != 4 * d) {
      throw ParseError("master key '" + s + "' should have " + std::to_string(4 * d) + " hex digits");
    }
    parts = {s.substr(0, d), s.substr(d, d), s.substr(2 * d, d), s.substr(3 * d, d)};
  }
  if (parts.size() != 4) throw ParseError("master key needs 4 words, got " + std::to_string(parts.size()));
  return {parse_word(parts[0], width), parse_word(parts[1], width), parse_word(parts[2], width),
          parse_word(parts[3], width)};
}

SubkeySet parse_subkeys(std::string_view text, unsigned width) {
  SubkeySet ks;
  for (const auto& p : split_words(text)) ks.keys.push_back(parse_word(p, width));
  if (ks.keys.empty()) throw ParseError("no subkeys given");
  return ks;
}

Word parse_binary_word(std::string_view bits, unsigned width) {
  WordValue v = 0;
  unsigned n = 0;
  for (char c : bits) {
    if (c == ' ') continue;
    if (c != '0' && c != '1') throw ParseError("invalid binary digit in '" + std::string(bits) + "'");
    v = (v << 1) | static_cast<WordValue>(c - '0');
    ++n;
  }
  if (n > width) {
    throw ParseError("binary word '" + std::string(bits) + "' has " + std::to_string(n) +
                     " bits, width is " + std::to_string(width));
  }
  return Word(v, width);
}

nlohmann::json key_schedule_json(const FeistelSpec& spec, const MasterKey& mk, const SubkeySet& ks) {
  nlohmann::json j;
  j["width"] = spec.word_width();
  j["rounds"] = ks.size();
  j["master"] = nlohmann::json::array();
  for (const Word& m : mk) j["master"].push_back(format_word(m));
  j["subkeys"] = nlohmann::json::array();
  for (const Word& k : ks.keys) j["subkeys"].push_back(format_word(k));
  return j;
}

}  // namespace asrq
