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


// Simeck32/64 six-round reference example: master key, subkeys,
// chosen plaintexts under C = 0xFFEE and ciphertexts, stored exactly as
// printed (binary strings, most significant bit first). Entries that the
// implementation cannot reproduce are listed as errata with both values.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "asrq/attack.hpp"

namespace asrq {

struct PrintedExample {
  std::string master_hex;
  std::array<std::string, 6> subkeys;         // binary
  std::array<std::string, 3> plaintext_left;  // binary
  std::array<std::string, 3> plaintext_right;
  std::array<std::string, 3> ciphertext_left;
  std::array<std::string, 3> ciphertext_right;
  std::string constant_hex;
};

const PrintedExample& printed_example();

struct VectorErratum {
  std::string entry;
  std::string printed;
  std::string derived;
  std::string reason;
};

struct ReferenceVectors {
  FeistelSpec spec;
  MasterKey master;
  /// Printed subkeys; the attack recovers subkeys directly, so these rather
  /// than the schedule output define the hidden key.
  SubkeySet subkeys;
  /// Standard schedule output for the printed master key.
  SubkeySet schedule;
  /// Rule pairs rebuilt from the printed L1 values and re-encrypted.
  ChosenPairSet pairs;
  std::vector<VectorErratum> errata;
};

/// The fixed plaintext used as the extra non-rule pair.
Block reference_extra_plaintext();

ReferenceVectors reference_vectors(bool extra_pair);

std::string provenance_note();

}  // namespace asrq
