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

#pragma once

#include <cstdint>

namespace asrq {

/// Oracle applications charged to one run. Only ever grows.
class QueryLedger {
 public:
  void charge(std::uint64_t n = 1) { queries_ += n; }
  std::uint64_t oracle_queries() const { return queries_; }

 private:
  std::uint64_t queries_ = 0;
};

}  // namespace asrq
