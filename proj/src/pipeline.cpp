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

#include "asrq/pipeline.hpp"

#include <chrono>
#include <array>
#include <functional>
#include <set>

#include "asrq/errors.hpp"
#include "asrq/grover.hpp"
#include "asrq/rng.hpp"

namespace asrq {

namespace {

// Seed tags so stages draw independent randomness.
enum : std::uint64_t { kTagClaw = 1, kTagK5 = 2, kTagK4 = 3, kTagK1 = 4 };

/// Lazily yields the words accepted by a predicate.
class WordSearch {
 public:
  WordSearch(unsigned width, std::function<bool(WordValue)> pred, const Backends& b, std::uint64_t seed,
             StageReport& report)
      : width_(width), pred_(std::move(pred)), backends_(b), seed_(seed), report_(report) {}

  std::optional<WordValue> next() {
    if (backends_.search == SearchBackend::exhaustive) {
      if (!scanned_) {
        const WordValue n = width_mask(width_) + 1;
        for (WordValue x = 0; x < n; ++x) {
          if (pred_(x)) survivors_.push_back(x);
        }
        report_.queries += n;
        ++report_.runs;
        scanned_ = true;
      }
      if (pos_ < survivors_.size()) return survivors_[pos_++];
      return std::nullopt;
    }
    // The number of remaining solutions is unknown, so each ladder samples
    // once with the iteration count for M = 1, 2, 4, ..., 2^w. Exhaustion is
    // declared only after retries + 1 full ladders miss.
    auto pred = [this](std::uint64_t x) {
      return !excluded_.count(static_cast<WordValue>(x)) && pred_(static_cast<WordValue>(x));
    };
    const std::uint64_t n = std::uint64_t{1} << width_;
    for (unsigned ladder = 0; ladder <= backends_.retries; ++ladder) {
      for (unsigned j = 0; j <= width_; ++j) {
        auto smp = grover_sample(pred, n, child_seed(seed_, calls_++), grover_iterations(n, std::uint64_t{1} << j));
        report_.queries += smp.ledger.oracle_queries();
        ++report_.classical_checks;
        ++report_.runs;
        if (!report_.success_prob) report_.success_prob = smp.success_prob;
        if (pred(smp.index)) {
          const auto found = static_cast<WordValue>(smp.index);
          excluded_.insert(found);
          return found;
        }
      }
    }
    return std::nullopt;
  }

 private:
  unsigned width_;
  std::function<bool(WordValue)> pred_;
  const Backends& backends_;
  std::uint64_t seed_;
  StageReport& report_;
  bool scanned_ = false;
  std::vector<WordValue> survivors_;
  std::size_t pos_ = 0;
  std::set<WordValue> excluded_;
  std::uint64_t calls_ = 0;
};

/// Lazily yields claws (K2', K6) from the chosen backend.
class ClawSearch {
 public:
  ClawSearch(const ClawProblem& p, const Backends& b, StageReport& report)
      : problem_(p), backends_(b), report_(report) {}

  std::optional<Claw> next() {
    if (backends_.claw == ClawBackend::walk && !fallen_back_) {
      if (auto c = next_from_walk()) return c;
    }
    if (!loaded_) load_classical();
    while (pos_ < classical_.size()) {
      const Claw c = classical_[pos_++];
      if (!tried_.count(c)) {
        tried_.insert(c);
        return c;
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<Claw> next_from_walk() {
    while (true) {
      while (pending_pos_ < pending_.size()) {
        const Claw c = pending_[pending_pos_++];
        if (tried_.insert(c).second) return c;
      }
      if (walk_rounds_ > backends_.retries) break;
      WalkSampleOptions opts;
      opts.mode = backends_.walk_mode;
      opts.retries = backends_.retries;
      opts.outer_multiplier = backends_.outer_multiplier;
      try {
        auto r = claw_walk_sample(problem_, child_seed(child_seed(backends_.seed, kTagClaw), walk_rounds_++), opts);
        report_.queries += r.ledger.oracle_queries();
        report_.classical_checks += r.classical_checks;
        report_.runs += r.attempts;
        report_.success_prob = r.success_prob;
        report_.baseline_prob = r.baseline_prob;
        pending_ = r.candidates;
        pending_pos_ = 0;
        if (r.candidates.empty()) break;  // every rerun rejected
      } catch (const CapacityError& e) {
        note("walk refused: " + std::string(e.what()));
        break;
      }
    }
    fallen_back_ = true;
    if (report_.note.empty()) note("walk candidates exhausted");
    note("fell back to sorted claw finding");
    return std::nullopt;
  }

  void load_classical() {
    loaded_ = true;
    if (backends_.claw == ClawBackend::exhaustive) {
      classical_ = find_claws_exhaustive(problem_);
    } else {
      classical_ = claw_census(problem_).claws_in_value_order();
    }
    report_.queries += 2 * problem_.domain_size();
    ++report_.runs;
  }

  void note(const std::string& s) { report_.note += (report_.note.empty() ? "" : "; ") + s; }

  const ClawProblem& problem_;
  const Backends& backends_;
  StageReport& report_;
  bool loaded_ = false;
  bool fallen_back_ = false;
  std::vector<Claw> classical_;
  std::size_t pos_ = 0;
  std::vector<Claw> pending_;
  std::size_t pending_pos_ = 0;
  std::uint64_t walk_rounds_ = 0;
  std::set<Claw> tried_;
};

StageReport make_stage(std::string name, std::string backend) {
  StageReport s;
  s.name = std::move(name);
  s.backend = std::move(backend);
  return s;
}

std::string claw_backend_label(const Backends& b) {
  if (b.claw != ClawBackend::walk) return to_string(b.claw);
  return std::string("walk-sim/") + to_string(b.walk_mode);
}

}  // namespace

const char* to_string(ClawBackend b) {
  switch (b) {
    case ClawBackend::sorted: return "sorted";
    case ClawBackend::exhaustive: return "exhaustive";
    case ClawBackend::walk: return "walk-sim";
  }
  return "?";
}

const char* to_string(SearchBackend b) { return b == SearchBackend::exhaustive ? "exhaustive" : "grover-sim"; }

ClawBackend parse_claw_backend(const std::string& s) {
  if (s == "sorted" || s == "classical") return ClawBackend::sorted;
  if (s == "exhaustive") return ClawBackend::exhaustive;
  if (s == "walk" || s == "walk-sim") return ClawBackend::walk;
  throw ParameterError("unknown claw backend '" + s + "'");
}

SearchBackend parse_search_backend(const std::string& s) {
  if (s == "exhaustive" || s == "classical") return SearchBackend::exhaustive;
  if (s == "grover" || s == "grover-sim") return SearchBackend::grover;
  throw ParameterError("unknown search backend '" + s + "'");
}

std::uint64_t QueryStats::total_queries() const {
  std::uint64_t n = 0;
  for (const auto& s : stages) n += s.queries;
  return n;
}

const StageReport* QueryStats::stage(const std::string& name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

AttackResult run_asr_attack(const ChosenPairSet& set, const FeistelSpec& spec, const Backends& backends) {
  const auto t0 = std::chrono::steady_clock::now();
  set.validate(spec);
  const unsigned w = spec.word_width();
  const ClawProblem problem = build_claw_problem(set, spec);

  AttackResult result;
  result.stats.data_complexity = set.data_complexity();
  StageReport claw_st = make_stage("claw", claw_backend_label(backends));
  StageReport k5_st = make_stage("k5", to_string(backends.search));
  StageReport k4_st = make_stage("k4", to_string(backends.search));
  StageReport cs_st = make_stage("k1_xor_k3", "direct");
  StageReport k1_st = make_stage("k1", set.extra_pair ? to_string(backends.search) : "family");

  std::optional<RecoveredKeys> best;
  std::size_t best_claw_index = 0;
  auto key_less = [](const SubkeySet& a, const SubkeySet& b) {
    for (unsigned i = 1; i <= a.size(); ++i) {
      if (a[i].value() != b[i].value()) return a[i].value() < b[i].value();
    }
    return false;
  };
  auto accept = [&](RecoveredKeys keys) {
    ++result.consistent_chains;
    if (!best || key_less(keys.subkeys, best->subkeys)) {
      best = std::move(keys);
      best_claw_index = result.claws_tried;
    }
  };

  ClawSearch claws(problem, backends, claw_st);
  while (auto claw = claws.next()) {
    if (best && backends.first_solution) break;
    ++result.claws_tried;
    const Word k2p(claw->x1, w), k6(claw->x2, w);
    WordSearch k5s(
        w,
        [&](WordValue k5) {
          return k5_check(Word(k5, w), k6, set, 2, spec) && k5_check(Word(k5, w), k6, set, 3, spec);
        },
        backends, child_seed(child_seed(backends.seed, kTagK5), result.claws_tried), k5_st);
    while (auto k5v = k5s.next()) {
      const Word k5(*k5v, w);
      WordSearch k4s(
          w,
          [&](WordValue k4) {
            return k4_check(Word(k4, w), k5, k6, set, 2, spec) && k4_check(Word(k4, w), k5, k6, set, 3, spec);
          },
          backends, child_seed(child_seed(backends.seed, kTagK4), (std::uint64_t{result.claws_tried} << 20) | *k5v),
          k4_st);
      while (auto k4v = k4s.next()) {
        const Word k4(*k4v, w);
        Word c_star;
        ++cs_st.runs;
        cs_st.queries += 3;
        try {
          c_star = k1k3_constant(set, k2p, k5, k6, spec);
        } catch (const VerificationError&) {
          continue;
        }
        if (!set.extra_pair) {
          // Rule pairs cannot tell family members apart; report K1 = 0.
          SubkeySet ks = family_member(Word(0, w), c_star, k2p, k4, k5, k6, set.constant_c, spec);
          ++k1_st.classical_checks;
          if (verify_pairs(ks, set, spec)) {
            accept({ks, k2p, c_star, Uniqueness::equivalence_family, std::uint64_t{1} << w});
          }
          continue;
        }
        const KnownPair& extra = *set.extra_pair;
        const WordValue c = set.constant_c.value();
        const std::array<WordValue, 6> fixed{0, k2p.value(), c_star.value(), k4.value(), k5.value(), k6.value()};
        // Trial encryption of the extra pair on raw words; K2 and K3 follow
        // from K1 through the family law.
        auto trial = [&](WordValue k1) {
          std::array<WordValue, 6> k = fixed;
          k[0] = k1;
          k[1] = spec.round_function(2, k1 ^ c) ^ fixed[1];
          k[2] = fixed[2] ^ k1;
          WordValue l = extra.plaintext.left.value(), r = extra.plaintext.right.value();
          for (unsigned i = 0; i < 6; ++i) {
            const WordValue nl = r ^ spec.round_function(i + 1, l) ^ k[i];
            r = l;
            l = nl;
          }
          return l == extra.ciphertext.left.value() && r == extra.ciphertext.right.value();
        };
        WordSearch k1s(w, trial, backends, child_seed(child_seed(backends.seed, kTagK1), *k4v), k1_st);
        // One non-rule pair fixes K1 only up to a coset: for Simeck the K1
        // dependence of L2 is affine. Every survivor is collected and the
        // smallest one reported.
        std::optional<SubkeySet> found;
        std::uint64_t survivors = 0;
        while (auto k1v = k1s.next()) {
          SubkeySet ks = family_member(Word(*k1v, w), c_star, k2p, k4, k5, k6, set.constant_c, spec);
          ++k1_st.classical_checks;
          if (!verify_pairs(ks, set, spec)) continue;
          ++survivors;
          if (!found || ks[1].value() < (*found)[1].value()) found = ks;
        }
        if (found) {
          accept({*found, k2p, c_star, survivors == 1 ? Uniqueness::unique : Uniqueness::equivalence_family,
                  survivors});
        }
      }
    }
  }

  result.verified = best.has_value();
  if (best) {
    result.keys = *best;
    result.solution_claw_index = best_claw_index;
    const SubkeySet& ks = best->subkeys;
    claw_st.result_hex = format_word(best->k2_prime) + "," + format_word(ks[6]);
    k5_st.result_hex = format_word(ks[5]);
    k4_st.result_hex = format_word(ks[4]);
    cs_st.result_hex = format_word(best->k1_xor_k3);
    k1_st.result_hex = format_word(ks[1]);
    if (backends.literal_k3) {
      unsigned pass = 0;
      for (WordValue k3 = 0; k3 <= spec.mask(); ++k3) {
        pass += k3_check_paper(Word(k3, w), ks[4], ks[5], ks[6], set, 2, spec) &&
                k3_check_paper(Word(k3, w), ks[4], ks[5], ks[6], set, 3, spec);
      }
      cs_st.note = "k3_check_paper accepts " + std::to_string(pass) + " of " + std::to_string(spec.mask() + 1) +
                   " K3 values";
    }
  }
  result.stats.stages = {claw_st, k5_st, k4_st, cs_st, k1_st};
  result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!best) throw VerificationError("no candidate chain reproduces the pairs; the set is inconsistent (reject)");
  return result;
}

nlohmann::json attack_report_json(const FeistelSpec& spec, const ChosenPairSet& set, const Backends& backends,
                                  const AttackResult& result, bool include_timing) {
  nlohmann::json j;
  j["spec"] = {{"width", spec.word_width()}, {"rounds", spec.rounds()}, {"round_function", spec.describe()}};
  j["constant_c"] = format_word(set.constant_c);
  j["pairs"] = pair_set_json(set)["pairs"];
  if (set.extra_pair) j["extra_pair"] = pair_set_json(set)["extra_pair"];
  j["data_complexity"] = result.stats.data_complexity;
  j["backends"] = {{"claw", claw_backend_label(backends)},
                   {"search", to_string(backends.search)},
                   {"seed", backends.seed},
                   {"retries", backends.retries},
                   {"outer_multiplier", backends.outer_multiplier},
                   {"first_solution", backends.first_solution}};
  j["stages"] = nlohmann::json::array();
  for (const auto& s : result.stats.stages) {
    nlohmann::json st{{"name", s.name},
                      {"backend", s.backend},
                      {"queries", s.queries},
                      {"classical_checks", s.classical_checks},
                      {"runs", s.runs},
                      {"result_hex", s.result_hex}};
    if (!s.note.empty()) st["note"] = s.note;
    if (s.success_prob) st["success_prob"] = *s.success_prob;
    if (s.baseline_prob) st["baseline_prob"] = *s.baseline_prob;
    j["stages"].push_back(st);
  }
  j["total_queries"] = result.stats.total_queries();
  j["claws_tried"] = result.claws_tried;
  j["consistent_chains"] = result.consistent_chains;
  j["solution_claw_index"] = result.solution_claw_index;
  nlohmann::json rec;
  for (unsigned i = 1; i <= result.keys.subkeys.size(); ++i) {
    rec["K" + std::to_string(i)] = format_word(result.keys.subkeys[i]);
  }
  rec["K2_prime"] = format_word(result.keys.k2_prime);
  rec["K1_xor_K3"] = format_word(result.keys.k1_xor_k3);
  rec["uniqueness"] = to_string(result.keys.uniqueness);
  rec["k1_candidates"] = result.keys.k1_candidates;
  j["recovered"] = rec;
  j["verified"] = result.verified;
  if (include_timing) j["wall_seconds"] = result.stats.wall_seconds;
  return j;
}

}  // namespace asrq
