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


// Acceptance run: one PASS/FAIL line per criterion, with the measured values
// and the pinned tolerances. Exits 1 when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "asrq/attack.hpp"
#include "asrq/cipher.hpp"
#include "asrq/claw.hpp"
#include "asrq/errors.hpp"
#include "asrq/grover.hpp"
#include "asrq/harness.hpp"
#include "asrq/pipeline.hpp"
#include "asrq/reference_vectors.hpp"
#include "asrq/walk.hpp"
#include "json.hpp"

using namespace asrq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
  failures += !pass;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void worked_example() {
  const auto t0 = Clock::now();
  const auto& pe = printed_example();
  const auto spec = FeistelSpec::simeck(16);
  const auto mk = parse_master_key(pe.master_hex, 16);
  const auto ks = simeck_key_schedule(mk, 6, spec);
  const Word constant = parse_word(pe.constant_hex, 16);
  SubkeySet printed;
  for (const auto& bits : pe.subkeys) printed.keys.push_back(parse_binary_word(bits, 16));

  std::vector<std::string> mismatches;
  bool master_words = true;
  for (unsigned i = 1; i <= 4; ++i) master_words &= ks[i] == mk[i - 1];
  for (unsigned i = 5; i <= 6; ++i) {
    if (ks[i] != printed[i]) {
      mismatches.push_back("k" + std::to_string(i) + " printed " + format_word(printed[i]) + " derived " +
                           format_word(ks[i]));
    }
  }
  for (unsigned row = 0; row < 3; ++row) {
    const Block p{parse_binary_word(pe.plaintext_left[row], 16), parse_binary_word(pe.plaintext_right[row], 16)};
    const Block c{parse_binary_word(pe.ciphertext_left[row], 16), parse_binary_word(pe.ciphertext_right[row], 16)};
    const Block got = feistel_encrypt(p, printed, spec);
    if (got != c) {
      std::string m = "row " + std::to_string(row + 1) + " printed " + format_block(c) + " derived " + format_block(got);
      const Word rule_r1 = simeck_f(p.left, spec) ^ constant;
      if (rule_r1 != p.right) {
        const Block fixed{p.left, rule_r1};
        m += " (printed R1 " + format_word(p.right) + " breaks the rule; with R1 " + format_word(rule_r1) + " derived " +
             format_block(feistel_encrypt(fixed, printed, spec)) + ")";
      }
      mismatches.push_back(m);
    }
  }
  const double secs = seconds_since(t0);
  std::string detail = "k1..k4 = master words " + std::string(master_words ? "yes" : "no") + ", " +
                       std::to_string(mismatches.size()) + " mismatches";
  for (const auto& m : mismatches) detail += "; " + m;
  detail += "; " + fmt("%.3f s (limit 1 s)", secs);
  report(1, master_words && mismatches.empty() && secs < 1.0, detail);
}

void classical_attack() {
  const auto t0 = Clock::now();
  std::ostringstream out, err;
  const int code = run_cli({"attack", "run", "--width", "16", "--vectors", "paper", "--backend", "classical",
                            "--extra-pair"},
                           out, err);
  const double secs = seconds_since(t0);
  if (code != 0) {
    report(2, false, "attack exited " + std::to_string(code) + ": " + err.str());
    return;
  }
  const auto j = nlohmann::json::parse(out.str());
  const auto& rec = j["recovered"];
  const auto& claw = j["stages"][0];
  const bool chain = rec["K2_prime"] == "1169" && rec["K6"] == "FE40" && rec["K5"] == "05A9" &&
                     rec["K4"] == "E6C3" && rec["K1_xor_K3"] == "7360";
  const bool claw_cost = claw["backend"] == "sorted" && claw["queries"] == 2 * 65536;
  const bool verified = j["verified"].get<bool>();
  const bool data = j["data_complexity"] == 4;
  const bool unique = rec["uniqueness"] == "unique" && j["recovered_equals_hidden"].get<bool>();
  std::string detail = "(K2',K6)=(" + rec["K2_prime"].get<std::string>() + "," + rec["K6"].get<std::string>() +
                       ") K5=" + rec["K5"].get<std::string>() + " K4=" + rec["K4"].get<std::string>() +
                       " c*=" + rec["K1_xor_K3"].get<std::string>() + ", claw queries " + claw["queries"].dump() +
                       ", verified " + j["verified"].dump() + ", data complexity 3+1=" + j["data_complexity"].dump() +
                       ", K1 candidates " + rec["k1_candidates"].dump() + " (need 1, reported K1 " +
                       rec["K1"].get<std::string>() + ", recovered == printed keys " +
                       j["recovered_equals_hidden"].dump() + "), " + fmt("%.1f s (limit 60 s)", secs);
  report(2, chain && claw_cost && verified && data && unique && secs < 60.0, detail);
}

void grover_fidelity() {
  std::mt19937_64 rng(2026);
  double worst = 0;
  int instances = 0;
  for (; instances < 60; ++instances) {
    const unsigned bits = 1 + rng() % 12;
    const std::uint64_t n = std::uint64_t{1} << bits;
    const std::uint64_t m = 1 + rng() % std::min<std::uint64_t>(4, n);
    std::set<std::uint64_t> marked;
    while (marked.size() < m) marked.insert(rng() % n);
    const std::uint64_t r = rng() % (2 * grover_iterations(n, m) + 1);
    const auto run = grover_run_statevector<double>({n, [&](std::uint64_t x) { return marked.count(x) > 0; }, r, 0});
    worst = std::max(worst, std::abs(run.marked_probability - grover_success_prob(n, m, r)));
  }
  const auto small = grover_run_statevector<double>({4, [](std::uint64_t x) { return x == 1; }, 1, 0});
  report(3, worst <= 1e-9 && small.marked_probability == 1.0,
         std::to_string(instances) + " instances, max |p - closed form| = " + fmt("%.2e", worst) +
             " (tol 1e-9); N=4 M=1 R=1 gives " + fmt("%.17g", small.marked_probability) + " (need exactly 1)");
}

void walk_cross_validation() {
  double worst_diff = 0, worst_norm = 0;
  int runs = 0;
  for (std::uint64_t n : {4u, 6u, 8u, 10u}) {
    for (std::uint64_t r = 1; r < n && r <= 4; ++r) {
      for (std::uint64_t outer : {1u, 3u}) {
        const WalkParams p{r, r, walk_inner_steps(r), walk_inner_steps(r), outer};
        const auto st = ClawStructure::planted(n, static_cast<std::uint32_t>(n / 2), 1);
        const auto a = claw_walk_run<double>({st, p, WalkMode::full, 0, true});
        const auto b = claw_walk_run<double>({st, p, WalkMode::collapsed, 0, true});
        worst_diff = std::max(worst_diff, std::abs(a.success_prob - b.success_prob));
        worst_norm = std::max({worst_norm, a.max_norm_deviation, b.max_norm_deviation});
        ++runs;
      }
    }
  }
  report(4, worst_diff <= 1e-10 && worst_norm <= 1e-12,
         std::to_string(runs) + " runs over N in {4,6,8,10}, max |full - collapsed| = " + fmt("%.2e", worst_diff) +
             " (tol 1e-10), max norm deviation = " + fmt("%.2e", worst_norm) + " (tol 1e-12)");
}

void query_scaling() {
  const auto rows = scaling_rows(6, 12, WalkMode::collapsed, 1, 0);
  std::vector<double> n, q;
  bool ledger_law = !rows.empty();
  for (const auto& r : rows) {
    ledger_law &= r.skipped.empty() && r.queries == r.params.query_count();
    n.push_back(static_cast<double>(r.n));
    q.push_back(static_cast<double>(r.queries));
  }
  const double slope = loglog_slope(n, q);
  report(5, ledger_law && slope >= 0.60 && slope <= 0.75,
         "N=2^6..2^12 collapsed, slope " + fmt("%.4f", slope) + " (range [0.60, 0.75]), ledger law exact " +
             (ledger_law ? "yes" : "no"));
}

void k3_degeneracy() {
  const auto spec = FeistelSpec::simeck(8);
  const WordValue mask = spec.mask();
  bool degenerate = true;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = make_attack_instance(spec, seed);
    const auto& k = inst.keys;
    for (unsigned idx : {2u, 3u}) {
      const bool first = k3_check_paper(Word(0, 8), k[4], k[5], k[6], inst.pairs, idx, spec);
      for (WordValue k3 = 1; k3 <= mask; ++k3) {
        degenerate &= k3_check_paper(Word(k3, 8), k[4], k[5], k[6], inst.pairs, idx, spec) == first;
      }
    }
  }

  std::mt19937_64 rng(8);
  int invariant = 0, members = 0, separated = 0, trials = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto inst = make_attack_instance(spec, 5000 + i);
    const auto& k = inst.keys;
    const Word c = inst.pairs.constant_c;
    const Word k2p = DerivedKeys::from_keys(k[1], k[2], c, spec).k2_prime;
    Word k1;
    do k1 = Word(static_cast<WordValue>(rng() & mask), 8); while (k1 == k[1]);
    const SubkeySet member = family_member(k1, k[1] ^ k[3], k2p, k[4], k[5], k[6], c, spec);
    ++members;
    bool same = true;
    for (const auto& p : inst.pairs.pairs) same &= feistel_encrypt(p.plaintext, member, spec) == p.ciphertext;
    invariant += same;
    Block other;
    do {
      other = {Word(static_cast<WordValue>(rng() & mask), 8), Word(static_cast<WordValue>(rng() & mask), 8)};
    } while ((simeck_f(other.left, spec) ^ other.right) == c);
    ++trials;
    separated += feistel_encrypt(other, member, spec) != feistel_encrypt(other, k, spec);
  }
  const double sep = double(separated) / trials;
  report(6, degenerate && invariant == members && sep >= 0.99,
         std::string("w=8 K3 verdict constant over 256 values on 50 instances: ") + (degenerate ? "yes" : "no") +
             ", family invariance " + std::to_string(invariant) + "/" + std::to_string(members) +
             ", non-rule separation " + fmt("%.4f", sep) + " (need >= 0.99)");
}

void quantum_attack() {
  const auto spec = FeistelSpec::simeck(8);
  int equal = 0, walk_ran = 0;
  double ratio_sum = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = make_attack_instance(spec, seed);
    Backends ex;
    ex.claw = ClawBackend::exhaustive;
    Backends q;
    q.claw = ClawBackend::walk;
    q.search = SearchBackend::grover;
    q.walk_mode = WalkMode::collapsed;
    q.seed = seed;
    const auto a = run_asr_attack(inst.pairs, spec, ex);
    const auto b = run_asr_attack(inst.pairs, spec, q);
    equal += a.keys.subkeys == b.keys.subkeys;
    const auto* st = b.stats.stage("claw");
    if (st && st->success_prob && st->baseline_prob && *st->baseline_prob > 0) {
      ++walk_ran;
      ratio_sum += *st->success_prob / *st->baseline_prob;
    }
  }
  const double ratio = walk_ran ? ratio_sum / walk_ran : 0.0;
  report(7, equal == 50 && ratio >= 2.0,
         "w=8 walk+grover == exhaustive on " + std::to_string(equal) + "/50 instances, walk ran on " +
             std::to_string(walk_ran) + "/50 (others refused by the class guard and fell back), mean success/baseline " +
             fmt("%.3f", ratio) + " (need >= 2)");
}

void reduction_soundness() {
  std::mt19937_64 rng(88);
  int problems = 0, agree = 0;
  std::uint64_t claws = 0;
  for (unsigned u = 1; u <= 8; ++u) {
    for (unsigned eqs = 1; eqs <= 3; ++eqs) {
      for (int rep = 0; rep < 4; ++rep) {
        const unsigned v = std::max(1u, u / 2);
        std::uniform_int_distribution<std::uint32_t> val(0, (1u << v) - 1);
        std::vector<std::vector<std::uint32_t>> f(eqs), g(eqs);
        for (unsigned e = 0; e < eqs; ++e) {
          for (std::uint32_t x = 0; x < (1u << u); ++x) {
            f[e].push_back(val(rng));
            g[e].push_back(val(rng));
          }
        }
        const auto p = table_claw_problem(u, v, f, g);
        const auto simultaneous = find_claws_exhaustive(p);
        ++problems;
        agree += find_combined_claws_exhaustive(concat_multi(p)) == simultaneous;
        claws += simultaneous.size();
      }
    }
  }
  report(8, agree == problems,
         "u=1..8, 1-3 equations: combined == simultaneous on " + std::to_string(agree) + "/" +
             std::to_string(problems) + " problems (" + std::to_string(claws) + " claws)");
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void()>>> criteria{
      {1, worked_example}, {2, classical_attack}, {3, grover_fidelity},       {4, walk_cross_validation},
      {5, query_scaling},  {6, k3_degeneracy},    {7, quantum_attack},        {8, reduction_soundness}};
  for (const auto& [id, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      report(id, false, std::string("threw: ") + e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
