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


#include "asrq/harness.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "asrq/errors.hpp"
#include "asrq/grover.hpp"
#include "asrq/pipeline.hpp"
#include "asrq/reference_vectors.hpp"
#include "asrq/rng.hpp"

namespace asrq {

namespace {

struct SpecOptions {
  unsigned width = 16;
  unsigned rounds = 6;
  std::string round_function = "simeck";
  std::uint64_t table_seed = 0;

  void add_to(CLI::App* app, bool with_rounds = true) {
    app->add_option("--width", width, "Word width in bits (3..16)");
    if (with_rounds) app->add_option("--rounds", rounds, "Round count");
    app->add_option("--round-function", round_function, "simeck or table")
        ->check(CLI::IsMember({"simeck", "table"}));
    app->add_option("--table-seed", table_seed, "Seed for table round functions");
  }

  FeistelSpec build() const {
    if (round_function == "table") return FeistelSpec::random_tables(width, rounds, table_seed);
    return FeistelSpec::simeck(width, rounds);
  }
};

std::uint32_t z_sequence_from(const std::string& name) {
  return name == "zero" ? 0u : kSimeckZ0;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

void emit(const nlohmann::json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParameterError("cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

nlohmann::json keys_json(const SubkeySet& ks) {
  nlohmann::json a = nlohmann::json::array();
  for (const Word& k : ks.keys) a.push_back(format_word(k));
  return a;
}

// --- cipher / keyschedule ---------------------------------------------------

struct CipherCmd {
  std::string op;
  std::string master;
  std::string subkeys;
  std::string block;
  std::string round_constants = "simeck";
  SpecOptions spec;

  void run(std::ostream& out) const {
    const FeistelSpec s = spec.build();
    SubkeySet ks;
    if (!master.empty()) {
      ks = simeck_key_schedule(parse_master_key(master, s.word_width()), s.rounds(), s,
                               z_sequence_from(round_constants));
    } else {
      ks = parse_subkeys(subkeys, s.word_width());
      if (ks.size() != s.rounds()) throw ParameterError("need one subkey per round");
    }
    const Block b = parse_block(block, s.word_width());
    out << format_block(op == "enc" ? feistel_encrypt(b, ks, s) : feistel_decrypt(b, ks, s)) << "\n";
  }
};

struct KeyScheduleCmd {
  std::string master;
  std::string round_constants = "simeck";
  SpecOptions spec;

  void run(std::ostream& out) const {
    const FeistelSpec s = spec.build();
    const MasterKey mk = parse_master_key(master, s.word_width());
    const SubkeySet ks = simeck_key_schedule(mk, s.rounds(), s, z_sequence_from(round_constants));
    nlohmann::json j = key_schedule_json(s, mk, ks);
    j["round_constants"] = round_constants;
    out << j.dump(2) << "\n";
  }
};

// --- attack -------------------------------------------------------------------

struct AttackCmd {
  SpecOptions spec;
  std::string vectors = "random";
  std::string pairs_file;
  std::uint64_t seed = 0;
  std::string backend = "classical";
  std::string search_backend = "exhaustive";
  std::string walk_mode = "collapsed";
  bool extra_pair = false;
  std::string constant;
  unsigned retries = 5;
  unsigned outer_multiplier = 1;
  bool first_solution = false;
  bool literal_k3 = false;
  bool timing = false;
  std::string out_path;

  void run(std::ostream& out) const {
    const FeistelSpec s = spec.build();
    const unsigned w = s.word_width();
    Backends b;
    b.claw = parse_claw_backend(backend);
    b.search = parse_search_backend(search_backend);
    b.walk_mode = walk_mode == "full" ? WalkMode::full : WalkMode::collapsed;
    b.seed = seed;
    b.retries = retries;
    b.outer_multiplier = outer_multiplier;
    b.first_solution = first_solution;
    b.literal_k3 = literal_k3;

    ChosenPairSet set;
    nlohmann::json meta;
    std::optional<SubkeySet> hidden;
    if (!pairs_file.empty()) {
      std::ifstream f(pairs_file);
      if (!f) throw ParseError("cannot read pair file '" + pairs_file + "'");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(f);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError("pair file: " + std::string(e.what()));
      }
      set = pair_set_from_json(j, w);
      meta["vectors"] = "file";
    } else if (vectors == "paper") {
      if (w != 16 || s.kind() != RoundFunctionKind::simeck || s.rounds() != 6) {
        throw ParameterError("the reference vectors are Simeck32/64 with 6 rounds (--width 16)");
      }
      const ReferenceVectors rv = reference_vectors(extra_pair);
      set = rv.pairs;
      hidden = rv.subkeys;
      meta["vectors"] = "paper";
      meta["provenance"] = provenance_note();
      nlohmann::json errata = nlohmann::json::array();
      for (const auto& e : rv.errata) {
        errata.push_back({{"entry", e.entry}, {"printed", e.printed}, {"derived", e.derived}, {"reason", e.reason}});
      }
      meta["errata"] = errata;
    } else {
      InstanceOptions opts;
      opts.extra_pair = extra_pair;
      if (!constant.empty()) opts.constant_c = parse_word(constant, w);
      const AttackInstance inst = make_attack_instance(s, seed, opts);
      set = inst.pairs;
      hidden = inst.keys;
      meta["vectors"] = "random";
    }

    const AttackResult r = run_asr_attack(set, s, b);
    nlohmann::json j = attack_report_json(s, set, b, r, timing);
    for (auto it = meta.begin(); it != meta.end(); ++it) j[it.key()] = it.value();
    if (hidden) {
      j["hidden_subkeys"] = keys_json(*hidden);
      j["recovered_equals_hidden"] = r.keys.subkeys == *hidden;
    }
    emit(j, out_path, out);
  }
};

// --- simulators ---------------------------------------------------------------

struct GroverCmd {
  unsigned bits = 8;
  std::vector<std::uint64_t> marked;
  std::uint64_t marked_count = 1;
  std::optional<std::uint64_t> iterations;
  std::uint64_t seed = 0;
  bool complex = false;

  void run(std::ostream& out) const {
    if (bits < 1 || bits > 40) throw ParameterError("--bits must be in 1..40");
    const std::uint64_t n = std::uint64_t{1} << bits;
    std::set<std::uint64_t> m(marked.begin(), marked.end());
    if (m.empty()) {
      if (marked_count < 1 || marked_count > n) throw ParameterError("--m must be in 1..N");
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
      while (m.size() < marked_count) m.insert(pick(rng));
    }
    for (auto x : m) {
      if (x >= n) throw ParameterError("marked index outside the domain");
    }
    auto pred = [&m](std::uint64_t x) { return m.count(x) != 0; };
    const std::uint64_t r = iterations ? *iterations : grover_iterations(n, m.size());
    const double closed = grover_success_prob(n, m.size(), r);
    nlohmann::json j{{"n", n}, {"marked", m.size()}, {"iterations", r}, {"closed_form_prob", closed}};
    if (n <= kGroverStatevectorMax) {
      GroverInstance inst{n, pred, r, seed};
      double p = 0, dev = 0;
      std::uint64_t q = 0;
      if (complex) {
        auto run = grover_run_statevector<std::complex<double>>(inst);
        p = run.marked_probability, dev = run.max_norm_deviation, q = run.ledger.oracle_queries();
      } else {
        auto run = grover_run_statevector<double>(inst);
        p = run.marked_probability, dev = run.max_norm_deviation, q = run.ledger.oracle_queries();
      }
      j["statevector_prob"] = p;
      j["abs_diff"] = std::abs(p - closed);
      j["max_norm_deviation"] = dev;
      j["queries"] = q;
    } else {
      j["statevector_prob"] = nullptr;
      j["queries"] = r;
    }
    const GroverSample smp = grover_sample(pred, n, seed, r);
    j["sample"] = {{"index", smp.index}, {"marked", pred(smp.index)}, {"statevector", smp.statevector}};
    j["scalar"] = complex ? "complex" : "real";
    out << j.dump(2) << "\n";
  }
};

struct ClawWalkCmd {
  std::uint64_t n = 8;
  std::vector<std::uint32_t> planted;
  bool claw_free = false;
  std::string mode = "collapsed";
  std::optional<std::uint64_t> r1, r2, t1, t2, outer;
  unsigned outer_multiplier = 1;
  std::uint64_t seed = 0;
  bool complex = false;

  void run(std::ostream& out) const {
    ClawStructure st;
    if (claw_free) {
      st = ClawStructure::claw_free(n);
    } else if (planted.size() == 2) {
      st = ClawStructure::planted(n, planted[0], planted[1]);
    } else if (planted.empty()) {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
      const std::uint32_t j1 = pick(rng);
      st = ClawStructure::planted(n, j1, pick(rng));
    } else {
      throw ParameterError("--planted takes two indices");
    }
    WalkParams p = clamp_walk_params(walk_params(n, n, outer_multiplier), n, n);
    if (r1) p.r1 = *r1, p.t1 = walk_inner_steps(*r1);
    if (r2) p.r2 = *r2, p.t2 = walk_inner_steps(*r2);
    if (t1) p.t1 = *t1;
    if (t2) p.t2 = *t2;
    if (outer) p.outer_reps = *outer;
    if (p.r1 < 1 || p.r1 >= n || p.r2 < 1 || p.r2 >= n) throw ParameterError("subset sizes must lie in 1..N-1");
    WalkInstance inst{st, p, mode == "full" ? WalkMode::full : WalkMode::collapsed, seed, true};
    const WalkRun r = complex ? claw_walk_run<std::complex<double>>(inst) : claw_walk_run<double>(inst);
    nlohmann::json claws = nlohmann::json::array();
    for (const Claw& c : r.outcome.claws) claws.push_back({c.x1, c.x2});
    nlohmann::json j{
        {"n", n},
        {"mode", to_string(r.mode)},
        {"claws_planted", st.claw_count()},
        {"params",
         {{"r1", p.r1}, {"r2", p.r2}, {"t1", p.t1}, {"t2", p.t2}, {"outer_reps", p.outer_reps}}},
        {"queries", r.ledger.oracle_queries()},
        {"ledger_law", p.query_count()},
        {"success_prob", r.success_prob},
        {"baseline_prob", r.baseline_prob},
        {"dim1", r.dim1},
        {"dim2", r.dim2},
        {"max_norm_deviation", r.max_norm_deviation},
        {"outcome", {{"marked", r.outcome.marked}, {"claws", claws}}},
        {"scalar", complex ? "complex" : "real"},
    };
    if (r.baseline_prob > 0) j["ratio_to_baseline"] = r.success_prob / r.baseline_prob;
    out << j.dump(2) << "\n";
  }
};

struct ScalingCmd {
  unsigned min_bits = 6;
  unsigned max_bits = 12;
  std::string mode = "collapsed";
  unsigned outer_multiplier = 1;
  std::uint64_t seed = 0;
  std::string out_path;

  void run(std::ostream& out) const {
    const auto rows =
        scaling_rows(min_bits, max_bits, mode == "full" ? WalkMode::full : WalkMode::collapsed, outer_multiplier, seed);
    const std::string csv = scaling_csv(rows);
    if (out_path.empty()) {
      out << csv;
    } else {
      std::ofstream f(out_path);
      if (!f) throw ParameterError("cannot write '" + out_path + "'");
      f << csv;
    }
  }
};

// --- selftest -------------------------------------------------------------------

bool selftest(std::ostream& out) {
  std::vector<std::pair<std::string, bool>> checks;
  auto check = [&](const std::string& name, auto&& fn) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    checks.emplace_back(name, ok);
  };
  check("worked example row 1 encrypts", [] {
    const auto rv = reference_vectors(false);
    return feistel_encrypt(rv.pairs.pair(1).plaintext, rv.subkeys, rv.spec) == parse_block("BE3A|8ECF", 16);
  });
  check("key schedule starts with the master words", [] {
    const auto spec = FeistelSpec::simeck(16);
    const auto mk = parse_master_key("B0AEC7E9C3CEE6C3", 16);
    const auto ks = simeck_key_schedule(mk, 6, spec);
    return ks[1] == mk[0] && ks[2] == mk[1] && ks[3] == mk[2] && ks[4] == mk[3];
  });
  check("grover N=4 M=1 R=1 is certain", [] {
    auto run = grover_run_statevector<double>({4, [](std::uint64_t x) { return x == 3; }, 1, 0});
    return std::abs(run.marked_probability - 1.0) < 1e-12;
  });
  check("walk full and collapsed agree at N=6", [] {
    const WalkParams p{2, 2, 2, 2, 3};
    const auto st = ClawStructure::planted(6, 1, 4);
    const auto a = claw_walk_run<double>({st, p, WalkMode::full, 0, true});
    const auto b = claw_walk_run<double>({st, p, WalkMode::collapsed, 0, true});
    return std::abs(a.success_prob - b.success_prob) < 1e-10 && a.ledger.oracle_queries() == p.query_count();
  });
  check("toy claw table", [] {
    const auto p = table_claw_problem(2, 3, {{5, 1, 7, 2}}, {{4, 7, 0, 6}});
    return find_claws_exhaustive(p) == std::vector<Claw>{{2, 1}};
  });
  check("w=8 attack recovers a verified key", [] {
    const auto spec = FeistelSpec::simeck(8);
    const auto inst = make_attack_instance(spec, 1);
    const auto r = run_asr_attack(inst.pairs, spec, Backends{});
    return r.verified && verify_pairs(r.keys.subkeys, inst.pairs, spec);
  });
  bool all = true;
  for (const auto& [name, ok] : checks) {
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    all = all && ok;
  }
  return all;
}

}  // namespace

std::vector<ScalingRow> scaling_rows(unsigned min_bits, unsigned max_bits, WalkMode mode, unsigned outer_multiplier,
                                     std::uint64_t seed) {
  std::vector<ScalingRow> rows;
  for (unsigned bits = min_bits; bits <= max_bits && min_bits <= max_bits; ++bits) {
    if (bits < 1 || bits > 31) throw ParameterError("scaling bits must be in 1..31");
    ScalingRow row;
    row.n = std::uint64_t{1} << bits;
    row.mode = mode;
    row.classical_queries = 2 * row.n;
    try {
      row.params = clamp_walk_params(walk_params(row.n, row.n, outer_multiplier), row.n, row.n);
      std::mt19937_64 rng(child_seed(seed, bits));
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(row.n - 1));
      const std::uint32_t j1 = pick(rng);
      const auto st = ClawStructure::planted(row.n, j1, pick(rng));
      const WalkRun r = claw_walk_run<double>({st, row.params, mode, child_seed(seed, bits), false});
      row.queries = r.ledger.oracle_queries();
      row.success_prob = r.success_prob;
      row.baseline_prob = r.baseline_prob;
    } catch (const CapacityError& e) {
      row.skipped = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream os;
  os << "N,r,t1,t2,outer_reps,queries,success_prob,mode,classical_queries,note\n";
  for (const auto& r : rows) {
    os << r.n << ",";
    if (r.skipped.empty()) {
      os << r.params.r1 << "," << r.params.t1 << "," << r.params.t2 << "," << r.params.outer_reps << ","
         << r.queries << "," << fmt_double(r.success_prob) << ",";
    } else {
      os << ",,,,,,";
    }
    os << to_string(r.mode) << "," << r.classical_queries << ",";
    if (!r.skipped.empty()) os << "\"skipped: " << r.skipped << "\"";
    os << "\n";
  }
  return os.str();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feistel-2* all-subkeys-recovery toolkit with quantum-algorithm simulators", "asrq"};
  app.require_subcommand(1);

  CipherCmd cipher;
  auto* c = app.add_subcommand("cipher", "Encrypt or decrypt one block");
  c->add_option("op", cipher.op, "enc or dec")->required()->check(CLI::IsMember({"enc", "dec"}));
  auto* cm = c->add_option("--master", cipher.master, "Master key (k0 t0 t1 t2), hex");
  c->add_option("--subkeys", cipher.subkeys, "Comma-separated round keys, hex")->excludes(cm);
  c->add_option("--block", cipher.block, "Block as L|R in hex")->required();
  c->add_option("--round-constants", cipher.round_constants, "simeck or zero")
      ->check(CLI::IsMember({"simeck", "zero"}));
  cipher.spec.add_to(c);

  KeyScheduleCmd ksc;
  auto* k = app.add_subcommand("keyschedule", "Expand a master key");
  k->add_option("--master", ksc.master, "Master key (k0 t0 t1 t2), hex")->required();
  k->add_option("--round-constants", ksc.round_constants, "simeck or zero")->check(CLI::IsMember({"simeck", "zero"}));
  ksc.spec.add_to(k);

  AttackCmd atk;
  auto* a = app.add_subcommand("attack", "Key recovery");
  a->require_subcommand(1);
  auto* ar = a->add_subcommand("run", "Run the attack pipeline and print a JSON report");
  atk.spec.add_to(ar, false);
  ar->add_option("--vectors", atk.vectors, "paper or random")->check(CLI::IsMember({"paper", "random"}));
  ar->add_option("--pairs", atk.pairs_file, "JSON pair set instead of generated vectors");
  ar->add_option("--seed", atk.seed, "Seed for the hidden key and the simulators");
  ar->add_option("--backend", atk.backend, "Claw stage: classical, exhaustive or walk-sim")
      ->check(CLI::IsMember({"classical", "sorted", "exhaustive", "walk-sim", "walk"}));
  ar->add_option("--search-backend", atk.search_backend, "K5/K4/K1 stages: exhaustive or grover-sim")
      ->check(CLI::IsMember({"exhaustive", "classical", "grover-sim", "grover"}));
  ar->add_option("--walk-mode", atk.walk_mode, "collapsed or full")->check(CLI::IsMember({"collapsed", "full"}));
  ar->add_flag("--extra-pair", atk.extra_pair, "Add one pair that breaks the chosen-plaintext rule");
  ar->add_option("--constant", atk.constant, "Chosen-plaintext constant C, hex");
  ar->add_option("--retries", atk.retries, "Fresh-seed reruns for quantum stages");
  ar->add_option("--outer-multiplier", atk.outer_multiplier, "Scale the walk's outer repetitions");
  ar->add_flag("--first-solution", atk.first_solution, "Stop at the first verified key chain");
  ar->add_flag("--literal-k3", atk.literal_k3, "Also sweep the literal K3 check over every K3");
  ar->add_flag("--timing", atk.timing, "Include wall time (reports are no longer byte-identical)");
  ar->add_option("--out", atk.out_path, "Write the report here instead of stdout");

  GroverCmd gr;
  auto* g = app.add_subcommand("sim-grover", "Grover statevector against the closed form");
  g->add_option("--bits", gr.bits, "Domain size N = 2^bits");
  auto* gm = g->add_option("--marked", gr.marked, "Marked indices");
  g->add_option("--m", gr.marked_count, "Number of random marked indices")->excludes(gm);
  g->add_option("--iterations", gr.iterations, "Override R");
  g->add_option("--seed", gr.seed, "Seed");
  g->add_flag("--complex", gr.complex, "Complex amplitudes");

  ClawWalkCmd cw;
  auto* w = app.add_subcommand("sim-clawwalk", "Two-sided Johnson walk on a planted claw");
  w->add_option("--n", cw.n, "Side size N")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 31));
  auto* wp = w->add_option("--planted", cw.planted, "Claw location j1 j2 (random when omitted)")->expected(2);
  w->add_flag("--claw-free", cw.claw_free, "No claw at all")->excludes(wp);
  w->add_option("--mode", cw.mode, "collapsed or full")->check(CLI::IsMember({"collapsed", "full"}));
  w->add_option("--r1", cw.r1);
  w->add_option("--r2", cw.r2);
  w->add_option("--t1", cw.t1);
  w->add_option("--t2", cw.t2);
  w->add_option("--outer", cw.outer);
  w->add_option("--outer-multiplier", cw.outer_multiplier);
  w->add_option("--seed", cw.seed);
  w->add_flag("--complex", cw.complex, "Complex amplitudes");

  ScalingCmd sc;
  auto* s = app.add_subcommand("scaling", "Walk query counts over N = 2^min..2^max as CSV");
  s->add_option("--min-bits", sc.min_bits);
  s->add_option("--max-bits", sc.max_bits);
  s->add_option("--mode", sc.mode)->check(CLI::IsMember({"collapsed", "full"}));
  s->add_option("--outer-multiplier", sc.outer_multiplier);
  s->add_option("--seed", sc.seed);
  s->add_option("--out", sc.out_path);

  auto* st = app.add_subcommand("selftest", "Quick end-to-end checks");

  std::vector<const char*> argv{"asrq"};
  for (const auto& x : args) argv.push_back(x.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (c->parsed()) {
      if (cipher.master.empty() && cipher.subkeys.empty()) throw ParameterError("need --master or --subkeys");
      cipher.run(out);
    } else if (k->parsed()) {
      ksc.run(out);
    } else if (ar->parsed()) {
      atk.run(out);
    } else if (g->parsed()) {
      gr.run(out);
    } else if (w->parsed()) {
      cw.run(out);
    } else if (s->parsed()) {
      sc.run(out);
    } else if (st->parsed()) {
      return selftest(out) ? kExitOk : kExitVerification;
    }
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const CapacityError& e) {
    err << "capacity guard: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace asrq
