// Copyright 2026 The bqec Authors
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

// Command-line driver. Data goes to `out`, diagnostics to `err`.
// Exit codes: 0 ok, 1 usage, 2 invalid input or failed check, 3 internal inconsistency.

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bqec/bipartition.hpp"
#include "bqec/circuit.hpp"
#include "bqec/code_io.hpp"
#include "bqec/ft/exrec_sim.hpp"
#include "bqec/ft/threshold.hpp"
#include "bqec/synthesis.hpp"

namespace bqec::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalid = 2, kInconsistent = 3 };

/// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string code;
  std::string cut;
  std::string circuit;
  std::string variant;
  std::string input;
  std::string out;
  std::string format = "text";
  std::optional<double> p_gate;
  double p_start = 1e-4;
  double p_mem = 1e-5;
  std::optional<double> p_prep;
  std::optional<double> p_meas;
  double p_ebit = 0;
  double trials = 1e5;
  std::size_t points = 15;
  std::size_t bootstrap = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

inline std::string read_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw ValidationError("cannot read '" + path + "'");
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// A builtin name or a path to a stabilizer file.
inline StabilizerCode load_code(const std::string &source) {
  if (auto b = builtin_code(source)) {
    return *b;
  }
  std::ifstream probe(source);
  if (!probe) {
    throw ValidationError("'" + source + "' is neither a builtin code nor a readable file");
  }
  const std::string text = read_file(source);
  try {
    return parse_stabilizer(text);
  } catch (const ParseError &e) {
    throw ParseError(source + ": " + e.what(), e.line, e.column);
  }
}

/// "AABABBB" or a 1-origin list of Alice's qubits such as "1,2,4" or "{1,2,4}".
inline Bipartition load_cut(const std::string &s, std::size_t n) {
  Bipartition part;
  if (s.find_first_of("0123456789") == std::string::npos) {
    part = Bipartition::from_string(s);
  } else {
    std::vector<std::size_t> alice;
    std::string tok;
    for (char ch : s + ",") {
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        tok += ch;
      } else if (ch == ',' || ch == '{' || ch == '}' || ch == ' ') {
        if (!tok.empty()) {
          const std::size_t q = std::stoul(tok);
          if (q < 1 || q > n) {
            throw ValidationError("cut qubit " + tok + " outside 1.." + std::to_string(n));
          }
          alice.push_back(q - 1);
          tok.clear();
        }
      } else {
        throw ValidationError(std::string("unexpected character '") + ch + "' in cut");
      }
    }
    part = Bipartition::from_alice(n, alice);
  }
  if (part.n() != n) {
    throw DimensionError("cut has " + std::to_string(part.n()) + " qubits, code has " + std::to_string(n));
  }
  return part;
}

inline void require_format(const RunConfig &cfg, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed) {
    if (cfg.format == a) {
      return;
    }
  }
  std::string list;
  for (auto a : allowed) {
    list += (list.empty() ? "" : "|") + std::string(a);
  }
  throw UsageError("--format must be one of " + list);
}

inline std::uint64_t trial_count(double t) {
  if (!(t >= 1) || t != std::floor(t) || t > 1e15) {
    throw ValidationError("--trials must be a positive integer");
  }
  return static_cast<std::uint64_t>(t);
}

inline nlohmann::ordered_json strings(const std::vector<PauliOp> &ops) {
  auto j = nlohmann::ordered_json::array();
  for (const auto &p : ops) {
    j.push_back(p.str());
  }
  return j;
}

inline int cmd_analyze(const RunConfig &cfg, std::ostream &out) {
  require_format(cfg, {"text", "json"});
  const StabilizerCode code = load_code(cfg.code);
  const Bipartition part = load_cut(cfg.cut, code.n());
  const BipartiteParams p = compute_params(code, part);
  const BipartiteDecomposition d = decompose(code, part);
  const AuditReport audit = subgroup_size_audit(d, code, part);
  if (!audit.ok) {
    throw ConsistencyError("subgroup size audit failed: " + audit.violations.front());
  }
  std::string note;
  if (cfg.code == "g8_3_3" && part.str() == "AAAABBBB") {
    note = "this code is sometimes quoted as [[8,1,1,1;3]]; the four cross-cut generators form 2 ebit pairs, so c_AB = 2";
  }
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["label"] = p.label();
    j["n"] = p.n;
    j["k"] = code.k();
    j["k_a"] = p.k_a;
    j["k_b"] = p.k_b;
    j["k_ab"] = p.k_ab;
    j["c_ab"] = p.c_ab;
    j["cut"] = part.str();
    j["audit"] = {{"ok", audit.ok},
                  {"rank_h_a", audit.rank_h_a},
                  {"rank_h_b", audit.rank_h_b},
                  {"size_s_a", d.local_a.size()},
                  {"size_s_b", d.local_b.size()},
                  {"ebit_pairs", d.entanglement.size()},
                  {"nonlocal", d.nonlocal_info.size()}};
    if (!note.empty()) {
      j["note"] = note;
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << p.label() << "\n";
  out << "cut " << part.str() << "  n=" << p.n << " k=" << code.k() << " k_A=" << p.k_a << " k_B=" << p.k_b
      << " k_AB=" << p.k_ab << " c_AB=" << p.c_ab << "\n";
  out << "audit: rank H^A=" << audit.rank_h_a << " rank H^B=" << audit.rank_h_b << " |S^A|=" << d.local_a.size()
      << " |S^B|=" << d.local_b.size() << " ebit pairs=" << d.entanglement.size()
      << " nonlocal=" << d.nonlocal_info.size() << " ok\n";
  if (!note.empty()) {
    out << "note: " << note << "\n";
  }
  return kOk;
}

inline int cmd_decompose(const RunConfig &cfg, std::ostream &out) {
  require_format(cfg, {"text", "json"});
  const StabilizerCode code = load_code(cfg.code);
  const Bipartition part = load_cut(cfg.cut, code.n());
  const BipartiteDecomposition d = decompose(code, part);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["cut"] = part.str();
    j["entanglement"] = nlohmann::ordered_json::array();
    for (const auto &[g, h] : d.entanglement) {
      j["entanglement"].push_back({g.str(), h.str()});
    }
    j["nonlocal"] = strings(d.nonlocal_info);
    j["local_a"] = strings(d.local_a);
    j["local_b"] = strings(d.local_b);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "cut " << part.str() << "\n";
  out << "entanglement (" << d.entanglement.size() << " pairs)\n";
  for (const auto &[g, h] : d.entanglement) {
    out << "  " << g.str() << "  " << h.str() << "\n";
  }
  auto section = [&](const char *name, const std::vector<PauliOp> &ops) {
    out << name << " (" << ops.size() << ")\n";
    for (const auto &p : ops) {
      out << "  " << p.str() << "\n";
    }
  };
  section("nonlocal", d.nonlocal_info);
  section("local A", d.local_a);
  section("local B", d.local_b);
  return kOk;
}

inline Circuit synthesize_for(const StabilizerCode &code, const Bipartition &part) {
  return synthesize_local_encoder(decompose(code, part), part);
}

inline int cmd_synthesize(const RunConfig &cfg, std::ostream &out) {
  require_format(cfg, {"text"});
  const StabilizerCode code = load_code(cfg.code);
  const Bipartition part = load_cut(cfg.cut, code.n());
  out << serialize_circuit(synthesize_for(code, part));
  return kOk;
}

inline int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  require_format(cfg, {"text", "json"});
  const StabilizerCode code = load_code(cfg.code);
  const Bipartition part = load_cut(cfg.cut, code.n());
  Circuit enc;
  if (cfg.circuit.empty()) {
    enc = synthesize_for(code, part);
  } else {
    try {
      enc = parse_circuit(read_file(cfg.circuit), code.n());
    } catch (const ParseError &e) {
      throw ParseError(cfg.circuit + ": " + e.what(), e.line, e.column);
    }
  }
  const std::string msg = verify_encoder(code, part, enc);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["pass"] = msg.empty();
    j["message"] = msg;
    out << j.dump(2) << "\n";
  } else {
    out << (msg.empty() ? "PASS" : "FAIL") << "\n";
  }
  if (!msg.empty()) {
    err << "verify: " << msg << "\n";
    return kInvalid;
  }
  return kOk;
}

inline ft::SweepConfig sweep_config(const RunConfig &cfg) {
  ft::SweepConfig s;
  s.p_start = cfg.p_gate.value_or(cfg.p_start);
  s.points = cfg.p_gate ? 1 : cfg.points;
  s.p_mem = cfg.p_mem;
  s.p_prep = cfg.p_prep;
  s.p_meas = cfg.p_meas;
  s.p_ebit = cfg.p_ebit;
  s.trials = trial_count(cfg.trials);
  s.seed = cfg.seed;
  s.threads = cfg.threads;
  if (s.points == 0) {
    throw ValidationError("--points must be positive");
  }
  return s;
}

inline int cmd_simulate(const RunConfig &cfg, std::ostream &out) {
  require_format(cfg, {"csv", "json", "text"});
  const ft::ExRec ex = ft::build_cnot_exrec(ft::parse_variant(cfg.variant));
  const ft::SweepResult s = ft::run_sweep(ex, sweep_config(cfg));
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["variant"] = ft::variant_name(ex.variant);
    j["seed"] = cfg.seed;
    j["points"] = nlohmann::ordered_json::array();
    for (const auto &p : s.points) {
      const auto [lo, hi] = ft::wilson_interval(p.failures, p.trials);
      j["points"].push_back({{"p_gate", p.p_gate},
                             {"p_mem", p.p_mem},
                             {"trials", p.trials},
                             {"failures", p.failures},
                             {"fail_rate", p.rate()},
                             {"ci_low", lo},
                             {"ci_high", hi}});
    }
    out << j.dump(2) << "\n";
  } else {
    out << ft::sweep_to_csv(s);
  }
  return kOk;
}

inline int cmd_threshold(const RunConfig &cfg, std::ostream &out) {
  require_format(cfg, {"json", "text"});
  std::string text;
  if (cfg.input.empty() || cfg.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    text = read_file(cfg.input);
  }
  const ft::FitResult f = ft::fit_pseudothreshold(ft::sweep_from_csv(text), cfg.bootstrap, cfg.seed);
  if (cfg.format == "text") {
    out << "pseudothreshold " << ft::format_double(f.pseudothreshold) << " [" << ft::format_double(f.ci_low) << ", "
        << ft::format_double(f.ci_high) << "]\n"
        << "fit f = " << ft::format_double(f.fit_a) << " p^2 + " << ft::format_double(f.fit_b) << " p over "
        << f.points_used << " points\n";
  } else {
    out << ft::fit_to_json(f).dump(2) << "\n";
  }
  return kOk;
}

inline int cmd_malignant(const RunConfig &cfg, std::ostream &out) {
  require_format(cfg, {"text", "json"});
  const ft::ExRec ex = ft::build_cnot_exrec(ft::parse_variant(cfg.variant));
  const ft::MalignantReport r = ft::count_malignant_pairs(ex, cfg.threads);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["variant"] = ft::variant_name(ex.variant);
    j["malignant_pairs"] = r.malignant;
    j["pairs"] = r.pairs;
    j["cnot_locations"] = r.locations;
    out << j.dump(2) << "\n";
  } else {
    out << ft::variant_name(ex.variant) << ": " << r.malignant << " malignant of " << r.pairs << " CNOT pairs ("
        << r.locations << " CNOT locations)\n";
  }
  return kOk;
}

/// Parses argv and dispatches. Never throws.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Bipartite stabilizer codes, local encoders and extended-rectangle simulation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_code = [&](CLI::App *c) {
    c->add_option("--code", cfg.code, "Stabilizer file or builtin (steane, g8_3_3, five_one_three, ebit)")
        ->required();
    c->add_option("--cut", cfg.cut, "Owner string such as AABABBB, or Alice's qubits such as 1,2,4")->required();
  };
  auto add_common = [&](CLI::App *c) {
    c->add_option("--out", cfg.out, "Write data here instead of standard output");
    c->add_option("--format", cfg.format, "text, json or csv");
  };
  auto add_noise = [&](CLI::App *c) {
    c->add_option("--variant", cfg.variant, "baseline or 3ea")->required();
    c->add_option("--threads", cfg.threads, "Worker threads, 0 for all cores");
  };

  auto *analyze = app.add_subcommand("analyze", "Bipartite parameters [[n,k_A,k_B,k_AB;c_AB]]");
  add_code(analyze);
  add_common(analyze);
  auto *decomp = app.add_subcommand("decompose", "Split the stabilizer into ebit, nonlocal and local parts");
  add_code(decomp);
  add_common(decomp);
  auto *synth = app.add_subcommand("synthesize", "Write a party-local encoding circuit");
  add_code(synth);
  add_common(synth);
  auto *verify = app.add_subcommand("verify", "Check that an encoder produces the code");
  add_code(verify);
  add_common(verify);
  verify->add_option("--circuit", cfg.circuit, "Circuit file; synthesized when omitted");

  auto *simulate = app.add_subcommand("simulate", "Monte Carlo failure rates of the CNOT extended rectangle");
  add_noise(simulate);
  add_common(simulate);
  simulate->add_option("--pgate", cfg.p_gate, "Single gate error rate instead of a sweep");
  simulate->add_option("--pstart", cfg.p_start, "First gate error rate of the sweep");
  simulate->add_option("--points", cfg.points, "Sweep points, 20 per decade");
  simulate->add_option("--pmem", cfg.p_mem, "Memory error rate");
  simulate->add_option("--pprep", cfg.p_prep, "Preparation error rate (default: gate rate)");
  simulate->add_option("--pmeas", cfg.p_meas, "Measurement error rate (default: gate rate)");
  simulate->add_option("--pebit", cfg.p_ebit, "Ebit preparation error rate");
  simulate->add_option("--trials", cfg.trials, "Trials per point");
  simulate->add_option("--seed", cfg.seed, "Master seed");

  auto *threshold = app.add_subcommand("threshold", "Fit a pseudothreshold to a sweep CSV");
  add_common(threshold);
  threshold->add_option("input", cfg.input, "Sweep CSV, standard input when omitted or '-'");
  threshold->add_option("--bootstrap", cfg.bootstrap, "Bootstrap replicates");
  threshold->add_option("--seed", cfg.seed, "Bootstrap seed");

  auto *malignant = app.add_subcommand("malignant", "Count malignant CNOT location pairs");
  add_noise(malignant);
  add_common(malignant);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  std::ostringstream buf;
  const bool to_file = !cfg.out.empty();
  std::ostream &sink = to_file ? static_cast<std::ostream &>(buf) : out;
  int code = kOk;
  try {
    if (*simulate && cfg.format == "text") {
      cfg.format = "csv";
    }
    if (*threshold && cfg.format == "text" && threshold->count("--format") == 0) {
      cfg.format = "json";
    }
    if (*analyze) {
      code = cmd_analyze(cfg, sink);
    } else if (*decomp) {
      code = cmd_decompose(cfg, sink);
    } else if (*synth) {
      code = cmd_synthesize(cfg, sink);
    } else if (*verify) {
      code = cmd_verify(cfg, sink, err);
    } else if (*simulate) {
      code = cmd_simulate(cfg, sink);
    } else if (*threshold) {
      code = cmd_threshold(cfg, sink);
    } else if (*malignant) {
      code = cmd_malignant(cfg, sink);
    }
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConsistencyError &e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kInconsistent;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  if (to_file) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!(f << buf.str())) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kInvalid;
    }
  }
  return code;
}

}  // namespace bqec::cli
