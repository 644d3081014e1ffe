// amqc: verification suites, word synthesis and schedule simulation from the
// command line. Reports are JSON on stdout.
//
// Exit codes: 0 pass, 1 failed check, 2 invalid arguments or input,
// 3 synthesis search exhausted.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amqc/amqc.hpp"

namespace {

using json = nlohmann::ordered_json;
constexpr int kSchemaVersion = 1;

enum Exit : int { kPass = 0, kFail = 1, kBadInput = 2, kExhausted = 3 };

json complex_matrix(const amqc::MatN& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

json complex_vector(const amqc::Vec2& v) { return {{v(0).real(), v(0).imag()}, {v(1).real(), v(1).imag()}}; }

json checks_json(const amqc::SuiteReport& r) {
  json out = json::array();
  for (const auto& c : r.checks) {
    out.push_back({{"name", c.name},
                   {"claim", c.claim},
                   {"residual", c.residual},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  return out;
}

json report_json(const std::string& command, const amqc::SuiteReport& r) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"suite", r.suite},
          {"pass", r.pass()},
          {"totals", {{"checks", r.checks.size()}, {"failed", r.failures()}}},
          {"checks", checks_json(r)},
          {"warnings", r.warnings}};
}

int emit(json doc, std::chrono::steady_clock::time_point start, int code) {
  doc["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << doc.dump(2) << '\n';
  return code;
}

int fail_input(const std::string& command, const std::string& message,
               std::chrono::steady_clock::time_point start) {
  std::cerr << "amqc " << command << ": " << message << '\n';
  return emit({{"schema_version", kSchemaVersion}, {"command", command}, {"pass", false}, {"error", message}},
              start, kBadInput);
}

// Splits on commas outside brackets and parentheses.
std::vector<std::string> split_gates(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

amqc::Mat2 one_qubit(const std::string& expr) {
  const amqc::MatN g = amqc::parse_gate(expr);
  if (g.rows() != 2) throw amqc::DimensionMismatch("'" + expr + "' is not a one-qubit gate");
  return g;
}

double default_tolerance() {
  if (const char* env = std::getenv("AMQC_TOL")) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used == std::string(env).size() && v > 0.0) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "amqc: ignoring invalid AMQC_TOL='" << env << "'\n";
  }
  return 1e-9;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

amqc::Schedule bundled_schedule(const std::string& name, int bit) {
  if (name == "fig1b") return amqc::single_qubit_schedule(bit);
  if (name == "fig2") {
    const amqc::GateWord word{std::vector<std::uint8_t>(7, 0), 0.0};
    return amqc::two_qubit_circuit(amqc::specific_k_instance(), word);
  }
  if (name == "fig3b") return amqc::entangling_schedule();
  if (name == "fig3c") return amqc::single_qubit_schedule_l(bit);
  throw std::invalid_argument("unknown schedule '" + name + "' (fig1b, fig2, fig3b, fig3c)");
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Minimal-control quantum computation: verification, synthesis and schedule simulation"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::uint64_t verify_seed = 0;
  int trials = 100;
  verify->add_option("suite", suite, "k, l, hamiltonian, appendix-a, endnote-a or all")
      ->required()
      ->check(CLI::IsMember(amqc::suite_names()));
  verify->add_option("--seed", verify_seed, "Random seed");
  verify->add_option("--trials", trials, "Random draws per check")->check(CLI::NonNegativeNumber);

  // synth
  auto* synth = app.add_subcommand("synth", "Find a generator word approximating a target");
  std::string gens = "T,HT";
  std::string target;
  double eps = 1e-10;
  int max_len = 48;
  std::uint64_t synth_seed = 0;
  synth->add_option("--gens", gens, "Two one-qubit gate expressions, comma separated");
  synth->add_option("--target", target, "Target gate expression, or 'random' for a Haar draw")->required();
  synth->add_option("--eps", eps, "Distance bound (up to global phase)");
  synth->add_option("--max-len", max_len, "Longest word to search")->check(CLI::Range(0, 62));
  synth->add_option("--seed", synth_seed, "Seed for --target random");

  // schedule
  auto* schedule = app.add_subcommand("schedule", "Simulate a schedule file and compare with a claimed gate");
  std::string sched_file;
  std::string claimed;
  double tol = default_tolerance();
  std::vector<std::string> interactions;
  schedule->add_option("file", sched_file, "Schedule file")->required();
  schedule->add_option("--claim", claimed, "Claimed register gate expression")->required();
  schedule->add_option("--tol", tol, "Distance tolerance (default from AMQC_TOL or 1e-9)");
  schedule->add_option("--interaction", interactions,
                       "NAME=EXPR two-qubit interaction (K and L are predefined)");

  // emit
  auto* emit_cmd = app.add_subcommand("emit", "Print a bundled schedule in text form");
  std::string emit_name;
  int emit_bit = 0;
  emit_cmd->add_option("name", emit_name, "fig1b, fig2, fig3b or fig3c")->required();
  emit_cmd->add_option("--bit", emit_bit, "Ancilla preparation for fig1b and fig3c")->check(CLI::Range(0, 1));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kBadInput;
  }

  if (*verify) {
    const amqc::SuiteReport r = amqc::run_suite(suite, {verify_seed, trials});
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    json doc = report_json("verify", r);
    doc["seed"] = verify_seed;
    doc["trials"] = trials;
    return emit(doc, start, r.pass() ? kPass : kFail);
  }

  if (*synth) {
    if (!(eps > 0.0)) return fail_input("synth", "--eps must be positive", start);
    amqc::Mat2 g0, g1, goal;
    try {
      const auto parts = split_gates(gens);
      if (parts.size() != 2) throw std::invalid_argument("--gens needs exactly two gates");
      g0 = one_qubit(parts[0]);
      g1 = one_qubit(parts[1]);
      if (target == "random") {
        amqc::Rng rng = amqc::derive_rng(synth_seed, 0);
        goal = amqc::haar_u2(rng);
      } else {
        goal = one_qubit(target);
      }
    } catch (const std::exception& e) {
      return fail_input("synth", e.what(), start);
    }
    const amqc::UniversalityReport diag = amqc::universality_diagnostic(g0, g1);
    json doc{{"schema_version", kSchemaVersion},
             {"command", "synth"},
             {"generators", split_gates(gens)},
             {"target", target},
             {"target_matrix", complex_matrix(goal)},
             {"epsilon", eps},
             {"max_len", max_len},
             {"universality", to_string(diag.verdict)}};
    try {
      const amqc::GateWord w = amqc::synthesize(g0, g1, goal, eps, max_len);
      // Recomputed independently of the search.
      const double check = amqc::dist_phase(amqc::word_product(g0, g1, w.bits), goal);
      doc["pass"] = check < eps;
      doc["word"] = amqc::word_string(w.bits);
      doc["length"] = w.length();
      doc["distance"] = check;
      return emit(doc, start, check < eps ? kPass : kFail);
    } catch (const amqc::SearchExhausted& e) {
      doc["pass"] = false;
      doc["error"] = e.what();
      return emit(doc, start, kExhausted);
    }
  }

  if (*schedule) {
    amqc::Schedule s;
    amqc::InteractionTable table{{"K", amqc::specific_k_instance().k}, {"L", amqc::sct_instance().l}};
    amqc::MatN claim;
    try {
      s = amqc::parse_schedule(read_file(sched_file));
      for (const auto& spec : interactions) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--interaction needs NAME=EXPR");
        const amqc::MatN g = amqc::parse_gate(spec.substr(eq + 1));
        if (g.rows() != 4) throw amqc::DimensionMismatch("interaction must be a two-qubit gate");
        table[spec.substr(0, eq)] = g;
      }
      claim = amqc::parse_gate(claimed);
      if (claim.rows() != (Eigen::Index{1} << s.register_size)) {
        throw amqc::DimensionMismatch("claimed gate does not match the register size");
      }
    } catch (const std::exception& e) {
      return fail_input("schedule", e.what(), start);
    }

    json doc{{"schema_version", kSchemaVersion}, {"command", "schedule"}, {"file", sched_file},
             {"claim", claimed},         {"tolerance", tol}};
    try {
      const amqc::RunReport rr = amqc::run(s, table);
      const double d = amqc::claim_distance(rr, claim);
      json exits = json::object();
      for (const auto& [id, chi] : rr.ancilla_exit_states) exits[id] = complex_vector(chi);
      doc["pass"] = d < tol;
      doc["distance"] = d;
      doc["register_unitary"] = complex_matrix(rr.register_unitary);
      doc["ancilla_exit_states"] = exits;
      doc["warnings"] = rr.warnings;
      return emit(doc, start, d < tol ? kPass : kFail);
    } catch (const amqc::ScheduleInvalid& e) {
      return fail_input("schedule", e.what(), start);
    } catch (const amqc::AncillaEntangledAtExit& e) {
      doc["pass"] = false;
      doc["error"] = e.what();
      doc["step"] = e.step();
      return emit(doc, start, kFail);
    }
  }

  if (*emit_cmd) {
    try {
      std::cout << amqc::to_text(bundled_schedule(emit_name, emit_bit));
    } catch (const std::exception& e) {
      std::cerr << "amqc emit: " << e.what() << '\n';
      return kBadInput;
    }
    return kPass;
  }
  return kBadInput;
}
