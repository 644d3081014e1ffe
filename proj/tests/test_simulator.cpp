#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "amqc/gates.hpp"
#include "amqc/model_k.hpp"
#include "amqc/model_l.hpp"
#include "amqc/random.hpp"
#include "amqc/schedule.hpp"
#include "amqc/simulator.hpp"

using namespace amqc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string schedule_path(const std::string& name) {
  return std::string(AMQC_SOURCE_DIR) + "/data/schedules/" + name;
}

int parse_error_line(std::string_view text) {
  try {
    parse_schedule(text);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Text format

TEST_CASE("schedule text round trip") {
  Schedule s;
  s.register_size = 3;
  s.prep("a", 0).interact("K", 2, "a").prep("b_1", 1).interact("L", 0, "b_1").interact("K", 1, "a");
  const std::string text = to_text(s);
  CHECK(text == "REGISTER 3\nPREP a 0\nINT K 2 a\nPREP b_1 1\nINT L 0 b_1\nINT K 1 a\n");
  const Schedule back = parse_schedule(text);
  CHECK(back == s);
  CHECK(to_text(back) == text);
}

TEST_CASE("parser accepts comments, blank lines and implicit register size") {
  const Schedule s = parse_schedule("# header\n\nPREP a 1   # trailing\n  INT K 1 a\n");
  CHECK(s.register_size == 2);
  CHECK(s.ancilla_preps().at("a") == 1);
  CHECK(s.interaction_count() == 1);
  CHECK(parse_schedule("").register_size == 0);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("PREP a 0\nINT K 0 b\n") == 2);
  CHECK(parse_error_line("PREP a 0\nPREP a 1\n") == 2);
  CHECK(parse_error_line("PREP a 2\n") == 1);
  CHECK(parse_error_line("PREP a\n") == 1);
  CHECK(parse_error_line("\n\nFOO 1 2\n") == 3);
  CHECK(parse_error_line("PREP a 0\nINT K x a\n") == 2);
  CHECK(parse_error_line("PREP a 0\nINT K -1 a\n") == 2);
  CHECK(parse_error_line("REGISTER 1\nPREP a 0\nINT K 1 a\n") == 3);
  CHECK(parse_error_line("PREP a 0\nREGISTER 2\n") == 2);
  CHECK(parse_error_line("REGISTER 99\n") == 1);
  CHECK(parse_error_line("PREP a! 0\n") == 1);
  CHECK(parse_error_line("PREP a 0 extra\n") == 1);
  try {
    parse_schedule("PREP a 0\nINT K 0 b\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("line 2:", 0) == 0);
  }
}

TEST_CASE("validate rejects malformed programmatic schedules") {
  Schedule s;
  s.register_size = 1;
  s.interact("K", 0, "a");
  CHECK_THROWS_AS(s.validate(), ScheduleInvalid);
  Schedule t;
  t.register_size = 1;
  t.prep("a", 0).prep("a", 0);
  CHECK_THROWS_AS(t.validate(), ScheduleInvalid);
  Schedule u;
  u.register_size = 1;
  u.prep("a", 0).interact("K", 1, "a");
  CHECK_THROWS_AS(run(u, {{"K", cz()}}), ScheduleInvalid);
}

// ---------------------------------------------------------------------------
// Simulation

TEST_CASE("empty schedule is the identity") {
  Schedule s;
  s.register_size = 2;
  const RunReport r = run(s, {});
  CHECK((r.register_unitary - MatN::Identity(4, 4)).norm() == 0.0);
  CHECK(r.ancilla_exit_states.empty());
}

TEST_CASE("unknown interactions and bad initial states are rejected") {
  const Schedule s = single_qubit_schedule(0);
  CHECK_THROWS_AS(run(s, {}), ScheduleInvalid);
  CHECK_THROWS_AS(run(s, {{"K", Mat4::Ones()}}), NonUnitaryArgument);
  RunOptions o;
  o.initial_states["zz"] = Vec2(1, 0);
  CHECK_THROWS_AS(run(s, {{"K", cz()}}, o), ScheduleInvalid);
  RunOptions p;
  p.initial_states["a"] = Vec2(1, 1);
  CHECK_THROWS_AS(run(s, {{"K", cz()}}, p), ScheduleInvalid);
}

TEST_CASE("ancilla-controlled gates compose on a multi-qubit register") {
  // C(u0, u1) controlled by the ancilla (second slot) leaves the ancilla in
  // its basis state and applies u_bit, so the register operator is a known
  // product of single-qubit gates.
  Rng rng = derive_rng(60, 0);
  for (int t = 0; t < 10; ++t) {
    const Mat2 u0 = haar_u2(rng);
    const Mat2 u1 = haar_u2(rng);
    const int n = 3;
    Schedule s;
    s.register_size = n;
    MatN oracle = MatN::Identity(8, 8);
    std::uniform_int_distribution<int> q(0, n - 1), b(0, 1);
    for (int step = 0; step < 12; ++step) {
      const std::string id = "a" + std::to_string(step % 4) + "_" + std::to_string(step / 4);
      const int bit = b(rng);
      const int qubit = q(rng);
      s.prep(id, bit).interact("C", qubit, id);
      // Dense oracle: I (x) ... (x) u_bit (x) ... with qubit label -> slot n-1-label.
      MatN layer = MatN::Identity(1, 1);
      for (int slot = 0; slot < n; ++slot) {
        const Mat2 g = (slot == n - 1 - qubit) ? (bit ? u1 : u0) : identity2();
        layer = kron(layer, g);
      }
      oracle = layer * oracle;
    }
    const RunReport r = run(s, {{"C", controlled(u0, u1, Slot::second)}});
    CHECK((r.register_unitary - oracle).norm() < 1e-12);
    CHECK(r.max_norm_drift < 1e-12);
    CHECK(r.warnings.empty());
    for (const auto& [id, bit] : s.ancilla_preps()) {
      CHECK(std::abs(std::abs(r.ancilla_exit_states.at(id)(bit)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("single K with a basis ancilla") {
  const KInteraction k = specific_k_instance();
  for (int bit : {0, 1}) {
    const RunReport r = run(single_qubit_schedule(bit), {{"K", k.k}});
    CHECK(verify_against(r, bit ? k.u1 : k.u0, 1e-10));
    Vec2 anc = Vec2::Zero();
    anc(bit) = 1.0;
    CHECK(dist_phase(r.ancilla_exit_states.at("a"), Vec2(hadamard() * anc)) < 1e-12);
  }
}

TEST_CASE("two-qubit K circuit implements M with the T^7 word and the shortest word") {
  const KInteraction k = specific_k_instance();
  const Mat4 m = closed_form_m(k);
  for (const GateWord& w : {GateWord{std::vector<std::uint8_t>(7, 0), 0.0}, expand_u0_dagger(k, 1e-3)}) {
    const Schedule s = two_qubit_circuit(k, w);
    const RunReport r = run(s, {{"K", k.k}});
    CHECK(verify_against(r, m, 1e-9));
    CHECK((r.register_unitary.adjoint() * r.register_unitary - MatN::Identity(4, 4)).norm() < 1e-9);
    CHECK_FALSE(verify_against(r, cz(), 1e-3));
    CHECK(s.ancilla_count() == 2 * w.length() + 1);
  }
}

TEST_CASE("entangling ancilla may start in any pure state") {
  const KInteraction k = specific_k_instance();
  const Schedule s = two_qubit_circuit(k, GateWord{std::vector<std::uint8_t>(7, 0), 0.0});
  Rng rng = derive_rng(61, 0);
  for (int t = 0; t < 10; ++t) {
    RunOptions o;
    const Vec2 chi = random_state(2, rng);
    o.initial_states["e"] = chi;
    const RunReport r = run(s, {{"K", k.k}}, o);
    CHECK(verify_against(r, closed_form_m(k), 1e-9));
    CHECK(dist_phase(r.ancilla_exit_states.at("e"), chi) < 1e-9);
  }
}

TEST_CASE("L schedules") {
  const LInteraction l = sct_instance();
  const InteractionTable table{{"L", l.l}};
  const RunReport tri = run(entangling_schedule(), table);
  CHECK(verify_against(tri, closed_form_n(l), 1e-10));
  CHECK(dist_phase(tri.ancilla_exit_states.at("a"), Vec2(l.u.col(0))) < 1e-10);
  for (int bit : {0, 1}) {
    const RunReport dbl = run(single_qubit_schedule_l(bit), table);
    CHECK(verify_against(dbl, bit ? l.v1 : l.v0, 1e-10));
  }
  // j and k swapped gives N^k_j.
  const RunReport swapped = run(entangling_schedule(0, 1), table);
  const Mat4 n = closed_form_n(l);
  CHECK(verify_against(swapped, Mat4(swap_gate() * n * swap_gate()), 1e-10));
}

TEST_CASE("entangled ancillas are reported with their step") {
  // A register-controlled CNOT copies the register into the ancilla: each
  // basis column is a product state, but the exit states differ.
  Schedule s;
  s.register_size = 1;
  s.prep("a", 0).interact("X", 0, "a");
  try {
    run(s, {{"X", cnot()}});
    FAIL("expected AncillaEntangledAtExit");
  } catch (const AncillaEntangledAtExit& e) {
    CHECK(e.step() == 1);
  }
  Schedule t;
  t.register_size = 2;
  t.prep("a", 0).interact("I", 1, "a").interact("I", 0, "a").interact("X", 1, "a");
  try {
    run(t, {{"I", Mat4::Identity()}, {"X", cnot()}});
    FAIL("expected AncillaEntangledAtExit");
  } catch (const AncillaEntangledAtExit& e) {
    CHECK(e.step() == 3);
  }
}

TEST_CASE("runs are bitwise reproducible") {
  const KInteraction k = specific_k_instance();
  const Schedule s = two_qubit_circuit(k, GateWord{std::vector<std::uint8_t>(7, 0), 0.0});
  const RunReport a = run(s, {{"K", k.k}});
  const RunReport b = run(s, {{"K", k.k}});
  CHECK((a.register_unitary - b.register_unitary).norm() == 0.0);
  CHECK(a.purity_deficits == b.purity_deficits);
}

TEST_CASE("claims with the wrong dimension are rejected") {
  const RunReport r = run(single_qubit_schedule(0), {{"K", specific_k_instance().k}});
  CHECK_THROWS_AS(verify_against(r, cz(), 1e-9), DimensionMismatch);
}

// ---------------------------------------------------------------------------
// Bundled schedule files are regenerated byte for byte.

TEST_CASE("bundled schedules match the generators") {
  const KInteraction k = specific_k_instance();
  CHECK(slurp(schedule_path("fig1b_0.sched")) == to_text(single_qubit_schedule(0)));
  CHECK(slurp(schedule_path("fig1b_1.sched")) == to_text(single_qubit_schedule(1)));
  CHECK(slurp(schedule_path("fig2_specific.sched")) ==
        to_text(two_qubit_circuit(k, GateWord{std::vector<std::uint8_t>(7, 0), 0.0})));
  CHECK(slurp(schedule_path("fig3b.sched")) == to_text(entangling_schedule()));
  CHECK(slurp(schedule_path("fig3c_0.sched")) == to_text(single_qubit_schedule_l(0)));
  CHECK(slurp(schedule_path("fig3c_1.sched")) == to_text(single_qubit_schedule_l(1)));
}
