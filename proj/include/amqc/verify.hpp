#pragma once

// Verification suites: every check records a residual against a tolerance.
// Random draws use derive_rng(seed, counter) with one counter per trial, so a
// suite's results depend only on (seed, trials).

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "amqc/gates.hpp"
#include "amqc/hamiltonian.hpp"
#include "amqc/locequiv.hpp"
#include "amqc/model_k.hpp"
#include "amqc/model_l.hpp"
#include "amqc/random.hpp"
#include "amqc/simulator.hpp"
#include "amqc/synth.hpp"

namespace amqc {

struct Check {
  std::string name;
  std::string claim;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += !c.pass;
    return n;
  }

  // residual < tolerance
  void below(std::string name, std::string claim, double residual, double tol) {
    checks.push_back({std::move(name), std::move(claim), residual, tol, residual < tol});
  }

  // residual > tolerance
  void above(std::string name, std::string claim, double residual, double tol) {
    checks.push_back({std::move(name), std::move(claim), residual, tol, residual > tol});
  }

  void holds(std::string name, std::string claim, bool ok) {
    checks.push_back({std::move(name), std::move(claim), ok ? 0.0 : 1.0, 0.5, ok});
  }

  // A check that must not throw; exceptions become failures with the message
  // as the claim.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      checks.push_back({name, std::string("threw: ") + e.what(), 1.0, 0.5, false});
    }
  }

  void append(const SuiteReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
  }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int trials = 100;
};

namespace detail {

// Worst residual over trials of f(rng).
inline double worst_over(const SuiteOptions& o, std::uint64_t stream,
                         const std::function<double(Rng&)>& f) {
  double worst = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = derive_rng(o.seed ^ (stream << 32), static_cast<std::uint64_t>(t));
    worst = std::max(worst, f(rng));
  }
  return worst;
}

inline void note_trials(SuiteReport& r, const SuiteOptions& o) {
  if (o.trials == 0) r.warnings.push_back(r.suite + ": no random trials, random checks pass vacuously");
}

inline KInteraction random_k(Rng& rng) { return make_k(haar_u2(rng), haar_u2(rng)); }

inline LInteraction random_l(Rng& rng) {
  const Mat2 u = haar_u2(rng);
  const double theta = uniform_angle(rng);
  const double tr = uniform_angle(rng);
  return make_l(u, theta, tr, uniform_angle(rng));
}

inline double max_deficit(const RunReport& r) {
  double worst = 0.0;
  for (const auto& [id, d] : r.purity_deficits) worst = std::max(worst, d);
  return worst;
}

}  // namespace detail

inline SuiteReport verify_k(const SuiteOptions& o = {}) {
  SuiteReport r{"k", {}, {}};
  detail::note_trials(r, o);

  r.below("k.single_qubit_action", "K(psi (x) |i>) = u_i psi (x) H|i>",
          detail::worst_over(o, 1,
                             [](Rng& rng) {
                               const KInteraction k = detail::random_k(rng);
                               double w = 0.0;
                               for (int bit : {0, 1}) {
                                 const Vec2 psi = random_state(2, rng);
                                 w = std::max(w, single_qubit_action_residual(k, bit, psi));
                               }
                               return w;
                             }),
          1e-12);
  r.below("k.factorization", "K = (I (x) H) C_anc(u v, u Z v)",
          detail::worst_over(o, 2,
                             [](Rng& rng) {
                               const KInteraction k = detail::random_k(rng);
                               const Mat4 alt = tensor(identity2(), hadamard()) *
                                                controlled(k.u0, k.u1, Slot::second);
                               return (k.k - alt).norm();
                             }),
          1e-12);
  r.below("k.entangling_decoupling", "the 4-K sequence factors as M (x) I",
          detail::worst_over(o, 3,
                             [](Rng& rng) {
                               const KInteraction k = detail::random_k(rng);
                               return factor_ancilla_identity(entangling_sequence_operator(k)).residual;
                             }),
          1e-11);
  r.below("k.closed_form_m", "M = (u (x) u) CZ (v (x) v)",
          detail::worst_over(o, 4,
                             [](Rng& rng) {
                               const KInteraction k = detail::random_k(rng);
                               const AncillaFactor f = factor_ancilla_identity(entangling_sequence_operator(k));
                               return (f.reg - MatN(closed_form_m(k))).norm();
                             }),
          1e-11);
  r.below("k.m_local_equivalence", "M is locally equivalent to CZ",
          detail::worst_over(o, 5,
                             [](Rng& rng) {
                               const KInteraction k = detail::random_k(rng);
                               return invariant_distance(invariants(entangling_sequence(k)), invariants(cz()));
                             }),
          kInvariantTol);

  const KInteraction s = specific_k_instance();
  r.below("k.specific.u0", "specific instance: u0 = T", (s.u0 - t_gate()).norm(), 1e-12);
  r.below("k.specific.u1", "specific instance: u1 = H T", (s.u1 - hadamard() * t_gate()).norm(), 1e-12);
  r.below("k.specific.u1_u0_pow7", "u1 u0^7 = H", (s.u1 * mpow(s.u0, 7) - hadamard()).norm(), 1e-12);
  r.below("k.specific.eta_zeta_free", "u0, u1 independent of eta and zeta",
          detail::worst_over(o, 6,
                             [](Rng& rng) {
                               const KInteraction k = specific_k_instance(uniform_angle(rng), uniform_angle(rng));
                               return std::max((k.u0 - t_gate()).norm(), (k.u1 - hadamard() * t_gate()).norm());
                             }),
          1e-12);

  r.guarded("k.specific.circuit", [&] {
    const GateWord word{std::vector<std::uint8_t>(7, 0), 0.0};
    const Schedule sched = two_qubit_circuit(s, word);
    const RunReport run_report = run(sched, {{"K", s.k}});
    r.holds("k.specific.circuit_ancillas", "circuit uses 14 word ancillas and 1 entangling ancilla",
            sched.ancilla_count() == 15);
    r.below("k.specific.circuit", "simulated circuit implements M", claim_distance(run_report, closed_form_m(s)),
            1e-9);
    r.below("k.specific.circuit_decoupling", "every ancilla decouples", detail::max_deficit(run_report),
            kDecoupledDeficit);
  });

  r.guarded("k.single_qubit_schedule", [&] {
    double worst = 0.0;
    for (int bit : {0, 1}) {
      const RunReport rr = run(single_qubit_schedule(bit), {{"K", s.k}});
      Vec2 anc = Vec2::Zero();
      anc(bit) = 1.0;
      worst = std::max(worst, claim_distance(rr, bit ? s.u1 : s.u0));
      worst = std::max(worst, dist_phase(rr.ancilla_exit_states.at("a"), Vec2(hadamard() * anc)));
    }
    r.below("k.single_qubit_schedule", "one K applies u_i and leaves H|i>", worst, 1e-10);
  });
  return r;
}

inline SuiteReport verify_l(const SuiteOptions& o = {}) {
  SuiteReport r{"l", {}, {}};
  detail::note_trials(r, o);

  r.below("l.factorization", "both factorizations of L agree",
          detail::worst_over(o, 11,
                             [](Rng& rng) {
                               const LInteraction l = detail::random_l(rng);
                               const Mat4 alt = swap_gate() *
                                                controlled(l.u * phase_gate(l.theta_r),
                                                           l.u * phase_gate(l.theta + l.theta_r), Slot::second) *
                                                tensor(identity2(), phase_gate(l.theta_a));
                               return (l.l - alt).norm();
                             }),
          1e-12);
  r.below("l.double_l", "L L (psi (x) |i>) = v_i psi (x) u|i>",
          detail::worst_over(o, 12,
                             [](Rng& rng) {
                               const LInteraction l = detail::random_l(rng);
                               return std::max(double_l_residual(l, 0), double_l_residual(l, 1));
                             }),
          1e-12);
  r.below("l.triple_l_decoupling", "L L L with the ancilla in |0> leaves it in u|0>",
          detail::worst_over(o, 13, [](Rng& rng) { return triple_l(detail::random_l(rng), 0).decoupling; }),
          1e-11);
  r.below("l.closed_form_n", "triple-L gate equals the closed form of N",
          detail::worst_over(o, 14,
                             [](Rng& rng) {
                               const LInteraction l = detail::random_l(rng);
                               return (triple_l(l, 0).n - closed_form_n(l)).norm();
                             }),
          1e-11);

  // N^j_k and N^k_j differ away from theta = 0 and from diagonal or
  // antidiagonal u, where the two orders coincide.
  {
    double least = std::numeric_limits<double>::infinity();
    for (int t = 0; t < o.trials; ++t) {
      Rng rng = derive_rng(o.seed ^ (std::uint64_t{15} << 32), static_cast<std::uint64_t>(t));
      const LInteraction l = detail::random_l(rng);
      if (std::abs(std::sin(l.theta / 2)) < 0.25 || std::abs(l.u(0, 0) * l.u(0, 1)) < 0.15) continue;
      const Mat4 n = closed_form_n(l);
      least = std::min(least, dist_phase(n, Mat4(swap_gate() * n * swap_gate())));
    }
    if (std::isfinite(least)) r.above("l.asymmetry", "N^j_k differs from N^k_j", least, 0.1);
  }
  r.holds("l.entangling_random", "N is entangling for random theta",
          detail::worst_over(o, 16, [](Rng& rng) {
            return is_entangling(closed_form_n(detail::random_l(rng))) ? 0.0 : 1.0;
          }) == 0.0);

  r.below("l.triple_l_decoupling_one", "L L L with the ancilla in |1> leaves it in u|1>",
          detail::worst_over(o, 17, [](Rng& rng) { return triple_l(detail::random_l(rng), 1).decoupling; }),
          1e-11);

  const LInteraction s = sct_instance();
  r.below("l.sct.l", "L = (I (x) H) SCT", (s.l - tensor(identity2(), hadamard()) * swap_controlled(t_gate())).norm(),
          1e-12);
  r.below("l.sct.v0", "v0 = H", (s.v0 - hadamard()).norm(), 1e-12);
  r.below("l.sct.v1", "v1 = T H T", (s.v1 - t_gate() * hadamard() * t_gate()).norm(), 1e-12);
  r.guarded("l.sct.n", [&] {
    const Mat4 n = entangling_sequence(s);
    const Mat4 hi = tensor(hadamard(), identity2());
    r.below("l.sct.n", "N = (H (x) I) SCT (H (x) I)", (n - hi * swap_controlled(t_gate()) * hi).norm(), 1e-11);
    r.below("l.sct.n_pow4", "N^4 = CNOT with control k", dist_phase(mpow(n, 4), cnot(Slot::second)), 1e-11);
    r.above("l.sct.n_pow2", "N^2 is not CNOT", dist_phase(mpow(n, 2), cnot(Slot::second)), 1e-3);
    r.below("l.sct.n_pow8", "N^8 = I up to phase", dist_phase(mpow(n, 8), Mat4::Identity()), 1e-11);
  });

  r.guarded("l.sct.schedules", [&] {
    const InteractionTable table{{"L", s.l}};
    const RunReport tri = run(entangling_schedule(), table);
    r.below("l.sct.schedule_n", "simulated L L L implements N", claim_distance(tri, closed_form_n(s)), 1e-10);
    r.below("l.sct.schedule_n_exit", "entangling ancilla exits in u|0>",
            dist_phase(tri.ancilla_exit_states.at("a"), Vec2(s.u.col(0))), 1e-10);
    double worst = 0.0;
    for (int bit : {0, 1}) {
      const RunReport dbl = run(single_qubit_schedule_l(bit), table);
      worst = std::max(worst, claim_distance(dbl, bit ? s.v1 : s.v0));
      worst = std::max(worst, dist_phase(dbl.ancilla_exit_states.at("a"), Vec2(s.u.col(bit))));
    }
    r.below("l.sct.schedule_v", "simulated L L implements v_i with exit u|i>", worst, 1e-10);
    r.holds("l.sct.interaction_counts", "3 interactions per two-qubit gate, 2 per one-qubit gate",
            entangling_schedule().interaction_count() == 3 && single_qubit_schedule_l(0).interaction_count() == 2);
  });

  const UniversalityReport diag = universality_diagnostic(s.v0, s.v1);
  r.holds("l.sct.universal", "{H, T H T} passes the universality diagnostic",
          diag.verdict == Verdict::plausibly_universal);
  return r;
}

inline SuiteReport verify_hamiltonian(const SuiteOptions& o = {}) {
  SuiteReport r{"hamiltonian", {}, {}};
  detail::note_trials(r, o);
  constexpr double pi = std::numbers::pi;

  double worst = 0.0;
  double worst_eig = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double theta = 2.0 * pi * i / 32.0;
    const XYZHamiltonian h = make_hamiltonian(theta);
    worst = std::max(worst, dist_phase(herm_exp(h.matrix, 0.25), product_form(theta)));
    Eigen::Vector4d expected(theta - 3 * pi, pi - theta, pi - theta, pi + theta);
    std::sort(expected.begin(), expected.end());
    const Eigen::SelfAdjointEigenSolver<Mat4> es(h.matrix);
    worst_eig = std::max(worst_eig, (es.eigenvalues() - expected).norm());
  }
  r.below("hamiltonian.product_form", "e^{-iH/4} = SCR(theta) (R(-theta/2) (x) R(-theta/2)) on 32 angles", worst,
          1e-10);
  r.below("hamiltonian.spectrum", "spectrum of H is {pi - theta (x2), pi + theta, theta - 3 pi}", worst_eig, 1e-12);
  r.below("hamiltonian.swap_at_zero", "U(0) = SWAP", dist_phase(herm_exp(make_hamiltonian(0).matrix, 0.25), swap_gate()),
          1e-10);

  r.guarded("hamiltonian.derived_l", [&] {
    const LInteraction d = derived_l_instance(pi / 4);
    const LInteraction s = sct_instance();
    r.below("hamiltonian.derived_l", "derived L at theta = pi/4 has generators {H, T H T}",
            std::max(dist_phase(d.v0, s.v0), dist_phase(d.v1, s.v1)), 1e-11);
  });
  r.guarded("hamiltonian.derived_random", [&] {
    r.below("hamiltonian.derived_random", "derived L has v0 = H, v1 = R(theta) H R(theta)",
            detail::worst_over(o, 21,
                               [](Rng& rng) {
                                 const double theta = uniform_angle(rng);
                                 const LInteraction d = derived_l_instance(theta);
                                 const Mat2 rt = phase_gate(theta);
                                 return std::max((d.v0 - hadamard()).norm(), (d.v1 - rt * hadamard() * rt).norm());
                               }),
            1e-11);
  });
  r.holds("hamiltonian.theta_zero_rejected", "theta = 0 gives v0 = v1 and is rejected",
          universality_diagnostic(derived_l_instance(0).v0, derived_l_instance(0).v1).verdict ==
              Verdict::not_universal);
  return r;
}

struct AppendixAValues {
  AxisAngle plus;   // v0 v1
  AxisAngle minus;  // v1 v0
  Eigen::Vector3d expected_plus;
  Eigen::Vector3d expected_minus;
  UniversalityReport diagnostic;
};

inline AppendixAValues appendix_a_values() {
  const Mat2 v0 = hadamard();
  const Mat2 v1 = t_gate() * hadamard() * t_gate();
  const double c = 1.0 / std::tan(std::numbers::pi / 8);
  AppendixAValues out{axis_angle(v0 * v1), axis_angle(v1 * v0), -Eigen::Vector3d(c, -1, c).normalized(),
                      -Eigen::Vector3d(c, 1, c).normalized(), universality_diagnostic(v0, v1)};
  return out;
}

// Angle between two axes as lines, measured as |a x b|.
inline double axis_misalignment(const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return a.cross(b).norm(); }

inline SuiteReport verify_appendix_a(const SuiteOptions& = {}) {
  SuiteReport r{"appendix-a", {}, {}};
  const AppendixAValues v = appendix_a_values();
  const double c8 = std::pow(std::cos(std::numbers::pi / 8), 2);
  r.below("appendix-a.cos_phi_plus", "cos phi(v0 v1) = cos^2(pi/8)", std::abs(std::cos(v.plus.phi) - c8), 1e-12);
  r.below("appendix-a.cos_phi_minus", "cos phi(v1 v0) = cos^2(pi/8)", std::abs(std::cos(v.minus.phi) - c8), 1e-12);
  r.below("appendix-a.axis_plus", "axis of v0 v1 is -(cot, -1, cot) normalized",
          axis_misalignment(v.plus.axis, v.expected_plus), 1e-9);
  r.below("appendix-a.axis_minus", "axis of v1 v0 is -(cot, 1, cot) normalized",
          axis_misalignment(v.minus.axis, v.expected_minus), 1e-9);
  r.holds("appendix-a.irrational", "rational-angle heuristic reports an irrational angle",
          !v.diagnostic.rational_angle_flag);
  r.above("appendix-a.non_parallel", "the two axes are not parallel", v.diagnostic.axis_angle_between, kParallelTol);
  r.holds("appendix-a.verdict", "{H, T H T} is plausibly universal",
          v.diagnostic.verdict == Verdict::plausibly_universal);
  return r;
}

inline SuiteReport verify_endnote_a(const SuiteOptions& = {}) {
  SuiteReport r{"endnote-a", {}, {}};
  r.below("endnote-a.mediated_cz", "C^k_a X C^j_a Z C^k_a X C^j_a Z = C^j_k Z (x) I", mediated_cz_residual(), 1e-12);
  r.below("endnote-a.xzxz", "X Z X Z = -I", pauli_loop_residual(), 1e-14);
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"k", "l", "hamiltonian", "appendix-a", "endnote-a", "all"};
  return names;
}

// Throws std::invalid_argument on an unknown suite.
inline SuiteReport run_suite(const std::string& name, const SuiteOptions& o = {}) {
  if (name == "k") return verify_k(o);
  if (name == "l") return verify_l(o);
  if (name == "hamiltonian") return verify_hamiltonian(o);
  if (name == "appendix-a") return verify_appendix_a(o);
  if (name == "endnote-a") return verify_endnote_a(o);
  if (name == "all") {
    SuiteReport all{"all", {}, {}};
    for (const auto& n : suite_names()) {
      if (n != "all") all.append(run_suite(n, o));
    }
    return all;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace amqc
