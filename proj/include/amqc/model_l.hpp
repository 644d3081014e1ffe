#pragma once

// Second minimal-control model. The fixed interaction, slots (register, ancilla):
//
//   L = (I (x) u) . SCR(theta) . (R(theta_r) (x) R(theta_a))
//
// Two L's with the ancilla in |i> apply v_i = R(i theta + theta_a) u R(i theta + theta_r)
// and leave the ancilla in u|i>. L^j L^k L^j with the ancilla in |0> applies
// the entangling gate N on (j, k).

#include <cmath>
#include <numbers>
#include <string>

#include "amqc/gates.hpp"
#include "amqc/qmat.hpp"
#include "amqc/schedule.hpp"

namespace amqc {

struct LInteraction {
  Mat2 u;
  double theta = 0.0;
  double theta_r = 0.0;
  double theta_a = 0.0;
  Mat4 l;
  Mat2 v0;
  Mat2 v1;
};

inline LInteraction make_l(const Mat2& u, double theta, double theta_r, double theta_a) {
  require_unitary(u, "make_l: u");
  LInteraction out;
  out.u = u;
  out.theta = theta;
  out.theta_r = theta_r;
  out.theta_a = theta_a;
  out.l = tensor(identity2(), u) * swap_controlled(phase_gate(theta)) *
          tensor(phase_gate(theta_r), phase_gate(theta_a));
  out.v0 = phase_gate(theta_a) * u * phase_gate(theta_r);
  out.v1 = phase_gate(theta + theta_a) * u * phase_gate(theta + theta_r);
  const Mat4 alt = swap_gate() *
                   controlled(u * phase_gate(theta_r), u * phase_gate(theta + theta_r), Slot::second) *
                   tensor(identity2(), phase_gate(theta_a));
  if ((out.l - alt).norm() > 1e-12) {
    throw FactorizationFailure("make_l: the two factorizations of L disagree");
  }
  return out;
}

// u = H, theta = pi/4, theta_r = theta_a = 0: L = (I (x) H) . SCT.
inline LInteraction sct_instance() { return make_l(hadamard(), std::numbers::pi / 4, 0.0, 0.0); }

// Worst phase-insensitive residual of L L (psi (x) |i>) = v_i psi (x) u|i>
// over a spanning set of register states.
inline double double_l_residual(const LInteraction& l, int bit) {
  Vec2 anc = Vec2::Zero();
  anc(bit) = 1.0;
  const Mat4 ll = l.l * l.l;
  const Mat2& v = bit ? l.v1 : l.v0;
  const double s = 1.0 / std::numbers::sqrt2;
  double worst = 0.0;
  for (const Vec2& psi : {Vec2(1, 0), Vec2(0, 1), Vec2(s, s), Vec2(s, cplx(0, s))}) {
    const Eigen::Vector4cd out = ll * kron(psi, anc);
    const Eigen::Vector4cd expected = kron(Vec2(v * psi), Vec2(l.u * anc));
    worst = std::max(worst, dist_phase(out, expected));
  }
  return worst;
}

inline Mat2 single_qubit_action(const LInteraction& l, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("single_qubit_action: bit must be 0 or 1");
  if (double_l_residual(l, bit) > 1e-12) {
    throw FactorizationFailure("L L does not act as v_i on the register");
  }
  return bit ? l.v1 : l.v0;
}

// L^j_a L^k_a L^j_a on slots (j, k, a).
inline MatN triple_l_operator(const LInteraction& l) {
  const MatN lj = embed(l.l, {2, 0}, 3);
  const MatN lk = embed(l.l, {1, 0}, 3);
  return lj * lk * lj;
}

struct TripleLResult {
  Mat4 n;              // register gate, slots (j, k)
  Vec2 ancilla_exit;   // u|bit>
  double decoupling;   // ||O (I (x) |bit>) - n (x) u|bit>||
};

// Restricts the triple-L operator to an ancilla prepared in |bit> and
// projects the output ancilla onto u|bit>.
inline TripleLResult triple_l(const LInteraction& l, int bit) {
  const MatN op = triple_l_operator(l);
  Vec2 anc = Vec2::Zero();
  anc(bit) = 1.0;
  const Vec2 exit = l.u * anc;
  TripleLResult r{Mat4::Zero(), exit, 0.0};
  for (Eigen::Index c = 0; c < 4; ++c) {
    const VecN col = op.col(2 * c + bit);
    for (Eigen::Index row = 0; row < 4; ++row) {
      r.n(row, c) = std::conj(exit(0)) * col(2 * row) + std::conj(exit(1)) * col(2 * row + 1);
    }
  }
  MatN restricted(8, 4);
  for (Eigen::Index c = 0; c < 4; ++c) restricted.col(c) = op.col(2 * c + bit);
  MatN expected(8, 4);
  for (Eigen::Index c = 0; c < 4; ++c) expected.col(c) = kron(Eigen::Vector4cd(r.n.col(c)), exit);
  r.decoupling = (restricted - expected).norm();
  return r;
}

// N = (R(theta_a) u (x) I) . SCR(theta) . (R(theta_a) u R(theta_r) (x) R(theta_r))
inline Mat4 closed_form_n(const LInteraction& l) {
  const Mat2 ra = phase_gate(l.theta_a);
  const Mat2 rr = phase_gate(l.theta_r);
  return tensor(Mat2(ra * l.u), identity2()) * swap_controlled(phase_gate(l.theta)) *
         tensor(Mat2(ra * l.u * rr), rr);
}

inline Mat4 entangling_sequence(const LInteraction& l, double tol = 1e-11) {
  const TripleLResult r = triple_l(l, 0);
  if (r.decoupling > tol) {
    throw FactorizationFailure("triple-L sequence does not decouple the ancilla (residual " +
                               std::to_string(r.decoupling) + ")");
  }
  if ((r.n - closed_form_n(l)).norm() > tol) {
    throw FactorizationFailure("triple-L gate differs from the closed form of N");
  }
  return r.n;
}

// N^4 = CNOT with control k (second slot), target j, up to global phase.
inline bool cnot_power_check(const LInteraction& l, double tol = 1e-11) {
  return dist_phase(mpow(entangling_sequence(l), 4), cnot(Slot::second)) < tol;
}

inline Schedule entangling_schedule(int qubit_j = 1, int qubit_k = 0, const std::string& interaction = "L") {
  Schedule s;
  s.register_size = std::max(qubit_j, qubit_k) + 1;
  s.prep("a", 0);
  s.interact(interaction, qubit_j, "a");
  s.interact(interaction, qubit_k, "a");
  s.interact(interaction, qubit_j, "a");
  return s;
}

inline Schedule single_qubit_schedule_l(int bit, int qubit = 0, const std::string& interaction = "L") {
  Schedule s;
  s.register_size = qubit + 1;
  s.prep("a", bit);
  s.interact(interaction, qubit, "a");
  s.interact(interaction, qubit, "a");
  return s;
}

}  // namespace amqc
