#pragma once

// First minimal-control model. The fixed interaction
//
//   K = (u (x) H) . CZ . (v (x) I)          slots (register, ancilla)
//     = (I (x) H) . C_anc(u0, u1),   u0 = u v,  u1 = u Z v
//
// applies u_i to the register qubit when the ancilla is prepared in |i>, and
// leaves the ancilla in H|i>. Two K-pairs sandwiching u0^dag on both register
// qubits induce M = (u (x) u) . CZ . (v (x) v) with the ancilla untouched.

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "amqc/gates.hpp"
#include "amqc/qmat.hpp"
#include "amqc/schedule.hpp"
#include "amqc/synth.hpp"

namespace amqc {

struct KInteraction {
  Mat2 u;
  Mat2 v;
  Mat4 k;
  Mat2 u0;
  Mat2 u1;
};

inline KInteraction make_k(const Mat2& u, const Mat2& v) {
  require_unitary(u, "make_k: u");
  require_unitary(v, "make_k: v");
  KInteraction out{u, v, tensor(u, hadamard()) * cz() * tensor(v, identity2()), u * v,
                   u * pauli_z() * v};
  const Mat4 alt = tensor(identity2(), hadamard()) * controlled(out.u0, out.u1, Slot::second);
  if ((out.k - alt).norm() > 1e-12) {
    throw FactorizationFailure("make_k: the two factorizations of K disagree");
  }
  return out;
}

// u = p(eta, zeta, zeta, pi/8), v = p(pi/8 - eta, -zeta - pi/8, zeta - pi/8, pi/8),
// which gives u0 = T and u1 = H T for every eta, zeta.
inline KInteraction specific_k_instance(double eta = 0.0, double zeta = 0.0) {
  constexpr double e = std::numbers::pi / 8;
  return make_k(param_u2(eta, zeta, zeta, e), param_u2(e - eta, -zeta - e, zeta - e, e));
}

// || K (psi (x) |i>) - (u_i psi) (x) H|i> ||
inline double single_qubit_action_residual(const KInteraction& k, int bit, const Vec2& psi) {
  Vec2 anc = Vec2::Zero();
  anc(bit) = 1.0;
  const Eigen::Vector4cd out = k.k * kron(psi, anc);
  const Eigen::Vector4cd expected = kron(Vec2((bit ? k.u1 : k.u0) * psi), Vec2(hadamard() * anc));
  return (out - expected).norm();
}

// u_i, checked on a spanning set of register states.
inline Mat2 single_qubit_action(const KInteraction& k, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("single_qubit_action: bit must be 0 or 1");
  const double s = 1.0 / std::numbers::sqrt2;
  for (const Vec2& psi : {Vec2(1, 0), Vec2(0, 1), Vec2(s, s), Vec2(s, cplx(0, s))}) {
    if (single_qubit_action_residual(k, bit, psi) > 1e-12) {
      throw FactorizationFailure("K does not act as u_i on the register");
    }
  }
  return bit ? k.u1 : k.u0;
}

// Three-qubit operator K^k_a K^j_a (u0^dag (x) u0^dag (x) I) K^k_a K^j_a on
// slots (j, k, a).
inline MatN entangling_sequence_operator(const KInteraction& k) {
  const MatN kj = embed(k.k, {2, 0}, 3);
  const MatN kk = embed(k.k, {1, 0}, 3);
  const Mat2 inv = k.u0.adjoint();
  const MatN locals = tensor(Mat4(tensor(inv, inv)), identity2());
  return kk * kj * locals * kk * kj;
}

inline Mat4 closed_form_m(const KInteraction& k) {
  return tensor(k.u, k.u) * cz() * tensor(k.v, k.v);
}

// The register gate M induced by the entangling sequence. Throws if the
// ancilla does not factor out as identity.
inline Mat4 entangling_sequence(const KInteraction& k, double tol = 1e-11) {
  const AncillaFactor f = factor_ancilla_identity(entangling_sequence_operator(k));
  if (f.residual > tol) {
    throw FactorizationFailure("entangling sequence does not decouple the ancilla (residual " +
                               std::to_string(f.residual) + ")");
  }
  return f.reg;
}

struct ExpansionOptions {
  int exact_horizon = 16;  // longest word tried for an exact expansion
  int max_len = 40;
  double exact_tol = 1e-12;
};

// A word over (u0, u1) whose product approximates u0^dag. Exact words within
// the horizon take precedence over shorter approximate ones.
inline GateWord expand_u0_dagger(const KInteraction& k, double epsilon,
                                 const ExpansionOptions& opts = {}) {
  WordSearch search(k.u0, k.u1);
  const Mat2 target = k.u0.adjoint();
  try {
    return search.find(target, opts.exact_tol, opts.exact_horizon);
  } catch (const SearchExhausted&) {
  }
  return search.find(target, epsilon, opts.max_len);
}

struct KCircuitLayout {
  std::string interaction = "K";
  int qubit_j = 1;  // first slot of M
  int qubit_k = 0;
  int entangling_prep = 0;
};

// The full two-qubit gate: K^j, K^k with the entangling ancilla, the word for
// u0^dag on j and then on k (one fresh ancilla per letter), then K^j, K^k
// again. Ancillas are named "e" and "w0", "w1", ...
inline Schedule two_qubit_circuit(const KInteraction&, const GateWord& word,
                                  const KCircuitLayout& layout = {}) {
  Schedule s;
  s.register_size = std::max(layout.qubit_j, layout.qubit_k) + 1;
  s.prep("e", layout.entangling_prep);
  s.interact(layout.interaction, layout.qubit_j, "e");
  s.interact(layout.interaction, layout.qubit_k, "e");
  int next = 0;
  for (int q : {layout.qubit_j, layout.qubit_k}) {
    for (std::uint8_t b : word.bits) {
      const std::string id = "w" + std::to_string(next++);
      s.prep(id, b);
      s.interact(layout.interaction, q, id);
    }
  }
  s.interact(layout.interaction, layout.qubit_j, "e");
  s.interact(layout.interaction, layout.qubit_k, "e");
  return s;
}

// One K with an ancilla prepared in |bit>: applies u_bit.
inline Schedule single_qubit_schedule(int bit, int qubit = 0, const std::string& interaction = "K") {
  Schedule s;
  s.register_size = qubit + 1;
  s.prep("a", bit);
  s.interact(interaction, qubit, "a");
  return s;
}

// ---------------------------------------------------------------------------
// Mediated CZ from controlled Paulis on a qubit ancilla

// C^k_a X . C^j_a Z . C^k_a X . C^j_a Z on slots (j, k, a); the final C^j_a Z
// can be dropped to break the loop.
inline MatN mediated_cz_sequence(bool include_final_cz = true) {
  const MatN cx_ka = embed(controlled_u(pauli_x()), {1, 0}, 3);
  const MatN cz_ja = embed(controlled_u(pauli_z()), {2, 0}, 3);
  MatN out = cx_ka * cz_ja * cx_ka;
  if (include_final_cz) out = out * cz_ja;
  return out;
}

inline double mediated_cz_residual(bool include_final_cz = true) {
  const MatN expected = tensor(cz(), identity2());
  return (mediated_cz_sequence(include_final_cz) - expected).norm();
}

inline double pauli_loop_residual() {
  const Mat2 loop = pauli_x() * pauli_z() * pauli_x() * pauli_z();
  return (loop + Mat2::Identity()).norm();
}

inline bool qudit_phase_identity_check(bool include_final_cz = true) {
  return mediated_cz_residual(include_final_cz) < 1e-12 && pauli_loop_residual() < 1e-14;
}

}  // namespace amqc
