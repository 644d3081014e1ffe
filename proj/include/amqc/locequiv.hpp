#pragma once

// Local equivalence of two-qubit gates via Makhlin invariants.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "amqc/qmat.hpp"
#include "amqc/random.hpp"

namespace amqc {

inline constexpr double kInvariantTol = 1e-8;

struct LocalInvariants {
  cplx g1;
  double g2;
};

// Columns are the magic (Bell-phase) basis.
inline Mat4 magic_basis() {
  const double s = 1.0 / std::numbers::sqrt2;
  const cplx i(0.0, 1.0);
  Mat4 q;
  q << 1, 0, 0, i,
       0, i, 1, 0,
       0, i, -1, 0,
       1, 0, 0, -i;
  return s * q;
}

// g1 = tr^2(m) / (16 det U), g2 = (tr^2(m) - tr(m^2)) / (4 det U)
// with m = (Q^dag U Q)^T (Q^dag U Q).
inline LocalInvariants invariants(const Mat4& u) {
  require_unitary(u, "invariants: U");
  const Mat4 q = magic_basis();
  const Mat4 ub = q.adjoint() * u * q;
  const Mat4 m = ub.transpose() * ub;
  const cplx det = u.determinant();
  const cplx tr = m.trace();
  const cplx tr_sq = (m * m).trace();
  return {tr * tr / (16.0 * det), ((tr * tr - tr_sq) / (4.0 * det)).real()};
}

inline double invariant_distance(const LocalInvariants& a, const LocalInvariants& b) {
  return std::max(std::abs(a.g1 - b.g1), std::abs(a.g2 - b.g2));
}

inline bool locally_equivalent(const Mat4& u, const Mat4& v, double tol = kInvariantTol) {
  const LocalInvariants a = invariants(u);
  const LocalInvariants b = invariants(v);
  return std::abs(a.g1 - b.g1) < tol && std::abs(a.g2 - b.g2) < tol;
}

// Concurrence of a two-qubit pure state (0 for product states).
inline double concurrence(const Eigen::Vector4cd& psi) {
  return 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2));
}

// Largest concurrence U produces from sampled product inputs.
inline double max_product_entanglement(const Mat4& u, int samples = 256,
                                       std::uint64_t seed = 0x5eed) {
  Rng rng = derive_rng(seed, 0);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::Vector4cd in = kron(random_state(2, rng), random_state(2, rng));
    best = std::max(best, concurrence(u * in));
  }
  return best;
}

// True iff U is locally equivalent to neither the identity nor SWAP. Close
// calls on the invariants are settled by probing product inputs.
inline bool is_entangling(const Mat4& u, double tol = kInvariantTol) {
  const LocalInvariants inv = invariants(u);
  const double to_identity = invariant_distance(inv, {cplx(1.0, 0.0), 3.0});
  const double to_swap = invariant_distance(inv, {cplx(-1.0, 0.0), -3.0});
  const double gap = std::min(to_identity, to_swap);
  if (gap < tol) return false;
  if (gap < std::sqrt(tol)) return max_product_entanglement(u) > 1e-6;
  return true;
}

}  // namespace amqc
