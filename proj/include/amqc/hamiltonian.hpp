#pragma once

// XXZ-type exchange H(theta) = pi (XX + YY) + (pi - theta) ZZ with hbar = 1.
// Evolving for t = 1/4 gives SCR(theta) . (R(-theta/2) (x) R(-theta/2)) up to
// a global phase, so a fixed ancilla rotation turns it into an L interaction.

#include <numbers>

#include "amqc/gates.hpp"
#include "amqc/model_l.hpp"
#include "amqc/qmat.hpp"

namespace amqc {

struct XYZHamiltonian {
  double theta = 0.0;
  Mat4 matrix;
};

inline XYZHamiltonian make_hamiltonian(double theta) {
  constexpr double pi = std::numbers::pi;
  const Mat2 x = pauli_x();
  const Mat2 y = pauli_y();
  const Mat2 z = pauli_z();
  return {theta, pi * (tensor(x, x) + tensor(y, y)) + (pi - theta) * tensor(z, z)};
}

inline Mat4 product_form(double theta) {
  const Mat2 r = phase_gate(-theta / 2);
  return swap_controlled(phase_gate(theta)) * tensor(r, r);
}

inline constexpr double kProductFormTol = 1e-10;

// e^{-i H / 4}
inline Mat4 evolve(const XYZHamiltonian& h) {
  const Mat4 u = herm_exp(h.matrix, 0.25);
  if (dist_phase(u, product_form(h.theta)) >= kProductFormTol) {
    throw FactorizationFailure("evolution does not match SCR(theta) (R(-theta/2) (x) R(-theta/2))");
  }
  return u;
}

// R(theta/2) H R(theta/2), applied to the ancilla after every evolution.
inline Mat2 ancilla_rotation(double theta) {
  const Mat2 r = phase_gate(theta / 2);
  return r * hadamard() * r;
}

// (I (x) R(theta/2) H R(theta/2)) . U(theta) as an L interaction with
// v0 = H and v1 = R(theta) H R(theta).
inline LInteraction derived_l_instance(double theta) {
  const Mat2 w = ancilla_rotation(theta);
  const Mat4 physical = tensor(identity2(), w) * evolve(make_hamiltonian(theta));
  LInteraction l = make_l(w, theta, -theta / 2, -theta / 2);
  if (dist_phase(physical, l.l) >= kProductFormTol) {
    throw FactorizationFailure("derived interaction is not of L form");
  }
  const Mat2 r = phase_gate(theta);
  if ((l.v0 - hadamard()).norm() > 1e-11 || (l.v1 - r * hadamard() * r).norm() > 1e-11) {
    throw FactorizationFailure("derived interaction has unexpected generators");
  }
  return l;
}

}  // namespace amqc
