#pragma once

// Named gates. Two-qubit gates are written in slot order (see qmat.hpp):
// the first tensor slot is the more significant qubit.

#include <cmath>
#include <numbers>

#include "amqc/qmat.hpp"

namespace amqc {

// A phase angle in radians, normalized to [0, 2pi).
class PhaseAngle {
 public:
  explicit PhaseAngle(double radians) : radians_(normalize(radians)) {}

  double radians() const noexcept { return radians_; }

 private:
  static double normalize(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
  }

  double radians_;
};

enum class Slot { first, second };

inline Mat2 identity2() { return Mat2::Identity(); }

inline Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Mat2 pauli_y() {
  Mat2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

inline Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

inline Mat2 hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  Mat2 m;
  m << s, s, s, -s;
  return m;
}

// R(theta) = |0><0| + e^{i theta}|1><1|
inline Mat2 phase_gate(PhaseAngle theta) {
  Mat2 m = Mat2::Identity();
  m(1, 1) = std::polar(1.0, theta.radians());
  return m;
}

inline Mat2 phase_gate(double theta) { return phase_gate(PhaseAngle(theta)); }

inline Mat2 t_gate() { return phase_gate(std::numbers::pi / 4); }

inline Mat4 swap_gate() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

// |0><0| (x) u + |1><1| (x) v with the projector on `control`; the other
// slot is the target.
inline Mat4 controlled(const Mat2& u, const Mat2& v, Slot control = Slot::first) {
  require_unitary(u, "controlled: u");
  require_unitary(v, "controlled: v");
  Mat2 p0 = Mat2::Zero();
  Mat2 p1 = Mat2::Zero();
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  if (control == Slot::first) return tensor(p0, u) + tensor(p1, v);
  return tensor(u, p0) + tensor(v, p1);
}

// Cu = C(I, u)
inline Mat4 controlled_u(const Mat2& u, Slot control = Slot::first) {
  return controlled(Mat2::Identity(), u, control);
}

// SCu = SWAP . Cu
inline Mat4 swap_controlled(const Mat2& u) { return swap_gate() * controlled_u(u); }

inline Mat4 cz() { return controlled_u(pauli_z()); }

inline Mat4 cnot(Slot control = Slot::first) { return controlled_u(pauli_x(), control); }

struct U2Params {
  double eta = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double theta = 0.0;
};

// e^{i eta} [[e^{i phi} cos theta, e^{-i psi} sin theta],
//            [e^{i psi} sin theta, -e^{-i phi} cos theta]]
inline Mat2 param_u2(double eta, double phi, double psi, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 m;
  m << std::polar(c, phi), std::polar(s, -psi), std::polar(s, psi), -std::polar(c, -phi);
  return std::polar(1.0, eta) * m;
}

inline Mat2 param_u2(const U2Params& p) { return param_u2(p.eta, p.phi, p.psi, p.theta); }

// Inverse of param_u2 with theta in [0, pi/2]. At sin theta = 0 psi is set
// to 0, and at cos theta = 0 phi is set to 0.
inline U2Params param_u2_params(const Mat2& u, double degenerate_tol = 1e-12) {
  require_unitary(u, "param_u2_params: u");
  U2Params p;
  // det = -e^{2 i eta}
  p.eta = 0.5 * std::arg(-u.determinant());
  const Mat2 w = std::polar(1.0, -p.eta) * u;
  const double c = std::abs(w(0, 0));
  const double s = std::abs(w(1, 0));
  p.theta = std::atan2(s, c);
  p.phi = c > degenerate_tol ? std::arg(w(0, 0)) : 0.0;
  p.psi = s > degenerate_tol ? std::arg(w(1, 0)) : 0.0;
  return p;
}

}  // namespace amqc
