#pragma once

// Dense complex linear algebra for small fixed dimensions and 2^n
// statevectors.
//
// Qubit labels are little-endian: label 0 is the least significant bit of a
// basis index. A tensor product a (x) b puts `a` on the more significant
// block, so in a two-qubit Mat4 the first tensor slot is qubit label 1 and the
// second slot is label 0. Every multi-qubit constructor in this library is
// written in slot order (first slot leftmost), and apply_gate maps
// targets[0] to the first slot.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "amqc/errors.hpp"

namespace amqc {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatN = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2cd;
using VecN = Eigen::VectorXcd;

inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-12;
// Tolerance used to reject non-unitary arguments handed to constructors.
inline constexpr double kArgumentUnitaryTol = 1e-10;

namespace detail {

constexpr int kron_dim(int a, int b) {
  return (a == Eigen::Dynamic || b == Eigen::Dynamic) ? Eigen::Dynamic : a * b;
}

}  // namespace detail

template <typename A, typename B>
using KronResult =
    Eigen::Matrix<cplx, detail::kron_dim(A::RowsAtCompileTime, B::RowsAtCompileTime),
                  detail::kron_dim(A::ColsAtCompileTime, B::ColsAtCompileTime)>;

// Kronecker product with no shape requirement (used for state vectors too).
template <typename A, typename B>
KronResult<A, B> kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  KronResult<A, B> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Operator tensor product; both operands must be square.
template <typename A, typename B>
KronResult<A, B> tensor(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw DimensionMismatch("tensor: operands must be square");
  }
  return kron(a, b);
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = kUnitaryTol) {
  if (m.rows() != m.cols()) return false;
  const auto n = m.rows();
  return (m.adjoint() * m - MatN::Identity(n, n)).norm() < tol;
}

template <typename Derived>
void require_unitary(const Eigen::MatrixBase<Derived>& m, const char* what,
                     double tol = kArgumentUnitaryTol) {
  if (!is_unitary(m, tol)) {
    throw NonUnitaryArgument(std::string(what) + " is not unitary");
  }
}

template <typename Derived>
typename Derived::PlainObject mpow(const Eigen::MatrixBase<Derived>& m, unsigned k) {
  typename Derived::PlainObject out =
      Derived::PlainObject::Identity(m.rows(), m.cols());
  for (unsigned i = 0; i < k; ++i) out = out * m;
  return out;
}

// e^{-i h t} by Hermitian eigendecomposition.
template <typename Derived>
typename Derived::PlainObject herm_exp(const Eigen::MatrixBase<Derived>& h, double t) {
  using Plain = typename Derived::PlainObject;
  const Plain hm = h;
  if (hm.rows() != hm.cols()) throw DimensionMismatch("herm_exp: matrix must be square");
  if ((hm - hm.adjoint()).norm() >= 1e-10) {
    throw NonHermitianInput("herm_exp: input is not Hermitian");
  }
  const Eigen::SelfAdjointEigenSolver<Plain> es(hm);
  Eigen::Matrix<cplx, Derived::RowsAtCompileTime, 1> phases(hm.rows());
  for (Eigen::Index i = 0; i < hm.rows(); ++i) {
    phases(i) = std::exp(cplx(0.0, -es.eigenvalues()(i) * t));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// min over alpha of ||a - e^{i alpha} b||_F. For unitaries this equals
// sqrt(2d - 2|tr(a^dag b)|); the optimal phase comes from the trace and the
// norm is then evaluated directly, which avoids the cancellation in the
// closed form near zero. Works for state vectors as well.
template <typename A, typename B>
double dist_phase(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("dist_phase: operand shapes differ");
  }
  const cplx overlap = (a.adjoint() * b).trace();
  const double mag = std::abs(overlap);
  const cplx phase = mag > 0.0 ? std::conj(overlap) / mag : cplx(1.0, 0.0);
  return (a - phase * b).norm();
}

// A pure state on n qubits.
class StateVec {
 public:
  explicit StateVec(int qubits) : qubits_(qubits), amps_(VecN::Zero(dim_of(qubits))) {
    amps_(0) = 1.0;
  }

  explicit StateVec(VecN amplitudes) : qubits_(0), amps_(std::move(amplitudes)) {
    const auto size = static_cast<std::size_t>(amps_.size());
    if (size == 0 || (size & (size - 1)) != 0) {
      throw DimensionMismatch("StateVec: length must be a power of two");
    }
    while ((std::size_t{1} << qubits_) < size) ++qubits_;
  }

  static StateVec basis(int qubits, std::size_t index) {
    StateVec s(qubits);
    if (index >= static_cast<std::size_t>(s.amps_.size())) {
      throw BadTargets("StateVec::basis: index out of range");
    }
    s.amps_(0) = 0.0;
    s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
  }

  int qubits() const noexcept { return qubits_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }
  const VecN& amplitudes() const noexcept { return amps_; }
  VecN& amplitudes() noexcept { return amps_; }
  cplx operator[](Eigen::Index i) const { return amps_(i); }
  double norm() const { return amps_.norm(); }

 private:
  static Eigen::Index dim_of(int qubits) {
    if (qubits < 0 || qubits > 30) throw DimensionMismatch("StateVec: bad qubit count");
    return Eigen::Index{1} << qubits;
  }

  int qubits_;
  VecN amps_;
};

namespace detail {

inline void validate_targets(int qubits, const std::vector<int>& targets,
                             Eigen::Index gate_dim) {
  if (targets.empty() || gate_dim != (Eigen::Index{1} << targets.size())) {
    throw BadTargets("gate dimension does not match target count");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= qubits) throw BadTargets("target out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) throw BadTargets("repeated target");
    }
  }
}

template <typename G>
void apply_in_place(VecN& amps, int qubits, const Eigen::MatrixBase<G>& g,
                    const std::vector<int>& targets) {
  validate_targets(qubits, targets, g.rows());
  const auto m = static_cast<int>(targets.size());
  const std::size_t local_dim = std::size_t{1} << m;
  std::size_t mask = 0;
  for (int t : targets) mask |= std::size_t{1} << t;
  std::vector<std::size_t> offsets(local_dim);
  for (std::size_t local = 0; local < local_dim; ++local) {
    std::size_t off = 0;
    for (int i = 0; i < m; ++i) {
      if ((local >> (m - 1 - i)) & 1U) off |= std::size_t{1} << targets[i];
    }
    offsets[local] = off;
  }
  VecN in(static_cast<Eigen::Index>(local_dim));
  VecN out(static_cast<Eigen::Index>(local_dim));
  const auto total = static_cast<std::size_t>(amps.size());
  for (std::size_t base = 0; base < total; ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < local_dim; ++l) {
      in(static_cast<Eigen::Index>(l)) = amps(static_cast<Eigen::Index>(base | offsets[l]));
    }
    out.noalias() = g * in;
    for (std::size_t l = 0; l < local_dim; ++l) {
      amps(static_cast<Eigen::Index>(base | offsets[l])) = out(static_cast<Eigen::Index>(l));
    }
  }
}

}  // namespace detail

// Applies g to the listed qubits; targets[0] is g's first tensor slot.
template <typename G>
StateVec apply_gate(const StateVec& psi, const Eigen::MatrixBase<G>& g,
                    const std::vector<int>& targets) {
  StateVec out = psi;
  detail::apply_in_place(out.amplitudes(), out.qubits(), g, targets);
  return out;
}

// Dense 2^n operator for g acting on `targets` of an n-qubit register.
template <typename G>
MatN embed(const Eigen::MatrixBase<G>& g, const std::vector<int>& targets, int qubits) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  MatN out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    VecN col = VecN::Zero(dim);
    col(c) = 1.0;
    detail::apply_in_place(col, qubits, g, targets);
    out.col(c) = col;
  }
  return out;
}

struct AncillaFactor {
  MatN reg;         // operator on the remaining qubits
  double residual;  // ||op - reg (x) I||_F
};

// Splits an operator whose lowest qubit (label 0, last tensor slot) is an
// ancilla into reg (x) I_2. The residual measures how far op is from that
// form.
inline AncillaFactor factor_ancilla_identity(const MatN& op) {
  if (op.rows() != op.cols() || op.rows() < 2 || op.rows() % 2 != 0) {
    throw DimensionMismatch("factor_ancilla_identity: bad operator shape");
  }
  const Eigen::Index half = op.rows() / 2;
  MatN reg(half, half);
  for (Eigen::Index r = 0; r < half; ++r) {
    for (Eigen::Index c = 0; c < half; ++c) {
      reg(r, c) = 0.5 * (op(2 * r, 2 * c) + op(2 * r + 1, 2 * c + 1));
    }
  }
  const double residual = (op - kron(reg, Mat2::Identity())).norm();
  return {std::move(reg), residual};
}

}  // namespace amqc
