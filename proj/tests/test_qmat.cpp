#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "amqc/gates.hpp"
#include "amqc/qmat.hpp"
#include "amqc/random.hpp"

using namespace amqc;
using Catch::Matchers::WithinAbs;

namespace {

// out[x] = sum_y g[local(x), local(y)] psi[y] over y agreeing with x off the
// targets; local() reads the target bits with targets[0] most significant.
VecN brute_apply(const VecN& psi, const MatN& g, const std::vector<int>& targets) {
  const auto dim = static_cast<std::size_t>(psi.size());
  auto local = [&](std::size_t x) {
    std::size_t l = 0;
    for (int t : targets) l = (l << 1) | ((x >> t) & 1U);
    return l;
  };
  std::size_t mask = 0;
  for (int t : targets) mask |= std::size_t{1} << t;
  VecN out = VecN::Zero(psi.size());
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t y = 0; y < dim; ++y) {
      if ((x & ~mask) != (y & ~mask)) continue;
      out(static_cast<Eigen::Index>(x)) += g(static_cast<Eigen::Index>(local(x)), static_cast<Eigen::Index>(local(y))) *
                                           psi(static_cast<Eigen::Index>(y));
    }
  }
  return out;
}

// Taylor series with scaling and squaring.
MatN taylor_exp(const MatN& a) {
  int squarings = 0;
  MatN x = a;
  while (x.norm() > 0.5) {
    x /= 2.0;
    ++squarings;
  }
  MatN sum = MatN::Identity(a.rows(), a.cols());
  MatN term = sum;
  for (int k = 1; k < 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("kron of 2x2 matrices matches hand layout") {
  Mat2 a, b;
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  Mat4 expected;
  expected << 0, 5, 0, 10,
              6, 7, 12, 14,
              0, 15, 0, 20,
              18, 21, 24, 28;
  CHECK((tensor(a, b) - expected).norm() == 0.0);
}

TEST_CASE("kron mixed-product property") {
  Rng rng = derive_rng(1, 0);
  for (int t = 0; t < 20; ++t) {
    const MatN a = haar_unitary(2, rng), b = haar_unitary(4, rng);
    const MatN c = haar_unitary(2, rng), d = haar_unitary(4, rng);
    CHECK((kron(a, b) * kron(c, d) - kron(MatN(a * c), MatN(b * d))).norm() < 1e-13);
  }
}

TEST_CASE("tensor rejects non-square operands") {
  const MatN a = MatN::Zero(2, 3);
  CHECK_THROWS_AS(tensor(a, Mat2::Identity()), DimensionMismatch);
  const VecN v = VecN::Ones(2);
  CHECK_NOTHROW(kron(v, v));
}

TEST_CASE("little-endian labels: first tensor slot is the higher label") {
  // X on label 1 of |00> gives index 2.
  const StateVec psi = apply_gate(StateVec(2), pauli_x(), {1});
  CHECK(std::abs(psi[2] - 1.0) < 1e-15);
  // CNOT with control label 1, target label 0 sends |10> (index 2) to |11>.
  const StateVec q = apply_gate(StateVec::basis(2, 2), cnot(), {1, 0});
  CHECK(std::abs(q[3] - 1.0) < 1e-15);
  // The same gate as a dense matrix on (1, 0) is the plain Mat4.
  CHECK((embed(cnot(), {1, 0}, 2) - MatN(cnot())).norm() == 0.0);
  CHECK((embed(cnot(), {0, 1}, 2) - MatN(swap_gate() * cnot() * swap_gate())).norm() < 1e-15);
}

TEST_CASE("apply_gate agrees with the brute-force index oracle") {
  Rng rng = derive_rng(2, 0);
  const std::vector<std::vector<int>> target_sets{{0}, {3}, {2, 0}, {0, 2}, {1, 3}, {3, 1, 0}, {4, 2, 1}};
  for (const auto& targets : target_sets) {
    const int n = 5;
    const MatN g = haar_unitary(Eigen::Index{1} << targets.size(), rng);
    const VecN psi = random_state(Eigen::Index{1} << n, rng);
    const StateVec out = apply_gate(StateVec(psi), g, targets);
    CHECK((out.amplitudes() - brute_apply(psi, g, targets)).norm() < 1e-13);
    CHECK((embed(g, targets, n) * psi - out.amplitudes()).norm() < 1e-13);
  }
}

TEST_CASE("apply_gate validates targets") {
  const StateVec psi(3);
  CHECK_THROWS_AS(apply_gate(psi, pauli_x(), {3}), BadTargets);
  CHECK_THROWS_AS(apply_gate(psi, pauli_x(), {-1}), BadTargets);
  CHECK_THROWS_AS(apply_gate(psi, cz(), {1, 1}), BadTargets);
  CHECK_THROWS_AS(apply_gate(psi, cz(), {1}), BadTargets);
  CHECK_THROWS_AS(StateVec(VecN::Ones(3)), DimensionMismatch);
  CHECK_THROWS_AS(StateVec::basis(2, 4), BadTargets);
}

TEST_CASE("herm_exp matches the Pauli closed form and a Taylor oracle") {
  Rng rng = derive_rng(3, 0);
  for (int t = 0; t < 20; ++t) {
    const double a1 = uniform_angle(rng), a2 = uniform_angle(rng);
    const Eigen::Vector3d n(std::cos(a1) * std::sin(a2), std::sin(a1) * std::sin(a2), std::cos(a2));
    const double angle = 4.0 * uniform_angle(rng);
    const Mat2 h = n(0) * pauli_x() + n(1) * pauli_y() + n(2) * pauli_z();
    const Mat2 closed = std::cos(angle) * Mat2::Identity() - cplx(0, std::sin(angle)) * h;
    CHECK((herm_exp(h, angle) - closed).norm() < 1e-13);

    const MatN a = haar_unitary(4, rng);
    const MatN herm = a + a.adjoint();
    CHECK((herm_exp(herm, 0.7) - taylor_exp(cplx(0, -0.7) * herm)).norm() < 1e-11);
  }
}

TEST_CASE("herm_exp rejects non-Hermitian input") {
  Mat2 m;
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(herm_exp(m, 1.0), NonHermitianInput);
}

TEST_CASE("dist_phase ignores global phase only") {
  Rng rng = derive_rng(4, 0);
  const MatN u = haar_unitary(4, rng);
  CHECK(dist_phase(u, MatN(std::polar(1.0, 1.234) * u)) < 1e-14);
  CHECK(dist_phase(u, MatN(-u)) < 1e-14);
  // Closed form for unitaries: sqrt(2d - 2|tr(a^dag b)|).
  const MatN v = haar_unitary(4, rng);
  const double closed = std::sqrt(8.0 - 2.0 * std::abs((u.adjoint() * v).trace()));
  CHECK_THAT(dist_phase(u, v), WithinAbs(closed, 1e-12));
  CHECK_THROWS_AS(dist_phase(u, Mat2::Identity()), DimensionMismatch);
  // Symmetric.
  CHECK_THAT(dist_phase(u, v), WithinAbs(dist_phase(v, u), 1e-13));
}

TEST_CASE("dist_phase near zero is not floored by cancellation") {
  Rng rng = derive_rng(5, 0);
  const Mat2 u = haar_u2(rng);
  const Mat2 tiny = herm_exp(Mat2(pauli_x()), 1e-11);
  CHECK(dist_phase(u, Mat2(u * tiny)) < 1e-10);
  CHECK(dist_phase(u, Mat2(u * tiny)) > 1e-12);
}

TEST_CASE("factor_ancilla_identity splits reg (x) I") {
  Rng rng = derive_rng(6, 0);
  const MatN reg = haar_unitary(4, rng);
  const AncillaFactor f = factor_ancilla_identity(kron(reg, Mat2::Identity()));
  CHECK((f.reg - reg).norm() < 1e-14);
  CHECK(f.residual < 1e-14);
  const AncillaFactor g = factor_ancilla_identity(kron(reg, pauli_x()));
  CHECK(g.residual > 1.0);
  CHECK_THROWS_AS(factor_ancilla_identity(MatN::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("haar sampling is deterministic per counter") {
  Rng a = derive_rng(9, 3);
  Rng b = derive_rng(9, 3);
  Rng c = derive_rng(9, 4);
  const MatN ua = haar_unitary(4, a);
  CHECK((ua - haar_unitary(4, b)).norm() == 0.0);
  CHECK((ua - haar_unitary(4, c)).norm() > 0.1);
  CHECK(is_unitary(ua, 1e-13));
}

TEST_CASE("mpow") {
  CHECK((mpow(t_gate(), 8) - Mat2::Identity()).norm() < 1e-14);
  CHECK((mpow(t_gate(), 0) - Mat2::Identity()).norm() == 0.0);
}
