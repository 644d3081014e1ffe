#include <catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>

#include "amqc/gates.hpp"
#include "amqc/random.hpp"
#include "amqc/synth.hpp"

using namespace amqc;
using Catch::Matchers::WithinAbs;
constexpr double pi = std::numbers::pi;

namespace {

const Mat2 kTHT = t_gate() * hadamard() * t_gate();

// Shortest word with distance < eps by full enumeration; ties broken by
// distance (within 1e-12) and then lexicographically.
std::optional<std::vector<std::uint8_t>> brute_force(const Mat2& g0, const Mat2& g1, const Mat2& target, double eps,
                                                     int max_len) {
  for (int n = 0; n <= max_len; ++n) {
    std::optional<std::vector<std::uint8_t>> best;
    double best_d = 0.0;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
      std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (w >> (n - 1 - i)) & 1U;
      const double d = dist_phase(word_product(g0, g1, bits), target);
      if (d >= eps) continue;
      if (!best || d < best_d - 1e-12) {
        best = bits;
        best_d = d;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("axis_angle reconstructs its input") {
  Rng rng = derive_rng(50, 0);
  for (int t = 0; t < 200; ++t) {
    const Mat2 g = haar_u2(rng);
    const AxisAngle aa = axis_angle(g);
    CHECK(aa.phi >= 0.0);
    CHECK(aa.phi <= pi / 2 + 1e-15);
    CHECK_THAT(aa.axis.norm(), WithinAbs(1.0, 1e-14));
    CHECK((reconstruct(aa) - g).norm() < 1e-12);
  }
  const AxisAngle id = axis_angle(std::polar(1.0, 0.4) * identity2());
  CHECK(id.degenerate);
  CHECK_THAT(id.global_phase, WithinAbs(0.4, 1e-14));
  // Z = i exp(-i pi/2 Z) = e^{i pi/2} (0 I + i (-1) Z): half-angle pi/2.
  const AxisAngle z = axis_angle(pauli_z());
  CHECK_THAT(z.phi, WithinAbs(pi / 2, 1e-14));
  CHECK_THAT(std::abs(z.axis(2)), WithinAbs(1.0, 1e-14));
}

TEST_CASE("best_rational finds small convergents") {
  const RationalFit f = best_rational(3.0 / 8.0, 64);
  CHECK(f.p == 3);
  CHECK(f.q == 8);
  CHECK(f.error < 1e-15);
  CHECK(best_rational(std::sqrt(2.0), 64).error > 1e-5);
  CHECK(classify_angle(pi / 4) == AngleClass::rational);
  CHECK(classify_angle(5 * pi / 12) == AngleClass::rational);
  CHECK(classify_angle(std::acos(std::pow(std::cos(pi / 8), 2))) == AngleClass::irrational);
}

TEST_CASE("universality diagnostic on known pairs") {
  const UniversalityReport ht = universality_diagnostic(hadamard(), kTHT);
  CHECK(ht.verdict == Verdict::plausibly_universal);
  CHECK_FALSE(ht.rational_angle_flag);
  CHECK_THAT(std::cos(ht.phi_plus), WithinAbs(std::pow(std::cos(pi / 8), 2), 1e-12));
  CHECK(ht.axis_angle_between > 0.1);

  const UniversalityReport tht = universality_diagnostic(t_gate(), Mat2(hadamard() * t_gate()));
  CHECK(tht.verdict == Verdict::plausibly_universal);

  // Commuting pairs.
  CHECK(universality_diagnostic(pauli_z(), t_gate()).verdict == Verdict::not_universal);
  CHECK(universality_diagnostic(hadamard(), hadamard()).verdict == Verdict::not_universal);
  CHECK(universality_diagnostic(pauli_x(), pauli_z()).verdict == Verdict::not_universal);
  Rng rng = derive_rng(51, 0);
  const Mat2 u = haar_u2(rng);
  CHECK(universality_diagnostic(u, Mat2(u * u * u)).verdict == Verdict::not_universal);

  // Clifford generators: a finite group, never reported universal.
  CHECK(universality_diagnostic(hadamard(), phase_gate(pi / 2)).verdict == Verdict::inconclusive);

  // Generic pairs.
  for (int t = 0; t < 20; ++t) {
    CHECK(universality_diagnostic(haar_u2(rng), haar_u2(rng)).verdict == Verdict::plausibly_universal);
  }
}

TEST_CASE("word search agrees with brute-force enumeration") {
  Rng rng = derive_rng(52, 0);
  const std::vector<std::pair<Mat2, Mat2>> pairs{
      {hadamard(), kTHT}, {t_gate(), Mat2(hadamard() * t_gate())}, {haar_u2(rng), haar_u2(rng)}};
  for (const auto& [g0, g1] : pairs) {
    WordSearch search(g0, g1);
    for (int t = 0; t < 15; ++t) {
      const Mat2 target = haar_u2(rng);
      const double eps = 0.6;
      const auto oracle = brute_force(g0, g1, target, eps, 11);
      if (!oracle) {
        CHECK_THROWS_AS(search.find(target, eps, 11), SearchExhausted);
        continue;
      }
      const GateWord w = search.find(target, eps, 11);
      CHECK(w.length() == oracle->size());
      CHECK(w.distance < eps);
      CHECK_THAT(w.distance, WithinAbs(dist_phase(word_product(g0, g1, *oracle), target), 1e-12));
    }
  }
}

TEST_CASE("word search finds exact words") {
  const Mat2 u0 = t_gate();
  const Mat2 u1 = hadamard() * t_gate();
  const GateWord h = synthesize(u0, u1, hadamard(), 1e-10, 10);
  CHECK(h.distance < 1e-10);
  CHECK(h.length() <= 8);
  const GateWord id = synthesize(u0, u1, identity2(), 1e-10, 4);
  CHECK(id.length() == 0);
  const GateWord t = synthesize(u0, u1, std::polar(1.0, 0.7) * t_gate(), 1e-10, 4);
  CHECK(word_string(t.bits) == "0");
}

TEST_CASE("word search errors") {
  WordSearch s(pauli_z(), t_gate());
  CHECK_THROWS_AS(s.find(pauli_x(), 0.01, 30), SearchExhausted);
  CHECK_THROWS_AS(s.find(pauli_x(), 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(s.find(pauli_x(), 0.1, 63), std::invalid_argument);
  CHECK_THROWS_AS(s.find(Mat2::Ones(), 0.1, 3), NonUnitaryArgument);
  CHECK_THROWS_AS(WordSearch(Mat2::Ones(), pauli_x()), NonUnitaryArgument);
  // Commuting generators: the tables stop growing.
  CHECK(s.table_size(30) <= 8);
}

TEST_CASE("tables deduplicate equal products") {
  WordSearch s(hadamard(), kTHT);
  // H^2 = I and (THT)^3 ~ I collapse words.
  CHECK(s.table_size(3) < 8);
  CHECK(s.table_size(10) < 1024);
  for (int n = 1; n <= 6; ++n) CHECK(s.products(n).size() == s.table_size(n));
}

TEST_CASE("synthesis to Haar targets with {H, THT} at eps 0.05 and max length 48") {
  Rng rng = derive_rng(53, 0);
  WordSearch search(hadamard(), kTHT);
  int longest = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < 100; ++t) {
    const Mat2 target = haar_u2(rng);
    const GateWord w = search.find(target, 0.05, 48);
    CHECK(dist_phase(word_product(hadamard(), kTHT, w.bits), target) < 0.05);
    longest = std::max(longest, static_cast<int>(w.length()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(longest <= 48);
  CHECK(secs < 60.0);
}

TEST_CASE("density probe shrinks with depth") {
  const CoverageStats a = density_probe(hadamard(), kTHT, 8, 200);
  const CoverageStats b = density_probe(hadamard(), kTHT, 20, 200);
  CHECK(b.elements > a.elements);
  CHECK(b.covering_radius < a.covering_radius);
  CHECK(b.mean_nearest < a.mean_nearest);
  const CoverageStats c = density_probe(pauli_z(), t_gate(), 20, 50);
  CHECK(c.elements <= 8);
}
