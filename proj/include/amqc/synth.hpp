#pragma once

// Generator-pair machinery for single-qubit gates: axis-angle coordinates,
// a universality diagnostic, and shortest-word synthesis.
//
// A GateWord k_1 ... k_n over generators (g0, g1) denotes the product
// g_{k_n} ... g_{k_1}: k_1 is applied first.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amqc/errors.hpp"
#include "amqc/qmat.hpp"
#include "amqc/random.hpp"

namespace amqc {

// ---------------------------------------------------------------------------
// SU(2) coordinates

// g = e^{i global_phase} (w I + i (x X + y Y + z Z)) with w >= 0.
struct Su2Point {
  Eigen::Vector4d q;  // (w, x, y, z), unit norm
  double global_phase;
};

inline Su2Point to_su2(const Mat2& g) {
  double alpha = 0.5 * std::arg(g.determinant());
  const Mat2 s = std::polar(1.0, -alpha) * g;
  Eigen::Vector4d q(0.5 * (s(0, 0) + s(1, 1)).real(), 0.5 * (s(0, 1) + s(1, 0)).imag(),
                    0.5 * (s(0, 1) - s(1, 0)).real(), 0.5 * (s(0, 0) - s(1, 1)).imag());
  if (q(0) < 0.0) {
    q = -q;
    alpha += std::numbers::pi;
  }
  return {q, alpha};
}

struct AxisAngle {
  double phi = 0.0;  // rotation half-angle, in [0, pi/2] after sign canonicalization
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  double global_phase = 0.0;
  bool degenerate = false;  // phi ~ 0: axis undefined, reported as +z
};

// g = e^{i global_phase} exp(i phi n.sigma) = e^{i global_phase}(cos phi I + i sin phi n.sigma)
inline AxisAngle axis_angle(const Mat2& g) {
  require_unitary(g, "axis_angle: g");
  const Su2Point p = to_su2(g);
  const Eigen::Vector3d v = p.q.tail<3>();
  const double s = v.norm();
  AxisAngle out;
  out.global_phase = p.global_phase;
  out.phi = std::atan2(s, p.q(0));
  if (s < 1e-12) {
    out.degenerate = true;
  } else {
    out.axis = v / s;
  }
  return out;
}

inline Mat2 reconstruct(const AxisAngle& a) {
  Mat2 x, y, z;
  x << 0, 1, 1, 0;
  y << 0, cplx(0, -1), cplx(0, 1), 0;
  z << 1, 0, 0, -1;
  const Mat2 n_sigma = a.axis(0) * x + a.axis(1) * y + a.axis(2) * z;
  return std::polar(1.0, a.global_phase) *
         (std::cos(a.phi) * Mat2::Identity() + cplx(0.0, std::sin(a.phi)) * n_sigma);
}

// Angle between two rotation axes taken as lines, in [0, pi/2].
inline double axis_separation(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), std::abs(a.dot(b)));
}

// ---------------------------------------------------------------------------
// Rational-angle heuristic

struct RationalFit {
  long p = 0;
  long q = 1;
  double error = std::numeric_limits<double>::infinity();
};

// Closest continued-fraction convergent of x >= 0 with denominator <= max_den.
// Any p/q with q <= max_den and |x - p/q| < 1/(2 q^2) is a convergent, so this
// is exhaustive at the tolerances used below.
inline RationalFit best_rational(double x, long max_den) {
  RationalFit best;
  long h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    const long ai = static_cast<long>(a);
    const long h = ai * h1 + h2;
    const long k = ai * k1 + k2;
    if (k > max_den) break;
    const double err = std::abs(x - static_cast<double>(h) / static_cast<double>(k));
    if (err < best.error) best = {h, k, err};
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return best;
}

inline constexpr long kRationalMaxDenominator = 64;
inline constexpr double kRationalTol = 1e-9;
inline constexpr double kRationalBorderline = 1e-6;
inline constexpr double kParallelTol = 1e-6;

enum class AngleClass { rational, borderline, irrational };

inline AngleClass classify_angle(double phi) {
  const double err = best_rational(std::abs(phi) / std::numbers::pi, kRationalMaxDenominator).error;
  if (err < kRationalTol) return AngleClass::rational;
  if (err < kRationalBorderline) return AngleClass::borderline;
  return AngleClass::irrational;
}

// ---------------------------------------------------------------------------
// Gate words

struct GateWord {
  std::vector<std::uint8_t> bits;
  double distance = 0.0;  // dist_phase(product, target) at synthesis time

  std::size_t length() const noexcept { return bits.size(); }
};

inline Mat2 word_product(const Mat2& g0, const Mat2& g1, const std::vector<std::uint8_t>& bits) {
  Mat2 m = Mat2::Identity();
  for (std::uint8_t b : bits) m = (b ? g1 : g0) * m;
  return m;
}

inline std::string word_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (std::uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

// ---------------------------------------------------------------------------
// Universality diagnostic

enum class Verdict { plausibly_universal, not_universal, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::plausibly_universal: return "plausibly-universal";
    case Verdict::not_universal: return "not-universal";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct UniversalityReport {
  double phi0 = 0.0;
  double phi1 = 0.0;
  double phi_plus = 0.0;   // g0 g1
  double phi_minus = 0.0;  // g1 g0
  double axis_angle_between = 0.0;  // axes of g0 g1 and g1 g0
  bool rational_angle_flag = false;  // g0 g1 or g1 g0 has a rational-looking angle
  Verdict verdict = Verdict::inconclusive;
  // Two short words with irrational angles and non-parallel axes, when found.
  std::vector<std::uint8_t> witness_a;
  std::vector<std::uint8_t> witness_b;
};

// Two elements with angles that are irrational multiples of pi about
// non-parallel axes generate a dense subgroup of SU(2). Irrationality is
// judged by the rational-angle heuristic. Candidates are g0 g1 and g1 g0,
// then every word of length <= 3.
inline UniversalityReport universality_diagnostic(const Mat2& g0, const Mat2& g1) {
  require_unitary(g0, "universality_diagnostic: g0");
  require_unitary(g1, "universality_diagnostic: g1");
  UniversalityReport rep;
  const Mat2 plus = g0 * g1;
  const Mat2 minus = g1 * g0;
  const AxisAngle a0 = axis_angle(g0);
  const AxisAngle a1 = axis_angle(g1);
  const AxisAngle ap = axis_angle(plus);
  const AxisAngle am = axis_angle(minus);
  rep.phi0 = a0.phi;
  rep.phi1 = a1.phi;
  rep.phi_plus = ap.phi;
  rep.phi_minus = am.phi;
  rep.axis_angle_between =
      (ap.degenerate || am.degenerate) ? 0.0 : axis_separation(ap.axis, am.axis);
  rep.rational_angle_flag = classify_angle(ap.phi) != AngleClass::irrational ||
                            classify_angle(am.phi) != AngleClass::irrational;

  if (dist_phase(plus, minus) < 1e-10) {
    rep.verdict = Verdict::not_universal;
    return rep;
  }

  // g0 g1 applies g1 first: bits (1, 0).
  std::vector<std::vector<std::uint8_t>> words = {{1, 0}, {0, 1}};
  for (std::size_t len = 1; len <= 3; ++len) {
    for (std::uint32_t w = 0; w < (1U << len); ++w) {
      std::vector<std::uint8_t> bits(len);
      for (std::size_t i = 0; i < len; ++i) bits[i] = (w >> (len - 1 - i)) & 1U;
      if (len == 2 && (bits == words[0] || bits == words[1])) continue;
      words.push_back(bits);
    }
  }
  struct Candidate {
    AxisAngle aa;
    AngleClass cls;
  };
  std::vector<Candidate> cands;
  for (const auto& w : words) {
    const AxisAngle aa = axis_angle(word_product(g0, g1, w));
    const AngleClass cls = aa.degenerate ? AngleClass::rational : classify_angle(aa.phi);
    cands.push_back({aa, cls});
  }
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].cls != AngleClass::irrational) continue;
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      if (cands[j].cls != AngleClass::irrational) continue;
      if (axis_separation(cands[i].aa.axis, cands[j].aa.axis) > kParallelTol) {
        rep.verdict = Verdict::plausibly_universal;
        rep.witness_a = words[i];
        rep.witness_b = words[j];
        return rep;
      }
    }
  }
  // Rational or borderline angles everywhere: a finite group is possible
  // but cannot be certified numerically.
  rep.verdict = Verdict::inconclusive;
  return rep;
}

// ---------------------------------------------------------------------------
// Word search

// Shortest-word search over a fixed generator pair. Words of length n are
// split into a prefix of ceil(n/2) letters (applied first) and a suffix of
// floor(n/2) letters; the prefix tables are bucketed on the (x, y, z) chart
// of their SU(2) point, and each suffix A is matched against A^dag target.
// Tables are built once per length and cached, so one instance serves many
// targets.
class WordSearch {
 public:
  static constexpr int kMaxWordLength = 62;

  WordSearch(const Mat2& g0, const Mat2& g1, std::size_t max_table_size = std::size_t{1} << 21)
      : g0_(g0), g1_(g1), max_table_size_(max_table_size) {
    require_unitary(g0, "WordSearch: g0");
    require_unitary(g1, "WordSearch: g1");
    Entry id{Mat2::Identity(), to_su2(Mat2::Identity()).q, 0};
    tables_.push_back({id});
  }

  const Mat2& g0() const noexcept { return g0_; }
  const Mat2& g1() const noexcept { return g1_; }

  // Shortest word with dist_phase(product, target) < epsilon; among equal
  // lengths the smallest distance wins, then the lexicographically smallest
  // word (0 before 1, compared from k_1).
  GateWord find(const Mat2& target, double epsilon, int max_len) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("synthesize: epsilon must be positive");
    if (max_len < 0 || max_len > kMaxWordLength) {
      throw std::invalid_argument("synthesize: max_len out of range");
    }
    require_unitary(target, "synthesize: target");
    const double radius = epsilon / std::numbers::sqrt2;
    for (int n = 0; n <= max_len; ++n) {
      const int prefix_len = (n + 1) / 2;
      const int suffix_len = n / 2;
      const auto& prefixes = table(prefix_len);
      const auto& suffixes = table(suffix_len);
      const Buckets& buckets = index(prefix_len, radius);

      struct Hit {
        double dist;
        std::uint64_t bits;
      };  // dist from the split product
      std::vector<Hit> hits;
      for (const Entry& a : suffixes) {
        const Mat2 rest = a.m.adjoint() * target;
        const Eigen::Vector4d t = to_su2(rest).q;
        for (double sign : {1.0, -1.0}) {
          const Eigen::Vector4d ts = sign * t;
          visit_neighbours(buckets, ts, radius, [&](std::uint32_t idx) {
            const Entry& b = prefixes[idx];
            if ((b.q - ts).norm() > radius * (1.0 + 1e-9) + 1e-12) return;
            const double d = dist_phase(Mat2(a.m * b.m), target);
            if (d < epsilon) hits.push_back({d, (b.bits << suffix_len) | a.bits});
          });
        }
      }
      // Recompute along the word itself; the split product can differ in
      // the last bits.
      std::vector<GateWord> found;
      for (const Hit& h : hits) {
        GateWord w;
        w.bits = unpack(h.bits, n);
        w.distance = dist_phase(word_product(g0_, g1_, w.bits), target);
        if (w.distance < epsilon) found.push_back(std::move(w));
      }
      if (found.empty()) continue;
      double best = found.front().distance;
      for (const GateWord& w : found) best = std::min(best, w.distance);
      const GateWord* pick = nullptr;
      for (const GateWord& w : found) {
        if (w.distance > best + 1e-12) continue;
        if (!pick || w.bits < pick->bits) pick = &w;
      }
      return *pick;
    }
    throw SearchExhausted("no word of length <= " + std::to_string(max_len) +
                          " within epsilon " + std::to_string(epsilon));
  }

  // Distinct products of all words of length exactly `len`, in word order.
  std::vector<Mat2> products(int len) {
    std::vector<Mat2> out;
    for (const Entry& e : table(len)) out.push_back(e.m);
    return out;
  }

  std::size_t table_size(int len) { return table(len).size(); }

 private:
  struct Entry {
    Mat2 m;
    Eigen::Vector4d q;
    std::uint64_t bits;  // k_1 in the most significant used bit
  };
  using Buckets = std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>;

  struct KeyHash {
    std::size_t operator()(const std::array<std::int64_t, 4>& k) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (std::int64_t v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  static std::vector<std::uint8_t> unpack(std::uint64_t bits, int n) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = (bits >> (n - 1 - i)) & 1U;
    return out;
  }

  const std::vector<Entry>& table(int len) {
    while (static_cast<int>(tables_.size()) <= len) {
      const auto& prev = tables_.back();
      std::vector<Entry> next;
      next.reserve(prev.size() * 2);
      std::unordered_set<std::array<std::int64_t, 4>, KeyHash> seen;
      for (const Entry& e : prev) {
        for (std::uint64_t b = 0; b < 2; ++b) {
          const Mat2 m = (b ? g1_ : g0_) * e.m;
          const Eigen::Vector4d q = to_su2(m).q;
          std::array<std::int64_t, 4> key{};
          for (int i = 0; i < 4; ++i) key[i] = static_cast<std::int64_t>(std::llround(q(i) * 1e10));
          if (!seen.insert(key).second) continue;
          next.push_back({m, q, (e.bits << 1) | b});
        }
      }
      if (next.size() > max_table_size_) {
        throw SearchExhausted("word table for length " + std::to_string(tables_.size()) +
                              " exceeds the size cap");
      }
      tables_.push_back(std::move(next));
    }
    return tables_[static_cast<std::size_t>(len)];
  }

  static std::array<std::int64_t, 3> cell_of(const Eigen::Vector4d& q, double cell) {
    return {static_cast<std::int64_t>(std::floor(q(1) / cell)),
            static_cast<std::int64_t>(std::floor(q(2) / cell)),
            static_cast<std::int64_t>(std::floor(q(3) / cell))};
  }

  static std::uint64_t cell_key(std::int64_t x, std::int64_t y, std::int64_t z) {
    std::uint64_t h = static_cast<std::uint64_t>(x) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(y) * 0xc2b2ae3d27d4eb4fULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(z) * 0x165667b19e3779f9ULL + (h << 6) + (h >> 2);
    return h;
  }

  const Buckets& index(int len, double cell) {
    const auto key = std::make_pair(len, cell);
    if (auto it = indices_.find(key); it != indices_.end()) return it->second;
    Buckets b;
    const auto& t = table(len);
    for (std::uint32_t i = 0; i < t.size(); ++i) {
      const auto c = cell_of(t[i].q, cell);
      b[cell_key(c[0], c[1], c[2])].push_back(i);
    }
    return indices_.emplace(key, std::move(b)).first->second;
  }

  // Visits every entry whose cell neighbours the cell of q (cell edge ==
  // radius, and the (x, y, z) projection is 1-Lipschitz).
  template <typename F>
  static void visit_neighbours(const Buckets& b, const Eigen::Vector4d& q, double cell, F&& f) {
    const auto c = cell_of(q, cell);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = b.find(cell_key(c[0] + dx, c[1] + dy, c[2] + dz));
          if (it == b.end()) continue;
          for (std::uint32_t idx : it->second) f(idx);
        }
      }
    }
  }

  Mat2 g0_;
  Mat2 g1_;
  std::size_t max_table_size_;
  std::vector<std::vector<Entry>> tables_;
  std::map<std::pair<int, double>, Buckets> indices_;
};

inline GateWord synthesize(const Mat2& g0, const Mat2& g1, const Mat2& target, double epsilon,
                           int max_len) {
  WordSearch search(g0, g1);
  return search.find(target, epsilon, max_len);
}

// ---------------------------------------------------------------------------
// Density probe

struct CoverageStats {
  int depth = 0;
  std::size_t elements = 0;     // distinct products of words of length <= depth
  double covering_radius = 0.0;  // max over samples of distance to the nearest product
  double mean_nearest = 0.0;
};

// Covering-radius estimate of the words of length <= depth over a Haar
// sample of SU(2).
inline CoverageStats density_probe(const Mat2& g0, const Mat2& g1, int depth, int samples = 1000,
                                   std::uint64_t seed = 0xc0ffee) {
  WordSearch search(g0, g1);
  std::vector<Eigen::Vector4d> points;
  std::set<std::array<std::int64_t, 4>> seen;
  for (int len = 0; len <= depth; ++len) {
    for (const Mat2& m : search.products(len)) {
      const Eigen::Vector4d q = to_su2(m).q;
      std::array<std::int64_t, 4> key{};
      for (int i = 0; i < 4; ++i) key[i] = static_cast<std::int64_t>(std::llround(q(i) * 1e10));
      if (seen.insert(key).second) points.push_back(q);
    }
  }
  Rng rng = derive_rng(seed, 0);
  CoverageStats stats;
  stats.depth = depth;
  stats.elements = points.size();
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::Vector4d t = to_su2(haar_u2(rng)).q;
    double best = 0.0;
    for (const auto& p : points) best = std::max(best, std::abs(p.dot(t)));
    const double d = 2.0 * std::sqrt(std::max(0.0, 1.0 - best));
    stats.covering_radius = std::max(stats.covering_radius, d);
    sum += d;
  }
  stats.mean_nearest = samples > 0 ? sum / samples : 0.0;
  return stats;
}

}  // namespace amqc
