// Approximates a few rotations with words over {H, THT}.

#include <cstdio>
#include <cstdlib>

#include "amqc/amqc.hpp"

int main(int argc, char** argv) {
  using namespace amqc;
  const double eps = argc > 1 ? std::atof(argv[1]) : 0.05;
  const Mat2 g0 = hadamard();
  const Mat2 g1 = t_gate() * hadamard() * t_gate();
  const UniversalityReport diag = universality_diagnostic(g0, g1);
  std::printf("diagnostic: %s (axis separation %.4f rad)\n", to_string(diag.verdict), diag.axis_angle_between);

  WordSearch search(g0, g1);
  Rng rng = derive_rng(1, 0);
  for (int i = 0; i < 5; ++i) {
    const Mat2 target = haar_u2(rng);
    try {
      const GateWord w = search.find(target, eps, 48);
      std::printf("target %d: length %zu distance %.3g word %s\n", i, w.length(), w.distance,
                  word_string(w.bits).c_str());
    } catch (const SearchExhausted& e) {
      std::printf("target %d: %s\n", i, e.what());
    }
  }
  return 0;
}
