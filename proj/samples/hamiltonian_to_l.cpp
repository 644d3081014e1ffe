// Sweeps theta: evolves the exchange Hamiltonian, turns it into an L
// interaction and reports whether its generator pair looks universal.

#include <cstdio>
#include <numbers>

#include "amqc/amqc.hpp"

int main() {
  using namespace amqc;
  for (int i = 0; i <= 8; ++i) {
    const double theta = std::numbers::pi * i / 8;
    const LInteraction l = derived_l_instance(theta);
    const Mat4 n = entangling_sequence(l);
    std::printf("theta = %5.3f  product-form error %.1e  N entangling %-5s  {v0, v1}: %s\n", theta,
                dist_phase(evolve(make_hamiltonian(theta)), product_form(theta)), is_entangling(n) ? "yes" : "no",
                to_string(universality_diagnostic(l.v0, l.v1).verdict));
  }
  return 0;
}
