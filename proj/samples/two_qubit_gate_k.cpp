// Builds the two-qubit K circuit for the T / HT instance, simulates it and
// compares the register gate with M.

#include <iostream>

#include "amqc/amqc.hpp"

int main() {
  using namespace amqc;
  const KInteraction k = specific_k_instance();
  const GateWord word = expand_u0_dagger(k, 1e-6);
  std::cout << "u0^dag word: " << word_string(word.bits) << " (distance " << word.distance << ")\n";

  const Schedule s = two_qubit_circuit(k, word);
  std::cout << to_text(s);

  const RunReport r = run(s, {{"K", k.k}});
  const Mat4 m = closed_form_m(k);
  std::cout << "distance to M: " << claim_distance(r, m) << '\n';
  std::cout << "locally equivalent to CZ: " << std::boolalpha << locally_equivalent(m, cz()) << '\n';
  return 0;
}
