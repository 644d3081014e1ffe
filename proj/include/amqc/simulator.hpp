#pragma once

// Executes a Schedule on an explicit statevector. Register qubit r is label
// r; each ancilla is appended as the most significant live qubit when it is
// prepared and factored out right after its last interaction, so the live
// dimension stays at 2^(register + concurrently live ancillas).

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "amqc/qmat.hpp"
#include "amqc/schedule.hpp"

namespace amqc {

using InteractionTable = std::map<std::string, Mat4, std::less<>>;

// Purity deficits below this count as product form.
inline constexpr double kDecoupledDeficit = 1e-10;
// Purity deficits above this are reported as entanglement.
inline constexpr double kEntangledDeficit = 1e-6;

struct RunOptions {
  // Replaces the computational-basis preparation of the named ancillas with
  // an arbitrary (normalized) pure state.
  std::map<std::string, Vec2> initial_states;
};

struct RunReport {
  MatN register_unitary;
  std::map<std::string, Vec2> ancilla_exit_states;
  // Worst purity deficit of each ancilla over all register basis inputs.
  std::map<std::string, double> purity_deficits;
  double max_norm_drift = 0.0;
  std::vector<std::string> warnings;
};

namespace detail {

inline Mat2 reduced_density(const VecN& state, int qubit) {
  Mat2 rho = Mat2::Zero();
  const std::size_t bit = std::size_t{1} << qubit;
  const auto dim = static_cast<std::size_t>(state.size());
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const cplx a0 = state(static_cast<Eigen::Index>(i));
    const cplx a1 = state(static_cast<Eigen::Index>(i | bit));
    rho(0, 0) += a0 * std::conj(a0);
    rho(0, 1) += a0 * std::conj(a1);
    rho(1, 0) += a1 * std::conj(a0);
    rho(1, 1) += a1 * std::conj(a1);
  }
  return rho;
}

// <chi|_qubit applied to state; removes the qubit.
inline VecN contract_qubit(const VecN& state, int qubit, const Vec2& chi) {
  const auto dim = static_cast<std::size_t>(state.size());
  const std::size_t low = (std::size_t{1} << qubit) - 1;
  VecN out(static_cast<Eigen::Index>(dim / 2));
  for (std::size_t j = 0; j < dim / 2; ++j) {
    const std::size_t i0 = ((j & ~low) << 1) | (j & low);
    const std::size_t i1 = i0 | (std::size_t{1} << qubit);
    out(static_cast<Eigen::Index>(j)) = std::conj(chi(0)) * state(static_cast<Eigen::Index>(i0)) +
                                        std::conj(chi(1)) * state(static_cast<Eigen::Index>(i1));
  }
  return out;
}

inline Vec2 dominant_state(const Mat2& rho) {
  const Eigen::SelfAdjointEigenSolver<Mat2> es(rho);
  Vec2 chi = es.eigenvectors().col(1);
  const Eigen::Index k = std::abs(chi(0)) >= std::abs(chi(1)) ? 0 : 1;
  chi *= std::abs(chi(k)) / chi(k);
  return chi;
}

}  // namespace detail

inline RunReport run(const Schedule& schedule, const InteractionTable& table,
                     const RunOptions& options = {}) {
  schedule.validate();
  const auto& ins = schedule.instructions;

  std::map<std::string, std::size_t> last_use;
  for (std::size_t i = 0; i < ins.size(); ++i) {
    if (const auto* p = std::get_if<Prep>(&ins[i])) {
      last_use[p->ancilla] = i;
    } else {
      const auto& in = std::get<Interact>(ins[i]);
      const auto it = table.find(in.interaction);
      if (it == table.end()) {
        throw ScheduleInvalid("unknown interaction '" + in.interaction + "'");
      }
      require_unitary(it->second, ("interaction " + in.interaction).c_str());
      last_use[in.ancilla] = i;
    }
  }
  for (const auto& [name, chi] : options.initial_states) {
    if (!last_use.count(name)) throw ScheduleInvalid("initial state for unknown ancilla '" + name + "'");
    if (std::abs(chi.norm() - 1.0) > 1e-12) {
      throw ScheduleInvalid("initial state for '" + name + "' is not normalized");
    }
  }

  const int n = schedule.register_size;
  const Eigen::Index dim = Eigen::Index{1} << n;
  RunReport report;
  report.register_unitary = MatN::Zero(dim, dim);
  std::set<std::string> warnings;

  for (Eigen::Index col = 0; col < dim; ++col) {
    VecN state = VecN::Zero(dim);
    state(col) = 1.0;
    int qubits = n;
    std::map<std::string, int> label;

    auto factor_out = [&](const std::string& anc, std::size_t step) {
      const int q = label.at(anc);
      const Mat2 rho = detail::reduced_density(state, q);
      const double deficit = std::max(0.0, 1.0 - (rho * rho).trace().real());
      Vec2 chi;
      double loss = deficit;
      if (col == 0) {
        chi = detail::dominant_state(rho);
      } else {
        chi = report.ancilla_exit_states.at(anc);
        // Distinct exit states across inputs entangle superposed inputs.
        loss = std::max(loss, 1.0 - (chi.adjoint() * rho * chi)(0, 0).real());
      }
      if (loss > kEntangledDeficit) {
        throw AncillaEntangledAtExit("ancilla '" + anc + "' does not decouple from the register (deficit " +
                                         std::to_string(loss) + ")",
                                     step);
      }
      if (loss > kDecoupledDeficit) {
        warnings.insert("ancilla '" + anc + "' decouples only approximately");
      }
      if (col == 0) report.ancilla_exit_states[anc] = chi;
      double& worst = report.purity_deficits[anc];
      worst = std::max(worst, deficit);
      state = detail::contract_qubit(state, q, chi);
      --qubits;
      label.erase(anc);
      for (auto& [other, l] : label) {
        if (l > q) --l;
      }
    };

    for (std::size_t i = 0; i < ins.size(); ++i) {
      if (const auto* p = std::get_if<Prep>(&ins[i])) {
        Vec2 init = Vec2::Zero();
        init(p->bit) = 1.0;
        if (const auto it = options.initial_states.find(p->ancilla); it != options.initial_states.end()) {
          init = it->second;
        }
        state = kron(init, state);
        label[p->ancilla] = qubits++;
      } else {
        const auto& in = std::get<Interact>(ins[i]);
        const double before = state.norm();
        detail::apply_in_place(state, qubits, table.find(in.interaction)->second,
                               {in.qubit, label.at(in.ancilla)});
        report.max_norm_drift = std::max(report.max_norm_drift, std::abs(state.norm() - before));
      }
      const std::string& anc = std::holds_alternative<Prep>(ins[i])
                                   ? std::get<Prep>(ins[i]).ancilla
                                   : std::get<Interact>(ins[i]).ancilla;
      if (last_use.at(anc) == i) factor_out(anc, i);
    }
    report.register_unitary.col(col) = state;
  }
  report.warnings.assign(warnings.begin(), warnings.end());
  return report;
}

inline double claim_distance(const RunReport& report, const MatN& claimed) {
  return dist_phase(report.register_unitary, claimed);
}

inline bool verify_against(const RunReport& report, const MatN& claimed, double tol) {
  return claim_distance(report, claimed) < tol;
}

}  // namespace amqc
