#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "moloconv/params.hpp"

namespace moloconv {

/// One real solution of the mean-field equations. Mean fields are
/// dimensionless; frequencies are in THz.
struct SteadyStateBranch {
  double beta = 0.0;  // <B> + <B>^*
  std::complex<double> a_ss;
  std::complex<double> c_ss;
  std::complex<double> b_ss;
  Freq delta_eff;                  // Delta0 + G_a beta
  std::complex<double> g_a_enh;    // G_a <a>_ss, THz
};

struct SteadyStateSolution {
  std::vector<SteadyStateBranch> branches;  // ascending in beta
  std::size_t selected = 0;

  const SteadyStateBranch& branch() const { return branches.at(selected); }
  bool multistable() const { return branches.size() > 1; }
  /// Generic parameters give one or three real branches.
  bool generic_count() const { return branches.size() == 1 || branches.size() == 3; }
};

/// All real mean-field branches for a physical drive; the selected one is
/// followed by continuation from the undriven state. Throws NoConvergence.
SteadyStateSolution solve_steady_state(const SystemParams& p);

std::complex<double> enhanced_coupling(const SteadyStateSolution& sol, const SystemParams& p);

/// Largest relative residual over the three mean-field relations, evaluated
/// from the branch's own <a>, <c>, <B>.
double steady_state_residual(const SteadyStateBranch& branch, const SystemParams& p);

}  // namespace moloconv
