#include "moloconv/model.hpp"

#include "moloconv/steady_state.hpp"

namespace moloconv {

ModeParams<double> mode_params(const SystemParams& p) {
  validate(p);
  ModeParams<double> mp;
  if (const auto* d = std::get_if<DirectDrive>(&p.drive)) {
    mp.delta = d->delta.thz;
    mp.g_a_enh = d->g_a_enh;
  } else {
    const auto sol = solve_steady_state(p);
    mp.delta = sol.branch().delta_eff.thz;
    mp.g_a_enh = sol.branch().g_a_enh;
  }
  mp.g_c = collective_couplings(p).g_c.thz;
  mp.omega_b = p.omega_b.thz;
  mp.omega_c = p.omega_c.thz;
  mp.kappa_a = p.kappa_a.thz;
  mp.kappa_c = p.kappa_c.thz;
  mp.gamma_B = p.gamma_B.thz;
  return mp.scaled(kTwoPi);
}

}  // namespace moloconv
