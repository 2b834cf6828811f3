#pragma once

#include <string_view>
#include <vector>

#include "moloconv/params.hpp"

namespace moloconv {

// Figure parameter sets (all /2pi, THz unless noted):
//
//   preset      Delta   |G_a|  kappa_a  kappa_c  gamma_B  omega_b=omega_c  N     g_c
//   fig2        -30     0.75   30       0.5      0.1      30               1e7   0.1 GHz
//   fig4-red    +30     3      30       0.5      0.1      30               1e7   0.1 GHz
//   fig4-blue   -30     3      30       0.5      0.1      30               1e7   0.1 GHz
//   fig6-red    +30     0.75   2        0.5      0.1      30               1e7   0.1 GHz
//   fig6-blue   -30     0.75   2        0.5      0.1      30               1e7   0.1 GHz
//
// Fig. 5 reuses the fig4 sets at |G_a| = 1, 2, 3. Fig. 2 sweeps |G_a| or
// kappa_a against N around its base point. The quoted pump amplitude
// eps_p/2pi = 500 THz is not needed with a direct drive and is not stored.
struct Preset {
  std::string_view name;
  std::string_view description;
  SystemParams params;
};

const std::vector<Preset>& presets();

/// Throws ConfigError for unknown names.
const Preset& find_preset(std::string_view name);

/// Shared base of every figure: omega_b = omega_c = 30, N = 1e7, g_c = 1e-4,
/// kappa_a = 30, kappa_c = 0.5, gamma_B = 0.1 (THz), with the given drive.
SystemParams figure_base(Freq delta, double g_a_enh_thz);

}  // namespace moloconv
