#pragma once

#include "moloconv/dynmat.hpp"
#include "moloconv/params.hpp"
#include "moloconv/scattering.hpp"

namespace moloconv {

/// Linearization point in angular units (rad/ps). Physical drives go
/// through the mean-field solve and use its selected branch.
ModeParams<double> mode_params(const SystemParams& p);

inline DynamicalSystem<double> full_system(const SystemParams& p) { return build_full(mode_params(p)); }

/// Red model for Delta >= 0, blue otherwise.
inline RwaKind rwa_kind_for(const ModeParams<double>& mp) {
  return mp.delta >= 0.0 ? RwaKind::RedDetuned : RwaKind::BlueDetuned;
}

inline ScatteringResult<double> evaluate(const DynamicalSystem<double>& sys, Freq omega) {
  return evaluate(sys, omega.angular());
}

}  // namespace moloconv
