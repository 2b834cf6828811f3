#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <variant>

#include "moloconv/errors.hpp"
#include "moloconv/units.hpp"

namespace moloconv {

/// Drive given directly by the linearization point: effective detuning and
/// enhanced collective coupling G_a <a>_ss (complex, THz).
struct DirectDrive {
  Freq delta;
  std::complex<double> g_a_enh{0.0, 0.0};
};

/// Drive given by the bare pump; the linearization point comes out of the
/// mean-field steady state.
struct PhysicalDrive {
  Freq delta0;
  Freq g_a;    // single-molecule optomechanical coupling
  Freq eps_p;  // pump amplitude
};

using DriveSpec = std::variant<DirectDrive, PhysicalDrive>;

struct SystemParams {
  Freq omega_b;  // molecular vibration
  Freq omega_c;  // IR mode
  Freq kappa_a;  // VIS decay
  Freq kappa_c;  // IR decay
  Freq gamma_B;  // collective vibrational decay
  Freq g_c;      // single-molecule bilinear coupling
  std::int64_t n_molecules = 1;
  DriveSpec drive = DirectDrive{};
};

struct CollectiveCouplings {
  Freq g_c;                 // g_c sqrt(N)
  std::optional<Freq> g_a;  // g_a sqrt(N), physical drives only
};

CollectiveCouplings collective_couplings(const SystemParams& p);

/// First violated invariant, if any.
std::optional<ValidationError> find_violation(const SystemParams& p);

/// Throws the first violated invariant.
void validate(const SystemParams& p);

inline bool is_direct(const SystemParams& p) { return std::holds_alternative<DirectDrive>(p.drive); }

}  // namespace moloconv
