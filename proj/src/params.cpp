#include "moloconv/params.hpp"

#include <cmath>
#include <string>

namespace moloconv {

CollectiveCouplings collective_couplings(const SystemParams& p) {
  const double root_n = std::sqrt(static_cast<double>(p.n_molecules));
  CollectiveCouplings out{Freq{p.g_c.thz * root_n}, std::nullopt};
  if (const auto* phys = std::get_if<PhysicalDrive>(&p.drive)) out.g_a = Freq{phys->g_a.thz * root_n};
  return out;
}

namespace {

std::optional<ValidationError> require_finite(const char* field, Freq f) {
  if (!f.finite()) return ValidationError(field, "must be finite");
  return std::nullopt;
}

std::optional<ValidationError> require_nonnegative(const char* field, Freq f) {
  if (auto e = require_finite(field, f)) return e;
  if (f.thz < 0.0) return ValidationError(field, std::string(field) + " must be >= 0");
  return std::nullopt;
}

std::optional<ValidationError> require_positive(const char* field, Freq f) {
  if (auto e = require_finite(field, f)) return e;
  if (!(f.thz > 0.0)) return ValidationError(field, std::string(field) + " must be > 0");
  return std::nullopt;
}

}  // namespace

std::optional<ValidationError> find_violation(const SystemParams& p) {
  if (auto e = require_nonnegative("omega_b", p.omega_b)) return e;
  if (auto e = require_nonnegative("omega_c", p.omega_c)) return e;
  if (auto e = require_positive("kappa_a", p.kappa_a)) return e;
  if (auto e = require_positive("kappa_c", p.kappa_c)) return e;
  if (auto e = require_positive("gamma_B", p.gamma_B)) return e;
  if (auto e = require_finite("g_c", p.g_c)) return e;
  if (p.n_molecules < 1) return ValidationError("n_molecules", "n_molecules must be >= 1");
  if (!collective_couplings(p).g_c.finite()) return ValidationError("g_c", "collective coupling is not finite");

  if (const auto* d = std::get_if<DirectDrive>(&p.drive)) {
    if (auto e = require_finite("drive.delta", d->delta)) return e;
    if (!std::isfinite(d->g_a_enh.real()) || !std::isfinite(d->g_a_enh.imag()))
      return ValidationError("drive.g_a_enh", "must be finite");
  } else {
    const auto& b = std::get<PhysicalDrive>(p.drive);
    if (auto e = require_finite("drive.delta0", b.delta0)) return e;
    if (auto e = require_finite("drive.g_a", b.g_a)) return e;
    if (auto e = require_nonnegative("drive.eps_p", b.eps_p)) return e;
  }
  return std::nullopt;
}

void validate(const SystemParams& p) {
  if (auto e = find_violation(p)) throw *e;
}

}  // namespace moloconv
