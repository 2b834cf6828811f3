#pragma once

#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "moloconv/dynmat.hpp"
#include "moloconv/errors.hpp"

namespace moloconv {

// Sideband <-> Fourier frequency map. The anti-Stokes line (omega_p + omega_b)
// is read at omega = -omega_b and the Stokes line (omega_p - omega_b) at
// omega = +omega_b. Flipping this sign swaps every sideband result.
enum class Sideband { AntiStokes, Stokes };

template <typename Scalar>
constexpr Scalar sideband_frequency(Sideband sb, Scalar omega_b) {
  return sb == Sideband::AntiStokes ? -omega_b : omega_b;
}

/// Reciprocal condition number below which M + i*omega*I counts as singular.
inline constexpr double kSingularRcond = 1e-12;

/// U(omega) = L (M + i omega I)^-1 L - I, via an LU solve against L.
template <typename Scalar>
Matrix6c<Scalar> scattering_matrix(const DynamicalSystem<Scalar>& sys, Scalar omega) {
  using Mat = Matrix6c<Scalar>;
  const Mat shifted = sys.m + Complex<Scalar>(0, omega) * Mat::Identity();
  const Eigen::PartialPivLU<Mat> lu(shifted);
  const Scalar rcond = lu.rcond();
  if (!(rcond > Scalar(kSingularRcond)))
    throw SingularAtFrequency(static_cast<double>(omega), static_cast<double>(rcond));
  const Mat l = sys.l.diagonal().template cast<Complex<Scalar>>().asDiagonal();
  const Mat x = lu.solve(l);
  return sys.l * x - Mat::Identity();
}

/// Scattering probabilities T_{oo'} = |U_{o,o'}|^2 + |U_{o,o'+3}|^2.
template <typename Derived>
auto t_matrix(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::RealScalar;
  Eigen::Matrix<Scalar, 3, 3> t;
  for (int row = 0; row < kModeCount; ++row)
    for (int col = 0; col < kModeCount; ++col)
      t(row, col) = std::norm(u(row, col)) + std::norm(u(row, col + kDaggerOffset));
  return t;
}

/// Noise added to the VIS output by the VIS and vibrational vacuum inputs.
template <typename Scalar>
Scalar added_noise(const Eigen::Matrix<Scalar, 3, 3>& t) {
  return (t(kModeA, kModeA) + t(kModeA, kModeB)) / Scalar(2);
}

/// Symmetrized output spectra S_out = T (S_in + 1/2).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> output_spectrum(const Eigen::Matrix<Scalar, 3, 3>& t,
                                            const Eigen::Matrix<Scalar, 3, 1>& s_in) {
  if ((s_in.array() < Scalar(0)).any()) throw ConfigError("input spectrum must be non-negative");
  return t * (s_in.array() + Scalar(0.5)).matrix();
}

template <typename Scalar>
struct ScatteringResult {
  Scalar omega{};
  Matrix6c<Scalar> u;
  Eigen::Matrix<Scalar, 3, 3> t;
  Scalar s_add{};

  Scalar t_ac() const { return t(kModeA, kModeC); }
};

template <typename Scalar>
ScatteringResult<Scalar> evaluate(const DynamicalSystem<Scalar>& sys, Scalar omega) {
  ScatteringResult<Scalar> r;
  r.omega = omega;
  r.u = scattering_matrix(sys, omega);
  r.t = t_matrix(r.u);
  r.s_add = added_noise(r.t);
  return r;
}

template <typename Scalar>
struct Denominator {
  Complex<Scalar> value;
  Scalar scale{};  // sum of the moduli of its four terms
};

/// F(omega), the common denominator of the closed-form first row.
template <typename Scalar>
Denominator<Scalar> closed_form_denominator(const ModeParams<Scalar>& p, Scalar w) {
  using C = Complex<Scalar>;
  const C i(0, 1);
  const Scalar D = p.delta, ka = p.kappa_a, kc = p.kappa_c, gB = p.gamma_B;
  const Scalar wb = p.omega_b, wc = p.omega_c, Gc = p.g_c;
  const Scalar Ga2 = std::norm(p.g_a_enh);

  const C cav_a = D * D + (ka + i * w) * (ka + i * w);     // Delta^2 + (ka + i w)^2
  const C cav_c = (kc + i * w) * (kc + i * w) + wc * wc;   // (kc + i w)^2 + wc^2

  const C t1 = (gB * gB + Scalar(2) * i * gB * w) * cav_a * cav_c;
  const C t2 = Scalar(4) * Ga2 * D * wb * cav_c;
  const C t3 = cav_a * (wb * wb - w * w) * cav_c;
  const C t4 = cav_a * Scalar(4) * Gc * Gc * wb * wc;
  return {t1 - t2 + t3 - t4, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4)};
}

/// Closed-form first row U_11..U_16 of the full scattering matrix.
/// Independent of scattering_matrix(); used as its oracle.
template <typename Scalar>
Eigen::Matrix<Complex<Scalar>, 1, 6> closed_form_u1j(const ModeParams<Scalar>& p, Scalar w) {
  using C = Complex<Scalar>;
  using std::sqrt;
  const C i(0, 1);
  const Scalar D = p.delta, ka = p.kappa_a, kc = p.kappa_c, gB = p.gamma_B;
  const Scalar wb = p.omega_b, wc = p.omega_c, Gc = p.g_c;
  const C Ga = p.g_a_enh;
  const Scalar Ga2 = std::norm(Ga);

  const auto [F, scale] = closed_form_denominator(p, w);
  if (!(std::abs(F) > Scalar(16) * std::numeric_limits<Scalar>::epsilon() * scale))
    throw PoleAtFrequency(static_cast<double>(w), "F(omega)");

  const C cav_c = (kc + i * w) * (kc + i * w) + wc * wc;
  const C da = D + i * ka;
  const C drive = D - w + i * ka;
  const C wc_shift = (w - i * kc) * (w - i * kc) - wc * wc;

  Eigen::Matrix<C, 1, 6> u;
  u(0) = (cav_c * ((da * da - w * w) * ((w - i * gB) * (w - i * gB) - wb * wb) +
                   Scalar(4) * Ga2 * wb * da) +
          Scalar(4) * Gc * Gc * wb * wc * (da * da - w * w)) / F;
  u(1) = Scalar(4) * Gc * Ga * sqrt(ka * kc) * wb * drive * (kc + i * (w - wc)) / F;
  u(2) = Scalar(2) * i * Ga * sqrt(ka * gB) * drive * (w - wb - i * gB) * wc_shift / F;
  u(3) = Scalar(4) * i * Ga * Ga * ka * wb * cav_c / F;
  u(4) = Scalar(4) * Gc * Ga * sqrt(ka * kc) * wb * drive * (kc + i * (w + wc)) / F;
  u(5) = Scalar(2) * i * Ga * sqrt(ka * gB) * drive * (w + wb - i * gB) * wc_shift / F;
  return u;
}

enum class DetuningRegime { Red, Blue, Other };

inline const char* to_string(DetuningRegime r) {
  switch (r) {
    case DetuningRegime::Red: return "red";
    case DetuningRegime::Blue: return "blue";
    default: return "other";
  }
}

inline constexpr double kRegimeTolerance = 1e-6;

template <typename Scalar>
DetuningRegime detuning_regime(const ModeParams<Scalar>& p) {
  using std::abs;
  const Scalar tol = Scalar(kRegimeTolerance) * abs(p.omega_b);
  if (abs(p.delta - p.omega_b) <= tol) return DetuningRegime::Red;
  if (abs(p.delta + p.omega_b) <= tol) return DetuningRegime::Blue;
  return DetuningRegime::Other;
}

template <typename Scalar>
struct SidebandReport {
  Scalar t_ac_AS{};
  Scalar t_ac_S{};
  Scalar n_add_AS{};
  Scalar n_add_S{};
  DetuningRegime detuning_regime = DetuningRegime::Other;
};

inline constexpr double kZeroEfficiency = 1e-30;

/// Conversion efficiency and added noise quanta at both first sidebands.
template <typename Scalar>
SidebandReport<Scalar> sideband_report(const DynamicalSystem<Scalar>& sys) {
  const Scalar wb = sys.params.omega_b;
  const auto as = evaluate(sys, sideband_frequency(Sideband::AntiStokes, wb));
  const auto s = evaluate(sys, sideband_frequency(Sideband::Stokes, wb));
  if (as.t_ac() < Scalar(kZeroEfficiency) || s.t_ac() < Scalar(kZeroEfficiency))
    throw ZeroEfficiency("T_ac vanishes at a sideband; added noise is undefined");

  SidebandReport<Scalar> r;
  r.t_ac_AS = as.t_ac();
  r.t_ac_S = s.t_ac();
  r.n_add_AS = as.s_add / as.t_ac();
  r.n_add_S = s.s_add / s.t_ac();
  r.detuning_regime = detuning_regime(sys.params);
  return r;
}

}  // namespace moloconv
