#pragma once

#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "moloconv/dynmat.hpp"
#include "moloconv/errors.hpp"
#include "moloconv/scattering.hpp"

namespace moloconv {

template <typename Scalar>
struct RwaScattering {
  RwaKind kind = RwaKind::RedDetuned;
  Scalar omega{};
  Matrix3c<Scalar> u3;
  Scalar t_ac{};   // |U_12|^2
  Scalar s_add{};  // (|U_11|^2 + |U_13|^2) / 2
};

/// U(omega) = J (m3 + i omega I)^-1 J - I of the 3x3 rotating-wave model.
template <typename Scalar>
RwaScattering<Scalar> rwa_scattering(const RwaSystem<Scalar>& sys, Scalar omega) {
  using Mat = Matrix3c<Scalar>;
  const Eigen::PartialPivLU<Mat> lu(sys.m3 + Complex<Scalar>(0, omega) * Mat::Identity());
  const Scalar rcond = lu.rcond();
  if (!(rcond > Scalar(kSingularRcond)))
    throw SingularAtFrequency(static_cast<double>(omega), static_cast<double>(rcond));
  const Mat j = sys.j3.diagonal().template cast<Complex<Scalar>>().asDiagonal();

  RwaScattering<Scalar> r;
  r.kind = sys.kind;
  r.omega = omega;
  r.u3 = sys.j3 * lu.solve(j) - Mat::Identity();
  r.t_ac = std::norm(r.u3(0, 1));
  r.s_add = (std::norm(r.u3(0, 0)) + std::norm(r.u3(0, 2))) / Scalar(2);
  return r;
}

/// Closed-form U_12 of the rotating-wave model (oracle for rwa_scattering).
template <typename Scalar>
Complex<Scalar> closed_form_rwa_u12(RwaKind kind, const ModeParams<Scalar>& p, Scalar w) {
  using C = Complex<Scalar>;
  using std::sqrt;
  const C i(0, 1);
  const Scalar Ga2 = std::norm(p.g_a_enh);
  const Scalar Gc2 = p.g_c * p.g_c;
  const C num = Scalar(2) * p.g_c * p.g_a_enh * sqrt(p.kappa_a * p.kappa_c);
  const C x_a = i * p.delta + i * w + p.kappa_a;

  C t1, t2;
  if (kind == RwaKind::RedDetuned) {
    t1 = Gc2 * x_a;
    t2 = (Ga2 + x_a * (i * p.omega_b + i * w + p.gamma_B)) * (i * p.omega_c + i * w + p.kappa_c);
  } else {
    t1 = Gc2 * x_a;
    t2 = (x_a * (i * w - i * p.omega_b + p.gamma_B) - Ga2) * (i * w - i * p.omega_c + p.kappa_c);
  }
  const C den = t1 + t2;
  const Scalar scale = std::abs(t1) + std::abs(t2) + Ga2 * std::abs(i * p.omega_c + i * w + p.kappa_c);
  if (!(std::abs(den) > Scalar(16) * std::numeric_limits<Scalar>::epsilon() * scale))
    throw PoleAtFrequency(static_cast<double>(w), "rotating-wave U_12");
  return kind == RwaKind::RedDetuned ? -num / den : num / den;
}

template <typename Scalar>
struct SidebandEfficiencies {
  Scalar t_AS{};
  Scalar t_S{};
};

/// Relative distance to the blue-detuned Stokes divergence below which the
/// closed form reports a pole instead of a huge number.
inline constexpr double kThresholdGuard = 1e-6;

/// Resonant sideband efficiencies of the rotating-wave model. Requires
/// omega_c = omega_b and Delta = +omega_b (red) or -omega_b (blue).
template <typename Scalar>
SidebandEfficiencies<Scalar> sideband_closed_forms(RwaKind kind, const ModeParams<Scalar>& p) {
  using C = Complex<Scalar>;
  using std::abs;
  const Scalar tol = Scalar(kRegimeTolerance) * abs(p.omega_b);
  const Scalar want_delta = kind == RwaKind::RedDetuned ? p.omega_b : -p.omega_b;
  if (abs(p.delta - want_delta) > tol)
    throw PrereqViolation(kind == RwaKind::RedDetuned ? "red closed forms need Delta = +omega_b"
                                                      : "blue closed forms need Delta = -omega_b");
  if (abs(p.omega_c - p.omega_b) > tol) throw PrereqViolation("closed forms need omega_c = omega_b");

  const C i(0, 1);
  const Scalar ka = p.kappa_a, kc = p.kappa_c, gB = p.gamma_B;
  const Scalar Ga2 = std::norm(p.g_a_enh);
  const Scalar Gc2 = p.g_c * p.g_c;
  const Scalar num2 = Scalar(4) * Gc2 * Ga2 * ka * kc;  // |2 G_c G_a sqrt(ka kc)|^2
  const C gam_a = Scalar(2) * i * p.omega_b + ka;
  const C gam_c = Scalar(2) * i * p.omega_b + kc;
  const C gam_B = Scalar(2) * i * p.omega_b + gB;

  SidebandEfficiencies<Scalar> out;
  if (kind == RwaKind::RedDetuned) {
    const Scalar den_as = Gc2 * ka + Ga2 * kc + ka * kc * gB;
    out.t_AS = num2 / (den_as * den_as);
    out.t_S = num2 / std::norm(Gc2 * gam_a + Ga2 * gam_c + gam_a * gam_c * gam_B);
  } else {
    out.t_AS = num2 / std::norm(Gc2 * gam_a - Ga2 * gam_c + gam_a * gam_c * gam_B);
    const Scalar gain_free = Gc2 * ka + ka * kc * gB;
    const Scalar den_s = gain_free - Ga2 * kc;
    if (abs(den_s) <= Scalar(kThresholdGuard) * gain_free)
      throw PoleAtFrequency(static_cast<double>(p.omega_b), "blue-detuned Stokes efficiency");
    out.t_S = num2 / (den_s * den_s);
  }
  return out;
}

/// |G_a| maximizing the red anti-Stokes efficiency (impedance matching), or
/// the blue Stokes divergence point.
template <typename Scalar>
Scalar optimal_coupling(RwaKind kind, const ModeParams<Scalar>& p) {
  using std::sqrt;
  const Scalar ratio = p.g_c * p.g_c * p.kappa_a / p.kappa_c;
  return kind == RwaKind::RedDetuned ? sqrt(ratio) : sqrt(ratio + p.kappa_a * p.gamma_B);
}

}  // namespace moloconv
