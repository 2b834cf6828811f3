#pragma once

#include <complex>

#include <Eigen/Dense>

namespace moloconv {

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using Matrix6c = Eigen::Matrix<Complex<Scalar>, 6, 6>;
template <typename Scalar>
using Matrix3c = Eigen::Matrix<Complex<Scalar>, 3, 3>;
template <typename Scalar>
using Vector6c = Eigen::Matrix<Complex<Scalar>, 6, 1>;

// Fluctuation vector ordering (da, dc, dB, da^+, dc^+, dB^+). Mode k's
// annihilation component sits at index k, its creation component at
// k + kDaggerOffset. Every index below derives from these.
enum Mode : int { kModeA = 0, kModeC = 1, kModeB = 2 };
inline constexpr int kModeCount = 3;
inline constexpr int kDaggerOffset = 3;

/// Linearization point of the three-mode model. All entries share one
/// frequency unit (the library pipeline uses angular rad/ps); every routine
/// taking a frequency expects it in that same unit.
template <typename Scalar>
struct ModeParams {
  Scalar delta{};               // effective detuning
  Complex<Scalar> g_a_enh{};    // enhanced coupling G_a <a>_ss
  Scalar g_c{};                 // collective bilinear coupling G_c
  Scalar omega_b{};
  Scalar omega_c{};
  Scalar kappa_a{};
  Scalar kappa_c{};
  Scalar gamma_B{};

  template <typename Other>
  ModeParams<Other> cast() const {
    return {Other(delta), Complex<Other>(Other(g_a_enh.real()), Other(g_a_enh.imag())),
            Other(g_c),     Other(omega_b), Other(omega_c), Other(kappa_a), Other(kappa_c),
            Other(gamma_B)};
  }

  ModeParams scaled(Scalar factor) const {
    return {delta * factor,   g_a_enh * factor, g_c * factor,     omega_b * factor,
            omega_c * factor, kappa_a * factor, kappa_c * factor, gamma_B * factor};
  }
};

/// dV/dt = -M V + L V_in for the full linearized system.
template <typename Scalar>
struct DynamicalSystem {
  Matrix6c<Scalar> m;
  Eigen::DiagonalMatrix<Scalar, 6> l;
  ModeParams<Scalar> params;

  Matrix3c<Scalar> p_block() const { return m.template topLeftCorner<3, 3>(); }
  Matrix3c<Scalar> q_block() const { return m.template topRightCorner<3, 3>(); }
};

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> damping_diagonal(const ModeParams<Scalar>& p) {
  using std::sqrt;
  return {sqrt(Scalar(2) * p.kappa_a), sqrt(Scalar(2) * p.kappa_c), sqrt(Scalar(2) * p.gamma_B)};
}

template <typename Scalar>
Matrix3c<Scalar> p_matrix(const ModeParams<Scalar>& p) {
  const Complex<Scalar> i(0, 1);
  Matrix3c<Scalar> out = Matrix3c<Scalar>::Zero();
  out(0, 0) = i * p.delta + p.kappa_a;
  out(0, 2) = i * p.g_a_enh;
  out(1, 1) = i * p.omega_c + p.kappa_c;
  out(1, 2) = i * p.g_c;
  out(2, 0) = i * std::conj(p.g_a_enh);
  out(2, 1) = i * p.g_c;
  out(2, 2) = i * p.omega_b + p.gamma_B;
  return out;
}

template <typename Scalar>
Matrix3c<Scalar> q_matrix(const ModeParams<Scalar>& p) {
  const Complex<Scalar> i(0, 1);
  Matrix3c<Scalar> out = Matrix3c<Scalar>::Zero();
  out(0, 2) = out(2, 0) = i * p.g_a_enh;
  out(1, 2) = out(2, 1) = i * p.g_c;
  return out;
}

template <typename Scalar>
DynamicalSystem<Scalar> build_full(const ModeParams<Scalar>& p) {
  const Matrix3c<Scalar> pm = p_matrix(p);
  const Matrix3c<Scalar> qm = q_matrix(p);

  DynamicalSystem<Scalar> sys;
  sys.m << pm, qm, qm.conjugate(), pm.conjugate();
  const auto d = damping_diagonal(p);
  sys.l.diagonal() << d, d;
  sys.params = p;
  return sys;
}

enum class RwaKind { RedDetuned, BlueDetuned };

/// Rotating-wave 3x3 model. Red: vector (da, dc, dB) with coefficient matrix
/// P. Blue: vector (da, dc^+, dB^+) with the two-mode-squeezing matrix.
template <typename Scalar>
struct RwaSystem {
  RwaKind kind = RwaKind::RedDetuned;
  Matrix3c<Scalar> m3;
  Eigen::DiagonalMatrix<Scalar, 3> j3;
  ModeParams<Scalar> params;
};

template <typename Scalar>
RwaSystem<Scalar> build_rwa(RwaKind kind, const ModeParams<Scalar>& p) {
  RwaSystem<Scalar> sys;
  sys.kind = kind;
  sys.params = p;
  sys.j3.diagonal() = damping_diagonal(p);
  if (kind == RwaKind::RedDetuned) {
    sys.m3 = p_matrix(p);
    return sys;
  }
  const Complex<Scalar> i(0, 1);
  sys.m3 << i * p.delta + p.kappa_a, Scalar(0), i * p.g_a_enh,
            Scalar(0), -i * p.omega_c + p.kappa_c, -i * p.g_c,
            -i * std::conj(p.g_a_enh), -i * p.g_c, -i * p.omega_b + p.gamma_B;
  return sys;
}

}  // namespace moloconv
