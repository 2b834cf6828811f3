#include "moloconv/steady_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace moloconv {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Eliminating <a> and <c> leaves one real equation in beta = <B> + <B>^*:
//   s beta [(Delta0 + G_a beta)^2 + kappa_a^2] + k_b G_a eps^2 = 0,
// with k_b = 2 omega_b / (omega_b^2 + gamma_B^2) and
//      s   = 1 - k_b G_c^2 2 omega_c / (omega_c^2 + kappa_c^2).
struct ReducedModel {
  double s = 1.0;
  double k_b = 0.0;
  double g_a = 0.0;
  double delta0 = 0.0;
  double kappa_a = 0.0;

  explicit ReducedModel(const SystemParams& p) {
    const auto cc = collective_couplings(p);
    const auto& drive = std::get<PhysicalDrive>(p.drive);
    const double wb = p.omega_b.thz, gB = p.gamma_B.thz;
    const double wc = p.omega_c.thz, kc = p.kappa_c.thz;
    const double gc = cc.g_c.thz;
    k_b = 2.0 * wb / (wb * wb + gB * gB);
    s = 1.0 - k_b * gc * gc * 2.0 * wc / (wc * wc + kc * kc);
    g_a = cc.g_a->thz;
    delta0 = drive.delta0.thz;
    kappa_a = p.kappa_a.thz;
  }

  // Coefficients c3..c0 of the cubic at pump amplitude eps.
  std::array<double, 4> coefficients(double eps) const {
    return {s * g_a * g_a, 2.0 * s * delta0 * g_a, s * (delta0 * delta0 + kappa_a * kappa_a),
            k_b * g_a * eps * eps};
  }
};

double horner(const std::array<double, 4>& c, double x) { return ((c[0] * x + c[1]) * x + c[2]) * x + c[3]; }

// Bisection down to adjacent doubles on a bracket with a sign change.
double bisect(const std::array<double, 4>& c, double lo, double hi) {
  double f_lo = horner(c, lo);
  for (int iter = 0; iter < 4000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f_mid = horner(c, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(horner(c, lo)) <= std::abs(horner(c, hi)) ? lo : hi;
}

// All real roots of c[0] x^3 + c[1] x^2 + c[2] x + c[3], ascending.
std::vector<double> real_roots(const std::array<double, 4>& c) {
  std::vector<double> roots;
  if (c[0] == 0.0) {
    // Only reached with G_a = 0 (or s = 0): the cubic collapses to linear.
    if (c[1] != 0.0) throw NoConvergence("unexpected quadratic mean-field equation");
    if (c[2] == 0.0) throw NoConvergence("degenerate mean-field equation: no isolated root");
    roots.push_back(-c[3] / c[2]);
    return roots;
  }

  const double bound = 1.0 + std::max({std::abs(c[1]), std::abs(c[2]), std::abs(c[3])}) / std::abs(c[0]);
  std::vector<double> breaks{-bound};
  // Critical points split the line into monotone pieces.
  const double qa = 3.0 * c[0], qb = 2.0 * c[1], qc = c[2];
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc > 0.0) {
    const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
    std::array<double, 2> crit{q / qa, q != 0.0 ? qc / q : -q / qa};
    std::sort(crit.begin(), crit.end());
    for (double x : crit)
      if (x > -bound && x < bound) breaks.push_back(x);
  }
  breaks.push_back(bound);

  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k], hi = breaks[k + 1];
    const double f_lo = horner(c, lo), f_hi = horner(c, hi);
    if (f_lo == 0.0) {
      if (roots.empty() || roots.back() != lo) roots.push_back(lo);
    } else if (f_hi != 0.0 && (f_lo < 0.0) != (f_hi < 0.0)) {
      roots.push_back(bisect(c, lo, hi));
    }
  }
  if (roots.empty()) throw NoConvergence("no sign change found for the mean-field equation");
  return roots;
}

SteadyStateBranch make_branch(const SystemParams& p, double beta) {
  const auto cc = collective_couplings(p);
  const auto& drive = std::get<PhysicalDrive>(p.drive);
  const double ga = cc.g_a->thz, gc = cc.g_c.thz;

  SteadyStateBranch b;
  b.beta = beta;
  b.delta_eff = Freq{drive.delta0.thz + ga * beta};
  b.a_ss = drive.eps_p.thz / (kI * b.delta_eff.thz + p.kappa_a.thz);
  b.c_ss = -kI * gc * beta / (kI * p.omega_c.thz + p.kappa_c.thz);
  const double source = ga * std::norm(b.a_ss) + gc * 2.0 * b.c_ss.real();
  b.b_ss = -kI * source / (kI * p.omega_b.thz + p.gamma_B.thz);
  b.g_a_enh = ga * b.a_ss;
  return b;
}

std::size_t nearest(const std::vector<double>& roots, double target) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < roots.size(); ++k)
    if (std::abs(roots[k] - target) < std::abs(roots[best] - target)) best = k;
  return best;
}

}  // namespace

SteadyStateSolution solve_steady_state(const SystemParams& p) {
  validate(p);
  if (!std::holds_alternative<PhysicalDrive>(p.drive))
    throw ConfigError("steady state needs a physical drive (drive.mode = \"physical\")");

  const ReducedModel model(p);
  const double eps = std::get<PhysicalDrive>(p.drive).eps_p.thz;
  const std::vector<double> roots = real_roots(model.coefficients(eps));

  SteadyStateSolution sol;
  for (double beta : roots) sol.branches.push_back(make_branch(p, beta));

  if (roots.size() > 1) {
    // Follow the branch born at beta = 0 while ramping the pump up geometrically.
    constexpr int kSteps = 400;
    constexpr double kStart = 1e-8;
    double tracked = 0.0;
    for (int k = 0; k <= kSteps; ++k) {
      const double scale = kStart * std::pow(1.0 / kStart, static_cast<double>(k) / kSteps);
      const auto step_roots = real_roots(model.coefficients(eps * scale));
      tracked = step_roots[nearest(step_roots, tracked)];
    }
    sol.selected = nearest(roots, tracked);
  }
  return sol;
}

std::complex<double> enhanced_coupling(const SteadyStateSolution& sol, const SystemParams& p) {
  const auto cc = collective_couplings(p);
  if (!cc.g_a) throw ConfigError("enhanced coupling needs a physical drive");
  return cc.g_a->thz * sol.branch().a_ss;
}

double steady_state_residual(const SteadyStateBranch& b, const SystemParams& p) {
  const auto cc = collective_couplings(p);
  const auto& drive = std::get<PhysicalDrive>(p.drive);
  const double ga = cc.g_a->thz, gc = cc.g_c.thz;
  const double beta = 2.0 * b.b_ss.real();
  const double delta = drive.delta0.thz + ga * beta;

  const cd a_rhs = drive.eps_p.thz / (kI * delta + p.kappa_a.thz);
  const cd c_rhs = -kI * gc * beta / (kI * p.omega_c.thz + p.kappa_c.thz);
  const cd b_rhs = -kI * (ga * std::norm(b.a_ss) + gc * 2.0 * b.c_ss.real()) /
                   (kI * p.omega_b.thz + p.gamma_B.thz);

  auto rel = [](cd lhs, cd rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
  };
  return std::max({rel(b.a_ss, a_rhs), rel(b.c_ss, c_rhs), rel(b.b_ss, b_rhs)});
}

}  // namespace moloconv
