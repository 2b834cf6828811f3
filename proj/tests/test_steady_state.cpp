#include <cmath>
#include <complex>

#include "doctest.h"
#include "moloconv/model.hpp"
#include "moloconv/scattering.hpp"
#include "moloconv/steady_state.hpp"
#include "support.hpp"

using namespace moloconv;
using namespace moloconv::literals;
using cd = std::complex<double>;

namespace {

SystemParams physical(double delta0, double g_a, double eps_p, std::int64_t n = 10'000'000) {
  SystemParams p = figure_base(30_thz, 0.0);
  p.n_molecules = n;
  p.drive = PhysicalDrive{Freq{delta0}, Freq{g_a}, Freq{eps_p}};
  return p;
}

// Damped fixed-point iteration of the mean-field relations, started from zero.
struct FixedPoint {
  cd a, c, b;
  bool converged = false;
};

FixedPoint iterate_mean_field(const SystemParams& p, int max_iter = 200000) {
  const cd i(0.0, 1.0);
  const auto& d = std::get<PhysicalDrive>(p.drive);
  const double ga = d.g_a.thz * std::sqrt(double(p.n_molecules));
  const double gc = p.g_c.thz * std::sqrt(double(p.n_molecules));
  FixedPoint s{0.0, 0.0, 0.0};
  for (int k = 0; k < max_iter; ++k) {
    const double beta = 2.0 * s.b.real();
    const double delta = d.delta0.thz + ga * beta;
    const cd a = d.eps_p.thz / (i * delta + p.kappa_a.thz);
    const cd c = -i * gc * beta / (i * p.omega_c.thz + p.kappa_c.thz);
    const cd b = -i * (ga * std::norm(a) + gc * 2.0 * c.real()) / (i * p.omega_b.thz + p.gamma_B.thz);
    const double change = std::abs(a - s.a) + std::abs(c - s.c) + std::abs(b - s.b);
    s = {0.5 * (s.a + a), 0.5 * (s.c + c), 0.5 * (s.b + b)};
    if (change < 1e-14 * (1.0 + std::abs(a))) {
      s = {a, c, b, true};
      break;
    }
  }
  return s;
}

}  // namespace

TEST_CASE("undriven system sits at the origin") {
  const auto p = physical(30.0, 1e-3, 0.0);
  const auto sol = solve_steady_state(p);
  REQUIRE(sol.branches.size() == 1);
  CHECK(std::abs(sol.branch().a_ss) == 0.0);
  CHECK(std::abs(sol.branch().b_ss) == 0.0);
  CHECK(std::abs(sol.branch().c_ss) == 0.0);
  CHECK(sol.branch().delta_eff.thz == 30.0);
  CHECK(std::abs(enhanced_coupling(sol, p)) == 0.0);
}

TEST_CASE("without optomechanical coupling the modes decouple") {
  const auto p = physical(30.0, 0.0, 500.0);
  const auto sol = solve_steady_state(p);
  REQUIRE(sol.branches.size() == 1);
  CHECK(testing::rel_err(sol.branch().a_ss, 500.0 / cd(30.0, 30.0)) < 1e-15);
  CHECK(std::abs(sol.branch().b_ss) == 0.0);
  CHECK(std::abs(sol.branch().c_ss) == 0.0);
  CHECK(sol.branch().delta_eff.thz == 30.0);
}

TEST_CASE("weak optomechanical coupling: photon number 138.9") {
  const auto p = physical(30.0, 1e-12, 500.0);
  const auto fp = iterate_mean_field(p);
  REQUIRE(fp.converged);
  CHECK(std::norm(fp.a) == doctest::Approx(500.0 * 500.0 / (2.0 * 30.0 * 30.0)).epsilon(1e-6));

  const auto sol = solve_steady_state(p);
  CHECK(std::norm(sol.branch().a_ss) == doctest::Approx(138.8888889).epsilon(1e-6));
  CHECK(testing::rel_err(sol.branch().a_ss, fp.a) < 1e-9);
}

TEST_CASE("selected branch agrees with fixed-point iteration") {
  for (double g_a : {1e-5, 1e-4, 5e-4}) {
    for (double delta0 : {-30.0, 30.0, 5.0}) {
      CAPTURE(g_a);
      CAPTURE(delta0);
      const auto p = physical(delta0, g_a, 200.0, 100'000);
      const auto fp = iterate_mean_field(p);
      if (!fp.converged) continue;  // the iteration itself may oscillate
      const auto sol = solve_steady_state(p);
      CHECK(testing::rel_err(sol.branch().a_ss, fp.a) < 1e-8);
      CHECK(testing::rel_err(sol.branch().b_ss, fp.b) < 1e-8);
    }
  }
}

TEST_CASE("every branch satisfies the mean-field relations") {
  for (double eps : {10.0, 200.0, 500.0, 5000.0, 50000.0}) {
    for (double delta0 : {-30.0, -5.0, 0.0, 30.0}) {
      const auto p = physical(delta0, 1e-3, eps);
      const auto sol = solve_steady_state(p);
      CHECK(sol.generic_count());
      for (const auto& b : sol.branches) {
        CHECK(steady_state_residual(b, p) < 1e-10);
        const double ga = 1e-3 * std::sqrt(1e7);
        CHECK(b.delta_eff.thz == doctest::Approx(delta0 + ga * 2.0 * b.b_ss.real()).epsilon(1e-12));
      }
      for (std::size_t k = 1; k < sol.branches.size(); ++k) CHECK(sol.branches[k - 1].beta < sol.branches[k].beta);
    }
  }
}

TEST_CASE("strong pumping produces three branches") {
  // Three real roots need Delta0^2 > 3 kappa_a^2; scan the pump until the
  // cubic enters that window.
  bool found = false;
  for (double eps = 1.0; eps < 1e6 && !found; eps *= 1.1) {
    auto p = physical(30.0, 1e-3, eps);
    p.kappa_a = Freq{2.0};
    const auto sol = solve_steady_state(p);
    if (sol.multistable()) {
      found = true;
      CHECK(sol.branches.size() == 3);
      CHECK(sol.selected < 3);
      for (const auto& b : sol.branches) CHECK(steady_state_residual(b, p) < 1e-10);
    }
  }
  CHECK(found);
}

TEST_CASE("selected branch shrinks to zero with the pump") {
  double previous = std::numeric_limits<double>::infinity();
  for (double eps = 1000.0; eps > 1e-3; eps /= 3.0) {
    const auto sol = solve_steady_state(physical(-30.0, 1e-3, eps));
    const double beta = std::abs(sol.branch().beta);
    CHECK(beta <= previous);
    previous = beta;
  }
  CHECK(previous < 1e-8);
}

TEST_CASE("enhanced coupling is G_a <a>") {
  const auto p = physical(0.0, 1e-4, 100.0);
  const auto sol = solve_steady_state(p);
  const double ga = 1e-4 * std::sqrt(1e7);
  CHECK(testing::rel_err(enhanced_coupling(sol, p), ga * sol.branch().a_ss) < 1e-15);
  CHECK(std::abs(enhanced_coupling(sol, p)) == doctest::Approx(ga * std::abs(sol.branch().a_ss)));
}

TEST_CASE("physical and direct drives give identical spectra") {
  // Pick g_a so that |G_a <a>| = 3 THz at the reference parameters.
  SystemParams p = physical(30.0, 0.0, 500.0);
  auto coupling_at = [&](double g_a) {
    std::get<PhysicalDrive>(p.drive).g_a = Freq{g_a};
    return std::abs(enhanced_coupling(solve_steady_state(p), p));
  };
  double lo = 0.0, hi = 1e-3;
  while (coupling_at(hi) < 3.0) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (coupling_at(mid) < 3.0 ? lo : hi) = mid;
  }
  coupling_at(hi);
  const auto sol = solve_steady_state(p);
  CHECK(std::abs(sol.branch().g_a_enh) == doctest::Approx(3.0).epsilon(1e-9));

  SystemParams direct = p;
  direct.drive = DirectDrive{sol.branch().delta_eff, sol.branch().g_a_enh};
  const auto sys_b = full_system(p);
  const auto sys_a = full_system(direct);
  for (double w : {-36.0, -30.0, -12.0, 0.0, 7.5, 30.0}) {
    const auto rb = evaluate(sys_b, Freq{w});
    const auto ra = evaluate(sys_a, Freq{w});
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(testing::rel_err(ra.t(r, c), rb.t(r, c)) <= 1e-12);
  }
}

TEST_CASE("direct drives are rejected by the mean-field solver") {
  CHECK_THROWS_AS(solve_steady_state(figure_base(30_thz, 3.0)), ConfigError);
}
