#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "moloconv/dynmat.hpp"
#include "moloconv/model.hpp"
#include "moloconv/presets.hpp"
#include "moloconv/stability.hpp"

namespace moloconv::testing {

inline double rel_err(std::complex<double> a, std::complex<double> b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double rel_err(double a, double b) { return rel_err(std::complex<double>(a), std::complex<double>(b)); }

// Reference parameter set with Delta = +-omega_b.
inline SystemParams fig4(bool red, double g_a_enh_thz) {
  return figure_base(Freq{red ? 30.0 : -30.0}, g_a_enh_thz);
}

// Angular-unit linearization point of fig4(red, gA).
inline ModeParams<double> fig4_mode(bool red, double g_a_enh_thz) { return mode_params(fig4(red, g_a_enh_thz)); }

// Random linearization point (angular units) in the physically relevant
// neighbourhood, retried until the 6x6 system is stable.
class StableDraws {
 public:
  explicit StableDraws(std::uint64_t seed) : rng_(seed) {}

  ModeParams<double> next() {
    for (;;) {
      ModeParams<double> p;
      p.omega_b = uniform(5.0, 50.0);
      p.omega_c = uniform(5.0, 50.0);
      p.delta = (coin() ? 1.0 : -1.0) * uniform(0.0, 50.0);
      p.kappa_a = uniform(0.2, 40.0);
      p.kappa_c = uniform(0.05, 5.0);
      p.gamma_B = uniform(0.01, 2.0);
      p.g_c = uniform(0.0, 1.0);
      p.g_a_enh = std::polar(uniform(0.0, 4.0), uniform(-M_PI, M_PI));
      p = p.scaled(kTwoPi);
      if (classify(build_full(p)).stable) return p;
    }
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace moloconv::testing
