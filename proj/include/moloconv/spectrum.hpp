#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "moloconv/dynmat.hpp"
#include "moloconv/units.hpp"

namespace moloconv {

/// Uniform Fourier-frequency grid (THz, ordinary frequency).
struct FrequencyGrid {
  Freq min;
  Freq max;
  int points = 0;

  std::vector<double> values() const;  // throws ConfigError on an empty or inverted grid

  /// +-1.2 omega_b with 2001 points.
  static FrequencyGrid around(Freq omega_b);
  /// "min:max:points".
  static FrequencyGrid parse(std::string_view text);
};

inline constexpr std::string_view kSpectrumHeader =
    "omega_thz,T_aa,T_ac,T_aB,T_ca,T_cc,T_cB,T_Ba,T_Bc,T_BB,S_a_add,n_add_point";

struct SpectrumOutcome {
  std::size_t rows_written = 0;
  bool hit_pole = false;
};

/// Writes the spectrum CSV. n_add_point is S_a,add / T_ac at the same omega
/// ("undefined" where T_ac vanishes). At the first singular frequency a row
/// of "singular" sentinels is written and output stops.
SpectrumOutcome write_spectrum_csv(const DynamicalSystem<double>& sys, const FrequencyGrid& grid, std::ostream& out);

}  // namespace moloconv
