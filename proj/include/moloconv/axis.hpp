#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "moloconv/params.hpp"

namespace moloconv {

enum class SweepParam { CouplingEnh, Molecules, KappaA, KappaC, GammaB, Detuning, BilinearCoupling };
enum class AxisScale { Linear, Log };

/// Command-line name of a sweepable parameter: gA, N, kappa_a, kappa_c,
/// gamma_B, delta, g_c.
std::string_view param_name(SweepParam p);
SweepParam parse_param(std::string_view name);

struct AxisSpec {
  SweepParam param = SweepParam::CouplingEnh;
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
  AxisScale scale = AxisScale::Linear;

  std::string name() const { return std::string(param_name(param)); }
  std::vector<double> grid() const;
};

/// Throws ConfigError unless start < stop with points >= 2, or start == stop
/// with points == 1.
void check_axis(const AxisSpec& axis);

/// "name:start:stop:points[:log|:linear]", e.g. "N:1e5:1e9:201:log".
AxisSpec parse_axis(std::string_view text);

/// Copy of `base` with one parameter replaced. Frequencies are THz; N is
/// rounded to the nearest integer (and rescales both collective couplings).
/// gA keeps the phase of the existing enhanced coupling.
SystemParams apply_axis(SystemParams base, SweepParam param, double value);

}  // namespace moloconv
