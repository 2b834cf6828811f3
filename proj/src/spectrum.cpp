#include "moloconv/spectrum.hpp"

#include <optional>
#include <string>

#include "moloconv/axis.hpp"
#include "moloconv/csv.hpp"
#include "moloconv/model.hpp"
#include "moloconv/parallel.hpp"

namespace moloconv {

std::vector<double> FrequencyGrid::values() const {
  if (points < 1) throw ConfigError("frequency grid is empty");
  if (!min.finite() || !max.finite()) throw ConfigError("frequency grid bounds must be finite");
  if (points == 1) return {min.thz};
  if (!(min < max)) throw ConfigError("frequency grid needs min < max");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) out[k] = min.thz + (max.thz - min.thz) * k / (points - 1);
  out.back() = max.thz;
  return out;
}

FrequencyGrid FrequencyGrid::around(Freq omega_b) {
  return {Freq{-1.2 * omega_b.thz}, Freq{1.2 * omega_b.thz}, 2001};
}

FrequencyGrid FrequencyGrid::parse(std::string_view text) {
  // Reuse the axis grammar with a placeholder name.
  const AxisSpec axis = parse_axis("delta:" + std::string(text));
  return {Freq{axis.start}, Freq{axis.stop}, axis.points};
}

SpectrumOutcome write_spectrum_csv(const DynamicalSystem<double>& sys, const FrequencyGrid& grid, std::ostream& out) {
  const std::vector<double> omegas = grid.values();

  // Evaluate in parallel, emit in grid order.
  std::vector<std::optional<ScatteringResult<double>>> results(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t k) {
    try {
      results[k] = evaluate(sys, Freq{omegas[k]});
    } catch (const SingularAtFrequency&) {
    }
  });

  out << kSpectrumHeader << '\n';
  SpectrumOutcome outcome;
  std::vector<std::string> cells;
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    cells.assign(1, format_number(omegas[k]));
    ++outcome.rows_written;
    if (!results[k]) {
      cells.resize(12, "singular");
      write_csv_row(out, cells);
      outcome.hit_pole = true;
      break;
    }
    const auto& r = *results[k];
    for (int row = 0; row < 3; ++row)
      for (int col = 0; col < 3; ++col) cells.push_back(format_number(r.t(row, col)));
    cells.push_back(format_number(r.s_add));
    cells.push_back(r.t_ac() < kZeroEfficiency ? std::string("undefined") : format_number(r.s_add / r.t_ac()));
    write_csv_row(out, cells);
  }
  return outcome;
}

}  // namespace moloconv
