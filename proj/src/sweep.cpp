#include "moloconv/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "moloconv/csv.hpp"
#include "moloconv/model.hpp"
#include "moloconv/parallel.hpp"
#include "moloconv/rwa.hpp"
#include "moloconv/stability.hpp"

namespace moloconv {

namespace {

constexpr std::array<std::pair<Metric, std::string_view>, 7> kMetricNames{{
    {Metric::TacAS, "t_ac_AS"},
    {Metric::TacS, "t_ac_S"},
    {Metric::NaddAS, "n_add_AS"},
    {Metric::NaddS, "n_add_S"},
    {Metric::TacRwaAS, "t_ac_rwa_AS"},
    {Metric::TacRwaS, "t_ac_rwa_S"},
    {Metric::Margin, "margin"},
}};

Cell finite_or_failed(double x) { return std::isfinite(x) ? Cell{x} : Cell{Sentinel::Failed}; }

// Full-model evaluation at one sideband, computed at most once per point.
class SidebandCache {
 public:
  SidebandCache(const DynamicalSystem<double>& sys, Sideband sb) : sys_(sys), sb_(sb) {}

  Cell t_ac() {
    if (!load()) return Sentinel::Singular;
    return finite_or_failed(result_.t_ac());
  }

  Cell n_add() {
    if (!load()) return Sentinel::Singular;
    if (result_.t_ac() < kZeroEfficiency) return Sentinel::ZeroEfficiency;
    return finite_or_failed(result_.s_add / result_.t_ac());
  }

 private:
  bool load() {
    if (!tried_) {
      tried_ = true;
      try {
        result_ = evaluate(sys_, sideband_frequency(sb_, sys_.params.omega_b));
        loaded_ = true;
      } catch (const SingularAtFrequency&) {
      }
    }
    return loaded_;
  }

  const DynamicalSystem<double>& sys_;
  Sideband sb_;
  bool tried_ = false;
  bool loaded_ = false;
  ScatteringResult<double> result_;
};

Cell rwa_t_ac(const ModeParams<double>& mp, Sideband sb) {
  try {
    const auto sys = build_rwa(rwa_kind_for(mp), mp);
    return finite_or_failed(rwa_scattering(sys, sideband_frequency(sb, mp.omega_b)).t_ac);
  } catch (const SingularAtFrequency&) {
    return Sentinel::Singular;
  }
}

SweepRow evaluate_point(const SystemParams& params, std::vector<double> point, const std::vector<Metric>& metrics) {
  SweepRow row;
  row.point = std::move(point);
  auto fill = [&](Sentinel s) { row.values.assign(metrics.size(), Cell{s}); };

  ModeParams<double> mp;
  StabilityVerdict<double> verdict;
  try {
    mp = mode_params(params);
    verdict = classify(build_full(mp));
  } catch (const PhysicsError&) {
    fill(Sentinel::Failed);
    return row;
  }
  row.stable = verdict.stable;
  if (!row.stable) {
    fill(Sentinel::Unstable);
    return row;
  }

  const auto sys = build_full(mp);
  SidebandCache anti_stokes(sys, Sideband::AntiStokes);
  SidebandCache stokes(sys, Sideband::Stokes);
  for (Metric m : metrics) {
    switch (m) {
      case Metric::TacAS: row.values.push_back(anti_stokes.t_ac()); break;
      case Metric::TacS: row.values.push_back(stokes.t_ac()); break;
      case Metric::NaddAS: row.values.push_back(anti_stokes.n_add()); break;
      case Metric::NaddS: row.values.push_back(stokes.n_add()); break;
      case Metric::TacRwaAS: row.values.push_back(rwa_t_ac(mp, Sideband::AntiStokes)); break;
      case Metric::TacRwaS: row.values.push_back(rwa_t_ac(mp, Sideband::Stokes)); break;
      case Metric::Margin: row.values.push_back(finite_or_failed(verdict.margin / kTwoPi)); break;
    }
  }
  return row;
}

}  // namespace

std::string_view metric_name(Metric m) {
  for (const auto& [metric, name] : kMetricNames)
    if (metric == m) return name;
  return "?";
}

Metric parse_metric(std::string_view name) {
  for (const auto& [metric, known] : kMetricNames)
    if (known == name) return metric;
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

std::vector<Metric> parse_metrics(std::string_view text) {
  std::vector<Metric> out;
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const auto token = text.substr(pos, comma - pos);
    if (!token.empty()) out.push_back(parse_metric(token));
    pos = comma + 1;
  }
  return out;
}

std::string_view sentinel_name(Sentinel s) {
  switch (s) {
    case Sentinel::Unstable: return "unstable";
    case Sentinel::Singular: return "singular";
    case Sentinel::ZeroEfficiency: return "zero_efficiency";
    default: return "failed";
  }
}

std::optional<std::size_t> SweepTable::column(Metric m) const {
  const auto it = std::find(columns.begin(), columns.end(), m);
  if (it == columns.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns.begin());
}

SweepTable run_sweep(const SystemParams& base, const std::vector<AxisSpec>& axes,
                     const std::vector<Metric>& metrics, unsigned workers) {
  validate(base);
  if (axes.empty() || axes.size() > 2) throw ConfigError("a sweep needs one or two axes");

  std::vector<std::vector<double>> grids;
  for (const auto& axis : axes) grids.push_back(axis.grid());
  const std::size_t inner = axes.size() == 2 ? grids[1].size() : 1;
  const std::size_t total = grids[0].size() * inner;

  // Reject structurally impossible sweeps (e.g. gA on a physical drive) up front.
  for (const auto& axis : axes) (void)apply_axis(base, axis.param, axis.start);

  SweepTable table;
  table.axes = axes;
  table.columns = metrics;
  table.rows.resize(total);
  parallel_for(
      total,
      [&](std::size_t k) {
        std::vector<double> point{grids[0][k / inner]};
        SystemParams params = apply_axis(base, axes[0].param, point[0]);
        if (axes.size() == 2) {
          point.push_back(grids[1][k % inner]);
          params = apply_axis(params, axes[1].param, point[1]);
        }
        table.rows[k] = evaluate_point(params, std::move(point), metrics);
      },
      workers);
  return table;
}

ArgmaxResult argmax(const SweepTable& table, Metric metric) {
  const auto col = table.column(metric);
  if (!col) throw ConfigError("metric '" + std::string(metric_name(metric)) + "' is not in the table");

  std::optional<ArgmaxResult> best;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const double* v = std::get_if<double>(&row.values[*col]);
    if (!row.stable || !v) continue;
    const bool better = !best || *v > best->value ||
                        (*v == best->value && std::lexicographical_compare(row.point.begin(), row.point.end(),
                                                                            best->point.begin(), best->point.end()));
    if (better) best = ArgmaxResult{r, row.point, *v};
  }
  if (!best) throw AllUnstable("no stable point carries a value for " + std::string(metric_name(metric)));
  return *best;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  std::vector<std::string> cells;
  for (const auto& axis : table.axes) cells.push_back(axis.name());
  for (Metric m : table.columns) cells.emplace_back(metric_name(m));
  cells.emplace_back("stable");
  write_csv_row(out, cells);

  for (const auto& row : table.rows) {
    cells.clear();
    for (double x : row.point) cells.push_back(format_number(x));
    for (const auto& cell : row.values) {
      if (const double* v = std::get_if<double>(&cell)) cells.push_back(format_number(*v));
      else cells.emplace_back(sentinel_name(std::get<Sentinel>(cell)));
    }
    cells.emplace_back(row.stable ? "1" : "0");
    write_csv_row(out, cells);
  }
}

}  // namespace moloconv
