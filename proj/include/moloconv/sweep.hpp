#pragma once

#include <optional>
#include <ostream>
#include <string_view>
#include <variant>
#include <vector>

#include "moloconv/axis.hpp"
#include "moloconv/params.hpp"

namespace moloconv {

enum class Metric { TacAS, TacS, NaddAS, NaddS, TacRwaAS, TacRwaS, Margin };

std::string_view metric_name(Metric m);
Metric parse_metric(std::string_view name);
/// Comma-separated list; empty text gives an empty list.
std::vector<Metric> parse_metrics(std::string_view text);

/// Non-numeric cell markers. Unstable points carry Unstable in every metric.
enum class Sentinel { Unstable, Singular, ZeroEfficiency, Failed };
std::string_view sentinel_name(Sentinel s);

using Cell = std::variant<double, Sentinel>;

struct SweepRow {
  std::vector<double> point;  // one value per axis
  std::vector<Cell> values;   // one per column
  bool stable = false;
};

struct SweepTable {
  std::vector<AxisSpec> axes;
  std::vector<Metric> columns;
  std::vector<SweepRow> rows;  // row-major over the axes, last axis fastest

  std::optional<std::size_t> column(Metric m) const;
};

/// Evaluates the metrics on every grid point. Per-point failures land in the
/// row as sentinels; the sweep itself only throws on bad input.
/// RWA metrics use the red model for Delta >= 0 and the blue one otherwise.
/// `margin` is reported in THz (ordinary frequency).
SweepTable run_sweep(const SystemParams& base, const std::vector<AxisSpec>& axes,
                     const std::vector<Metric>& metrics, unsigned workers = 0);

struct ArgmaxResult {
  std::size_t row = 0;
  std::vector<double> point;
  double value = 0.0;
};

/// Stable point with the largest numeric value; ties go to the smaller
/// axis values. Throws AllUnstable when nothing qualifies.
ArgmaxResult argmax(const SweepTable& table, Metric metric);

/// Header "<axis1>[,<axis2>],<metric...>,stable", then one row per point.
void write_csv(const SweepTable& table, std::ostream& out);

}  // namespace moloconv
