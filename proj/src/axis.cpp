#include "moloconv/axis.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <utility>

namespace moloconv {

namespace {

constexpr std::array<std::pair<SweepParam, std::string_view>, 7> kNames{{
    {SweepParam::CouplingEnh, "gA"},
    {SweepParam::Molecules, "N"},
    {SweepParam::KappaA, "kappa_a"},
    {SweepParam::KappaC, "kappa_c"},
    {SweepParam::GammaB, "gamma_B"},
    {SweepParam::Detuning, "delta"},
    {SweepParam::BilinearCoupling, "g_c"},
}};

double parse_number(std::string_view field, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw ConfigError("axis " + std::string(field) + ": not a number: '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::string_view param_name(SweepParam p) {
  for (const auto& [param, name] : kNames)
    if (param == p) return name;
  return "?";
}

SweepParam parse_param(std::string_view name) {
  for (const auto& [param, known] : kNames)
    if (known == name) return param;
  throw ConfigError("unknown sweep parameter '" + std::string(name) +
                    "' (expected gA, N, kappa_a, kappa_c, gamma_B, delta or g_c)");
}

std::vector<double> AxisSpec::grid() const {
  check_axis(*this);
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = start;
    return out;
  }
  const double last = points - 1;
  for (int k = 0; k < points; ++k) {
    const double f = k / last;
    out[k] = scale == AxisScale::Log ? start * std::pow(stop / start, f) : start + (stop - start) * f;
  }
  out.back() = stop;
  return out;
}

void check_axis(const AxisSpec& axis) {
  const std::string label = "axis " + axis.name();
  if (!std::isfinite(axis.start) || !std::isfinite(axis.stop)) throw ConfigError(label + ": bounds must be finite");
  if (axis.points < 1) throw ConfigError(label + ": points must be >= 1");
  if (axis.points >= 2 && !(axis.start < axis.stop)) throw ConfigError(label + ": start must be < stop");
  if (axis.points == 1 && axis.start != axis.stop) throw ConfigError(label + ": a range needs points >= 2");
  if (axis.scale == AxisScale::Log && !(axis.start > 0.0)) throw ConfigError(label + ": log axis needs start > 0");
}

AxisSpec parse_axis(std::string_view text) {
  std::vector<std::string_view> parts;
  for (std::size_t pos = 0;;) {
    const std::size_t colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 4 && parts.size() != 5)
    throw ConfigError("axis spec '" + std::string(text) + "' must be name:start:stop:points[:log]");

  AxisSpec axis;
  axis.param = parse_param(parts[0]);
  axis.start = parse_number(parts[0], parts[1]);
  axis.stop = parse_number(parts[0], parts[2]);
  const double points = parse_number(parts[0], parts[3]);
  if (points != std::floor(points) || points < 1 || points > 1e7)
    throw ConfigError("axis " + std::string(parts[0]) + ": points must be a positive integer");
  axis.points = static_cast<int>(points);
  if (parts.size() == 5) {
    if (parts[4] == "log") axis.scale = AxisScale::Log;
    else if (parts[4] == "linear" || parts[4] == "lin") axis.scale = AxisScale::Linear;
    else throw ConfigError("axis scale must be 'log' or 'linear', got '" + std::string(parts[4]) + "'");
  }
  check_axis(axis);
  return axis;
}

SystemParams apply_axis(SystemParams p, SweepParam param, double value) {
  switch (param) {
    case SweepParam::CouplingEnh: {
      auto* d = std::get_if<DirectDrive>(&p.drive);
      if (!d) throw ConfigError("sweeping gA needs a direct drive");
      const double phase = std::abs(d->g_a_enh) > 0.0 ? std::arg(d->g_a_enh) : 0.0;
      d->g_a_enh = value * std::exp(std::complex<double>(0.0, phase));
      break;
    }
    case SweepParam::Molecules:
      p.n_molecules = static_cast<std::int64_t>(std::llround(value));
      break;
    case SweepParam::KappaA: p.kappa_a = Freq{value}; break;
    case SweepParam::KappaC: p.kappa_c = Freq{value}; break;
    case SweepParam::GammaB: p.gamma_B = Freq{value}; break;
    case SweepParam::Detuning:
      if (auto* d = std::get_if<DirectDrive>(&p.drive)) d->delta = Freq{value};
      else std::get<PhysicalDrive>(p.drive).delta0 = Freq{value};
      break;
    case SweepParam::BilinearCoupling: p.g_c = Freq{value}; break;
  }
  return p;
}

}  // namespace moloconv
