#include "moloconv/commands.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "moloconv/config.hpp"
#include "moloconv/csv.hpp"
#include "moloconv/manifest.hpp"
#include "moloconv/model.hpp"
#include "moloconv/presets.hpp"
#include "moloconv/rwa.hpp"
#include "moloconv/steady_state.hpp"
#include "moloconv/sweep.hpp"

namespace moloconv::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double round12(double x) { return std::stod(format_number(x)); }

json complex_pair(std::complex<double> z) { return json::array({round12(z.real()), round12(z.imag())}); }

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

// Writes <out>.config.json and <out>.manifest.json next to a single output file.
void write_sidecars(const fs::path& out_path, const SystemParams& p, const std::string& command_line) {
  const json config = params_to_json(p);
  const fs::path dir = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
  const std::string stem = out_path.filename().string();
  open_output(dir / (stem + ".config.json")) << config.dump(2) << '\n';
  write_manifest(dir, stem + ".manifest.json", config, command_line, {stem});
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PhysicsError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitPartial;
  }
}

RwaKind rwa_kind_for_regime(const ModeParams<double>& mp) {
  switch (detuning_regime(mp)) {
    case DetuningRegime::Red: return RwaKind::RedDetuned;
    case DetuningRegime::Blue: return RwaKind::BlueDetuned;
    default: return rwa_kind_for(mp);
  }
}

// --- figure panels -------------------------------------------------------

struct Panel {
  std::string file;
  std::function<void(std::ostream&)> write;
};

void rwa_spectrum_csv(const ModeParams<double>& mp, const FrequencyGrid& grid, std::ostream& out) {
  const auto sys = build_rwa(rwa_kind_for(mp), mp);
  out << "omega_thz,T_ac_rwa,S_a_add_rwa\n";
  for (double w : grid.values()) {
    std::vector<std::string> cells{format_number(w)};
    try {
      const auto r = rwa_scattering(sys, Freq{w}.angular());
      cells.push_back(format_number(r.t_ac));
      cells.push_back(format_number(r.s_add));
    } catch (const SingularAtFrequency&) {
      cells.resize(3, "singular");
    }
    write_csv_row(out, cells);
  }
}

// One column per coupling: T_ac(omega) or S_add(omega)/T_ac(omega).
void coupling_family_csv(const SystemParams& base, const std::vector<double>& couplings, bool noise,
                         const FrequencyGrid& grid, std::ostream& out) {
  std::vector<DynamicalSystem<double>> systems;
  std::vector<std::string> cells{"omega_thz"};
  for (double g : couplings) {
    systems.push_back(full_system(apply_axis(base, SweepParam::CouplingEnh, g)));
    cells.push_back((noise ? "n_add_gA" : "T_ac_gA") + format_number(g));
  }
  write_csv_row(out, cells);
  for (double w : grid.values()) {
    cells.assign(1, format_number(w));
    for (const auto& sys : systems) {
      try {
        const auto r = evaluate(sys, Freq{w});
        if (!noise) cells.push_back(format_number(r.t_ac()));
        else if (r.t_ac() < kZeroEfficiency) cells.emplace_back("undefined");
        else cells.push_back(format_number(r.s_add / r.t_ac()));
      } catch (const SingularAtFrequency&) {
        cells.emplace_back("singular");
      }
    }
    write_csv_row(out, cells);
  }
}

Panel sweep_panel(std::string file, SystemParams base, AxisSpec axis, std::vector<Metric> metrics) {
  return {std::move(file), [base, axis, metrics](std::ostream& out) { write_csv(run_sweep(base, {axis}, metrics), out); }};
}

Panel map_panel(std::string file, SystemParams base, AxisSpec x, AxisSpec y) {
  return {std::move(file), [base, x, y](std::ostream& out) { write_stability_csv(stability_map(base, x, y), out); }};
}

AxisSpec linear_axis(SweepParam param, double start, double stop, int points) {
  return {param, start, stop, points, AxisScale::Linear};
}

struct FigurePlan {
  json config;
  std::vector<Panel> panels;
};

FigurePlan plan_figure(std::string_view figure) {
  FigurePlan plan;
  const auto red = find_preset("fig4-red").params;
  const auto blue = find_preset("fig4-blue").params;
  const AxisSpec coupling = linear_axis(SweepParam::CouplingEnh, 0.0, 5.0, 501);

  if (figure == "fig2") {
    const auto base = find_preset("fig2").params;
    const AxisSpec molecules{SweepParam::Molecules, 1e5, 1e9, 201, AxisScale::Log};
    plan.config = {{"fig2", params_to_json(base)}};
    plan.panels.push_back(map_panel("fig2a.csv", base, linear_axis(SweepParam::CouplingEnh, 0.0, 5.0, 201), molecules));
    plan.panels.push_back(map_panel("fig2b.csv", base, linear_axis(SweepParam::KappaA, 0.5, 60.0, 201), molecules));
  } else if (figure == "fig4") {
    const FrequencyGrid grid = FrequencyGrid::around(red.omega_b);
    plan.config = {{"fig4-red", params_to_json(red)}, {"fig4-blue", params_to_json(blue)}};
    for (const auto& [suffix, p] : {std::pair{"a", red}, std::pair{"b", blue}}) {
      plan.panels.push_back({std::string("fig4") + suffix + ".csv",
                             [p = p, grid](std::ostream& out) { write_spectrum_csv(full_system(p), grid, out); }});
      plan.panels.push_back({std::string("fig4") + suffix + "_rwa.csv",
                             [p = p, grid](std::ostream& out) { rwa_spectrum_csv(mode_params(p), grid, out); }});
    }
    plan.panels.push_back(sweep_panel("fig4c.csv", red, coupling, {Metric::TacS, Metric::TacRwaS}));
    plan.panels.push_back(sweep_panel("fig4d.csv", blue, coupling, {Metric::TacS, Metric::TacRwaS}));
    plan.panels.push_back(sweep_panel("fig4e.csv", red, coupling, {Metric::TacAS, Metric::TacRwaAS}));
    plan.panels.push_back(sweep_panel("fig4f.csv", blue, coupling, {Metric::TacAS, Metric::TacRwaAS}));
  } else if (figure == "fig5") {
    const std::vector<double> couplings{1.0, 2.0, 3.0};
    const FrequencyGrid red_grid{Freq{-36.0}, Freq{-24.0}, 1201};
    const FrequencyGrid blue_grid{Freq{24.0}, Freq{36.0}, 1201};
    plan.config = {{"fig4-red", params_to_json(red)}, {"fig4-blue", params_to_json(blue)}};
    auto family = [&](std::string file, SystemParams p, bool noise, FrequencyGrid grid) {
      plan.panels.push_back({std::move(file), [=](std::ostream& out) { coupling_family_csv(p, couplings, noise, grid, out); }});
    };
    family("fig5a.csv", red, false, red_grid);
    family("fig5b.csv", blue, false, blue_grid);
    family("fig5c.csv", red, true, red_grid);
    family("fig5d.csv", blue, true, blue_grid);
  } else if (figure == "fig6") {
    const auto red6 = find_preset("fig6-red").params;
    const auto blue6 = find_preset("fig6-blue").params;
    plan.config = {{"fig6-red", params_to_json(red6)}, {"fig6-blue", params_to_json(blue6)}};
    plan.panels.push_back(sweep_panel("fig6a.csv", red6, linear_axis(SweepParam::CouplingEnh, 0.0, 3.0, 601),
                                      {Metric::TacAS, Metric::NaddAS}));
    plan.panels.push_back(sweep_panel("fig6b.csv", blue6, linear_axis(SweepParam::CouplingEnh, 0.0, 1.5, 601),
                                      {Metric::TacS, Metric::NaddS}));
    plan.panels.push_back(sweep_panel("fig6c.csv", red6, linear_axis(SweepParam::KappaA, 0.2, 40.0, 600),
                                      {Metric::TacAS, Metric::NaddAS}));
    plan.panels.push_back(sweep_panel("fig6d.csv", blue6, linear_axis(SweepParam::KappaA, 0.2, 40.0, 600),
                                      {Metric::TacS, Metric::NaddS}));
  } else {
    throw ConfigError("unknown figure '" + std::string(figure) + "' (expected fig2, fig4, fig5 or fig6)");
  }
  return plan;
}

// --- input selection -----------------------------------------------------

struct InputOptions {
  std::string config_path;
  std::string preset;
  std::string detuning;

  void attach(CLI::App* app, bool with_detuning) {
    auto* c = app->add_option("--config", config_path, "JSON configuration file");
    auto* p = app->add_option("--preset", preset, "named figure parameter set (fig2, fig4-red, ...)");
    c->excludes(p);
    if (with_detuning)
      app->add_option("--detuning", detuning, "force Delta = +omega_b (red) or -omega_b (blue)")
          ->check(CLI::IsMember({"red", "blue"}));
  }

  SystemParams load() const {
    if (config_path.empty() == preset.empty()) throw ConfigError("give exactly one of --config or --preset");
    SystemParams p = preset.empty() ? load_config(config_path) : find_preset(preset).params;
    return detuning.empty() ? p : with_detuning(p, detuning);
  }
};

std::string join_args(int argc, const char* const* argv) {
  std::string out;
  for (int k = 0; k < argc; ++k) out += (k ? " " : "") + std::string(argv[k]);
  return out;
}

}  // namespace

// --- public command helpers ------------------------------------------------

SystemParams with_detuning(SystemParams p, std::string_view regime) {
  auto* d = std::get_if<DirectDrive>(&p.drive);
  if (!d) throw ConfigError("--detuning needs a direct drive");
  if (regime == "red") d->delta = p.omega_b;
  else if (regime == "blue") d->delta = -p.omega_b;
  else throw ConfigError("detuning must be 'red' or 'blue'");
  return p;
}

json sidebands_json(const SystemParams& p, Model model) {
  const ModeParams<double> mp = mode_params(p);
  const auto sys = build_full(mp);
  const bool stable = classify(sys).stable;
  json j;
  if (model == Model::Full) {
    const auto r = sideband_report(sys);
    j = {{"t_ac_AS", round12(r.t_ac_AS)}, {"t_ac_S", round12(r.t_ac_S)}, {"n_add_AS", round12(r.n_add_AS)},
         {"n_add_S", round12(r.n_add_S)}, {"model", "full"}};
  } else {
    const auto rsys = build_rwa(rwa_kind_for_regime(mp), mp);
    const auto as = rwa_scattering(rsys, sideband_frequency(Sideband::AntiStokes, mp.omega_b));
    const auto s = rwa_scattering(rsys, sideband_frequency(Sideband::Stokes, mp.omega_b));
    if (as.t_ac < kZeroEfficiency || s.t_ac < kZeroEfficiency)
      throw ZeroEfficiency("T_ac vanishes at a sideband; added noise is undefined");
    j = {{"t_ac_AS", round12(as.t_ac)}, {"t_ac_S", round12(s.t_ac)}, {"n_add_AS", round12(as.s_add / as.t_ac)},
         {"n_add_S", round12(s.s_add / s.t_ac)}, {"model", "rwa"}};
  }
  j["regime"] = to_string(detuning_regime(mp));
  j["stable"] = stable;
  return j;
}

json steady_state_json(const SystemParams& p) {
  const auto sol = solve_steady_state(p);
  json branches = json::array();
  for (const auto& b : sol.branches) {
    branches.push_back({{"a_re", round12(b.a_ss.real())}, {"a_im", round12(b.a_ss.imag())},
                        {"c_re", round12(b.c_ss.real())}, {"c_im", round12(b.c_ss.imag())},
                        {"B_re", round12(b.b_ss.real())}, {"B_im", round12(b.b_ss.imag())},
                        {"delta_eff_thz", round12(b.delta_eff.thz)}});
  }
  return {{"branches", branches}, {"selected", sol.selected}, {"multistable", sol.multistable()}};
}

json matrix_json(const SystemParams& p) {
  const auto sys = full_system(p);
  json m = json::array(), l = json::array();
  for (int r = 0; r < 6; ++r) {
    json mrow = json::array(), lrow = json::array();
    for (int c = 0; c < 6; ++c) {
      mrow.push_back(complex_pair(sys.m(r, c)));
      lrow.push_back(complex_pair(r == c ? sys.l.diagonal()(r) : 0.0));
    }
    m.push_back(mrow);
    l.push_back(lrow);
  }
  return {{"m", m}, {"l", l}, {"units", "rad/ps"}};
}

void write_stability_csv(const StabilityMap& map, std::ostream& out) {
  out << "x,y,stable,margin_thz\n";
  for (std::size_t ix = 0; ix < map.x_grid.size(); ++ix) {
    for (std::size_t iy = 0; iy < map.y_grid.size(); ++iy) {
      const auto i = static_cast<Eigen::Index>(ix), j = static_cast<Eigen::Index>(iy);
      write_csv_row(out, {format_number(map.x_grid[ix]), format_number(map.y_grid[iy]),
                          map.verdicts(i, j) ? "1" : "0",
                          map.failed(i, j) ? "failed" : format_number(map.margins(i, j) / kTwoPi)});
    }
  }
}

int cmd_spectrum(const SystemParams& p, const FrequencyGrid& grid, const fs::path& out_path,
                 const std::string& command_line, std::ostream& err) {
  (void)grid.values();  // reject bad grids before touching the filesystem
  const auto sys = full_system(p);
  const bool stable = classify(sys).stable;
  SpectrumOutcome outcome;
  {
    auto out = open_output(out_path);
    outcome = write_spectrum_csv(sys, grid, out);
  }
  write_sidecars(out_path, p, command_line);
  if (!stable) err << "warning: system is unstable; spectrum values are not physical\n";
  if (outcome.hit_pole) err << "warning: pole on the grid; output stops after row " << outcome.rows_written << '\n';
  return stable && !outcome.hit_pole ? kExitOk : kExitPhysics;
}

int cmd_reproduce(std::string_view figure, const fs::path& out_dir, const std::string& command_line,
                  std::ostream& err) {
  const FigurePlan plan = plan_figure(figure);
  fs::create_directories(out_dir);
  open_output(out_dir / "config.json") << plan.config.dump(2) << '\n';

  std::vector<std::string> written;
  bool failed = false;
  for (const auto& panel : plan.panels) {
    try {
      std::ostringstream buf;
      panel.write(buf);
      open_output(out_dir / panel.file) << buf.str();
      written.push_back(panel.file);
    } catch (const std::exception& e) {
      err << "error: panel " << panel.file << ": " << e.what() << '\n';
      failed = true;
    }
  }
  write_manifest(out_dir, "manifest.json", plan.config, command_line, written);
  return failed ? kExitPartial : kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-domain simulator for IR-to-visible upconversion in molecular optomechanical cavities",
               "moloconv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  const std::string command_line = join_args(argc, argv);

  InputOptions spectrum_in, sidebands_in, sweep_in, map_in, steady_in, dump_in;
  std::string out_path, grid_text, model_name = "full", x_text, y_text, metrics_text, figure, out_dir;

  auto* spectrum = app.add_subcommand("spectrum", "T(omega) and added-noise spectrum as CSV");
  spectrum_in.attach(spectrum, true);
  spectrum->add_option("--grid", grid_text, "min:max:points in THz (default +-1.2 omega_b, 2001 points)");
  spectrum->add_option("--out", out_path, "output CSV")->required();

  auto* sidebands = app.add_subcommand("sidebands", "sideband efficiencies and added noise as JSON");
  sidebands_in.attach(sidebands, true);
  sidebands->add_option("--model", model_name, "full or rwa")->check(CLI::IsMember({"full", "rwa"}));

  auto* sweep = app.add_subcommand("sweep", "figures of merit over a 1D/2D parameter grid");
  sweep_in.attach(sweep, true);
  sweep->add_option("--x", x_text, "axis name:start:stop:points[:log]")->required();
  sweep->add_option("--y", y_text, "optional second axis");
  sweep->add_option("--metrics", metrics_text, "comma-separated metric list");
  sweep->add_option("--out", out_path, "output CSV")->required();

  auto* map = app.add_subcommand("stability-map", "linear stability over a 2D grid");
  map_in.attach(map, true);
  map->add_option("--x", x_text, "axis name:start:stop:points[:log]")->required();
  map->add_option("--y", y_text, "axis name:start:stop:points[:log]")->required();
  map->add_option("--out", out_path, "output CSV")->required();

  auto* steady = app.add_subcommand("steady-state", "mean-field branches for a physical drive as JSON");
  steady_in.attach(steady, false);

  auto* dump = app.add_subcommand("dump-matrix", "coefficient and damping matrices as JSON");
  dump_in.attach(dump, true);

  auto* reproduce = app.add_subcommand("reproduce", "regenerate the data behind a figure");
  reproduce->add_option("figure", figure, "fig2, fig4, fig5 or fig6")->required();
  reproduce->add_option("--out-dir", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  return guarded(err, [&]() -> int {
    if (*spectrum) {
      const SystemParams p = spectrum_in.load();
      const FrequencyGrid grid = grid_text.empty() ? FrequencyGrid::around(p.omega_b) : FrequencyGrid::parse(grid_text);
      return cmd_spectrum(p, grid, out_path, command_line, err);
    }
    if (*sidebands) {
      const json j = sidebands_json(sidebands_in.load(), model_name == "rwa" ? Model::Rwa : Model::Full);
      out << j.dump(2) << '\n';
      if (!j["stable"].get<bool>()) {
        err << "warning: system is unstable; sideband values are not physical\n";
        return kExitPhysics;
      }
      return kExitOk;
    }
    if (*sweep) {
      const SystemParams p = sweep_in.load();
      std::vector<AxisSpec> axes{parse_axis(x_text)};
      if (!y_text.empty()) axes.push_back(parse_axis(y_text));
      const SweepTable table = run_sweep(p, axes, parse_metrics(metrics_text));
      {
        auto file = open_output(out_path);
        write_csv(table, file);
      }
      write_sidecars(out_path, p, command_line);
      return kExitOk;
    }
    if (*map) {
      const SystemParams p = map_in.load();
      const StabilityMap result = stability_map(p, parse_axis(x_text), parse_axis(y_text));
      {
        auto file = open_output(out_path);
        write_stability_csv(result, file);
      }
      write_sidecars(out_path, p, command_line);
      return result.failed.any() ? kExitPartial : kExitOk;
    }
    if (*steady) {
      const json j = steady_state_json(steady_in.load());
      out << j.dump(2) << '\n';
      if (j["multistable"].get<bool>()) err << "warning: multistable steady state\n";
      return kExitOk;
    }
    if (*dump) {
      out << matrix_json(dump_in.load()).dump(2) << '\n';
      return kExitOk;
    }
    return cmd_reproduce(figure, out_dir, command_line, err);
  });
}

}  // namespace moloconv::cli
