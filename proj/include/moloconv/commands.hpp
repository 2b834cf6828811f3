#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "moloconv/params.hpp"
#include "moloconv/spectrum.hpp"
#include "moloconv/stability.hpp"

namespace moloconv::cli {

// 0 ok, 2 usage/config, 3 physics-domain error, 4 partial failure.
enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitPhysics = 3, kExitPartial = 4 };

/// Entry point of the `moloconv` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

enum class Model { Full, Rwa };

/// {t_ac_AS, t_ac_S, n_add_AS, n_add_S, model, regime, stable}
nlohmann::json sidebands_json(const SystemParams& p, Model model);

/// {branches: [{a_re, a_im, c_re, c_im, B_re, B_im, delta_eff_thz}], selected, multistable}
nlohmann::json steady_state_json(const SystemParams& p);

/// {m, l} as row arrays of [re, im] pairs, angular units (rad/ps).
nlohmann::json matrix_json(const SystemParams& p);

/// Header "x,y,stable,margin_thz"; x outer, y inner.
void write_stability_csv(const StabilityMap& map, std::ostream& out);

/// Sets Delta = +omega_b ("red") or -omega_b ("blue") on a direct drive.
SystemParams with_detuning(SystemParams p, std::string_view regime);

/// Writes the spectrum CSV plus <out>.config.json and <out>.manifest.json.
/// Returns kExitPhysics when the system is unstable or a pole cuts the grid.
int cmd_spectrum(const SystemParams& p, const FrequencyGrid& grid, const std::filesystem::path& out_path,
                 const std::string& command_line, std::ostream& err);

/// Figure presets: fig2, fig4, fig5, fig6. One CSV per panel plus
/// config.json and manifest.json in out_dir.
int cmd_reproduce(std::string_view figure, const std::filesystem::path& out_dir, const std::string& command_line,
                  std::ostream& err);

}  // namespace moloconv::cli
