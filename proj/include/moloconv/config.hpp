#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "moloconv/params.hpp"

namespace moloconv {

// Config files are flat JSON objects:
//   omega_b_thz, omega_c_thz, kappa_a_thz, kappa_c_thz, gamma_B_thz, g_c_thz,
//   n_molecules, drive.mode ("direct" | "physical"),
//   direct:   drive.delta_thz, drive.g_a_enh_thz (number or [re, im])
//   physical: drive.delta0_thz, drive.g_a_thz, drive.eps_p_thz
// A nested "drive": {...} object is accepted as well. Unknown keys are errors.

SystemParams params_from_json(const nlohmann::json& j);

/// Flat, dotted-key form; round-trips through params_from_json.
nlohmann::json params_to_json(const SystemParams& p);

/// Parses JSON text; syntax errors carry line and column.
nlohmann::json parse_config_text(std::string_view text);

nlohmann::json load_config_json(const std::filesystem::path& path);
SystemParams load_config(const std::filesystem::path& path);

}  // namespace moloconv
