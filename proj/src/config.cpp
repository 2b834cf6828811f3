#include "moloconv/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace moloconv {

using nlohmann::json;

namespace {

const std::set<std::string> kBaseKeys{"omega_b_thz", "omega_c_thz", "kappa_a_thz", "kappa_c_thz",
                                      "gamma_B_thz", "g_c_thz",     "n_molecules", "drive.mode"};
const std::set<std::string> kDirectKeys{"drive.delta_thz", "drive.g_a_enh_thz"};
const std::set<std::string> kPhysicalKeys{"drive.delta0_thz", "drive.g_a_thz", "drive.eps_p_thz"};

json flatten(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  json flat = json::object();
  for (const auto& [key, value] : j.items()) {
    if (key == "drive" && value.is_object()) {
      for (const auto& [sub, sub_value] : value.items()) flat["drive." + sub] = sub_value;
    } else {
      flat[key] = value;
    }
  }
  return flat;
}

const json& require(const json& flat, const std::string& key) {
  const auto it = flat.find(key);
  if (it == flat.end()) throw ConfigError("missing config key '" + key + "'");
  return *it;
}

double number(const json& flat, const std::string& key) {
  const json& v = require(flat, key);
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

Freq freq(const json& flat, const std::string& key) { return Freq{number(flat, key)}; }

std::complex<double> complex_value(const json& flat, const std::string& key) {
  const json& v = require(flat, key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("config key '" + key + "' must be a number or [re, im]");
}

}  // namespace

SystemParams params_from_json(const json& j) {
  const json flat = flatten(j);
  const std::string mode = [&] {
    const json& m = require(flat, "drive.mode");
    if (!m.is_string()) throw ConfigError("drive.mode must be \"direct\" or \"physical\"");
    return m.get<std::string>();
  }();
  if (mode != "direct" && mode != "physical")
    throw ConfigError("drive.mode must be \"direct\" or \"physical\", got \"" + mode + "\"");
  const auto& mode_keys = mode == "direct" ? kDirectKeys : kPhysicalKeys;

  for (const auto& [key, value] : flat.items()) {
    if (kBaseKeys.count(key) || mode_keys.count(key)) continue;
    if (kDirectKeys.count(key) || kPhysicalKeys.count(key))
      throw ConfigError("config key '" + key + "' does not apply to drive.mode \"" + mode + "\"");
    throw ConfigError("unknown config key '" + key + "'");
  }

  SystemParams p;
  p.omega_b = freq(flat, "omega_b_thz");
  p.omega_c = freq(flat, "omega_c_thz");
  p.kappa_a = freq(flat, "kappa_a_thz");
  p.kappa_c = freq(flat, "kappa_c_thz");
  p.gamma_B = freq(flat, "gamma_B_thz");
  p.g_c = freq(flat, "g_c_thz");
  const double n = number(flat, "n_molecules");
  if (n != std::floor(n) || n > 9.0e18) throw ConfigError("n_molecules must be an integer");
  p.n_molecules = static_cast<std::int64_t>(n);

  if (mode == "direct") {
    p.drive = DirectDrive{freq(flat, "drive.delta_thz"), complex_value(flat, "drive.g_a_enh_thz")};
  } else {
    p.drive = PhysicalDrive{freq(flat, "drive.delta0_thz"), freq(flat, "drive.g_a_thz"), freq(flat, "drive.eps_p_thz")};
  }
  validate(p);
  return p;
}

json params_to_json(const SystemParams& p) {
  json j = {
      {"omega_b_thz", p.omega_b.thz}, {"omega_c_thz", p.omega_c.thz}, {"kappa_a_thz", p.kappa_a.thz},
      {"kappa_c_thz", p.kappa_c.thz}, {"gamma_B_thz", p.gamma_B.thz}, {"g_c_thz", p.g_c.thz},
      {"n_molecules", p.n_molecules},
  };
  if (const auto* d = std::get_if<DirectDrive>(&p.drive)) {
    j["drive.mode"] = "direct";
    j["drive.delta_thz"] = d->delta.thz;
    if (d->g_a_enh.imag() == 0.0) j["drive.g_a_enh_thz"] = d->g_a_enh.real();
    else j["drive.g_a_enh_thz"] = {d->g_a_enh.real(), d->g_a_enh.imag()};
  } else {
    const auto& b = std::get<PhysicalDrive>(p.drive);
    j["drive.mode"] = "physical";
    j["drive.delta0_thz"] = b.delta0.thz;
    j["drive.g_a_thz"] = b.g_a.thz;
    j["drive.eps_p_thz"] = b.eps_p.thz;
  }
  return j;
}

json parse_config_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": " + e.what());
  }
}

json load_config_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

SystemParams load_config(const std::filesystem::path& path) { return params_from_json(load_config_json(path)); }

}  // namespace moloconv
