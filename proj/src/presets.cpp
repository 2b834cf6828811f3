#include "moloconv/presets.hpp"

#include <string>

namespace moloconv {

SystemParams figure_base(Freq delta, double g_a_enh_thz) {
  SystemParams p;
  p.omega_b = Freq{30.0};
  p.omega_c = Freq{30.0};
  p.kappa_a = Freq{30.0};
  p.kappa_c = Freq{0.5};
  p.gamma_B = Freq{0.1};
  p.g_c = Freq{1e-4};  // 0.1 GHz
  p.n_molecules = 10'000'000;
  p.drive = DirectDrive{delta, {g_a_enh_thz, 0.0}};
  return p;
}

namespace {

SystemParams with_kappa_a(SystemParams p, double kappa_a) {
  p.kappa_a = Freq{kappa_a};
  return p;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table{
      {"fig2", "blue-detuned stability base point", figure_base(Freq{-30.0}, 0.75)},
      {"fig4-red", "red-detuned conversion, |G_a| = 3", figure_base(Freq{30.0}, 3.0)},
      {"fig4-blue", "blue-detuned conversion, |G_a| = 3", figure_base(Freq{-30.0}, 3.0)},
      {"fig6-red", "red-detuned, kappa_a = 2, |G_a| = 0.75", with_kappa_a(figure_base(Freq{30.0}, 0.75), 2.0)},
      {"fig6-blue", "blue-detuned amplification, kappa_a = 2, |G_a| = 0.75",
       with_kappa_a(figure_base(Freq{-30.0}, 0.75), 2.0)},
  };
  return table;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + std::string(p.name);
  throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace moloconv
