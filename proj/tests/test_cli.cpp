#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "moloconv/commands.hpp"
#include "moloconv/config.hpp"
#include "moloconv/manifest.hpp"
#include "support.hpp"

using namespace moloconv;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "moloconv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("moloconv_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Every file listed in a manifest hashes to the recorded digest, and the
// recorded config hash is recomputed from the config on disk.
void check_manifest(const fs::path& manifest, const fs::path& config) {
  const json m = json::parse(slurp(manifest));
  CHECK(m["config_hash"] == config_hash(json::parse(slurp(config))));
  CHECK(m["tool_version"] == std::string(kToolVersion));
  CHECK_FALSE(m["timestamp"].get<std::string>().empty());
  for (const auto& f : m["files"]) {
    const fs::path file = manifest.parent_path() / f["name"].get<std::string>();
    REQUIRE(fs::exists(file));
    CHECK(f["sha256"] == sha256_hex(slurp(file)));
  }
}

}  // namespace

TEST_CASE("help and usage errors") {
  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("spectrum") != std::string::npos);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"sidebands"}).code == 2);
  CHECK(run_cli({"sidebands", "--preset", "fig4-red", "--model", "exact"}).code == 2);
  CHECK(run_cli({"sidebands", "--preset", "no-such-preset"}).code == 2);
  CHECK(run_cli({"reproduce", "fig3", "--out-dir", scratch("fig3").string()}).code == 2);
}

TEST_CASE("malformed config reports line and column") {
  const auto dir = scratch("malformed");
  const auto cfg = write_text(dir / "bad.json", "{\n  \"omega_b_thz\": 30,\n  \"kappa_a_thz\": ,\n}\n");
  const auto r = run_cli({"sidebands", "--config", cfg.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(r.err.find("column") != std::string::npos);
}

TEST_CASE("config round trip and strictness") {
  const auto p = testing::fig4(false, 0.75);
  const auto back = params_from_json(params_to_json(p));
  CHECK(params_to_json(back) == params_to_json(p));

  json j = params_to_json(p);
  j["colour"] = "blue";
  CHECK_THROWS_AS(params_from_json(j), ConfigError);

  json nested = json::parse(R"({"omega_b_thz": 30, "omega_c_thz": 30, "kappa_a_thz": 30, "kappa_c_thz": 0.5,
    "gamma_B_thz": 0.1, "g_c_thz": 1e-4, "n_molecules": 1e7,
    "drive": {"mode": "direct", "delta_thz": 30, "g_a_enh_thz": [3, 0]}})");
  CHECK(params_to_json(params_from_json(nested)) == params_to_json(testing::fig4(true, 3.0)));

  nested["drive"]["eps_p_thz"] = 10;
  CHECK_THROWS_AS(params_from_json(nested), ConfigError);
  nested["drive"].erase("eps_p_thz");
  nested["n_molecules"] = 2.5;
  CHECK_THROWS_AS(params_from_json(nested), ConfigError);
  nested["n_molecules"] = 1e7;
  nested["kappa_a_thz"] = 0;
  CHECK_THROWS_AS(params_from_json(nested), ValidationError);
}

TEST_CASE("sidebands at the amplification point") {
  const auto r = run_cli({"sidebands", "--preset", "fig6-blue"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["t_ac_S"].get<double>() > 300.0);
  CHECK(j["t_ac_S"].get<double>() < 3000.0);
  CHECK(j["regime"] == "blue");
  CHECK(j["stable"] == true);

  const auto rwa = run_cli({"sidebands", "--preset", "fig6-blue", "--model", "rwa"});
  REQUIRE(rwa.code == 0);
  CHECK(json::parse(rwa.out)["model"] == "rwa");

  const auto forced = run_cli({"sidebands", "--preset", "fig6-blue", "--detuning", "red"});
  REQUIRE(forced.code == 0);
  CHECK(json::parse(forced.out)["regime"] == "red");

  CHECK(run_cli({"sidebands", "--preset", "fig4-blue"}).code == 0);
  const auto dir = scratch("sidebands");
  const auto cfg = write_text(dir / "past_threshold.json", params_to_json(testing::fig4(false, 4.0)).dump());
  const auto unstable = run_cli({"sidebands", "--config", cfg.string()});
  CHECK(unstable.code == 3);
  CHECK(json::parse(unstable.out)["stable"] == false);
}

TEST_CASE("spectrum") {
  const auto dir = scratch("spectrum");

  SUBCASE("red preset peaks at the anti-Stokes sideband") {
    const auto out = dir / "red.csv";
    const auto r = run_cli({"spectrum", "--preset", "fig4-red", "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 2002);
    CHECK(rows[0].size() == 12);
    double best = -1.0, at = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const double t = std::stod(rows[k][2]);
      if (t > best) {
        best = t;
        at = std::stod(rows[k][0]);
      }
    }
    CHECK(at == doctest::Approx(-30.0).epsilon(0.05));
    check_manifest(dir / "red.csv.manifest.json", dir / "red.csv.config.json");
  }

  SUBCASE("decoupled configuration converts nothing") {
    const auto cfg = write_text(dir / "decoupled.json", R"({"omega_b_thz": 30, "omega_c_thz": 30,
      "kappa_a_thz": 30, "kappa_c_thz": 0.5, "gamma_B_thz": 0.1, "g_c_thz": 0, "n_molecules": 1,
      "drive.mode": "direct", "drive.delta_thz": 30, "drive.g_a_enh_thz": 0})");
    const auto out = dir / "decoupled.csv";
    REQUIRE(run_cli({"spectrum", "--config", cfg.string(), "--grid", "-40:40:81", "--out", out.string()}).code == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 82);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      CHECK(rows[k][2] == "0");
      CHECK(rows[k][11] == "undefined");
    }
  }

  SUBCASE("empty or inverted grid") {
    CHECK(run_cli({"spectrum", "--preset", "fig4-red", "--grid", "-1:1:0", "--out", (dir / "x.csv").string()}).code == 2);
    CHECK(run_cli({"spectrum", "--preset", "fig4-red", "--grid", "1:-1:10", "--out", (dir / "x.csv").string()}).code == 2);
  }

  SUBCASE("unstable system exits with a physics error") {
    const auto cfg = dir / "unstable.json";
    auto j = params_to_json(testing::fig4(false, 4.0));
    write_text(cfg, j.dump());
    const auto r = run_cli({"spectrum", "--config", cfg.string(), "--out", (dir / "u.csv").string()});
    CHECK(r.code == 3);
    CHECK(fs::exists(dir / "u.csv"));
  }
}

TEST_CASE("sweep and stability-map subcommands") {
  const auto dir = scratch("sweep");
  const auto out = dir / "s.csv";
  REQUIRE(run_cli({"sweep", "--preset", "fig4-blue", "--x", "gA:0:5:51", "--metrics", "t_ac_S,margin", "--out",
                   out.string()})
              .code == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 52);
  CHECK(rows[0] == std::vector<std::string>{"gA", "t_ac_S", "margin", "stable"});
  check_manifest(dir / "s.csv.manifest.json", dir / "s.csv.config.json");

  CHECK(run_cli({"sweep", "--preset", "fig4-blue", "--x", "gA:0:5:51", "--metrics", "speed", "--out",
                 out.string()})
            .code == 2);

  const auto map = dir / "m.csv";
  REQUIRE(run_cli({"stability-map", "--preset", "fig2", "--x", "gA:0:5:11", "--y", "N:1e5:1e9:5:log", "--out",
                   map.string()})
              .code == 0);
  const auto mrows = read_csv(map);
  REQUIRE(mrows.size() == 56);
  CHECK(mrows[0] == std::vector<std::string>{"x", "y", "stable", "margin_thz"});
}

TEST_CASE("steady-state and dump-matrix subcommands") {
  const auto dir = scratch("steady");
  const auto cfg = write_text(dir / "phys.json", R"({"omega_b_thz": 30, "omega_c_thz": 30,
    "kappa_a_thz": 30, "kappa_c_thz": 0.5, "gamma_B_thz": 0.1, "g_c_thz": 1e-4, "n_molecules": 1e7,
    "drive": {"mode": "physical", "delta0_thz": 30, "g_a_thz": 1e-12, "eps_p_thz": 500}})");
  const auto r = run_cli({"steady-state", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["branches"].size() == 1);
  const double re = j["branches"][0]["a_re"], im = j["branches"][0]["a_im"];
  CHECK(re * re + im * im == doctest::Approx(138.888888889).epsilon(1e-6));
  CHECK(j["multistable"] == false);

  CHECK(run_cli({"steady-state", "--preset", "fig4-red"}).code == 2);

  const auto d = run_cli({"dump-matrix", "--preset", "fig4-red"});
  REQUIRE(d.code == 0);
  const json m = json::parse(d.out);
  REQUIRE(m["m"].size() == 6);
  CHECK(m["m"][0][2][1].get<double>() == doctest::Approx(3.0 * kTwoPi));
  CHECK(m["l"][2][2][0].get<double>() == doctest::Approx(std::sqrt(0.2 * kTwoPi)));
}

TEST_CASE("reproduce writes every panel with a manifest") {
  SUBCASE("fig6") {
    const auto dir = scratch("fig6");
    REQUIRE(run_cli({"reproduce", "fig6", "--out-dir", dir.string()}).code == 0);
    for (const char* f : {"fig6a.csv", "fig6b.csv", "fig6c.csv", "fig6d.csv"}) CHECK(fs::exists(dir / f));
    check_manifest(dir / "manifest.json", dir / "config.json");
    CHECK(json::parse(slurp(dir / "manifest.json"))["files"].size() == 4);
  }
  SUBCASE("fig2") {
    const auto dir = scratch("fig2");
    REQUIRE(run_cli({"reproduce", "fig2", "--out-dir", dir.string()}).code == 0);
    CHECK(read_csv(dir / "fig2a.csv").size() == 201 * 201 + 1);
    CHECK(read_csv(dir / "fig2b.csv").size() == 201 * 201 + 1);
    check_manifest(dir / "manifest.json", dir / "config.json");
  }
  SUBCASE("fig5") {
    const auto dir = scratch("fig5");
    REQUIRE(run_cli({"reproduce", "fig5", "--out-dir", dir.string()}).code == 0);
    const auto rows = read_csv(dir / "fig5c.csv");
    CHECK(rows[0] == std::vector<std::string>{"omega_thz", "n_add_gA1", "n_add_gA2", "n_add_gA3"});
    CHECK(rows.size() == 1202);
  }
}

TEST_CASE("figure output is byte-identical across worker counts") {
  std::vector<std::string> names{"fig4a.csv", "fig4a_rwa.csv", "fig4b.csv", "fig4b_rwa.csv",
                                 "fig4c.csv", "fig4d.csv",     "fig4e.csv", "fig4f.csv"};
  const auto one = scratch("golden1"), many = scratch("golden4");
  ::setenv("MOLOCONV_THREADS", "1", 1);
  REQUIRE(run_cli({"reproduce", "fig4", "--out-dir", one.string()}).code == 0);
  ::setenv("MOLOCONV_THREADS", "4", 1);
  REQUIRE(run_cli({"reproduce", "fig4", "--out-dir", many.string()}).code == 0);
  ::unsetenv("MOLOCONV_THREADS");
  for (const auto& n : names) {
    CAPTURE(n);
    CHECK(slurp(one / n) == slurp(many / n));
  }
  CHECK(slurp(one / "config.json") == slurp(many / "config.json"));
  check_manifest(many / "manifest.json", many / "config.json");
}
