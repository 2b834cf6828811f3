#include "moloconv/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

#include "moloconv/errors.hpp"

namespace moloconv {

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw Error("sha256 failed");

  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(kHex[digest[k] >> 4]);
    out.push_back(kHex[digest[k] & 0xf]);
  }
  return out;
}

std::string canonical_config(const nlohmann::json& config) { return config.dump(); }

std::string config_hash(const nlohmann::json& config) { return sha256_hex(canonical_config(config)); }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json files_json = nlohmann::json::array();
  for (const auto& [name, digest] : files) files_json.push_back({{"name", name}, {"sha256", digest}});
  return {{"config_hash", config_hash},
          {"tool_version", tool_version},
          {"command_line", command_line},
          {"timestamp", timestamp},
          {"files", files_json}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest write_manifest(const std::filesystem::path& dir, const std::string& manifest_name,
                           const nlohmann::json& config, const std::string& command_line,
                           const std::vector<std::string>& files) {
  RunManifest m;
  m.config_hash = config_hash(config);
  m.command_line = command_line;
  m.timestamp = utc_timestamp();
  for (const auto& name : files) {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) throw Error("cannot read output file '" + (dir / name).string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    m.files.emplace_back(name, sha256_hex(buf.str()));
  }
  std::ofstream out(dir / manifest_name, std::ios::binary);
  if (!out) throw Error("cannot write manifest '" + (dir / manifest_name).string() + "'");
  out << m.to_json().dump(2) << '\n';
  return m;
}

}  // namespace moloconv
