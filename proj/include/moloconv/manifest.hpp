#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace moloconv {

inline constexpr std::string_view kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);

/// Canonical form: compact dump with lexicographically sorted keys.
std::string canonical_config(const nlohmann::json& config);
std::string config_hash(const nlohmann::json& config);

struct RunManifest {
  std::string config_hash;
  std::string tool_version{kToolVersion};
  std::string command_line;
  std::string timestamp;  // ISO-8601 UTC
  std::vector<std::pair<std::string, std::string>> files;  // name, sha256 of contents

  nlohmann::json to_json() const;
};

std::string utc_timestamp();

/// Hashes each listed file (relative to `dir`) and writes dir/manifest_name.
RunManifest write_manifest(const std::filesystem::path& dir, const std::string& manifest_name,
                           const nlohmann::json& config, const std::string& command_line,
                           const std::vector<std::string>& files);

}  // namespace moloconv
