#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace parksent::cli {

std::string sha256_file(const std::filesystem::path& path);

/// Provenance record written next to every subcommand's outputs:
/// tool version, resolved config, seed, input content hashes, output names.
/// The created_utc timestamp is the one field exempt from byte-identical
/// rerun guarantees.
nlohmann::json make_sidecar(const std::string& subcommand, const nlohmann::json& resolved_config,
                            const std::vector<std::filesystem::path>& inputs,
                            const std::vector<std::string>& outputs);

}  // namespace parksent::cli
