#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace spreadnet {

/// Run manifest: command, ISO-8601 timestamp, full parameter map, FNV-1a
/// digests of every input and output file.
nlohmann::ordered_json build_manifest(const std::string& command,
                                      const nlohmann::ordered_json& parameters,
                                      const std::vector<std::string>& input_paths,
                                      const std::vector<std::string>& output_paths);

/// Writes `<out_dir>/<command>_manifest.json`, returns the path.
std::string write_manifest(const std::string& out_dir, const nlohmann::ordered_json& manifest);

nlohmann::ordered_json load_manifest(const std::string& path);

}  // namespace spreadnet
