#include "spreadnet/manifest.hpp"

#include <ctime>
#include <fstream>
#include <sstream>

#include "spreadnet/timeutil.hpp"
#include "spreadnet/util.hpp"

namespace spreadnet {

nlohmann::ordered_json build_manifest(const std::string& command,
                                      const nlohmann::ordered_json& parameters,
                                      const std::vector<std::string>& input_paths,
                                      const std::vector<std::string>& output_paths) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["timestamp"] = format_iso8601(static_cast<std::int64_t>(std::time(nullptr)));
    j["parameters"] = parameters;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const std::string& p : input_paths) inputs[p] = file_digest(p);
    j["inputs"] = inputs;
    nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
    for (const std::string& p : output_paths) outputs[p] = file_digest(p);
    j["outputs"] = outputs;
    return j;
}

std::string write_manifest(const std::string& out_dir, const nlohmann::ordered_json& manifest) {
    const std::string path =
        out_dir + "/" + manifest.at("command").get<std::string>() + "_manifest.json";
    write_text_file(path, manifest.dump(2) + "\n");
    return path;
}

nlohmann::ordered_json load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open manifest " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return nlohmann::ordered_json::parse(buf.str());
}

}  // namespace spreadnet
