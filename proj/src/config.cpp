#include "spreadnet/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spreadnet/util.hpp"

namespace spreadnet {

namespace {

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ValidationError("config key " + key + ": not a number: " + value);
    return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || value.find('-') != std::string::npos)
        throw ValidationError("config key " + key + ": not a non-negative integer: " + value);
    return v;
}

long to_long(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ValidationError("config key " + key + ": not an integer: " + value);
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ValidationError("config key " + key + ": expected true/false: " + value);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void PipelineConfig::apply(const std::string& key, const std::string& value) {
    if (key == "articles") articles = value;
    else if (key == "vectors") vectors = value;
    else if (key == "out") out = value;
    else if (key == "sg_min_count") sg_min_count = to_u64(key, value);
    else if (key == "sg_dims") sg_dims = to_u64(key, value);
    else if (key == "sg_window") sg_window = to_u64(key, value);
    else if (key == "sg_negative") sg_negative = to_u64(key, value);
    else if (key == "sg_epochs") sg_epochs = to_u64(key, value);
    else if (key == "sg_learning_rate") sg_learning_rate = to_double(key, value);
    else if (key == "hist_bins") hist_bins = to_u64(key, value);
    else if (key == "rho") rho = to_double(key, value);
    else if (key == "gamma_hours") gamma_hours = to_double(key, value);
    else if (key == "rho_grid_min") rho_grid_min = to_double(key, value);
    else if (key == "rho_grid_max") rho_grid_max = to_double(key, value);
    else if (key == "rho_grid_points") rho_grid_points = to_u64(key, value);
    else if (key == "rho_target_giant") rho_target_giant = to_double(key, value);
    else if (key == "windows") windows = value;
    else if (key == "window_coverage") window_coverage = to_double(key, value);
    else if (key == "similarity_pairs_floor") similarity_pairs_floor = to_double(key, value);
    else if (key == "lambda") lambda = to_double(key, value);
    else if (key == "mu_per_day") mu_per_day = to_double(key, value);
    else if (key == "dt") dt = to_double(key, value);
    else if (key == "t_end") t_end = to_double(key, value);
    else if (key == "record_dt") record_dt = to_double(key, value);
    else if (key == "transpose_adjacency") transpose_adjacency = to_bool(key, value);
    else if (key == "seed_articles") seed_articles = value;
    else if (key == "lambda_grid_min") lambda_grid_min = to_double(key, value);
    else if (key == "lambda_grid_max") lambda_grid_max = to_double(key, value);
    else if (key == "lambda_grid_points") lambda_grid_points = to_u64(key, value);
    else if (key == "peak_target_lo") peak_target_lo = to_double(key, value);
    else if (key == "peak_target_hi") peak_target_hi = to_double(key, value);
    else if (key == "runs") runs = to_u64(key, value);
    else if (key == "realize_dt") realize_dt = to_double(key, value);
    else if (key == "compare_offset") compare_offset = to_long(key, value);
    else if (key == "threads") threads = static_cast<unsigned>(to_u64(key, value));
    else if (key == "synth_cascades") synth_cascades = to_u64(key, value);
    else if (key == "synth_articles_per_cascade") synth_articles_per_cascade = to_u64(key, value);
    else if (key == "synth_topic_vocab") synth_topic_vocab = to_u64(key, value);
    else if (key == "synth_overlap") synth_overlap = to_double(key, value);
    else if (key == "synth_copy_noise") synth_copy_noise = to_double(key, value);
    else if (key == "synth_lag_mean_hours") synth_lag_mean_hours = to_double(key, value);
    else if (key == "synth_lag_cap_hours") synth_lag_cap_hours = to_double(key, value);
    else if (key == "synth_root_spacing_hours") synth_root_spacing_hours = to_double(key, value);
    else if (key == "synth_tokens_per_article") synth_tokens_per_article = to_u64(key, value);
    else if (key == "synth_publishers") synth_publishers = to_u64(key, value);
    else if (key == "synth_start") synth_start = value;
    else if (key == "seed") seed = to_u64(key, value);
    else throw ValidationError("unknown config key: " + key);
}

PipelineConfig parse_config(const std::string& text, const std::string& origin) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError(origin + " line " + std::to_string(lineno) +
                                  ": expected key = value");
        cfg.apply(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::vector<double> PipelineConfig::window_grid() const {
    std::vector<double> out;
    std::istringstream in(windows);
    std::string item;
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        out.push_back(to_double("windows", t));
    }
    if (out.empty()) throw ValidationError("config key windows: empty grid");
    return out;
}

std::vector<std::string> PipelineConfig::seed_article_list() const {
    std::vector<std::string> out;
    std::istringstream in(seed_articles);
    std::string item;
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

nlohmann::ordered_json PipelineConfig::to_json() const {
    nlohmann::ordered_json j;
    j["articles"] = articles;
    j["vectors"] = vectors;
    j["out"] = out;
    j["sg_min_count"] = sg_min_count;
    j["sg_dims"] = sg_dims;
    j["sg_window"] = sg_window;
    j["sg_negative"] = sg_negative;
    j["sg_epochs"] = sg_epochs;
    j["sg_learning_rate"] = sg_learning_rate;
    j["hist_bins"] = hist_bins;
    j["rho"] = rho;
    j["gamma_hours"] = gamma_hours;
    j["rho_grid_min"] = rho_grid_min;
    j["rho_grid_max"] = rho_grid_max;
    j["rho_grid_points"] = rho_grid_points;
    j["rho_target_giant"] = rho_target_giant;
    j["windows"] = windows;
    j["window_coverage"] = window_coverage;
    j["similarity_pairs_floor"] = similarity_pairs_floor;
    j["lambda"] = lambda;
    j["mu_per_day"] = mu_per_day;
    j["dt"] = dt;
    j["t_end"] = t_end;
    j["record_dt"] = record_dt;
    j["transpose_adjacency"] = transpose_adjacency;
    j["seed_articles"] = seed_articles;
    j["lambda_grid_min"] = lambda_grid_min;
    j["lambda_grid_max"] = lambda_grid_max;
    j["lambda_grid_points"] = lambda_grid_points;
    j["peak_target_lo"] = peak_target_lo;
    j["peak_target_hi"] = peak_target_hi;
    j["runs"] = runs;
    j["realize_dt"] = realize_dt;
    j["compare_offset"] = compare_offset;
    j["threads"] = threads;
    j["synth_cascades"] = synth_cascades;
    j["synth_articles_per_cascade"] = synth_articles_per_cascade;
    j["synth_topic_vocab"] = synth_topic_vocab;
    j["synth_overlap"] = synth_overlap;
    j["synth_copy_noise"] = synth_copy_noise;
    j["synth_lag_mean_hours"] = synth_lag_mean_hours;
    j["synth_lag_cap_hours"] = synth_lag_cap_hours;
    j["synth_root_spacing_hours"] = synth_root_spacing_hours;
    j["synth_tokens_per_article"] = synth_tokens_per_article;
    j["synth_publishers"] = synth_publishers;
    j["synth_start"] = synth_start;
    j["seed"] = seed;
    return j;
}

}  // namespace spreadnet
