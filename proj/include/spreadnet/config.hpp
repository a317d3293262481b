#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace spreadnet {

/// Flat key=value pipeline configuration; every subcommand reads the same
/// file and command-line flags override individual keys.
struct PipelineConfig {
    // paths
    std::string articles;
    std::string vectors;
    std::string out = "out";

    // corpus / embedding
    std::size_t sg_min_count = 10;
    std::size_t sg_dims = 300;
    std::size_t sg_window = 10;
    std::size_t sg_negative = 5;
    std::size_t sg_epochs = 5;
    double sg_learning_rate = 0.025;
    std::size_t hist_bins = 50;

    // reconstruction
    double rho = 0.8;
    double gamma_hours = 168.0;
    double rho_grid_min = 0.0;
    double rho_grid_max = 0.98;
    std::size_t rho_grid_points = 50;
    double rho_target_giant = 0.8;
    std::string windows = "24,48,96,168,240,360";
    double window_coverage = 0.95;
    double similarity_pairs_floor = 0.5;

    // SIR model
    double lambda = 0.1;
    double mu_per_day = 1.0;
    double dt = 0.01;
    double t_end = 60.0;
    double record_dt = 0.1;
    bool transpose_adjacency = false;
    std::string seed_articles;  // comma-separated ids, empty = earliest
    double lambda_grid_min = 0.01;
    double lambda_grid_max = 1.0;
    std::size_t lambda_grid_points = 25;
    double peak_target_lo = 0.0;  // 0/0 = derive from the empirical peak
    double peak_target_hi = 0.0;

    // realization / ensemble
    std::size_t runs = 10000;
    double realize_dt = 0.1;
    long compare_offset = 0;
    unsigned threads = 0;  // 0 = hardware concurrency

    // synthetic corpus
    std::size_t synth_cascades = 4;
    std::size_t synth_articles_per_cascade = 50;
    std::size_t synth_topic_vocab = 150;
    double synth_overlap = 0.2;
    double synth_copy_noise = 0.1;
    double synth_lag_mean_hours = 24.0;
    double synth_lag_cap_hours = 168.0;
    double synth_root_spacing_hours = 6.0;
    std::size_t synth_tokens_per_article = 200;
    std::size_t synth_publishers = 8;
    std::string synth_start = "2019-06-01T00:00:00Z";

    std::uint64_t seed = 1;

    /// Applies one key=value assignment; unknown keys or unparseable values
    /// raise ValidationError.
    void apply(const std::string& key, const std::string& value);

    std::vector<double> window_grid() const;
    std::vector<std::string> seed_article_list() const;

    nlohmann::ordered_json to_json() const;
};

PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& text, const std::string& origin);

}  // namespace spreadnet
