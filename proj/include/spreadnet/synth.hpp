#pragma once

#include <cstddef>
#include <cstdint>

#include "spreadnet/article.hpp"
#include "spreadnet/netreconstruct.hpp"

namespace spreadnet {

/// Generator settings for synthetic corpora with a planted spread network.
/// Tokens are drawn from per-cascade topic pools plus a shared pool; children
/// copy their infector's tokens with per-token resampling noise.
struct SynthConfig {
    std::size_t n_cascades = 4;
    std::size_t articles_per_cascade = 50;
    std::size_t topic_vocab_size = 150;
    double overlap = 0.2;      // share of token draws taken from the shared pool
    double copy_noise = 0.1;   // per-token resample probability in children
    double lag_mean_hours = 24.0;
    double lag_cap_hours = 168.0;
    double root_spacing_hours = 6.0;
    std::size_t tokens_per_article = 200;
    std::size_t n_publishers = 8;
    std::int64_t start_epoch = 1559347200;  // 2019-06-01T00:00:00Z
    std::uint64_t seed = 42;

    void validate() const;
};

struct SynthResult {
    ArticleSet articles;   // publication-sorted, like any loaded corpus
    SpreadNetwork truth;   // planted infectors, indices into `articles`
};

SynthResult generate(const SynthConfig& config);

struct PlantedMetrics {
    double precision = 0.0;
    double recall = 0.0;
    bool zero_predictions = false;  // precision reported as 1.0 with no predicted edges
};

/// Directed edge-set precision/recall of a reconstruction against the planted
/// truth; both networks must cover the same article ids.
PlantedMetrics planted_metrics(const SpreadNetwork& reconstructed, const SpreadNetwork& truth);

}  // namespace spreadnet
