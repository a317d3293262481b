#include "spreadnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spreadnet/rng.hpp"
#include "spreadnet/util.hpp"

namespace spreadnet {

void SynthConfig::validate() const {
    if (n_cascades < 1 || articles_per_cascade < 1 || topic_vocab_size < 1 ||
        tokens_per_article < 1 || n_publishers < 1)
        throw ValidationError("synth counts must be >= 1");
    // Margin between the topic-pool and shared-pool shares: (1 - overlap) -
    // overlap >= 0.2, i.e. overlap <= 0.4 with the boundary included.
    if (!(overlap >= 0.0) || overlap > 0.4)
        throw ValidationError("overlap leaves less than 0.2 probability-mass margin to the topic pool");
    if (!(copy_noise >= 0.0 && copy_noise <= 1.0)) throw ValidationError("copy_noise must be in [0,1]");
    if (!(lag_mean_hours > 0.0) || !(lag_cap_hours > 0.0))
        throw ValidationError("lag parameters must be > 0");
    if (!(root_spacing_hours >= 0.0)) throw ValidationError("root_spacing_hours must be >= 0");
}

namespace {

std::string pool_token(const char* prefix, std::size_t cascade, std::size_t k) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%02zuw%03zu", prefix, cascade, k);
    return buf;
}

}  // namespace

SynthResult generate(const SynthConfig& config) {
    config.validate();
    Rng rng(config.seed);

    std::vector<std::vector<std::string>> topic_pool(config.n_cascades);
    for (std::size_t c = 0; c < config.n_cascades; ++c) {
        topic_pool[c].reserve(config.topic_vocab_size);
        for (std::size_t k = 0; k < config.topic_vocab_size; ++k)
            topic_pool[c].push_back(pool_token("t", c, k));
    }
    std::vector<std::string> shared_pool;
    shared_pool.reserve(config.topic_vocab_size);
    for (std::size_t k = 0; k < config.topic_vocab_size; ++k)
        shared_pool.push_back(pool_token("s", 0, k));

    auto draw_token = [&](std::size_t cascade) -> const std::string& {
        if (config.overlap > 0.0 && rng.next_double() < config.overlap)
            return shared_pool[rng.uniform_index(shared_pool.size())];
        return topic_pool[cascade][rng.uniform_index(topic_pool[cascade].size())];
    };

    std::vector<Article> articles;
    struct Planted {
        std::string parent, child;
    };
    std::vector<Planted> edges;
    std::vector<std::string> root_ids;

    for (std::size_t c = 0; c < config.n_cascades; ++c) {
        std::vector<std::vector<std::string>> tokens(config.articles_per_cascade);
        std::vector<std::int64_t> when(config.articles_per_cascade);
        std::vector<std::string> ids(config.articles_per_cascade);
        for (std::size_t k = 0; k < config.articles_per_cascade; ++k) {
            char idbuf[32];
            std::snprintf(idbuf, sizeof(idbuf), "c%02zu-%03zu", c, k);
            ids[k] = idbuf;
            if (k == 0) {
                when[k] = config.start_epoch +
                          static_cast<std::int64_t>(std::llround(
                              static_cast<double>(c) * config.root_spacing_hours * 3600.0));
                tokens[k].reserve(config.tokens_per_article);
                for (std::size_t t = 0; t < config.tokens_per_article; ++t)
                    tokens[k].push_back(draw_token(c));
                root_ids.push_back(ids[k]);
            } else {
                const std::size_t parent = rng.uniform_index(k);
                const double lag_h = rng.truncated_exponential(config.lag_mean_hours, config.lag_cap_hours);
                const std::int64_t lag_s =
                    std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(lag_h * 3600.0)));
                when[k] = when[parent] + lag_s;
                tokens[k] = tokens[parent];
                for (std::string& tok : tokens[k]) {
                    if (config.copy_noise > 0.0 && rng.next_double() < config.copy_noise)
                        tok = draw_token(c);
                }
                edges.push_back({ids[parent], ids[k]});
            }
            Article a;
            a.id = ids[k];
            a.publisher = "pub" + std::to_string(rng.uniform_index(config.n_publishers));
            a.published_at = when[k];
            std::string text;
            text.reserve(tokens[k].size() * 7);
            for (std::size_t t = 0; t < tokens[k].size(); ++t) {
                if (t > 0) text += ' ';
                text += tokens[k][t];
            }
            a.text = std::move(text);
            articles.push_back(std::move(a));
        }
    }

    SynthResult out;
    out.articles = ArticleSet(std::move(articles));
    for (std::size_t i = 0; i < out.articles.size(); ++i) {
        const Article& a = out.articles.at(i);
        out.truth.nodes.push_back({a.id, a.publisher, a.published_at});
    }
    for (const Planted& e : edges) {
        SpreadEdge edge;
        edge.infector = out.articles.index_of(e.parent);
        edge.infected = out.articles.index_of(e.child);
        edge.similarity = 0.0;  // planted truth carries no similarity score
        edge.lag_hours = out.articles.lag_hours(edge.infector, edge.infected);
        out.truth.edges.push_back(edge);
    }
    for (const std::string& id : root_ids) out.truth.roots.push_back(out.articles.index_of(id));
    std::sort(out.truth.roots.begin(), out.truth.roots.end());
    return out;
}

PlantedMetrics planted_metrics(const SpreadNetwork& reconstructed, const SpreadNetwork& truth) {
    std::set<std::string> a_ids, b_ids;
    for (const SpreadNode& n : reconstructed.nodes) a_ids.insert(n.id);
    for (const SpreadNode& n : truth.nodes) b_ids.insert(n.id);
    if (a_ids != b_ids)
        throw ValidationError("reconstructed and planted networks cover different article sets");

    auto edge_set = [](const SpreadNetwork& net) {
        std::set<std::pair<std::string, std::string>> s;
        for (const SpreadEdge& e : net.edges)
            s.insert({net.nodes[e.infector].id, net.nodes[e.infected].id});
        return s;
    };
    const auto pred = edge_set(reconstructed);
    const auto gold = edge_set(truth);
    std::size_t hit = 0;
    for (const auto& e : pred)
        if (gold.count(e) != 0) ++hit;

    PlantedMetrics m;
    if (pred.empty()) {
        m.precision = 1.0;
        m.zero_predictions = true;
    } else {
        m.precision = static_cast<double>(hit) / static_cast<double>(pred.size());
    }
    m.recall = gold.empty() ? 1.0 : static_cast<double>(hit) / static_cast<double>(gold.size());
    return m;
}

}  // namespace spreadnet
