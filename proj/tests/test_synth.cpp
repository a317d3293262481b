#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "spreadnet/corpus.hpp"
#include "spreadnet/docvec.hpp"
#include "spreadnet/netreconstruct.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/synth.hpp"
#include "spreadnet/util.hpp"

using namespace spreadnet;

namespace {

SynthConfig small_config() {
    SynthConfig c;
    c.n_cascades = 3;
    c.articles_per_cascade = 10;
    c.topic_vocab_size = 40;
    c.tokens_per_article = 60;
    c.seed = 5;
    return c;
}

std::map<std::string, int> token_multiset(const std::string& text) {
    std::map<std::string, int> counts;
    for (const std::string& tok : tokenize(text)) counts[tok] += 1;
    return counts;
}

// Deterministic stand-in for trained embeddings: each term gets a random
// unit-free vector seeded by its own hash, so equal tokens align exactly.
WordVectors hash_vectors(const Vocabulary& vocab, std::size_t dims) {
    std::vector<double> matrix;
    matrix.reserve(vocab.size() * dims);
    for (const std::string& term : vocab.terms) {
        Rng rng(fnv1a64(term.data(), term.size()));
        for (std::size_t d = 0; d < dims; ++d) matrix.push_back(rng.uniform(-1.0, 1.0));
    }
    return WordVectors(vocab.terms, dims, std::move(matrix));
}

SpreadNetwork reconstruct(const SynthResult& synth, double rho, double gamma_hours) {
    const Vocabulary vocab = build_vocabulary(synth.articles, 1);
    const WordVectors wv = hash_vectors(vocab, 24);
    const WeightMatrix weights = tfidf_weights(synth.articles, vocab);
    const SimMatrix sim = similarity_matrix(document_vectors(synth.articles, vocab, weights, wv));
    const SimMatrix masked = masked_similarity(sim, lag_matrix(synth.articles, gamma_hours), rho);
    return assign_infectors(masked, synth.articles);
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("config validation") {
    SynthConfig c = small_config();
    CHECK_NOTHROW(c.validate());
    c.overlap = 0.4;  // margin exactly 0.2 is still allowed
    CHECK_NOTHROW(c.validate());
    c.overlap = 0.45;
    CHECK_THROWS_WITH_AS(c.validate(),
                         "overlap leaves less than 0.2 probability-mass margin to the topic pool",
                         ValidationError);
    c = small_config();
    c.n_cascades = 0;
    CHECK_THROWS_WITH_AS(c.validate(), "synth counts must be >= 1", ValidationError);
    c = small_config();
    c.copy_noise = 1.5;
    CHECK_THROWS_WITH_AS(c.validate(), "copy_noise must be in [0,1]", ValidationError);
    c = small_config();
    c.lag_mean_hours = 0.0;
    CHECK_THROWS_WITH_AS(c.validate(), "lag parameters must be > 0", ValidationError);
    c = small_config();
    c.root_spacing_hours = -1.0;
    CHECK_THROWS_WITH_AS(c.validate(), "root_spacing_hours must be >= 0", ValidationError);
}

TEST_CASE("generated corpus has the planted forest shape") {
    const SynthConfig c = small_config();
    const SynthResult r = generate(c);
    REQUIRE(r.articles.size() == 30);
    REQUIRE(r.truth.nodes.size() == 30);
    CHECK(r.truth.roots.size() == c.n_cascades);
    CHECK(r.truth.edges.size() == 30 - c.n_cascades);

    // Exactly one inbound edge per non-root node, edges forward in time.
    std::vector<int> inbound(30, 0);
    for (const SpreadEdge& e : r.truth.edges) {
        inbound[e.infected] += 1;
        const std::int64_t parent_t = r.articles.at(e.infector).published_at;
        const std::int64_t child_t = r.articles.at(e.infected).published_at;
        CHECK(child_t > parent_t);
        const std::int64_t lag_s = child_t - parent_t;
        CHECK(lag_s >= 1);
        CHECK(lag_s <= std::int64_t(c.lag_cap_hours * 3600.0) + 1);
        CHECK(e.lag_hours == doctest::Approx(double(lag_s) / 3600.0).epsilon(1e-12));
    }
    for (std::size_t root : r.truth.roots) CHECK(inbound[root] == 0);
    std::size_t no_inbound = 0;
    for (int d : inbound) {
        CHECK(d <= 1);
        if (d == 0) ++no_inbound;
    }
    CHECK(no_inbound == r.truth.roots.size());
    CHECK_NOTHROW(generations(r.truth));

    // Roots carry the cascade spacing and ids follow the cascade/index scheme.
    for (std::size_t k = 0; k < c.n_cascades; ++k) {
        const std::string id = "c0" + std::to_string(k) + "-000";
        const std::size_t idx = r.articles.index_of(id);
        CHECK(r.articles.at(idx).published_at ==
              c.start_epoch + std::int64_t(k) * std::int64_t(c.root_spacing_hours * 3600.0));
    }

    // Articles come out publication-sorted like any loaded corpus.
    for (std::size_t i = 1; i < r.articles.size(); ++i)
        CHECK(r.articles.at(i - 1).published_at <= r.articles.at(i).published_at);
}

TEST_CASE("generation is deterministic in the seed") {
    const SynthResult a = generate(small_config());
    const SynthResult b = generate(small_config());
    REQUIRE(a.articles.size() == b.articles.size());
    for (std::size_t i = 0; i < a.articles.size(); ++i) {
        CHECK(a.articles.at(i).id == b.articles.at(i).id);
        CHECK(a.articles.at(i).text == b.articles.at(i).text);
        CHECK(a.articles.at(i).published_at == b.articles.at(i).published_at);
        CHECK(a.articles.at(i).publisher == b.articles.at(i).publisher);
    }
    REQUIRE(a.truth.edges.size() == b.truth.edges.size());
    for (std::size_t k = 0; k < a.truth.edges.size(); ++k) {
        CHECK(a.truth.edges[k].infector == b.truth.edges[k].infector);
        CHECK(a.truth.edges[k].infected == b.truth.edges[k].infected);
    }

    SynthConfig other = small_config();
    other.seed = 6;
    const SynthResult d = generate(other);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.articles.size() && !any_diff; ++i)
        any_diff = a.articles.at(i).text != d.articles.at(i).text;
    CHECK(any_diff);
}

TEST_CASE("children copy the parent token multiset when noise is zero") {
    SynthConfig c = small_config();
    c.copy_noise = 0.0;
    const SynthResult r = generate(c);
    for (const SpreadEdge& e : r.truth.edges) {
        CHECK(token_multiset(r.articles.at(e.infected).text) ==
              token_multiset(r.articles.at(e.infector).text));
    }
}

TEST_CASE("tokens come from the cascade pool or the shared pool") {
    SynthConfig c = small_config();
    c.overlap = 0.3;
    const SynthResult r = generate(c);
    bool saw_shared = false;
    for (std::size_t i = 0; i < r.articles.size(); ++i) {
        const std::string cascade = r.articles.at(i).id.substr(1, 2);
        for (const std::string& tok : tokenize(r.articles.at(i).text)) {
            if (tok[0] == 's') {
                CHECK(tok.substr(0, 4) == "s00w");
                saw_shared = true;
            } else {
                CHECK(tok.substr(0, 1) == "t");
                CHECK(tok.substr(1, 2) == cascade);  // no cross-cascade leakage
            }
        }
    }
    CHECK(saw_shared);

    SynthConfig pure = small_config();
    pure.overlap = 0.0;
    const SynthResult rp = generate(pure);
    for (std::size_t i = 0; i < rp.articles.size(); ++i)
        for (const std::string& tok : tokenize(rp.articles.at(i).text)) CHECK(tok[0] == 't');
}

TEST_CASE("single-article corpus degenerates cleanly") {
    SynthConfig c;
    c.n_cascades = 1;
    c.articles_per_cascade = 1;
    c.topic_vocab_size = 10;
    c.tokens_per_article = 20;
    const SynthResult r = generate(c);
    CHECK(r.articles.size() == 1);
    CHECK(r.truth.edges.empty());
    CHECK(r.truth.roots == std::vector<std::size_t>{0});

    const PlantedMetrics m = planted_metrics(r.truth, r.truth);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);  // empty truth counts as fully recalled
    CHECK(m.zero_predictions);
}

TEST_CASE("planted metrics score directed edge sets") {
    auto chain = [](std::vector<std::pair<std::size_t, std::size_t>> links) {
        SpreadNetwork net;
        net.nodes = {{"a", "p", 0}, {"b", "p", 1}, {"c", "p", 2}};
        for (auto [u, v] : links) {
            SpreadEdge e;
            e.infector = u;
            e.infected = v;
            net.edges.push_back(e);
        }
        return net;
    };
    const SpreadNetwork truth = chain({{0, 1}, {1, 2}});

    const PlantedMetrics perfect = planted_metrics(truth, truth);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK_FALSE(perfect.zero_predictions);

    const PlantedMetrics half = planted_metrics(chain({{0, 1}, {0, 2}}), truth);
    CHECK(half.precision == 0.5);
    CHECK(half.recall == 0.5);

    const PlantedMetrics none = planted_metrics(chain({}), truth);
    CHECK(none.precision == 1.0);
    CHECK(none.zero_predictions);
    CHECK(none.recall == 0.0);

    SpreadNetwork other = truth;
    other.nodes[2].id = "z";
    CHECK_THROWS_WITH_AS(planted_metrics(other, truth),
                         "reconstructed and planted networks cover different article sets",
                         ValidationError);
}

TEST_CASE("reconstruction recovers most planted edges at small scale") {
    SynthConfig c;
    c.n_cascades = 4;
    c.articles_per_cascade = 12;
    c.topic_vocab_size = 80;
    c.tokens_per_article = 120;
    c.overlap = 0.2;
    c.copy_noise = 0.1;
    c.seed = 3;
    const SynthResult r = generate(c);
    // A window wide enough for every planted lag; similarity threshold 0.
    const SpreadNetwork net = reconstruct(r, 0.0, c.lag_cap_hours * c.articles_per_cascade);
    const PlantedMetrics m = planted_metrics(net, r.truth);
    CHECK(m.precision >= 0.8);
    CHECK(m.recall >= 0.8);
    CHECK_FALSE(m.zero_predictions);
}

}  // TEST_SUITE
