#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spreadnet/article.hpp"
#include "spreadnet/corpus.hpp"

namespace spreadnet {

struct SkipGramParams {
    std::uint64_t min_count = 10;
    std::size_t dims = 300;            // word vector dimension
    std::size_t window = 10;           // symmetric context radius, tokens each side
    std::size_t negative_samples = 5;
    std::size_t epochs = 5;
    double initial_learning_rate = 0.025;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Word-vector matrix, one row per term; lookup is exact string match.
class WordVectors {
public:
    WordVectors() = default;
    WordVectors(std::vector<std::string> vocab, std::size_t dims, std::vector<double> matrix);

    std::size_t size() const { return vocab_.size(); }
    std::size_t dims() const { return dims_; }
    const std::vector<std::string>& vocab() const { return vocab_; }

    bool contains(const std::string& term) const { return index_.count(term) != 0; }
    std::span<const double> row(std::size_t i) const { return {matrix_.data() + i * dims_, dims_}; }
    /// Vector for a term; throws if not present.
    std::span<const double> vector_of(const std::string& term) const;

    std::span<double> mutable_row(std::size_t i) { return {matrix_.data() + i * dims_, dims_}; }

private:
    std::vector<std::string> vocab_;
    std::size_t dims_ = 0;
    std::vector<double> matrix_;  // row-major size * dims
    std::unordered_map<std::string, std::size_t> index_;
};

/// Skip-gram with negative sampling over the corpus, one article = one token
/// stream. Deterministic for a fixed seed and corpus order.
WordVectors train_skipgram(const ArticleSet& set, const SkipGramParams& params);

/// Noise distribution for negative sampling: unigram counts raised to 3/4,
/// normalized over the vocabulary order. Exposed for direct testing.
std::vector<double> noise_distribution(const Vocabulary& vocab);

/// Text format: header "m n", then one "term v1 ... vn" line per word with
/// 8 significant digits.
void save_word_vectors(const WordVectors& wv, const std::string& path);
WordVectors load_word_vectors(const std::string& path);

}  // namespace spreadnet
