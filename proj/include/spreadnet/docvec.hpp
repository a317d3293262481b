#pragma once

#include <span>
#include <string>
#include <vector>

#include "spreadnet/article.hpp"
#include "spreadnet/corpus.hpp"
#include "spreadnet/embedding.hpp"
#include "spreadnet/util.hpp"

namespace spreadnet {

/// TFIDF-weighted sum of word vectors over the document's distinct known
/// words. `known_token_count` counts token occurrences covered by the sum.
struct DocVector {
    std::string article_id;
    std::vector<double> vector;
    std::uint64_t known_token_count = 0;
    std::uint64_t oov_token_count = 0;

    double norm() const;
};

DocVector document_vector(const ArticleSet& set, std::size_t doc, const Vocabulary& vocab,
                          const WeightMatrix& weights, const WordVectors& wv);

std::vector<DocVector> document_vectors(const ArticleSet& set, const Vocabulary& vocab,
                                        const WeightMatrix& weights, const WordVectors& wv);

/// Cosine of the angle between two vectors, clamped to [-1, 1].
/// Throws on a zero-norm input.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Pairwise similarities s(i,j) for publication-ordered i < j. Documents with
/// zero norm are flagged and contribute 0 to every pair.
class SimMatrix {
public:
    SimMatrix() = default;
    explicit SimMatrix(std::size_t m) : m_(m), data_(m * m, 0.0) {}

    std::size_t size() const { return m_; }
    double at(std::size_t i, std::size_t j) const { return data_[i * m_ + j]; }
    void set(std::size_t i, std::size_t j, double v) { data_[i * m_ + j] = v; }

    const std::vector<std::size_t>& flagged() const { return flagged_; }
    void flag(std::size_t i) { flagged_.push_back(i); }
    bool is_flagged(std::size_t i) const;

private:
    std::size_t m_ = 0;
    std::vector<double> data_;
    std::vector<std::size_t> flagged_;
};

/// docs must be aligned with the publication-ordered ArticleSet.
SimMatrix similarity_matrix(const std::vector<DocVector>& docs);

/// All populated pairwise values (flagged documents excluded).
std::vector<double> pairwise_values(const SimMatrix& s);

/// Per-article maximum similarity to any other article (flagged excluded).
std::vector<double> most_similar_values(const SimMatrix& s);

void save_similarity(const SimMatrix& s, const std::string& path);
SimMatrix load_similarity(const std::string& path);

void save_similarity_pairs_csv(const SimMatrix& s, const ArticleSet& set, double floor,
                               const std::string& path);
void save_histogram_csv(const Histogram& h, const std::string& path);

/// TSV: header "m dims", then id, known, oov, space-joined components.
void save_document_vectors(const std::vector<DocVector>& docs, const std::string& path);
std::vector<DocVector> load_document_vectors(const std::string& path);

}  // namespace spreadnet
