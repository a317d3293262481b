#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "spreadnet/article.hpp"

namespace spreadnet {

/// Lowercased tokens split on any non-letter/non-digit; tokens shorter than
/// two code points are dropped. Understands UTF-8; Latin-1 and Latin
/// Extended-A (plus Greek and basic Cyrillic) are case-folded, other scripts
/// pass through unchanged.
std::vector<std::string> tokenize(const std::string& text);

/// Retained terms ordered by descending corpus frequency, ties lexicographic.
struct Vocabulary {
    std::vector<std::string> terms;
    std::vector<std::uint64_t> counts;     // corpus frequency per term
    std::vector<std::uint64_t> doc_freq;   // documents containing the term
    std::uint64_t min_count = 1;
    std::unordered_map<std::string, std::size_t> index;

    std::size_t size() const { return terms.size(); }
    bool contains(const std::string& term) const { return index.count(term) != 0; }
    /// Index of a term, or npos when not retained.
    static constexpr std::size_t npos = std::size_t(-1);
    std::size_t lookup(const std::string& term) const {
        auto it = index.find(term);
        return it == index.end() ? npos : it->second;
    }
};

Vocabulary build_vocabulary(const ArticleSet& set, std::uint64_t min_count,
                            std::vector<std::string>* warnings = nullptr);

void save_vocabulary_tsv(const Vocabulary& vocab, const std::string& path);

/// Sparse per-document term weights. Entries exist only for retained terms
/// present in the document; `tf` keeps the raw in-document count.
struct WeightEntry {
    std::size_t term = 0;
    std::uint64_t tf = 0;
    double weight = 0.0;
};

struct WeightMatrix {
    std::vector<std::vector<WeightEntry>> rows;  // one row per document, term-index ascending

    std::size_t docs() const { return rows.size(); }
    const std::vector<WeightEntry>& row(std::size_t d) const { return rows[d]; }
};

/// weight(w,d) = tf(w,d) * ln(N / df(w)); terms present in every document get 0.
WeightMatrix tfidf_weights(const ArticleSet& set, const Vocabulary& vocab);

}  // namespace spreadnet
