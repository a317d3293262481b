#include "spreadnet/docvec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace spreadnet {

double DocVector::norm() const {
    double s = 0.0;
    for (double v : vector) s += v * v;
    return std::sqrt(s);
}

DocVector document_vector(const ArticleSet& set, std::size_t doc, const Vocabulary& vocab,
                          const WeightMatrix& weights, const WordVectors& wv) {
    DocVector d;
    d.article_id = set[doc].id;
    d.vector.assign(wv.dims(), 0.0);

    for (const auto& entry : weights.row(doc)) {
        const std::string& term = vocab.terms[entry.term];
        if (!wv.contains(term)) continue;
        const auto w = wv.vector_of(term);
        for (std::size_t k = 0; k < d.vector.size(); ++k) d.vector[k] += w[k] * entry.weight;
        d.known_token_count += entry.tf;
    }
    // Tokens dropped by the vocabulary are also out-of-vocabulary here.
    const std::uint64_t all_tokens = tokenize(set[doc].text).size();
    d.oov_token_count = all_tokens - d.known_token_count;
    return d;
}

std::vector<DocVector> document_vectors(const ArticleSet& set, const Vocabulary& vocab,
                                        const WeightMatrix& weights, const WordVectors& wv) {
    std::vector<DocVector> docs(set.size());
    parallel_for(set.size(), 1,
                 [&](std::size_t i) { docs[i] = document_vector(set, i, vocab, weights, wv); });
    return docs;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("cosine: dimension mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw ValidationError("undefined similarity for empty document");
    const double s = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(s, -1.0, 1.0);
}

bool SimMatrix::is_flagged(std::size_t i) const {
    return std::find(flagged_.begin(), flagged_.end(), i) != flagged_.end();
}

SimMatrix similarity_matrix(const std::vector<DocVector>& docs) {
    const std::size_t m = docs.size();
    SimMatrix s(m);
    std::vector<bool> zero(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (docs[i].norm() == 0.0) {
            zero[i] = true;
            s.flag(i);
        }
    }
    for (std::size_t j = 1; j < m; ++j) {
        if (zero[j]) continue;
        for (std::size_t i = 0; i < j; ++i) {
            if (zero[i]) continue;
            s.set(i, j, cosine_similarity(docs[i].vector, docs[j].vector));
        }
    }
    return s;
}

std::vector<double> pairwise_values(const SimMatrix& s) {
    std::vector<double> out;
    out.reserve(s.size() * (s.size() - (s.size() ? 1 : 0)) / 2);
    for (std::size_t j = 1; j < s.size(); ++j) {
        if (s.is_flagged(j)) continue;
        for (std::size_t i = 0; i < j; ++i) {
            if (s.is_flagged(i)) continue;
            out.push_back(s.at(i, j));
        }
    }
    return out;
}

std::vector<double> most_similar_values(const SimMatrix& s) {
    std::vector<double> out;
    for (std::size_t a = 0; a < s.size(); ++a) {
        if (s.is_flagged(a)) continue;
        double best = -2.0;
        for (std::size_t b = 0; b < s.size(); ++b) {
            if (b == a || s.is_flagged(b)) continue;
            best = std::max(best, a < b ? s.at(a, b) : s.at(b, a));
        }
        if (best > -2.0) out.push_back(best);
    }
    return out;
}

namespace {
constexpr char kSimMagic[8] = {'S', 'P', 'R', 'D', 'S', 'I', 'M', '1'};
}

void save_similarity(const SimMatrix& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    out.write(kSimMagic, sizeof kSimMagic);
    const std::uint64_t m = s.size();
    out.write(reinterpret_cast<const char*>(&m), sizeof m);
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double v = s.at(i, j);
            out.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
    }
    const std::uint64_t nflag = s.flagged().size();
    out.write(reinterpret_cast<const char*>(&nflag), sizeof nflag);
    for (std::uint64_t f : std::vector<std::uint64_t>(s.flagged().begin(), s.flagged().end()))
        out.write(reinterpret_cast<const char*>(&f), sizeof f);
    if (!out) throw std::runtime_error("write failed: " + path);
}

SimMatrix load_similarity(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open similarity file: " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kSimMagic, sizeof magic) != 0)
        throw ValidationError("not a similarity matrix file: " + path);
    std::uint64_t m = 0;
    in.read(reinterpret_cast<char*>(&m), sizeof m);
    SimMatrix s(m);
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            double v;
            in.read(reinterpret_cast<char*>(&v), sizeof v);
            s.set(i, j, v);
        }
    }
    std::uint64_t nflag = 0;
    in.read(reinterpret_cast<char*>(&nflag), sizeof nflag);
    for (std::uint64_t k = 0; k < nflag; ++k) {
        std::uint64_t f;
        in.read(reinterpret_cast<char*>(&f), sizeof f);
        s.flag(f);
    }
    if (!in) throw ValidationError("truncated similarity file: " + path);
    return s;
}

void save_similarity_pairs_csv(const SimMatrix& s, const ArticleSet& set, double floor,
                               const std::string& path) {
    std::ostringstream out;
    out << "i_id,j_id,similarity\n";
    for (std::size_t j = 1; j < s.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double v = s.at(i, j);
            if (v >= floor && !s.is_flagged(i) && !s.is_flagged(j))
                out << set[i].id << ',' << set[j].id << ',' << fmt_short(v) << '\n';
        }
    }
    write_text_file(path, out.str());
}

void save_histogram_csv(const Histogram& h, const std::string& path) {
    std::ostringstream out;
    out << "bin_low,bin_high,count\n";
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
        out << fmt_short(h.bin_low(k)) << ',' << fmt_short(h.bin_high(k)) << ',' << h.counts[k] << '\n';
    }
    write_text_file(path, out.str());
}

void save_document_vectors(const std::vector<DocVector>& docs, const std::string& path) {
    const std::size_t dims = docs.empty() ? 0 : docs.front().vector.size();
    std::ostringstream out;
    out << docs.size() << '\t' << dims << '\n';
    for (const DocVector& d : docs) {
        if (d.vector.size() != dims) throw ValidationError("inconsistent document vector dimensions");
        out << d.article_id << '\t' << d.known_token_count << '\t' << d.oov_token_count << '\t';
        for (std::size_t k = 0; k < dims; ++k) {
            if (k > 0) out << ' ';
            out << fmt_full(d.vector[k]);
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

std::vector<DocVector> load_document_vectors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
    std::istringstream header(line);
    std::size_t m = 0, dims = 0;
    if (!(header >> m >> dims)) throw ValidationError(path + ": malformed header");

    std::vector<DocVector> docs;
    docs.reserve(m);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        DocVector d;
        std::string known_s, oov_s, rest;
        if (!std::getline(row, d.article_id, '\t') || !std::getline(row, known_s, '\t') ||
            !std::getline(row, oov_s, '\t') || !std::getline(row, rest))
            throw ValidationError(path + " line " + std::to_string(lineno) + ": malformed row");
        d.known_token_count = std::strtoull(known_s.c_str(), nullptr, 10);
        d.oov_token_count = std::strtoull(oov_s.c_str(), nullptr, 10);
        std::istringstream comps(rest);
        double v;
        while (comps >> v) d.vector.push_back(v);
        if (d.vector.size() != dims)
            throw ValidationError(path + " line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(dims) + " components");
        docs.push_back(std::move(d));
    }
    if (docs.size() != m)
        throw ValidationError(path + ": header promises " + std::to_string(m) + " rows, found " +
                              std::to_string(docs.size()));
    return docs;
}

}  // namespace spreadnet
