#include "spreadnet/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spreadnet/rng.hpp"
#include "spreadnet/util.hpp"

namespace spreadnet {

void SkipGramParams::validate() const {
    if (min_count < 1) throw ValidationError("skip-gram: min_count must be >= 1");
    if (dims < 1) throw ValidationError("skip-gram: dims must be >= 1");
    if (window < 1) throw ValidationError("skip-gram: window must be >= 1");
    if (negative_samples < 1) throw ValidationError("skip-gram: negative_samples must be >= 1");
    if (epochs < 1) throw ValidationError("skip-gram: epochs must be >= 1");
    if (!(initial_learning_rate > 0.0)) throw ValidationError("skip-gram: learning rate must be > 0");
}

WordVectors::WordVectors(std::vector<std::string> vocab, std::size_t dims, std::vector<double> matrix)
    : vocab_(std::move(vocab)), dims_(dims), matrix_(std::move(matrix)) {
    if (matrix_.size() != vocab_.size() * dims_)
        throw ValidationError("word vector matrix size does not match vocabulary");
    for (std::size_t i = 0; i < vocab_.size(); ++i) index_.emplace(vocab_[i], i);
}

std::span<const double> WordVectors::vector_of(const std::string& term) const {
    auto it = index_.find(term);
    if (it == index_.end()) throw ValidationError("term not in word vectors: " + term);
    return row(it->second);
}

std::vector<double> noise_distribution(const Vocabulary& vocab) {
    std::vector<double> p(vocab.size());
    double total = 0.0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        p[i] = std::pow(double(vocab.counts[i]), 0.75);
        total += p[i];
    }
    for (auto& v : p) v /= total;
    return p;
}

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_finite(const std::vector<double>& m, std::size_t epoch) {
    for (double v : m) {
        if (!std::isfinite(v))
            throw std::runtime_error("skip-gram diverged (non-finite weight after epoch " +
                                     std::to_string(epoch + 1) + "); lower the learning rate");
    }
}

}  // namespace

WordVectors train_skipgram(const ArticleSet& set, const SkipGramParams& params) {
    params.validate();
    if (set.empty()) throw ValidationError("skip-gram: empty corpus");
    const Vocabulary vocab = build_vocabulary(set, params.min_count);
    if (vocab.size() == 0) throw ValidationError("skip-gram: vocabulary is empty at this min_count");

    // Documents as vocabulary indices, out-of-vocabulary tokens dropped.
    std::vector<std::vector<std::size_t>> docs;
    docs.reserve(set.size());
    for (const auto& article : set) {
        std::vector<std::size_t> ids;
        for (auto& tok : tokenize(article.text)) {
            const auto t = vocab.lookup(tok);
            if (t != Vocabulary::npos) ids.push_back(t);
        }
        docs.push_back(std::move(ids));
    }

    const std::size_t n = params.dims;
    const std::size_t m = vocab.size();
    Rng rng(params.seed);
    std::vector<double> in(m * n);
    std::vector<double> out(m * n, 0.0);
    for (auto& v : in) v = rng.uniform(-0.5 / double(n), 0.5 / double(n));

    // Cumulative noise distribution for binary-search sampling.
    const std::vector<double> noise = noise_distribution(vocab);
    std::vector<double> cdf(noise.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < noise.size(); ++i) {
        acc += noise[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    const auto sample_noise = [&] {
        const double u = rng.next_double();
        return std::size_t(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    };

    std::uint64_t total_pairs = 0;
    for (const auto& doc : docs) {
        const std::size_t T = doc.size();
        for (std::size_t i = 0; i < T; ++i)
            total_pairs += std::min(i, params.window) + std::min(T - 1 - i, params.window);
    }
    total_pairs *= params.epochs;
    if (total_pairs == 0) throw ValidationError("skip-gram: no training pairs (documents too short)");

    std::vector<double> hidden_err(n);
    std::uint64_t processed = 0;
    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        for (const auto& doc : docs) {
            const std::size_t T = doc.size();
            for (std::size_t i = 0; i < T; ++i) {
                const std::size_t center = doc[i];
                double* wc = in.data() + center * n;
                const std::size_t lo = i >= params.window ? i - params.window : 0;
                const std::size_t hi = std::min(T, i + params.window + 1);
                for (std::size_t j = lo; j < hi; ++j) {
                    if (j == i) continue;
                    const std::size_t context = doc[j];
                    const double progress = double(processed) / double(total_pairs);
                    const double lr =
                        params.initial_learning_rate * std::max(1.0 - progress, 1e-4);
                    std::fill(hidden_err.begin(), hidden_err.end(), 0.0);
                    for (std::size_t k = 0; k <= params.negative_samples; ++k) {
                        std::size_t target;
                        double label;
                        if (k == 0) {
                            target = context;
                            label = 1.0;
                        } else {
                            target = sample_noise();
                            if (target == context) continue;
                            label = 0.0;
                        }
                        double* wt = out.data() + target * n;
                        double f = 0.0;
                        for (std::size_t d = 0; d < n; ++d) f += wc[d] * wt[d];
                        const double g = (label - sigmoid(f)) * lr;
                        for (std::size_t d = 0; d < n; ++d) hidden_err[d] += g * wt[d];
                        for (std::size_t d = 0; d < n; ++d) wt[d] += g * wc[d];
                    }
                    for (std::size_t d = 0; d < n; ++d) wc[d] += hidden_err[d];
                    ++processed;
                }
            }
        }
        check_finite(in, epoch);
    }
    return WordVectors(vocab.terms, n, std::move(in));
}

void save_word_vectors(const WordVectors& wv, const std::string& path) {
    for (std::size_t i = 0; i < wv.size(); ++i) {
        for (double v : wv.row(i)) {
            if (!std::isfinite(v)) throw ValidationError("refusing to save non-finite word vectors");
        }
    }
    std::ostringstream out;
    out << wv.size() << ' ' << wv.dims() << '\n';
    char buf[40];
    for (std::size_t i = 0; i < wv.size(); ++i) {
        out << wv.vocab()[i];
        for (double v : wv.row(i)) {
            std::snprintf(buf, sizeof buf, "%.8g", v);
            out << ' ' << buf;
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

WordVectors load_word_vectors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open word vector file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("word vector file is empty: " + path);
    std::istringstream header(line);
    std::size_t m = 0, n = 0;
    if (!(header >> m >> n) || n == 0) throw ValidationError("bad word vector header: \"" + line + "\"");

    std::vector<std::string> vocab;
    std::vector<double> matrix;
    vocab.reserve(m);
    matrix.reserve(m * n);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string term;
        row >> term;
        std::size_t got = 0;
        double v;
        while (row >> v) {
            matrix.push_back(v);
            ++got;
        }
        if (got != n)
            throw ValidationError("word vector dimension mismatch at line " + std::to_string(lineno) +
                                  ": expected " + std::to_string(n) + " values, got " + std::to_string(got));
        vocab.push_back(std::move(term));
    }
    if (vocab.size() != m)
        throw ValidationError("word vector file declares " + std::to_string(m) + " rows but has " +
                              std::to_string(vocab.size()));
    return WordVectors(std::move(vocab), n, std::move(matrix));
}

}  // namespace spreadnet
