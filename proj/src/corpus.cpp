#include "spreadnet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "spreadnet/util.hpp"

namespace spreadnet {

namespace {

// Decodes one UTF-8 code point starting at `i`; advances `i` past it.
// Malformed bytes decode as U+FFFD one byte at a time.
char32_t decode_utf8(const std::string& s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = 0xFFFD;
    if (b0 < 0x80) {
        cp = b0;
    } else if ((b0 >> 5) == 0x6) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 >> 4) == 0xE) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 >> 3) == 0x1E) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b >> 6) != 0x2) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out += char(cp);
    } else if (cp < 0x800) {
        out += char(0xC0 | (cp >> 6));
        out += char(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += char(0xE0 | (cp >> 12));
        out += char(0x80 | ((cp >> 6) & 0x3F));
        out += char(0x80 | (cp & 0x3F));
    } else {
        out += char(0xF0 | (cp >> 18));
        out += char(0x80 | ((cp >> 12) & 0x3F));
        out += char(0x80 | ((cp >> 6) & 0x3F));
        out += char(0x80 | (cp & 0x3F));
    }
}

bool is_token_char(char32_t cp) {
    if (cp < 0x80)
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (cp < 0xC0) return false;                   // Latin-1 punctuation and signs
    if (cp == 0xD7 || cp == 0xF7) return false;    // multiplication / division signs
    if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // general punctuation, symbols, arrows
    if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
    if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
    if (cp >= 0xFF00 && cp <= 0xFF0F) return false;  // fullwidth punctuation
    if (cp == 0xFFFD) return false;
    return true;
}

char32_t fold_case(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
    if (cp == 0x130) return 0x69;                                  // dotted capital I
    if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
        return (cp % 2 == 0) ? cp + 1 : cp;  // Latin Extended-A, even = uppercase
    }
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
        return (cp % 2 == 1) ? cp + 1 : cp;
    }
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;  // Greek
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;                 // Cyrillic
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    return cp;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t current_cps = 0;
    const auto flush = [&] {
        if (current_cps >= 2) tokens.push_back(current);
        current.clear();
        current_cps = 0;
    };
    std::size_t i = 0;
    while (i < text.size()) {
        const char32_t cp = decode_utf8(text, i);
        if (is_token_char(cp)) {
            encode_utf8(fold_case(cp), current);
            ++current_cps;
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

Vocabulary build_vocabulary(const ArticleSet& set, std::uint64_t min_count,
                            std::vector<std::string>* warnings) {
    if (min_count < 1) throw ValidationError("min_count must be >= 1");
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> stats;  // term -> (count, df)
    for (const auto& article : set) {
        std::map<std::string, std::uint64_t> local;
        for (auto& tok : tokenize(article.text)) ++local[tok];
        for (auto& [term, tf] : local) {
            auto& s = stats[term];
            s.first += tf;
            s.second += 1;
        }
    }

    struct Row {
        std::string term;
        std::uint64_t count, df;
    };
    std::vector<Row> rows;
    for (auto& [term, s] : stats) {
        if (s.first >= min_count) rows.push_back({term, s.first, s.second});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.term < b.term;
    });

    Vocabulary v;
    v.min_count = min_count;
    for (auto& r : rows) {
        v.index.emplace(r.term, v.terms.size());
        v.terms.push_back(std::move(r.term));
        v.counts.push_back(r.count);
        v.doc_freq.push_back(r.df);
    }
    if (v.terms.empty() && warnings) warnings->push_back("vocabulary is empty");
    return v;
}

void save_vocabulary_tsv(const Vocabulary& vocab, const std::string& path) {
    std::ostringstream out;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        out << vocab.terms[i] << '\t' << vocab.counts[i] << '\t' << vocab.doc_freq[i] << '\n';
    }
    write_text_file(path, out.str());
}

WeightMatrix tfidf_weights(const ArticleSet& set, const Vocabulary& vocab) {
    const double n_docs = double(set.size());
    WeightMatrix w;
    w.rows.resize(set.size());
    parallel_for(set.size(), 1, [&](std::size_t d) {
        std::map<std::size_t, std::uint64_t> tf;  // term index -> count, ordered
        for (auto& tok : tokenize(set[d].text)) {
            const auto t = vocab.lookup(tok);
            if (t != Vocabulary::npos) ++tf[t];
        }
        auto& row = w.rows[d];
        row.reserve(tf.size());
        for (auto& [t, count] : tf) {
            const double idf = std::log(n_docs / double(vocab.doc_freq[t]));
            row.push_back({t, count, double(count) * idf});
        }
    });
    return w;
}

}  // namespace spreadnet
