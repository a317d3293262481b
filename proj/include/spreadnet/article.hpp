#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spreadnet {

/// One news item. `published_at` is seconds since the Unix epoch, UTC.
struct Article {
    std::string id;
    std::string publisher;
    std::int64_t published_at = 0;
    std::string text;
};

/// Articles kept sorted ascending by (published_at, id). Index order is the
/// publication order every later stage relies on.
class ArticleSet {
public:
    ArticleSet() = default;
    explicit ArticleSet(std::vector<Article> articles);

    std::size_t size() const { return articles_.size(); }
    bool empty() const { return articles_.empty(); }
    const Article& operator[](std::size_t i) const { return articles_[i]; }
    const Article& at(std::size_t i) const { return articles_[i]; }
    const std::vector<Article>& articles() const { return articles_; }

    auto begin() const { return articles_.begin(); }
    auto end() const { return articles_.end(); }

    /// Index of the article with the given id; throws if absent.
    std::size_t index_of(const std::string& id) const;

    /// Publication lag from article i to the later article j, in hours.
    double lag_hours(std::size_t i, std::size_t j) const {
        return double(articles_[j].published_at - articles_[i].published_at) / 3600.0;
    }

private:
    std::vector<Article> articles_;
};

/// Loads a JSON-Lines file (fields: id, publisher?, url?, published_at, text)
/// and returns the set in publication order. Non-fatal notes (empty file,
/// derived publishers) are appended to `warnings` when given.
ArticleSet load_articles(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Writes the set back as normalized JSONL (id, publisher, published_at, text).
void save_articles(const ArticleSet& set, const std::string& path);

/// Host of a URL without any leading "www.", lowercased; empty on failure.
std::string publisher_from_url(const std::string& url);

}  // namespace spreadnet
