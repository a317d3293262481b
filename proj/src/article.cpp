#include "spreadnet/article.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "spreadnet/timeutil.hpp"
#include "spreadnet/util.hpp"

namespace spreadnet {

namespace {

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

ArticleSet::ArticleSet(std::vector<Article> articles) : articles_(std::move(articles)) {
    std::stable_sort(articles_.begin(), articles_.end(), [](const Article& a, const Article& b) {
        if (a.published_at != b.published_at) return a.published_at < b.published_at;
        return a.id < b.id;
    });
    std::unordered_set<std::string> seen;
    for (const auto& a : articles_) {
        if (!seen.insert(a.id).second) throw ValidationError("duplicate article id " + a.id);
    }
}

std::size_t ArticleSet::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < articles_.size(); ++i) {
        if (articles_[i].id == id) return i;
    }
    throw ValidationError("unknown article id " + id);
}

std::string publisher_from_url(const std::string& url) {
    std::string host = url;
    if (auto p = host.find("://"); p != std::string::npos) host = host.substr(p + 3);
    if (auto p = host.find_first_of("/?#"); p != std::string::npos) host = host.substr(0, p);
    if (auto p = host.find('@'); p != std::string::npos) host = host.substr(p + 1);
    if (auto p = host.find(':'); p != std::string::npos) host = host.substr(0, p);
    std::transform(host.begin(), host.end(), host.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    if (host.rfind("www.", 0) == 0) host = host.substr(4);
    return host;
}

ArticleSet load_articles(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open article file: " + path);

    std::vector<Article> articles;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("line " + std::to_string(lineno) + ": malformed JSON (" + e.what() + ")");
        }
        Article a;
        try {
            a.id = j.at("id").get<std::string>();
            a.text = j.at("text").get<std::string>();
            a.published_at = parse_iso8601(j.at("published_at").get<std::string>());
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("line " + std::to_string(lineno) + ": missing or mistyped field (" +
                                  e.what() + ")");
        }
        if (j.contains("publisher") && j["publisher"].is_string() &&
            !j["publisher"].get<std::string>().empty()) {
            a.publisher = j["publisher"].get<std::string>();
        } else if (j.contains("url") && j["url"].is_string()) {
            a.publisher = publisher_from_url(j["url"].get<std::string>());
            if (warnings && !a.publisher.empty())
                warnings->push_back("line " + std::to_string(lineno) + ": publisher derived from url (" +
                                    a.publisher + ")");
        }
        if (a.publisher.empty()) a.publisher = "unknown";
        if (is_blank(a.text))
            throw ValidationError("line " + std::to_string(lineno) + ": article " + a.id +
                                  " has empty text");
        if (!seen.insert(a.id).second) throw ValidationError("duplicate article id " + a.id);
        articles.push_back(std::move(a));
    }
    if (articles.empty() && warnings) warnings->push_back("no articles loaded from " + path);
    return ArticleSet(std::move(articles));
}

void save_articles(const ArticleSet& set, const std::string& path) {
    std::ostringstream out;
    for (const auto& a : set) {
        nlohmann::ordered_json j;
        j["id"] = a.id;
        j["publisher"] = a.publisher;
        j["published_at"] = format_iso8601(a.published_at);
        j["text"] = a.text;
        out << j.dump() << '\n';
    }
    write_text_file(path, out.str());
}

}  // namespace spreadnet
