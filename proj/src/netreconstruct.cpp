#include "spreadnet/netreconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "spreadnet/timeutil.hpp"
#include "spreadnet/util.hpp"

namespace spreadnet {

namespace {
constexpr double kDuplicateCutoff = 1.0 - 1e-9;
}

LagMatrix lag_matrix(const ArticleSet& set, double gamma_hours) {
    if (!(gamma_hours > 0.0)) throw ValidationError("gamma_hours must be > 0");
    const std::size_t m = set.size();
    LagMatrix d(m, gamma_hours);
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double lag = set.lag_hours(i, j);
            // Heaviside(gamma - lag) with H(0) = 1: the boundary lag qualifies.
            if (lag > 0.0 && lag <= gamma_hours) d.set(i, j, lag);
        }
    }
    return d;
}

SimMatrix masked_similarity(const SimMatrix& s, const LagMatrix& d, double rho) {
    if (s.size() != d.size()) throw ValidationError("similarity and lag matrices differ in size");
    SimMatrix out(s.size());
    for (std::size_t i : s.flagged()) out.flag(i);
    for (std::size_t j = 1; j < s.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double v = s.at(i, j);
            if (d.at(i, j) != 0.0 && v >= rho && v < kDuplicateCutoff) out.set(i, j, v);
        }
    }
    return out;
}

SpreadNetwork assign_infectors(const SimMatrix& masked, const ArticleSet& set) {
    if (masked.size() != set.size())
        throw ValidationError("masked matrix does not match the article set");
    SpreadNetwork net;
    net.nodes.reserve(set.size());
    for (const auto& a : set) net.nodes.push_back({a.id, a.publisher, a.published_at});

    for (std::size_t j = 0; j < set.size(); ++j) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_i = set.size();
        for (std::size_t i = 0; i < j; ++i) {
            const double v = masked.at(i, j);
            // Strict > keeps the earliest candidate on ties (index order is
            // publication time, then id).
            if (v != 0.0 && v > best) {
                best = v;
                best_i = i;
            }
        }
        if (best_i < set.size()) {
            net.edges.push_back({best_i, j, best, set.lag_hours(best_i, j), -1});
        } else {
            net.roots.push_back(j);
        }
    }
    return net;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

double giant_component_fraction(const SpreadNetwork& net) {
    if (net.nodes.empty()) return 0.0;
    UnionFind uf(net.nodes.size());
    for (const auto& e : net.edges) uf.unite(e.infector, e.infected);
    std::unordered_map<std::size_t, std::size_t> sizes;
    std::size_t best = 0;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) best = std::max(best, ++sizes[uf.find(i)]);
    return double(best) / double(net.nodes.size());
}

ThresholdCurve threshold_sweep(const SimMatrix& s, const LagMatrix& d, const ArticleSet& set,
                               const std::vector<double>& rho_grid) {
    if (!std::is_sorted(rho_grid.begin(), rho_grid.end()))
        throw ValidationError("rho grid must be sorted ascending");
    ThresholdCurve curve;
    curve.rho = rho_grid;
    curve.giant_fraction.resize(rho_grid.size());
    for (std::size_t k = 0; k < rho_grid.size(); ++k) {
        const auto net = assign_infectors(masked_similarity(s, d, rho_grid[k]), set);
        curve.giant_fraction[k] = giant_component_fraction(net);
    }
    return curve;
}

double select_rho(const ThresholdCurve& curve, double target_fraction) {
    if (!(target_fraction > 0.0 && target_fraction <= 1.0))
        throw ValidationError("target fraction must be in (0, 1]");
    for (std::size_t k = curve.rho.size(); k-- > 0;) {
        if (curve.giant_fraction[k] >= target_fraction) return curve.rho[k];
    }
    throw ValidationError("no threshold achieves target giant-component fraction");
}

WindowSweep window_sweep(const SimMatrix& s, const ArticleSet& set,
                         const std::vector<double>& windows_hours) {
    if (set.size() < 2) throw ValidationError("window sweep needs at least 2 articles");
    if (windows_hours.empty()) throw ValidationError("window sweep needs at least one window");
    for (double w : windows_hours) {
        if (!(w > 0.0)) throw ValidationError("windows must be positive");
    }
    WindowSweep sweep;
    sweep.windows_hours = windows_hours;
    std::sort(sweep.windows_hours.begin(), sweep.windows_hours.end());
    for (double w : sweep.windows_hours) {
        std::vector<double> lags;
        for (std::size_t j = 1; j < set.size(); ++j) {
            if (s.is_flagged(j)) continue;
            double best = -2.0;
            double best_lag = 0.0;
            for (std::size_t i = 0; i < j; ++i) {
                if (s.is_flagged(i)) continue;
                const double lag = set.lag_hours(i, j);
                if (!(lag > 0.0 && lag <= w)) continue;
                const double v = s.at(i, j);
                if (v >= kDuplicateCutoff) continue;
                if (v > best) {
                    best = v;
                    best_lag = lag;
                }
            }
            if (best > -2.0) lags.push_back(best_lag);
        }
        sweep.lags_hours.push_back(std::move(lags));
    }
    return sweep;
}

double select_gamma(const WindowSweep& sweep, double coverage) {
    if (!(coverage > 0.0 && coverage <= 1.0)) throw ValidationError("coverage must be in (0, 1]");
    const auto& reference = sweep.lags_hours.back();  // largest window
    if (reference.empty())
        throw ValidationError("no influencer lags observed under the largest window");
    for (std::size_t k = 0; k < sweep.windows_hours.size(); ++k) {
        const double w = sweep.windows_hours[k];
        std::size_t inside = 0;
        for (double lag : reference) {
            if (lag <= w) ++inside;
        }
        if (double(inside) / double(reference.size()) >= coverage) return w;
    }
    // The largest window always covers its own lags.
    return sweep.windows_hours.back();
}

std::vector<int> generations(const SpreadNetwork& net) {
    std::vector<int> level(net.nodes.size(), -1);
    std::vector<std::vector<std::size_t>> children(net.nodes.size());
    for (const auto& e : net.edges) children[e.infector].push_back(e.infected);
    std::vector<std::size_t> queue(net.roots);
    for (std::size_t r : net.roots) level[r] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t u = queue[head];
        for (std::size_t v : children[u]) {
            level[v] = level[u] + 1;
            queue.push_back(v);
        }
    }
    for (int l : level) {
        if (l < 0) throw std::logic_error("spread network is not a forest (unreachable node)");
    }
    return level;
}

void save_network_csv(const SpreadNetwork& net, const std::string& path) {
    std::ostringstream out;
    out << "infector_id,infected_id,similarity,lag_hours\n";
    for (const auto& e : net.edges) {
        out << net.nodes[e.infector].id << ',' << net.nodes[e.infected].id << ','
            << fmt_full(e.similarity) << ',' << fmt_full(e.lag_hours) << '\n';
    }
    write_text_file(path, out.str());
}

SpreadNetwork load_network_csv(const std::string& path, const ArticleSet& set) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open network file: " + path);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < set.size(); ++i) index.emplace(set[i].id, i);

    SpreadNetwork net;
    net.nodes.reserve(set.size());
    for (const auto& a : set) net.nodes.push_back({a.id, a.publisher, a.published_at});

    std::vector<bool> has_parent(set.size(), false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || line.empty()) continue;  // header
        std::istringstream row(line);
        std::string infector, infected, sim, lag;
        if (!std::getline(row, infector, ',') || !std::getline(row, infected, ',') ||
            !std::getline(row, sim, ',') || !std::getline(row, lag))
            throw ValidationError("network csv line " + std::to_string(lineno) + " is malformed");
        const auto it_a = index.find(infector);
        const auto it_b = index.find(infected);
        if (it_a == index.end() || it_b == index.end())
            throw ValidationError("network csv line " + std::to_string(lineno) +
                                  " names an unknown article");
        net.edges.push_back(
            {it_a->second, it_b->second, std::strtod(sim.c_str(), nullptr),
             std::strtod(lag.c_str(), nullptr), -1});
        has_parent[it_b->second] = true;
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (!has_parent[i]) net.roots.push_back(i);
    }
    return net;
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void save_network_graphml(const SpreadNetwork& net, const std::string& path) {
    const auto levels = generations(net);
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"publisher\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"node\" attr.name=\"published_at\" attr.type=\"string\"/>\n"
        << "  <key id=\"d2\" for=\"node\" attr.name=\"generation\" attr.type=\"int\"/>\n"
        << "  <key id=\"d3\" for=\"edge\" attr.name=\"similarity\" attr.type=\"double\"/>\n"
        << "  <key id=\"d4\" for=\"edge\" attr.name=\"lag_hours\" attr.type=\"double\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        const auto& nd = net.nodes[i];
        out << "    <node id=\"" << xml_escape(nd.id) << "\">"
            << "<data key=\"d0\">" << xml_escape(nd.publisher) << "</data>"
            << "<data key=\"d1\">" << format_iso8601(nd.published_at) << "</data>"
            << "<data key=\"d2\">" << levels[i] << "</data>"
            << "</node>\n";
    }
    for (const auto& e : net.edges) {
        out << "    <edge source=\"" << xml_escape(net.nodes[e.infector].id) << "\" target=\""
            << xml_escape(net.nodes[e.infected].id) << "\">"
            << "<data key=\"d3\">" << fmt_short(e.similarity) << "</data>"
            << "<data key=\"d4\">" << fmt_short(e.lag_hours) << "</data>"
            << "</edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    write_text_file(path, out.str());
}

void save_threshold_csv(const ThresholdCurve& curve, const std::string& path) {
    std::ostringstream out;
    out << "rho,giant_fraction\n";
    for (std::size_t k = 0; k < curve.rho.size(); ++k) {
        out << fmt_short(curve.rho[k]) << ',' << fmt_short(curve.giant_fraction[k]) << '\n';
    }
    write_text_file(path, out.str());
}

void save_window_summary_csv(const WindowSweep& sweep, const std::string& path) {
    std::ostringstream out;
    out << "window_hours,p50_lag,p95_lag,max_lag\n";
    for (std::size_t k = 0; k < sweep.windows_hours.size(); ++k) {
        auto lags = sweep.lags_hours[k];
        std::sort(lags.begin(), lags.end());
        if (lags.empty()) {
            out << fmt_short(sweep.windows_hours[k]) << ",,,\n";
            continue;
        }
        out << fmt_short(sweep.windows_hours[k]) << ',' << fmt_short(quantile(lags, 0.5)) << ','
            << fmt_short(quantile(lags, 0.95)) << ',' << fmt_short(lags.back()) << '\n';
    }
    write_text_file(path, out.str());
}

void save_window_lag_histograms_csv(const WindowSweep& sweep, std::size_t nbins,
                                    const std::string& path) {
    std::ostringstream out;
    out << "window_hours,bin_low,bin_high,count\n";
    for (std::size_t k = 0; k < sweep.windows_hours.size(); ++k) {
        const double w = sweep.windows_hours[k];
        if (sweep.lags_hours[k].empty()) continue;
        const auto h = make_histogram(sweep.lags_hours[k], nbins, 0.0, w);
        for (std::size_t b = 0; b < h.counts.size(); ++b) {
            out << fmt_short(w) << ',' << fmt_short(h.bin_low(b)) << ',' << fmt_short(h.bin_high(b))
                << ',' << h.counts[b] << '\n';
        }
    }
    write_text_file(path, out.str());
}

}  // namespace spreadnet
