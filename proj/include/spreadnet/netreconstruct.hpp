#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spreadnet/article.hpp"
#include "spreadnet/docvec.hpp"

namespace spreadnet {

/// Upper-triangular publication lags gated by the window: d(i,j) is the lag
/// in hours when 0 < lag <= gamma (boundary included), else 0.
class LagMatrix {
public:
    LagMatrix() = default;
    LagMatrix(std::size_t m, double gamma_hours) : m_(m), gamma_(gamma_hours), data_(m * m, 0.0) {}

    std::size_t size() const { return m_; }
    double gamma_hours() const { return gamma_; }
    double at(std::size_t i, std::size_t j) const { return data_[i * m_ + j]; }
    void set(std::size_t i, std::size_t j, double v) { data_[i * m_ + j] = v; }

private:
    std::size_t m_ = 0;
    double gamma_ = 0.0;
    std::vector<double> data_;
};

LagMatrix lag_matrix(const ArticleSet& set, double gamma_hours);

/// Keeps s(i,j) where the pair is inside the window, s >= rho and s < 1 - 1e-9
/// (identical articles never form edges); everything else becomes 0.
SimMatrix masked_similarity(const SimMatrix& s, const LagMatrix& d, double rho);

struct SpreadNode {
    std::string id;
    std::string publisher;
    std::int64_t published_at = 0;
};

struct SpreadEdge {
    std::size_t infector = 0;
    std::size_t infected = 0;
    double similarity = 0.0;
    double lag_hours = 0.0;
    std::int64_t step = -1;  // realization step for simulated networks
};

/// Directed infector -> infected forest over the articles. Every non-root
/// node has exactly one inbound edge; edges point forward in time.
struct SpreadNetwork {
    std::vector<SpreadNode> nodes;
    std::vector<SpreadEdge> edges;
    std::vector<std::size_t> roots;
};

/// Per column j, picks the qualifying infector with maximal similarity; ties
/// go to the earliest publication, then smallest id. Columns with no
/// qualifying entry become roots.
SpreadNetwork assign_infectors(const SimMatrix& masked, const ArticleSet& set);

/// Size of the largest weakly connected component over the node count.
double giant_component_fraction(const SpreadNetwork& net);

struct ThresholdCurve {
    std::vector<double> rho;
    std::vector<double> giant_fraction;
};

ThresholdCurve threshold_sweep(const SimMatrix& s, const LagMatrix& d, const ArticleSet& set,
                               const std::vector<double>& rho_grid);

/// Largest grid rho whose giant-component fraction still reaches the target.
double select_rho(const ThresholdCurve& curve, double target_fraction);

struct WindowSweep {
    std::vector<double> windows_hours;            // ascending
    std::vector<std::vector<double>> lags_hours;  // per window, lag to the most similar predecessor
};

/// For each window, each article's lag to its most similar preceding article
/// within that window (identical articles excluded).
WindowSweep window_sweep(const SimMatrix& s, const ArticleSet& set,
                         const std::vector<double>& windows_hours);

/// Smallest tested window covering at least `coverage` of the lags observed
/// under the largest window.
double select_gamma(const WindowSweep& sweep, double coverage);

/// Depth of each node in the forest, roots at 0.
std::vector<int> generations(const SpreadNetwork& net);

void save_network_csv(const SpreadNetwork& net, const std::string& path);
SpreadNetwork load_network_csv(const std::string& path, const ArticleSet& set);
void save_network_graphml(const SpreadNetwork& net, const std::string& path);

void save_threshold_csv(const ThresholdCurve& curve, const std::string& path);
void save_window_summary_csv(const WindowSweep& sweep, const std::string& path);
void save_window_lag_histograms_csv(const WindowSweep& sweep, std::size_t nbins,
                                    const std::string& path);

}  // namespace spreadnet
