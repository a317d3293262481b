#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spreadnet/article.hpp"
#include "spreadnet/netreconstruct.hpp"

namespace spreadnet {

/// Article-level transmission probabilities estimated from publisher counts:
/// a(i,j) = N_XY / N_Y with X = publisher(i), Y = publisher(j), zero diagonal
/// and zero whenever publisher Y was never infected.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;

    /// Builds directly from a dense row-major matrix (simulation inputs and
    /// tests); the diagonal must already be zero.
    AdjacencyMatrix(std::vector<std::string> article_ids, std::vector<double> dense);

    std::size_t n() const { return ids_.size(); }
    double at(std::size_t i, std::size_t j) const { return dense_[i * n() + j]; }
    const std::vector<std::string>& article_ids() const { return ids_; }

    const std::vector<std::string>& publishers() const { return publishers_; }
    const std::vector<std::size_t>& publisher_of() const { return pub_of_; }
    /// N_XY: infections from publisher x into publisher y.
    std::uint64_t pair_count(std::size_t x, std::size_t y) const { return counts_[x * publishers_.size() + y]; }
    /// N_Y: infected articles of publisher y.
    std::uint64_t infected_count(std::size_t y) const { return infected_[y]; }

    friend AdjacencyMatrix publisher_adjacency(const SpreadNetwork& net, const ArticleSet& set);
    friend AdjacencyMatrix load_adjacency_counts_csv(const std::string& path, const ArticleSet& set);

private:
    std::vector<std::string> ids_;
    std::vector<double> dense_;  // n x n row-major
    std::vector<std::string> publishers_;
    std::vector<std::size_t> pub_of_;    // article -> publisher index
    std::vector<std::uint64_t> counts_;  // publisher x publisher
    std::vector<std::uint64_t> infected_;
};

AdjacencyMatrix publisher_adjacency(const SpreadNetwork& net, const ArticleSet& set);

void save_adjacency_counts_csv(const AdjacencyMatrix& a, const std::string& path);
AdjacencyMatrix load_adjacency_counts_csv(const std::string& path, const ArticleSet& set);

struct SirParams {
    double lambda = 0.1;           // adimensional transmission parameter
    double mu_per_day = 1.0;       // recovery rate, only maps model time to days
    double dt = 0.01;              // integration step, adimensional
    double t_end = 60.0;           // horizon, adimensional
    double record_dt = 0.1;        // output sampling interval
    bool transpose_adjacency = false;
    std::vector<std::string> seed_articles;  // empty = earliest article

    void validate() const;
};

/// Probability curves on the recording grid. rho_R is the complement
/// 1 - rho_S - rho_I.
class SirTrajectory {
public:
    std::vector<double> times;  // adimensional
    double mu_per_day = 1.0;
    double lambda = 0.0;
    std::vector<std::size_t> seeds;
    double clamp_total = 0.0;    // accumulated clamping magnitude
    double min_preclamp = 0.0;   // most negative value seen before clamping
    double max_preclamp = 1.0;   // largest value seen before clamping

    std::size_t steps() const { return times.size(); }
    std::size_t articles() const { return n_; }
    double S(std::size_t t, std::size_t i) const { return s_[t * n_ + i]; }
    double I(std::size_t t, std::size_t i) const { return i_[t * n_ + i]; }
    double R(std::size_t t, std::size_t i) const { return 1.0 - S(t, i) - I(t, i); }

    void init(std::size_t n, std::size_t reserve_steps);
    void push_row(double t, std::span<const double> s, std::span<const double> i);

    /// Every stride-th grid point (stride >= 1), same metadata.
    SirTrajectory subsample(std::size_t stride) const;

private:
    std::size_t n_ = 0;
    std::vector<double> s_, i_;  // steps x articles
};

/// dI_i = -I_i + lambda * S_i * sum_j a(i,j) I_j ; dS_i = -lambda * S_i * sum.
/// With `transpose` the force term indexes a(j,i) instead.
void sir_rhs(std::span<const double> rho_S, std::span<const double> rho_I, const AdjacencyMatrix& a,
             double lambda, std::span<double> dS, std::span<double> dI, bool transpose = false);

/// Classical fixed-step 4th-order integration from the seeded initial
/// condition; states are clamped to [0,1] after each step.
SirTrajectory integrate(const SirParams& params, const AdjacencyMatrix& a);

struct DailyIncidence {
    std::vector<double> per_day;  // expected new infections per calendar day
    double peak = 0.0;
    std::size_t peak_day = 0;
    double total = 0.0;
};

/// Expected incidence -dS/dt accumulated into day bins; day index is
/// floor(t / mu_per_day) at the left end of each recording interval.
DailyIncidence peak_statistics(const SirTrajectory& traj, double mu_per_day);

struct LambdaSweepPoint {
    double lambda = 0.0;
    double peak_per_day = 0.0;
    double peak_time_days = 0.0;
};

std::vector<LambdaSweepPoint> lambda_sweep(const AdjacencyMatrix& a, const SirParams& base,
                                           const std::vector<double>& lambda_grid,
                                           unsigned threads = 1);

/// All grid lambdas whose peak falls inside [target_lo, target_hi], reported
/// as the [min, max] interval of qualifying values.
std::pair<double, double> select_lambda(const std::vector<LambdaSweepPoint>& curve, double target_lo,
                                        double target_hi);

struct DailyCounts {
    std::int64_t first_day = 0;  // UTC epoch day of the first bin
    std::vector<std::uint64_t> counts;
};

/// Articles per UTC calendar day, gaps filled with zero.
DailyCounts empirical_daily_counts(const ArticleSet& set);

void save_daily_counts_csv(const DailyCounts& counts, const std::string& path);
void save_trajectory_csv(const SirTrajectory& traj, const AdjacencyMatrix& a, const std::string& path);
void save_trajectory_aggregate_csv(const SirTrajectory& traj, const std::string& path);
void save_lambda_sweep_csv(const std::vector<LambdaSweepPoint>& curve, const std::string& path);

}  // namespace spreadnet
