#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spreadnet/article.hpp"
#include "spreadnet/netreconstruct.hpp"
#include "spreadnet/sirmodel.hpp"

namespace spreadnet {

/// One sampled binary S/I/R history on the trajectory's recording grid.
class StateMatrix {
public:
    std::vector<double> times;
    double mu_per_day = 1.0;
    std::vector<std::size_t> seeds;

    std::size_t steps() const { return times.size(); }
    std::size_t articles() const { return n_; }
    bool S(std::size_t t, std::size_t i) const { return code(t, i) == 0; }
    bool I(std::size_t t, std::size_t i) const { return code(t, i) == 1; }
    bool R(std::size_t t, std::size_t i) const { return code(t, i) == 2; }
    char state_char(std::size_t t, std::size_t i) const { return "SIR"[code(t, i)]; }
    /// I*_t: article became infected exactly at step t (seeds flagged at 0).
    bool newly_infected(std::size_t t, std::size_t i) const { return newly_[t * n_ + i] != 0; }
    /// Step at which the article was infected, or -1 if it never was.
    std::int64_t infected_step(std::size_t i) const { return infected_step_[i]; }

    void init(std::size_t n, std::size_t steps);
    void set_code(std::size_t t, std::size_t i, std::uint8_t c) { codes_[t * n_ + i] = c; }
    void set_newly(std::size_t t, std::size_t i) { newly_[t * n_ + i] = 1; }
    void set_infected_step(std::size_t i, std::int64_t t) { infected_step_[i] = t; }

private:
    std::uint8_t code(std::size_t t, std::size_t i) const { return codes_[t * n_ + i]; }
    std::size_t n_ = 0;
    std::vector<std::uint8_t> codes_;  // steps x articles, 0=S 1=I 2=R
    std::vector<std::uint8_t> newly_;
    std::vector<std::int64_t> infected_step_;
};

/// Samples one binary history: at each step a susceptible article is infected
/// with probability rho_I(t), an infectious one recovers with probability
/// rho_R(t) = 1 - rho_S(t) - rho_I(t).
StateMatrix realize_states(const SirTrajectory& traj, std::uint64_t seed);

/// Draws an infector for every non-seed infection: candidate j gets weight
/// I_{t-1}[j] * a(j,i), normalized; a zero sum makes the node a root. Nodes
/// are the infected articles only, in article order. `set` only supplies
/// publication timestamps for node metadata.
SpreadNetwork simulated_spread_network(const StateMatrix& states, const AdjacencyMatrix& a,
                                       std::uint64_t seed, const ArticleSet* set = nullptr);

struct EnsembleSummary {
    std::size_t n_runs = 0;
    std::vector<double> mean, lo, hi;           // per day: mean and 2.5%/97.5% quantiles
    std::vector<std::uint32_t> run_counts;      // n_runs x n_days, infections per day
    std::size_t n_days() const { return mean.size(); }
    std::uint32_t run_count(std::size_t run, std::size_t day) const {
        return run_counts[run * n_days() + day];
    }
};

EnsembleSummary run_ensemble(const SirTrajectory& traj, std::size_t n_runs,
                             std::uint64_t master_seed, unsigned threads = 0);

struct ComparisonReport {
    long offset = 0;                 // empirical index = model day + offset
    std::vector<long> days;          // model days present in both series
    std::vector<double> empirical, mean, lo, hi;
    double coverage = 0.0;           // share of overlap days with empirical inside envelope
    double empirical_peak = 0.0;
    long empirical_peak_day = 0;     // in model-day coordinates
    double model_peak = 0.0;
    long model_peak_day = 0;
    double peak_delta = 0.0;         // empirical - model
    long peak_day_delta = 0;
    bool has_target = false;
    double target_lo = 0.0, target_hi = 0.0;
    bool peak_within_target = false;
};

ComparisonReport compare_empirical(const EnsembleSummary& summary,
                                   const std::vector<std::uint64_t>& empirical, long offset = 0,
                                   std::optional<std::pair<double, double>> peak_target = std::nullopt);

void save_states_csv(const StateMatrix& states, const std::vector<std::string>& article_ids,
                     const std::string& path);
void save_ensemble_csv(const EnsembleSummary& summary, const std::vector<std::uint64_t>& empirical,
                       long offset, const std::string& path);
void save_comparison_json(const ComparisonReport& report, const std::string& path);

}  // namespace spreadnet
