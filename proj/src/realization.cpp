#include "spreadnet/realization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spreadnet/rng.hpp"
#include "spreadnet/util.hpp"

namespace spreadnet {

namespace {

constexpr double kProbTol = 1e-6;

double checked_prob(double p, const char* what) {
    if (!(p >= -kProbTol && p <= 1.0 + kProbTol))
        throw ValidationError(std::string(what) + " probability outside [0,1] beyond tolerance");
    return clamp01(p);
}

}  // namespace

void StateMatrix::init(std::size_t n, std::size_t steps) {
    n_ = n;
    codes_.assign(steps * n, 0);
    newly_.assign(steps * n, 0);
    infected_step_.assign(n, -1);
}

StateMatrix realize_states(const SirTrajectory& traj, std::uint64_t seed) {
    const std::size_t n = traj.articles();
    const std::size_t T = traj.steps();
    if (T == 0) throw ValidationError("trajectory is empty");

    StateMatrix st;
    st.times = traj.times;
    st.mu_per_day = traj.mu_per_day;
    st.seeds = traj.seeds;
    st.init(n, T);
    for (std::size_t s : traj.seeds) {
        st.set_code(0, s, 1);
        st.set_newly(0, s);
        st.set_infected_step(s, 0);
    }

    Rng rng(seed);
    for (std::size_t t = 1; t < T; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint8_t prev = st.S(t - 1, i) ? 0 : st.I(t - 1, i) ? 1 : 2;
            std::uint8_t next = prev;
            if (prev == 0) {
                const double p = checked_prob(traj.I(t, i), "infection");
                if (rng.bernoulli(p)) {
                    next = 1;
                    st.set_newly(t, i);
                    st.set_infected_step(i, static_cast<std::int64_t>(t));
                }
            } else if (prev == 1) {
                const double p = checked_prob(traj.R(t, i), "recovery");
                if (rng.bernoulli(p)) next = 2;
            }
            st.set_code(t, i, next);
        }
    }
    return st;
}

SpreadNetwork simulated_spread_network(const StateMatrix& states, const AdjacencyMatrix& a,
                                       std::uint64_t seed, const ArticleSet* set) {
    const std::size_t n = states.articles();
    if (a.n() != n) throw ValidationError("state matrix and adjacency cover different articles");

    // nodes: infected articles only, in article order
    std::vector<std::size_t> node_of(n, static_cast<std::size_t>(-1));
    SpreadNetwork net;
    for (std::size_t i = 0; i < n; ++i) {
        if (states.infected_step(i) < 0) continue;
        node_of[i] = net.nodes.size();
        SpreadNode node;
        node.id = a.article_ids()[i];
        node.publisher = a.publishers()[a.publisher_of()[i]];
        node.published_at = set != nullptr ? set->at(i).published_at : 0;
        net.nodes.push_back(std::move(node));
    }

    Rng rng(seed);
    std::vector<double> weights(n);
    for (std::size_t t = 0; t < states.steps(); ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!states.newly_infected(t, i)) continue;
            if (t == 0) {  // seeds have no infector
                net.roots.push_back(node_of[i]);
                continue;
            }
            double total = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                weights[j] = states.I(t - 1, j) ? a.at(j, i) : 0.0;
                total += weights[j];
            }
            if (total <= 0.0) {
                net.roots.push_back(node_of[i]);
                continue;
            }
            const std::size_t j = rng.categorical(weights, total);
            SpreadEdge e;
            e.infector = node_of[j];
            e.infected = node_of[i];
            e.similarity = a.at(j, i);
            e.lag_hours = (states.times[t] - states.times[static_cast<std::size_t>(states.infected_step(j))]) /
                          states.mu_per_day * 24.0;
            e.step = static_cast<long>(t);
            net.edges.push_back(e);
        }
    }
    return net;
}

EnsembleSummary run_ensemble(const SirTrajectory& traj, std::size_t n_runs, std::uint64_t master_seed,
                             unsigned threads) {
    if (n_runs < 1) throw ValidationError("n_runs must be >= 1");
    if (traj.steps() == 0) throw ValidationError("trajectory is empty");
    const std::size_t n_days =
        static_cast<std::size_t>(traj.times.back() / traj.mu_per_day) + 1;

    EnsembleSummary out;
    out.n_runs = n_runs;
    out.run_counts.assign(n_runs * n_days, 0);

    parallel_for(n_runs, threads, [&](std::size_t r) {
        const StateMatrix st = realize_states(traj, derive_seed(master_seed, r));
        std::uint32_t* row = out.run_counts.data() + r * n_days;
        for (std::size_t t = 0; t < st.steps(); ++t) {
            const std::size_t day = static_cast<std::size_t>(st.times[t] / st.mu_per_day);
            for (std::size_t i = 0; i < st.articles(); ++i) {
                if (st.newly_infected(t, i)) row[std::min(day, n_days - 1)] += 1;
            }
        }
    });

    out.mean.assign(n_days, 0.0);
    out.lo.assign(n_days, 0.0);
    out.hi.assign(n_days, 0.0);
    std::vector<double> col(n_runs);
    for (std::size_t d = 0; d < n_days; ++d) {
        double sum = 0.0;
        for (std::size_t r = 0; r < n_runs; ++r) {
            col[r] = static_cast<double>(out.run_counts[r * n_days + d]);
            sum += col[r];
        }
        std::sort(col.begin(), col.end());
        out.mean[d] = sum / static_cast<double>(n_runs);
        // Quantile envelope, widened when a rare-event day puts the mean
        // outside the raw 2.5%/97.5% band.
        out.lo[d] = std::min(quantile(col, 0.025), out.mean[d]);
        out.hi[d] = std::max(quantile(col, 0.975), out.mean[d]);
    }
    return out;
}

ComparisonReport compare_empirical(const EnsembleSummary& summary,
                                   const std::vector<std::uint64_t>& empirical, long offset,
                                   std::optional<std::pair<double, double>> peak_target) {
    ComparisonReport rep;
    rep.offset = offset;

    std::size_t covered = 0;
    for (std::size_t d = 0; d < summary.n_days(); ++d) {
        const long e = static_cast<long>(d) + offset;
        if (e < 0 || e >= static_cast<long>(empirical.size())) continue;
        const double emp = static_cast<double>(empirical[static_cast<std::size_t>(e)]);
        rep.days.push_back(static_cast<long>(d));
        rep.empirical.push_back(emp);
        rep.mean.push_back(summary.mean[d]);
        rep.lo.push_back(summary.lo[d]);
        rep.hi.push_back(summary.hi[d]);
        if (emp >= summary.lo[d] && emp <= summary.hi[d]) ++covered;
    }
    if (rep.days.empty()) throw ValidationError("empirical and simulated date ranges are disjoint");
    rep.coverage = static_cast<double>(covered) / static_cast<double>(rep.days.size());

    for (std::size_t k = 0; k < rep.days.size(); ++k) {
        if (rep.empirical[k] > rep.empirical_peak) {
            rep.empirical_peak = rep.empirical[k];
            rep.empirical_peak_day = rep.days[k];
        }
    }
    for (std::size_t d = 0; d < summary.n_days(); ++d) {
        if (summary.mean[d] > rep.model_peak) {
            rep.model_peak = summary.mean[d];
            rep.model_peak_day = static_cast<long>(d);
        }
    }
    rep.peak_delta = rep.empirical_peak - rep.model_peak;
    rep.peak_day_delta = rep.empirical_peak_day - rep.model_peak_day;
    if (peak_target) {
        rep.has_target = true;
        rep.target_lo = peak_target->first;
        rep.target_hi = peak_target->second;
        rep.peak_within_target =
            rep.empirical_peak >= rep.target_lo && rep.empirical_peak <= rep.target_hi;
    }
    return rep;
}

void save_states_csv(const StateMatrix& states, const std::vector<std::string>& article_ids,
                     const std::string& path) {
    if (article_ids.size() != states.articles())
        throw ValidationError("article id list does not match state matrix");
    std::ostringstream out;
    out << "t,article_id,state\n";
    for (std::size_t t = 0; t < states.steps(); ++t) {
        for (std::size_t i = 0; i < states.articles(); ++i) {
            out << fmt_short(states.times[t]) << ',' << article_ids[i] << ','
                << states.state_char(t, i) << '\n';
        }
    }
    write_text_file(path, out.str());
}

void save_ensemble_csv(const EnsembleSummary& summary, const std::vector<std::uint64_t>& empirical,
                       long offset, const std::string& path) {
    std::ostringstream out;
    out << "day,empirical,mean,lo95,hi95\n";
    for (std::size_t d = 0; d < summary.n_days(); ++d) {
        const long e = static_cast<long>(d) + offset;
        const std::uint64_t emp =
            (e >= 0 && e < static_cast<long>(empirical.size())) ? empirical[static_cast<std::size_t>(e)]
                                                                : 0;
        out << d << ',' << emp << ',' << fmt_full(summary.mean[d]) << ',' << fmt_full(summary.lo[d])
            << ',' << fmt_full(summary.hi[d]) << '\n';
    }
    write_text_file(path, out.str());
}

void save_comparison_json(const ComparisonReport& report, const std::string& path) {
    nlohmann::ordered_json j;
    j["offset"] = report.offset;
    j["coverage"] = report.coverage;
    j["days"] = report.days;
    j["empirical"] = report.empirical;
    j["mean"] = report.mean;
    j["lo95"] = report.lo;
    j["hi95"] = report.hi;
    j["empirical_peak"] = report.empirical_peak;
    j["empirical_peak_day"] = report.empirical_peak_day;
    j["model_peak"] = report.model_peak;
    j["model_peak_day"] = report.model_peak_day;
    j["peak_delta"] = report.peak_delta;
    j["peak_day_delta"] = report.peak_day_delta;
    if (report.has_target) {
        j["peak_target"] = {{"lo", report.target_lo},
                            {"hi", report.target_hi},
                            {"status", report.peak_within_target ? "within range" : "outside range"}};
    }
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace spreadnet
