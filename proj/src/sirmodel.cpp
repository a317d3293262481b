#include "spreadnet/sirmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "spreadnet/timeutil.hpp"
#include "spreadnet/util.hpp"

namespace spreadnet {

AdjacencyMatrix::AdjacencyMatrix(std::vector<std::string> article_ids, std::vector<double> dense)
    : ids_(std::move(article_ids)), dense_(std::move(dense)) {
    const std::size_t n = ids_.size();
    if (dense_.size() != n * n) throw ValidationError("adjacency matrix shape mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (dense_[i * n + i] != 0.0) throw ValidationError("adjacency diagonal must be zero");
    }
    // one synthetic publisher per article keeps the publisher accessors usable
    publishers_.reserve(n);
    pub_of_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        publishers_.push_back(ids_[i]);
        pub_of_.push_back(i);
    }
    counts_.assign(n * n, 0);
    infected_.assign(n, 0);
}

AdjacencyMatrix publisher_adjacency(const SpreadNetwork& net, const ArticleSet& set) {
    AdjacencyMatrix a;
    const std::size_t n = set.size();
    a.ids_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) a.ids_.push_back(set.at(i).id);

    // publisher index in first-appearance order over the sorted articles
    std::map<std::string, std::size_t> pub_index;
    a.pub_of_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& p = set.at(i).publisher;
        auto it = pub_index.find(p);
        if (it == pub_index.end()) {
            it = pub_index.emplace(p, a.publishers_.size()).first;
            a.publishers_.push_back(p);
        }
        a.pub_of_[i] = it->second;
    }
    const std::size_t np = a.publishers_.size();
    a.counts_.assign(np * np, 0);
    a.infected_.assign(np, 0);

    // every non-root node is an infected article of its own publisher
    std::vector<bool> is_root(n, false);
    for (std::size_t r : net.roots) {
        if (r >= n) throw ValidationError("spread network references unknown article index");
        is_root[r] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_root[i]) a.infected_[a.pub_of_[i]] += 1;
    }
    for (const SpreadEdge& e : net.edges) {
        if (e.infector >= n || e.infected >= n)
            throw ValidationError("spread network references unknown article index");
        a.counts_[a.pub_of_[e.infector] * np + a.pub_of_[e.infected]] += 1;
    }

    a.dense_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t x = a.pub_of_[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::size_t y = a.pub_of_[j];
            const std::uint64_t ny = a.infected_[y];
            if (ny == 0) continue;
            a.dense_[i * n + j] = static_cast<double>(a.counts_[x * np + y]) / static_cast<double>(ny);
        }
    }
    return a;
}

void save_adjacency_counts_csv(const AdjacencyMatrix& a, const std::string& path) {
    std::ostringstream out;
    out << "from_publisher,to_publisher,pair_count,infected_count,weight\n";
    const std::size_t np = a.publishers().size();
    for (std::size_t x = 0; x < np; ++x) {
        for (std::size_t y = 0; y < np; ++y) {
            const std::uint64_t ny = a.infected_count(y);
            const std::uint64_t nxy = a.pair_count(x, y);
            if (nxy == 0 && ny == 0) continue;
            const double w = ny == 0 ? 0.0 : static_cast<double>(nxy) / static_cast<double>(ny);
            out << a.publishers()[x] << ',' << a.publishers()[y] << ',' << nxy << ',' << ny << ','
                << fmt_full(w) << '\n';
        }
    }
    write_text_file(path, out.str());
}

void sir_rhs(std::span<const double> rho_S, std::span<const double> rho_I, const AdjacencyMatrix& a,
             double lambda, std::span<double> dS, std::span<double> dI, bool transpose) {
    const std::size_t n = a.n();
    if (rho_S.size() != n || rho_I.size() != n || dS.size() != n || dI.size() != n)
        throw ValidationError("state vector size does not match adjacency");
    for (std::size_t i = 0; i < n; ++i) {
        double force = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = transpose ? a.at(j, i) : a.at(i, j);
            force += w * rho_I[j];
        }
        const double infect = lambda * rho_S[i] * force;
        dI[i] = -rho_I[i] + infect;
        dS[i] = -infect;
    }
}

void SirParams::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be >= 0");
    if (!(mu_per_day > 0.0)) throw ValidationError("mu_per_day must be > 0");
    if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
    if (!(t_end > 0.0)) throw ValidationError("t_end must be > 0");
    if (!(record_dt >= dt)) throw ValidationError("record_dt must be >= dt");
}

void SirTrajectory::init(std::size_t n, std::size_t reserve_steps) {
    n_ = n;
    times.clear();
    s_.clear();
    i_.clear();
    times.reserve(reserve_steps);
    s_.reserve(reserve_steps * n);
    i_.reserve(reserve_steps * n);
}

void SirTrajectory::push_row(double t, std::span<const double> s, std::span<const double> i) {
    times.push_back(t);
    s_.insert(s_.end(), s.begin(), s.end());
    i_.insert(i_.end(), i.begin(), i.end());
}

SirTrajectory SirTrajectory::subsample(std::size_t stride) const {
    if (stride == 0) throw ValidationError("stride must be >= 1");
    SirTrajectory out;
    out.mu_per_day = mu_per_day;
    out.lambda = lambda;
    out.seeds = seeds;
    out.clamp_total = clamp_total;
    out.min_preclamp = min_preclamp;
    out.max_preclamp = max_preclamp;
    out.init(n_, steps() / stride + 1);
    for (std::size_t t = 0; t < steps(); t += stride) {
        out.push_row(times[t], std::span<const double>(s_.data() + t * n_, n_),
                     std::span<const double>(i_.data() + t * n_, n_));
    }
    return out;
}

SirTrajectory integrate(const SirParams& params, const AdjacencyMatrix& a) {
    params.validate();
    const std::size_t n = a.n();
    if (n == 0) throw ValidationError("adjacency is empty");

    std::vector<std::size_t> seeds;
    if (params.seed_articles.empty()) {
        seeds.push_back(0);  // articles are kept in publication order
    } else {
        for (const std::string& id : params.seed_articles) {
            auto it = std::find(a.article_ids().begin(), a.article_ids().end(), id);
            if (it == a.article_ids().end()) throw ValidationError("unknown seed article: " + id);
            seeds.push_back(static_cast<std::size_t>(it - a.article_ids().begin()));
        }
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    }

    std::vector<double> S(n, 1.0), I(n, 0.0);
    for (std::size_t s : seeds) {
        S[s] = 0.0;
        I[s] = 1.0;
    }

    SirTrajectory traj;
    traj.mu_per_day = params.mu_per_day;
    traj.lambda = params.lambda;
    traj.seeds = seeds;
    traj.min_preclamp = 0.0;
    traj.max_preclamp = 1.0;

    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(params.t_end / params.dt - 1e-9));
    const std::size_t stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(params.record_dt / params.dt)));
    traj.init(n, n_steps / stride + 2);
    traj.push_row(0.0, S, I);

    std::vector<double> k1s(n), k1i(n), k2s(n), k2i(n), k3s(n), k3i(n), k4s(n), k4i(n);
    std::vector<double> ts(n), ti(n);
    const bool tr = params.transpose_adjacency;
    for (std::size_t step = 1; step <= n_steps; ++step) {
        const double h = params.dt;
        sir_rhs(S, I, a, params.lambda, k1s, k1i, tr);
        for (std::size_t i = 0; i < n; ++i) {
            ts[i] = S[i] + 0.5 * h * k1s[i];
            ti[i] = I[i] + 0.5 * h * k1i[i];
        }
        sir_rhs(ts, ti, a, params.lambda, k2s, k2i, tr);
        for (std::size_t i = 0; i < n; ++i) {
            ts[i] = S[i] + 0.5 * h * k2s[i];
            ti[i] = I[i] + 0.5 * h * k2i[i];
        }
        sir_rhs(ts, ti, a, params.lambda, k3s, k3i, tr);
        for (std::size_t i = 0; i < n; ++i) {
            ts[i] = S[i] + h * k3s[i];
            ti[i] = I[i] + h * k3i[i];
        }
        sir_rhs(ts, ti, a, params.lambda, k4s, k4i, tr);
        for (std::size_t i = 0; i < n; ++i) {
            S[i] += h / 6.0 * (k1s[i] + 2.0 * k2s[i] + 2.0 * k3s[i] + k4s[i]);
            I[i] += h / 6.0 * (k1i[i] + 2.0 * k2i[i] + 2.0 * k3i[i] + k4i[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (double* v : {&S[i], &I[i]}) {
                if (!std::isfinite(*v) || std::abs(*v) > 1.5)
                    throw std::runtime_error(
                        "integration unstable (state left [-1.5, 1.5]); use a smaller dt");
                traj.min_preclamp = std::min(traj.min_preclamp, *v);
                traj.max_preclamp = std::max(traj.max_preclamp, *v);
                const double c = clamp01(*v);
                traj.clamp_total += std::abs(c - *v);
                *v = c;
            }
        }
        if (step % stride == 0 || step == n_steps) {
            traj.push_row(static_cast<double>(step) * h, S, I);
        }
    }
    return traj;
}

DailyIncidence peak_statistics(const SirTrajectory& traj, double mu_per_day) {
    if (!(mu_per_day > 0.0)) throw ValidationError("mu_per_day must be > 0");
    DailyIncidence out;
    if (traj.steps() < 2) return out;
    const std::size_t n = traj.articles();
    // expected incidence over [t_k, t_k+1] is the total drop in rho_S,
    // attributed to the day containing the left endpoint
    for (std::size_t t = 0; t + 1 < traj.steps(); ++t) {
        double drop = 0.0;
        for (std::size_t i = 0; i < n; ++i) drop += traj.S(t, i) - traj.S(t + 1, i);
        if (drop < 0.0) drop = 0.0;
        const std::size_t day = static_cast<std::size_t>(traj.times[t] / mu_per_day);
        if (out.per_day.size() <= day) out.per_day.resize(day + 1, 0.0);
        out.per_day[day] += drop;
        out.total += drop;
    }
    for (std::size_t d = 0; d < out.per_day.size(); ++d) {
        if (out.per_day[d] > out.peak) {
            out.peak = out.per_day[d];
            out.peak_day = d;
        }
    }
    return out;
}

std::vector<LambdaSweepPoint> lambda_sweep(const AdjacencyMatrix& a, const SirParams& base,
                                           const std::vector<double>& lambda_grid, unsigned threads) {
    if (lambda_grid.empty()) throw ValidationError("lambda grid is empty");
    std::vector<LambdaSweepPoint> out(lambda_grid.size());
    parallel_for(lambda_grid.size(), threads, [&](std::size_t k) {
        SirParams p = base;
        p.lambda = lambda_grid[k];
        const SirTrajectory traj = integrate(p, a);
        const DailyIncidence inc = peak_statistics(traj, p.mu_per_day);
        out[k].lambda = p.lambda;
        out[k].peak_per_day = inc.peak;
        out[k].peak_time_days = static_cast<double>(inc.peak_day);
    });
    return out;
}

std::pair<double, double> select_lambda(const std::vector<LambdaSweepPoint>& curve, double target_lo,
                                        double target_hi) {
    if (!(target_lo <= target_hi)) throw ValidationError("invalid peak target range");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const LambdaSweepPoint& p : curve) {
        if (p.peak_per_day >= target_lo && p.peak_per_day <= target_hi) {
            lo = std::min(lo, p.lambda);
            hi = std::max(hi, p.lambda);
        }
    }
    if (!(lo <= hi)) throw ValidationError("no lambda matches peak target; widen the grid or range");
    return {lo, hi};
}

DailyCounts empirical_daily_counts(const ArticleSet& set) {
    DailyCounts out;
    if (set.size() == 0) return out;
    out.first_day = epoch_day(set.at(0).published_at);
    const std::int64_t last_day = epoch_day(set.at(set.size() - 1).published_at);
    out.counts.assign(static_cast<std::size_t>(last_day - out.first_day) + 1, 0);
    for (std::size_t i = 0; i < set.size(); ++i) {
        out.counts[static_cast<std::size_t>(epoch_day(set.at(i).published_at) - out.first_day)] += 1;
    }
    return out;
}

void save_daily_counts_csv(const DailyCounts& counts, const std::string& path) {
    std::ostringstream out;
    out << "day,date,count\n";
    for (std::size_t d = 0; d < counts.counts.size(); ++d) {
        const std::int64_t day = counts.first_day + static_cast<std::int64_t>(d);
        out << d << ',' << format_iso8601(day * 86400).substr(0, 10) << ',' << counts.counts[d] << '\n';
    }
    write_text_file(path, out.str());
}

void save_trajectory_csv(const SirTrajectory& traj, const AdjacencyMatrix& a, const std::string& path) {
    std::ostringstream out;
    out << "t,article_id,rho_S,rho_I,rho_R\n";
    for (std::size_t t = 0; t < traj.steps(); ++t) {
        for (std::size_t i = 0; i < traj.articles(); ++i) {
            out << fmt_short(traj.times[t]) << ',' << a.article_ids()[i] << ','
                << fmt_full(traj.S(t, i)) << ',' << fmt_full(traj.I(t, i)) << ','
                << fmt_full(traj.R(t, i)) << '\n';
        }
    }
    write_text_file(path, out.str());
}

void save_trajectory_aggregate_csv(const SirTrajectory& traj, const std::string& path) {
    std::ostringstream out;
    out << "t,sum_I,expected_daily_incidence\n";
    const std::size_t n = traj.articles();
    for (std::size_t t = 0; t < traj.steps(); ++t) {
        double sum_i = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum_i += traj.I(t, i);
        double rate = 0.0;  // -dS/dt scaled to per-day units
        if (t + 1 < traj.steps()) {
            double drop = 0.0;
            for (std::size_t i = 0; i < n; ++i) drop += traj.S(t, i) - traj.S(t + 1, i);
            const double h = traj.times[t + 1] - traj.times[t];
            if (h > 0.0) rate = drop / h * traj.mu_per_day;
        }
        out << fmt_short(traj.times[t]) << ',' << fmt_full(sum_i) << ',' << fmt_full(rate) << '\n';
    }
    write_text_file(path, out.str());
}

void save_lambda_sweep_csv(const std::vector<LambdaSweepPoint>& curve, const std::string& path) {
    std::ostringstream out;
    out << "lambda,peak_per_day,peak_time_days\n";
    for (const LambdaSweepPoint& p : curve) {
        out << fmt_full(p.lambda) << ',' << fmt_full(p.peak_per_day) << ',' << fmt_short(p.peak_time_days)
            << '\n';
    }
    write_text_file(path, out.str());
}

AdjacencyMatrix load_adjacency_counts_csv(const std::string& path, const ArticleSet& set) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty file");

    std::map<std::string, std::size_t> pub_index;
    AdjacencyMatrix a;
    const std::size_t n = set.size();
    a.ids_.reserve(n);
    a.pub_of_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Article& art = set.at(i);
        a.ids_.push_back(art.id);
        auto it = pub_index.find(art.publisher);
        if (it == pub_index.end()) {
            it = pub_index.emplace(art.publisher, a.publishers_.size()).first;
            a.publishers_.push_back(art.publisher);
        }
        a.pub_of_[i] = it->second;
    }
    const std::size_t np = a.publishers_.size();
    a.counts_.assign(np * np, 0);
    a.infected_.assign(np, 0);

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string from, to, nxy_s, ny_s, w_s;
        if (!std::getline(row, from, ',') || !std::getline(row, to, ',') ||
            !std::getline(row, nxy_s, ',') || !std::getline(row, ny_s, ',') || !std::getline(row, w_s))
            throw ValidationError(path + " line " + std::to_string(lineno) + ": malformed row");
        auto fx = pub_index.find(from);
        auto fy = pub_index.find(to);
        if (fx == pub_index.end() || fy == pub_index.end())
            throw ValidationError(path + " line " + std::to_string(lineno) +
                                  ": unknown publisher; counts do not match the article set");
        a.counts_[fx->second * np + fy->second] = std::strtoull(nxy_s.c_str(), nullptr, 10);
        a.infected_[fy->second] = std::strtoull(ny_s.c_str(), nullptr, 10);
    }

    a.dense_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t x = a.pub_of_[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::size_t y = a.pub_of_[j];
            const std::uint64_t ny = a.infected_[y];
            if (ny == 0) continue;
            a.dense_[i * n + j] = static_cast<double>(a.counts_[x * np + y]) / static_cast<double>(ny);
        }
    }
    return a;
}

}  // namespace spreadnet
