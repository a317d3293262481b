// Pipeline driver: reconstructs a news spread network from article text and
// publication times, then simulates and fits an SIR process on top of it.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spreadnet/article.hpp"
#include "spreadnet/config.hpp"
#include "spreadnet/corpus.hpp"
#include "spreadnet/docvec.hpp"
#include "spreadnet/embedding.hpp"
#include "spreadnet/manifest.hpp"
#include "spreadnet/netreconstruct.hpp"
#include "spreadnet/realization.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/sirmodel.hpp"
#include "spreadnet/synth.hpp"
#include "spreadnet/timeutil.hpp"
#include "spreadnet/util.hpp"

namespace fs = std::filesystem;
using namespace spreadnet;

namespace {

struct Overrides {
    std::string config_path, articles, vectors, out, seed_articles;
    double rho = 0.0, gamma_hours = 0.0, lambda = 0.0;
    std::uint64_t runs = 0, seed = 0;
    unsigned threads = 0;
    CLI::Option *o_articles = nullptr, *o_vectors = nullptr, *o_out = nullptr, *o_rho = nullptr,
                *o_gamma = nullptr, *o_lambda = nullptr, *o_runs = nullptr, *o_seed = nullptr,
                *o_threads = nullptr, *o_seed_articles = nullptr;
};

PipelineConfig resolve(const Overrides& ov) {
    PipelineConfig cfg =
        ov.config_path.empty() ? PipelineConfig{} : load_config(ov.config_path);
    if (ov.o_articles->count() != 0u) cfg.articles = ov.articles;
    if (ov.o_vectors->count() != 0u) cfg.vectors = ov.vectors;
    if (ov.o_out->count() != 0u) cfg.out = ov.out;
    if (ov.o_rho->count() != 0u) cfg.rho = ov.rho;
    if (ov.o_gamma->count() != 0u) cfg.gamma_hours = ov.gamma_hours;
    if (ov.o_lambda->count() != 0u) cfg.lambda = ov.lambda;
    if (ov.o_runs->count() != 0u) cfg.runs = ov.runs;
    if (ov.o_seed->count() != 0u) cfg.seed = ov.seed;
    if (ov.o_threads->count() != 0u) cfg.threads = ov.threads;
    if (ov.o_seed_articles->count() != 0u) cfg.seed_articles = ov.seed_articles;
    fs::create_directories(cfg.out);
    return cfg;
}

std::string join(const std::string& dir, const char* name) { return dir + "/" + name; }

void require_artifact(const std::string& path, const char* producer) {
    if (!fs::exists(path))
        throw ValidationError(path + " is missing; run `spreadnet " + producer + "` first");
}

ArticleSet load_corpus(const PipelineConfig& cfg) {
    if (cfg.articles.empty())
        throw ValidationError("no article file configured; pass --articles or set `articles` in the config");
    if (!fs::exists(cfg.articles))
        throw ValidationError("article file not found: " + cfg.articles +
                              " (point --articles at a JSONL corpus, e.g. from `spreadnet synth`)");
    std::vector<std::string> warnings;
    ArticleSet set = load_articles(cfg.articles, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    return set;
}

std::string vectors_path(const PipelineConfig& cfg) {
    return cfg.vectors.empty() ? join(cfg.out, "vectors.txt") : cfg.vectors;
}

SkipGramParams skipgram_params(const PipelineConfig& cfg) {
    SkipGramParams p;
    p.min_count = cfg.sg_min_count;
    p.dims = cfg.sg_dims;
    p.window = cfg.sg_window;
    p.negative_samples = cfg.sg_negative;
    p.epochs = cfg.sg_epochs;
    p.initial_learning_rate = cfg.sg_learning_rate;
    p.seed = cfg.seed;
    return p;
}

SirParams sir_params(const PipelineConfig& cfg) {
    SirParams p;
    p.lambda = cfg.lambda;
    p.mu_per_day = cfg.mu_per_day;
    p.dt = cfg.dt;
    p.t_end = cfg.t_end;
    p.record_dt = cfg.record_dt;
    p.transpose_adjacency = cfg.transpose_adjacency;
    p.seed_articles = cfg.seed_article_list();
    return p;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 1) throw ValidationError("grid needs at least one point");
    if (!(hi >= lo)) throw ValidationError("grid upper bound below lower bound");
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k)
        g[k] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return g;
}

void emit_manifest(const PipelineConfig& cfg, const std::string& command,
                   const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
    nlohmann::ordered_json params = cfg.to_json();
    write_manifest(cfg.out, build_manifest(command, params, inputs, outputs));
}

/// Rebuilds the adjacency used by every simulation command.
AdjacencyMatrix load_pipeline_adjacency(const PipelineConfig& cfg, const ArticleSet& set) {
    const std::string path = join(cfg.out, "adjacency_counts.csv");
    require_artifact(path, "adjacency");
    return load_adjacency_counts_csv(path, set);
}

SirTrajectory realization_trajectory(const PipelineConfig& cfg, const AdjacencyMatrix& a) {
    const SirTrajectory traj = integrate(sir_params(cfg), a);
    const std::size_t stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(cfg.realize_dt / cfg.record_dt)));
    return traj.subsample(stride);
}

void run_ingest(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    std::vector<std::string> warnings;
    const Vocabulary vocab = build_vocabulary(set, cfg.sg_min_count, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    const DailyCounts daily = empirical_daily_counts(set);

    const std::string a_out = join(cfg.out, "articles.jsonl");
    const std::string v_out = join(cfg.out, "vocabulary.tsv");
    const std::string d_out = join(cfg.out, "fig9_daily_counts.csv");
    save_articles(set, a_out);
    save_vocabulary_tsv(vocab, v_out);
    save_daily_counts_csv(daily, d_out);
    std::cout << "ingested " << set.size() << " articles, vocabulary " << vocab.size() << " terms\n";
    emit_manifest(cfg, "ingest", {cfg.articles}, {a_out, v_out, d_out});
}

void run_train(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const WordVectors wv = train_skipgram(set, skipgram_params(cfg));
    const std::string path = vectors_path(cfg);
    save_word_vectors(wv, path);
    std::cout << "trained " << wv.size() << " word vectors of dimension " << wv.dims() << "\n";
    emit_manifest(cfg, "train", {cfg.articles}, {path});
}

void run_embed(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const std::string vp = vectors_path(cfg);
    require_artifact(vp, "train");
    const WordVectors wv = load_word_vectors(vp);
    const Vocabulary vocab = build_vocabulary(set, cfg.sg_min_count);
    const WeightMatrix weights = tfidf_weights(set, vocab);
    const std::vector<DocVector> docs = document_vectors(set, vocab, weights, wv);
    const std::string path = join(cfg.out, "docvecs.tsv");
    save_document_vectors(docs, path);
    std::cout << "embedded " << docs.size() << " documents\n";
    emit_manifest(cfg, "embed", {cfg.articles, vp}, {path});
}

void run_similarity(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const std::string dv_path = join(cfg.out, "docvecs.tsv");
    require_artifact(dv_path, "embed");
    const std::vector<DocVector> docs = load_document_vectors(dv_path);
    if (docs.size() != set.size())
        throw ValidationError("docvecs.tsv does not match the article set; rerun `spreadnet embed`");
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (docs[i].article_id != set[i].id)
            throw ValidationError("docvecs.tsv does not match the article set; rerun `spreadnet embed`");
    }
    const SimMatrix sim = similarity_matrix(docs);

    const std::string bin = join(cfg.out, "similarity.bin");
    const std::string pairs = join(cfg.out, "similarity_pairs.csv");
    const std::string f4 = join(cfg.out, "fig4_similarity_hist.csv");
    const std::string f5 = join(cfg.out, "fig5_most_similar_hist.csv");
    save_similarity(sim, bin);
    save_similarity_pairs_csv(sim, set, cfg.similarity_pairs_floor, pairs);
    save_histogram_csv(make_histogram(pairwise_values(sim), cfg.hist_bins, -1.0, 1.0), f4);
    save_histogram_csv(make_histogram(most_similar_values(sim), cfg.hist_bins, -1.0, 1.0), f5);
    std::cout << "similarity matrix over " << sim.size() << " articles ("
              << sim.flagged().size() << " empty documents)\n";
    emit_manifest(cfg, "similarity", {cfg.articles, dv_path}, {bin, pairs, f4, f5});
}

SimMatrix load_pipeline_similarity(const PipelineConfig& cfg, const ArticleSet& set) {
    const std::string bin = join(cfg.out, "similarity.bin");
    require_artifact(bin, "similarity");
    SimMatrix sim = load_similarity(bin);
    if (sim.size() != set.size())
        throw ValidationError("similarity.bin does not match the article set; rerun `spreadnet similarity`");
    return sim;
}

void run_reconstruct(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const SimMatrix sim = load_pipeline_similarity(cfg, set);
    const LagMatrix lags = lag_matrix(set, cfg.gamma_hours);
    const SpreadNetwork net = assign_infectors(masked_similarity(sim, lags, cfg.rho), set);

    const std::string csv = join(cfg.out, "network.csv");
    const std::string gml = join(cfg.out, "network.graphml");
    save_network_csv(net, csv);
    save_network_graphml(net, gml);
    std::cout << "spread network: " << net.nodes.size() << " nodes, " << net.edges.size()
              << " edges, " << net.roots.size() << " roots, giant component "
              << fmt_short(giant_component_fraction(net)) << "\n";
    emit_manifest(cfg, "reconstruct", {cfg.articles, join(cfg.out, "similarity.bin")}, {csv, gml});
}

void run_sweep_rho(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const SimMatrix sim = load_pipeline_similarity(cfg, set);
    const LagMatrix lags = lag_matrix(set, cfg.gamma_hours);
    const ThresholdCurve curve =
        threshold_sweep(sim, lags, set, linspace(cfg.rho_grid_min, cfg.rho_grid_max, cfg.rho_grid_points));

    const std::string f6 = join(cfg.out, "fig6_threshold.csv");
    save_threshold_csv(curve, f6);
    const double selected = select_rho(curve, cfg.rho_target_giant);
    nlohmann::ordered_json sel;
    sel["target_giant_fraction"] = cfg.rho_target_giant;
    sel["selected_rho"] = selected;
    const std::string sel_path = join(cfg.out, "rho_selection.json");
    write_text_file(sel_path, sel.dump(2) + "\n");
    std::cout << "selected rho = " << fmt_short(selected) << " for giant-component target "
              << fmt_short(cfg.rho_target_giant) << "\n";
    emit_manifest(cfg, "sweep-rho", {cfg.articles, join(cfg.out, "similarity.bin")}, {f6, sel_path});
}

void run_sweep_window(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const SimMatrix sim = load_pipeline_similarity(cfg, set);
    const WindowSweep sweep = window_sweep(sim, set, cfg.window_grid());

    const std::string summary = join(cfg.out, "window_summary.csv");
    const std::string f8 = join(cfg.out, "fig8_window_lag_hist.csv");
    save_window_summary_csv(sweep, summary);
    save_window_lag_histograms_csv(sweep, cfg.hist_bins, f8);
    const double gamma = select_gamma(sweep, cfg.window_coverage);
    nlohmann::ordered_json sel;
    sel["coverage"] = cfg.window_coverage;
    sel["selected_gamma_hours"] = gamma;
    const std::string sel_path = join(cfg.out, "gamma_selection.json");
    write_text_file(sel_path, sel.dump(2) + "\n");
    std::cout << "selected gamma = " << fmt_short(gamma) << " h at coverage "
              << fmt_short(cfg.window_coverage) << "\n";
    emit_manifest(cfg, "sweep-window", {cfg.articles, join(cfg.out, "similarity.bin")},
                  {summary, f8, sel_path});
}

void run_adjacency(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const std::string net_path = join(cfg.out, "network.csv");
    require_artifact(net_path, "reconstruct");
    const SpreadNetwork net = load_network_csv(net_path, set);
    const AdjacencyMatrix a = publisher_adjacency(net, set);
    const std::string path = join(cfg.out, "adjacency_counts.csv");
    save_adjacency_counts_csv(a, path);
    std::cout << "publisher adjacency over " << a.publishers().size() << " publishers, "
              << a.n() << " articles\n";
    emit_manifest(cfg, "adjacency", {cfg.articles, net_path}, {path});
}

void run_simulate(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const AdjacencyMatrix a = load_pipeline_adjacency(cfg, set);
    const SirTrajectory traj = integrate(sir_params(cfg), a);
    const DailyIncidence inc = peak_statistics(traj, cfg.mu_per_day);

    const std::string f11 = join(cfg.out, "fig11_trajectory.csv");
    const std::string agg = join(cfg.out, "trajectory_aggregate.csv");
    save_trajectory_csv(traj, a, f11);
    save_trajectory_aggregate_csv(traj, agg);
    std::cout << "simulated " << traj.steps() << " recorded steps; expected peak "
              << fmt_short(inc.peak) << "/day on day " << inc.peak_day << "\n";
    emit_manifest(cfg, "simulate", {cfg.articles, join(cfg.out, "adjacency_counts.csv")}, {f11, agg});
}

void run_fit_lambda(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const AdjacencyMatrix a = load_pipeline_adjacency(cfg, set);
    const std::vector<double> grid =
        linspace(cfg.lambda_grid_min, cfg.lambda_grid_max, cfg.lambda_grid_points);
    const std::vector<LambdaSweepPoint> curve = lambda_sweep(a, sir_params(cfg), grid, cfg.threads);

    double lo = cfg.peak_target_lo, hi = cfg.peak_target_hi;
    if (!(hi > 0.0)) {  // derive the target band from the empirical peak
        const DailyCounts daily = empirical_daily_counts(set);
        std::uint64_t peak = 0;
        for (std::uint64_t c : daily.counts) peak = std::max(peak, c);
        lo = 0.8 * static_cast<double>(peak);
        hi = 1.2 * static_cast<double>(peak);
    }
    const std::string f10 = join(cfg.out, "fig10_lambda_sweep.csv");
    save_lambda_sweep_csv(curve, f10);
    const auto [lmin, lmax] = select_lambda(curve, lo, hi);
    nlohmann::ordered_json sel;
    sel["peak_target_lo"] = lo;
    sel["peak_target_hi"] = hi;
    sel["lambda_min"] = lmin;
    sel["lambda_max"] = lmax;
    const std::string sel_path = join(cfg.out, "lambda_interval.json");
    write_text_file(sel_path, sel.dump(2) + "\n");
    std::cout << "lambda interval [" << fmt_short(lmin) << ", " << fmt_short(lmax)
              << "] matches peak target [" << fmt_short(lo) << ", " << fmt_short(hi) << "]\n";
    emit_manifest(cfg, "fit-lambda", {cfg.articles, join(cfg.out, "adjacency_counts.csv")},
                  {f10, sel_path});
}

void run_realize(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const AdjacencyMatrix a = load_pipeline_adjacency(cfg, set);
    const SirTrajectory traj = realization_trajectory(cfg, a);
    const StateMatrix st = realize_states(traj, derive_seed(cfg.seed, 0));
    const SpreadNetwork net = simulated_spread_network(st, a, derive_seed(cfg.seed, 1), &set);

    const std::string states = join(cfg.out, "states.csv");
    const std::string csv = join(cfg.out, "simulated_network.csv");
    const std::string gml = join(cfg.out, "simulated_network.graphml");
    save_states_csv(st, a.article_ids(), states);
    save_network_csv(net, csv);
    save_network_graphml(net, gml);
    std::cout << "realized one state history: " << net.nodes.size() << " infected, "
              << net.edges.size() << " simulated edges, " << net.roots.size() << " roots\n";
    emit_manifest(cfg, "realize", {cfg.articles, join(cfg.out, "adjacency_counts.csv")},
                  {states, csv, gml});
}

void run_ensemble(const PipelineConfig& cfg) {
    const ArticleSet set = load_corpus(cfg);
    const AdjacencyMatrix a = load_pipeline_adjacency(cfg, set);
    const SirTrajectory traj = realization_trajectory(cfg, a);
    const EnsembleSummary summary = run_ensemble(traj, cfg.runs, cfg.seed, cfg.threads);
    const DailyCounts daily = empirical_daily_counts(set);

    const std::string f12 = join(cfg.out, "fig12_ensemble.csv");
    save_ensemble_csv(summary, daily.counts, cfg.compare_offset, f12);
    std::cout << cfg.runs << " realizations over " << summary.n_days() << " days\n";
    emit_manifest(cfg, "ensemble", {cfg.articles, join(cfg.out, "adjacency_counts.csv")}, {f12});
}

void run_compare(const PipelineConfig& cfg) {
    const std::string f12 = join(cfg.out, "fig12_ensemble.csv");
    require_artifact(f12, "ensemble");

    EnsembleSummary summary;
    std::vector<std::uint64_t> empirical;
    {
        std::ifstream in(f12);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream row(line);
            std::string day_s, emp_s, mean_s, lo_s, hi_s;
            if (!std::getline(row, day_s, ',') || !std::getline(row, emp_s, ',') ||
                !std::getline(row, mean_s, ',') || !std::getline(row, lo_s, ',') ||
                !std::getline(row, hi_s))
                throw ValidationError(f12 + ": malformed row; rerun `spreadnet ensemble`");
            empirical.push_back(std::strtoull(emp_s.c_str(), nullptr, 10));
            summary.mean.push_back(std::strtod(mean_s.c_str(), nullptr));
            summary.lo.push_back(std::strtod(lo_s.c_str(), nullptr));
            summary.hi.push_back(std::strtod(hi_s.c_str(), nullptr));
        }
    }
    std::optional<std::pair<double, double>> target;
    if (cfg.peak_target_hi > 0.0) target = {cfg.peak_target_lo, cfg.peak_target_hi};
    const ComparisonReport rep = compare_empirical(summary, empirical, 0, target);
    const std::string path = join(cfg.out, "comparison.json");
    save_comparison_json(rep, path);
    std::cout << "coverage " << fmt_short(rep.coverage) << ", peak delta "
              << fmt_short(rep.peak_delta) << ", peak day delta " << rep.peak_day_delta << "\n";
    emit_manifest(cfg, "compare", {f12}, {path});
}

void run_synth(const PipelineConfig& cfg) {
    SynthConfig sc;
    sc.n_cascades = cfg.synth_cascades;
    sc.articles_per_cascade = cfg.synth_articles_per_cascade;
    sc.topic_vocab_size = cfg.synth_topic_vocab;
    sc.overlap = cfg.synth_overlap;
    sc.copy_noise = cfg.synth_copy_noise;
    sc.lag_mean_hours = cfg.synth_lag_mean_hours;
    sc.lag_cap_hours = cfg.synth_lag_cap_hours;
    sc.root_spacing_hours = cfg.synth_root_spacing_hours;
    sc.tokens_per_article = cfg.synth_tokens_per_article;
    sc.n_publishers = cfg.synth_publishers;
    sc.start_epoch = parse_iso8601(cfg.synth_start);
    sc.seed = cfg.seed;
    const SynthResult res = generate(sc);

    const std::string articles = join(cfg.out, "synth_articles.jsonl");
    const std::string truth = join(cfg.out, "truth_edges.csv");
    save_articles(res.articles, articles);
    save_network_csv(res.truth, truth);
    std::cout << "generated " << res.articles.size() << " articles in " << sc.n_cascades
              << " cascades (" << res.truth.edges.size() << " planted edges); use --articles "
              << articles << " downstream\n";
    emit_manifest(cfg, "synth", {}, {articles, truth});
}

void run_report(const PipelineConfig& cfg) {
    const std::pair<const char*, const char*> figures[] = {
        {"fig4_similarity_hist.csv", "similarity"}, {"fig5_most_similar_hist.csv", "similarity"},
        {"fig6_threshold.csv", "sweep-rho"},        {"fig8_window_lag_hist.csv", "sweep-window"},
        {"fig9_daily_counts.csv", "ingest"},        {"fig10_lambda_sweep.csv", "fit-lambda"},
        {"fig11_trajectory.csv", "simulate"},       {"fig12_ensemble.csv", "ensemble"},
    };
    const std::string report_dir = join(cfg.out, "report");
    fs::create_directories(report_dir);
    std::vector<std::string> inputs, outputs;
    for (const auto& [name, producer] : figures) {
        const std::string src = join(cfg.out, name);
        require_artifact(src, producer);
        const std::string dst = report_dir + "/" + name;
        fs::copy_file(src, dst, fs::copy_options::overwrite_existing);
        inputs.push_back(src);
        outputs.push_back(dst);
    }
    std::cout << "report bundle in " << report_dir << " (" << outputs.size() << " figure files)\n";
    emit_manifest(cfg, "report", inputs, outputs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"news spread-network reconstruction and SIR simulation pipeline"};
    app.require_subcommand(1);

    Overrides ov;
    app.add_option("--config", ov.config_path, "key = value configuration file");
    ov.o_articles = app.add_option("--articles", ov.articles, "article corpus (JSONL)");
    ov.o_vectors = app.add_option("--vectors", ov.vectors, "word vector file (default <out>/vectors.txt)");
    ov.o_out = app.add_option("--out", ov.out, "output directory");
    ov.o_rho = app.add_option("--rho", ov.rho, "similarity threshold");
    ov.o_gamma = app.add_option("--gamma-hours", ov.gamma_hours, "time window in hours");
    ov.o_lambda = app.add_option("--lambda", ov.lambda, "SIR transmission parameter");
    ov.o_runs = app.add_option("--runs", ov.runs, "ensemble size");
    ov.o_seed = app.add_option("--seed", ov.seed, "master random seed");
    ov.o_threads = app.add_option("--threads", ov.threads, "worker threads (0 = hardware)");
    ov.o_seed_articles =
        app.add_option("--seed-articles", ov.seed_articles, "comma-separated outbreak seed ids");

    struct Cmd {
        const char* name;
        const char* help;
        void (*fn)(const PipelineConfig&);
    };
    const Cmd cmds[] = {
        {"ingest", "load and normalize a corpus; vocabulary and daily counts", run_ingest},
        {"train", "train skip-gram word vectors on the corpus", run_train},
        {"embed", "build tf-idf weighted document vectors", run_embed},
        {"similarity", "pairwise cosine similarity matrix and histograms", run_similarity},
        {"reconstruct", "assign infectors and export the spread network", run_reconstruct},
        {"sweep-rho", "giant-component fraction across similarity thresholds", run_sweep_rho},
        {"sweep-window", "lag distributions across candidate time windows", run_sweep_window},
        {"adjacency", "publisher transmission matrix from the spread network", run_adjacency},
        {"simulate", "deterministic SIR probability trajectories", run_simulate},
        {"fit-lambda", "sweep lambda and match the empirical publication peak", run_fit_lambda},
        {"realize", "sample one state history and a simulated spread network", run_realize},
        {"ensemble", "Monte Carlo realizations with daily-incidence envelope", run_ensemble},
        {"compare", "score the ensemble against the empirical curve", run_compare},
        {"synth", "generate a synthetic corpus with planted ground truth", run_synth},
        {"report", "bundle all figure-data CSVs produced so far", run_report},
    };
    for (const Cmd& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->fallthrough();
        sub->callback([&ov, fn = c.fn] { fn(resolve(ov)); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
