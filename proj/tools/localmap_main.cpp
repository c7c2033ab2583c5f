#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "localmap/blobs.hpp"
#include "localmap/config.hpp"
#include "localmap/error.hpp"
#include "localmap/fit.hpp"
#include "localmap/io.hpp"
#include "localmap/metrics.hpp"
#include "localmap/pairs.hpp"
#include "localmap/svg.hpp"

namespace {

using namespace localmap;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(path + ": write failed");
}

// Hyperparameter flags shared by subcommands. Precedence: defaults, then
// --config file, then --mode, then any explicitly passed flag.
struct ConfigCli {
    std::string config_path;
    std::string mode = "localmap";
    LocalMapConfig flags;  // values written by CLI11; applied only when the option was passed

    CLI::Option* o_config = nullptr;
    CLI::Option* o_mode = nullptr;
    CLI::Option* o_n_nn = nullptr;
    CLI::Option* o_mn_ratio = nullptr;
    CLI::Option* o_fp_ratio = nullptr;
    CLI::Option* o_c_nn = nullptr;
    CLI::Option* o_c_mn = nullptr;
    CLI::Option* o_c_fp = nullptr;
    CLI::Option* o_d_adj = nullptr;
    CLI::Option* o_phase1 = nullptr;
    CLI::Option* o_phase2 = nullptr;
    CLI::Option* o_phase3 = nullptr;
    CLI::Option* o_resample = nullptr;
    CLI::Option* o_attempts = nullptr;
    CLI::Option* o_lr = nullptr;
    CLI::Option* o_beta1 = nullptr;
    CLI::Option* o_beta2 = nullptr;
    CLI::Option* o_eps = nullptr;
    CLI::Option* o_out_dim = nullptr;
    CLI::Option* o_seed = nullptr;
    std::string init_mode = "pca";
    CLI::Option* o_init_mode = nullptr;
    bool nn_weighting = true;
    CLI::Option* o_nn_weighting = nullptr;
    bool local_fp = true;
    CLI::Option* o_local_fp = nullptr;

    void attach(CLI::App* cmd) {
        o_config = cmd->add_option("--config", config_path, "JSON config file used as the base");
        o_mode = cmd->add_option("--mode", mode, "pacmap or localmap (default localmap)")
                     ->check(CLI::IsMember({"pacmap", "localmap"}));
        o_n_nn = cmd->add_option("--n-nn", flags.n_nn, "near neighbors per point");
        o_mn_ratio = cmd->add_option("--mn-ratio", flags.mn_ratio, "mid-near pairs per NN pair");
        o_fp_ratio = cmd->add_option("--fp-ratio", flags.fp_ratio, "further pairs per NN pair");
        o_c_nn = cmd->add_option("--c-nn", flags.c_nn, "NN loss constant");
        o_c_mn = cmd->add_option("--c-mn", flags.c_mn, "MN loss constant");
        o_c_fp = cmd->add_option("--c-fp", flags.c_fp, "FP loss constant");
        o_d_adj = cmd->add_option("--d-adj", flags.d_adj, "proximal cluster distance scale");
        o_phase1 = cmd->add_option("--phase1-iters", flags.phase1_iters, "phase 1 iterations");
        o_phase2 = cmd->add_option("--phase2-iters", flags.phase2_iters, "phase 2 iterations");
        o_phase3 = cmd->add_option("--phase3-iters", flags.phase3_iters, "phase 3 iterations");
        o_resample = cmd->add_option("--resample-interval", flags.resample_interval,
                                     "iterations between FP re-draws");
        o_attempts = cmd->add_option("--max-resample-attempts", flags.max_resample_attempts,
                                     "local FP draw attempts per slot");
        o_lr = cmd->add_option("--learning-rate", flags.learning_rate, "Adam learning rate");
        o_beta1 = cmd->add_option("--adam-beta1", flags.adam_beta1, "Adam beta1");
        o_beta2 = cmd->add_option("--adam-beta2", flags.adam_beta2, "Adam beta2");
        o_eps = cmd->add_option("--adam-eps", flags.adam_eps, "Adam epsilon");
        o_out_dim = cmd->add_option("--out-dim", flags.out_dim, "embedding dimension");
        o_seed = cmd->add_option("--seed", flags.seed, "random seed");
        o_init_mode = cmd->add_option("--init-mode", init_mode, "pca or random")
                          ->check(CLI::IsMember({"pca", "random"}));
        o_nn_weighting = cmd->add_flag("--nn-weighting,!--no-nn-weighting", nn_weighting,
                                       "dynamic NN edge weighting in phase 3");
        o_local_fp = cmd->add_flag("--local-fp,!--no-local-fp", local_fp,
                                   "locally constrained FP resampling in phase 3");
    }

    LocalMapConfig resolve() const {
        LocalMapConfig cfg;
        if (o_config->count() > 0) cfg = config_from_json_string(slurp(config_path));
        if (mode == "pacmap") {
            cfg.enable_nn_weighting = false;
            cfg.enable_local_fp = false;
        }
        if (o_n_nn->count() > 0) cfg.n_nn = flags.n_nn;
        if (o_mn_ratio->count() > 0) cfg.mn_ratio = flags.mn_ratio;
        if (o_fp_ratio->count() > 0) cfg.fp_ratio = flags.fp_ratio;
        if (o_c_nn->count() > 0) cfg.c_nn = flags.c_nn;
        if (o_c_mn->count() > 0) cfg.c_mn = flags.c_mn;
        if (o_c_fp->count() > 0) cfg.c_fp = flags.c_fp;
        if (o_d_adj->count() > 0) cfg.d_adj = flags.d_adj;
        if (o_phase1->count() > 0) cfg.phase1_iters = flags.phase1_iters;
        if (o_phase2->count() > 0) cfg.phase2_iters = flags.phase2_iters;
        if (o_phase3->count() > 0) cfg.phase3_iters = flags.phase3_iters;
        if (o_resample->count() > 0) cfg.resample_interval = flags.resample_interval;
        if (o_attempts->count() > 0) cfg.max_resample_attempts = flags.max_resample_attempts;
        if (o_lr->count() > 0) cfg.learning_rate = flags.learning_rate;
        if (o_beta1->count() > 0) cfg.adam_beta1 = flags.adam_beta1;
        if (o_beta2->count() > 0) cfg.adam_beta2 = flags.adam_beta2;
        if (o_eps->count() > 0) cfg.adam_eps = flags.adam_eps;
        if (o_out_dim->count() > 0) cfg.out_dim = flags.out_dim;
        if (o_seed->count() > 0) cfg.seed = flags.seed;
        if (o_init_mode->count() > 0) {
            cfg.init_mode = init_mode == "pca" ? InitMode::kPca : InitMode::kRandom;
        }
        if (o_nn_weighting->count() > 0) cfg.enable_nn_weighting = nn_weighting;
        if (o_local_fp->count() > 0) cfg.enable_local_fp = local_fp;
        return cfg;
    }
};

DataMatrix load_input(const std::string& path, bool labels) {
    return sniff_binary(path) ? load_binary(path) : load_csv(path, labels);
}

int run_embed(const std::string& input, bool labels, std::string out, std::string log_path,
              std::string report_path, const ConfigCli& cc, int threads, bool posthoc) {
    if (log_path.empty()) log_path = out + ".log.jsonl";
    if (report_path.empty()) report_path = out + ".report.json";

    const DataMatrix data = load_input(input, labels);
    const LocalMapConfig cfg = cc.resolve();

    const auto t0 = std::chrono::steady_clock::now();
    const FitResult result = fit(data, cfg, threads);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_embedding_csv(out, result.embedding.coords,
                        data.labels.has_value() ? &*data.labels : nullptr);
    spit(log_path, run_log_to_jsonl(result.log));

    MetricsReport report;
    report.config_echo = cfg;
    report.seed_echo = cfg.seed;
    // Deterministic mode trades the timing field for byte-identical reports.
    report.wall_time_seconds = threads == 1 ? 0.0 : elapsed;
    if (data.labels.has_value()) {
        report.silhouette = silhouette(result.embedding.coords, *data.labels, threads);
        const auto stats = edge_counts_between(result.pairs, *data.labels);
        double sum = 0.0;
        std::size_t defined = 0;
        for (const auto& s : stats) {
            if (s.ratio.has_value()) {
                sum += *s.ratio;
                ++defined;
            }
        }
        if (defined > 0) report.edge_ratio = sum / static_cast<double>(defined);
        if (posthoc) {
            report.posthoc_accuracy = posthoc_knn_accuracy(
                result.embedding.coords, *data.labels, 5, 0.2,
                static_cast<std::uint64_t>(cfg.seed));
        }
    }
    spit(report_path, report_to_json_string(report));

    std::printf("embed: %zu points -> %s", data.n(), out.c_str());
    if (report.silhouette.has_value()) std::printf(" (silhouette %.6f)", *report.silhouette);
    std::printf("\n");
    return 0;
}

int run_metrics(const std::string& input, std::string report_path, bool posthoc, int k,
                double test_fraction, std::int64_t seed, const ConfigCli& cc) {
    if (report_path.empty()) report_path = input + ".report.json";
    const DataMatrix emb = load_csv(input, true);

    MetricsReport report;
    report.config_echo = cc.resolve();
    report.seed_echo = seed;
    report.silhouette = silhouette(emb.values, *emb.labels);
    if (posthoc) {
        report.posthoc_accuracy = posthoc_knn_accuracy(emb.values, *emb.labels, k, test_fraction,
                                                       static_cast<std::uint64_t>(seed));
    }
    spit(report_path, report_to_json_string(report));

    std::printf("silhouette %.9f\n", *report.silhouette);
    if (report.posthoc_accuracy.has_value()) {
        std::printf("posthoc_accuracy %.9f\n", *report.posthoc_accuracy);
    }
    return 0;
}

int run_simulate(const std::vector<std::size_t>& n_values, std::size_t clusters, double p_nn,
                 std::size_t n_fp, std::size_t seeds, std::int64_t seed) {
    std::printf("%10s %16s %16s\n", "n", "empirical", "predicted");
    for (std::size_t n : n_values) {
        const EdgeRatioStats stats = edge_ratio_simulation(n, clusters, p_nn, n_fp, seeds,
                                                           static_cast<std::uint64_t>(seed));
        const double predicted = static_cast<double>(n) * p_nn / (2.0 * static_cast<double>(n_fp));
        std::printf("%10zu %16.6g %16.6g\n", n, stats.mean, predicted);
    }
    return 0;
}

int run_plot(const std::string& input, bool labels, const std::string& out) {
    const DataMatrix emb = load_csv(input, labels);
    spit(out, svg_scatter(emb.values, emb.labels.has_value() ? &*emb.labels : nullptr));
    std::printf("plot: %zu points -> %s\n", emb.n(), out.c_str());
    return 0;
}

int run_gen_blobs(const BlobSpec& spec, const std::string& out, bool binary) {
    const DataMatrix data = generate_blobs(spec);
    if (binary) {
        write_binary(out, data);
    } else {
        write_csv(out, data);
    }
    std::printf("gen-blobs: %zu points, %d clusters -> %s\n", data.n(), spec.n_clusters,
                out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LocalMAP dimensionality reduction toolkit"};
    app.require_subcommand(1);
    int exit_code = 0;

    // embed
    auto* embed = app.add_subcommand("embed", "fit an embedding and write CSV/log/report");
    std::string e_input, e_out = "embedding.csv", e_log, e_report;
    bool e_labels = false, e_posthoc = false;
    int e_threads = 1;
    ConfigCli e_cfg;
    embed->add_option("--input", e_input, "input CSV or binary matrix")->required();
    embed->add_flag("--labels", e_labels, "treat the last CSV column as labels");
    embed->add_option("--out", e_out, "embedding CSV path");
    embed->add_option("--log", e_log, "run log JSONL path (default: <out>.log.jsonl)");
    embed->add_option("--report", e_report, "metrics report path (default: <out>.report.json)");
    embed->add_option("--threads", e_threads, "worker threads; 1 = bitwise deterministic");
    embed->add_flag("--posthoc", e_posthoc, "include posthoc kNN accuracy in the report");
    e_cfg.attach(embed);
    embed->callback([&] {
        exit_code = run_embed(e_input, e_labels, e_out, e_log, e_report, e_cfg, e_threads,
                              e_posthoc);
    });

    // metrics
    auto* metrics = app.add_subcommand("metrics", "score a labeled embedding CSV");
    std::string m_input, m_report;
    bool m_posthoc = false;
    int m_k = 5;
    double m_fraction = 0.2;
    std::int64_t m_seed = 0;
    ConfigCli m_cfg;
    metrics->add_option("--input", m_input, "embedding CSV with a trailing label column")
        ->required();
    metrics->add_option("--out", m_report, "report JSON path (default: <input>.report.json)");
    metrics->add_flag("--posthoc", m_posthoc, "also compute posthoc kNN accuracy");
    metrics->add_option("--k", m_k, "posthoc neighbor count");
    metrics->add_option("--test-fraction", m_fraction, "posthoc held-out fraction");
    metrics->add_option("--metrics-seed", m_seed, "posthoc split seed");
    m_cfg.attach(metrics);
    metrics->callback([&] {
        exit_code = run_metrics(m_input, m_report, m_posthoc, m_k, m_fraction, m_seed, m_cfg);
    });

    // simulate
    auto* simulate = app.add_subcommand("simulate", "edge-ratio growth table");
    std::vector<std::size_t> s_n = {500, 1000, 2000, 4000};
    std::size_t s_clusters = 2, s_fp = 20, s_seeds = 20;
    double s_p = 0.001;
    std::int64_t s_seed = 0;
    simulate->add_option("--n", s_n, "dataset sizes to sweep");
    simulate->add_option("--clusters", s_clusters, "equal-size cluster count");
    simulate->add_option("--p-nn", s_p, "cross-cluster NN edge probability");
    simulate->add_option("--n-fp", s_fp, "FP partners per point");
    simulate->add_option("--seeds", s_seeds, "Monte-Carlo repetitions");
    simulate->add_option("--seed", s_seed, "base seed");
    simulate->callback(
        [&] { exit_code = run_simulate(s_n, s_clusters, s_p, s_fp, s_seeds, s_seed); });

    // plot
    auto* plot = app.add_subcommand("plot", "render an embedding CSV as SVG");
    std::string p_input, p_out = "embedding.svg";
    bool p_labels = false;
    plot->add_option("--input", p_input, "embedding CSV")->required();
    plot->add_flag("--labels", p_labels, "treat the last column as labels");
    plot->add_option("--out", p_out, "SVG output path");
    plot->callback([&] { exit_code = run_plot(p_input, p_labels, p_out); });

    // gen-blobs
    auto* gen = app.add_subcommand("gen-blobs", "emit synthetic clustered data");
    BlobSpec g_spec;
    g_spec.bridge_fraction = 0.02;
    std::string g_out = "blobs.csv";
    bool g_binary = false;
    gen->add_option("--clusters", g_spec.n_clusters, "cluster count");
    gen->add_option("--points-per-cluster", g_spec.points_per_cluster, "core points per cluster");
    gen->add_option("--dim", g_spec.dim, "dimensionality");
    gen->add_option("--spread", g_spec.center_spread, "center box half-width");
    gen->add_option("--std", g_spec.cluster_std, "cluster standard deviation");
    gen->add_option("--bridge-fraction", g_spec.bridge_fraction, "bridge points per core point");
    gen->add_option("--seed", g_spec.seed, "generator seed");
    gen->add_option("--out", g_out, "output path");
    gen->add_flag("--binary", g_binary, "write the binary matrix format");
    gen->callback([&] { exit_code = run_gen_blobs(g_spec, g_out, g_binary); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
