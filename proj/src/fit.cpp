#include "localmap/fit.hpp"

#include <charconv>
#include <cmath>

#include "localmap/error.hpp"
#include "localmap/loss.hpp"
#include "localmap/pairs.hpp"
#include "localmap/pca.hpp"
#include "localmap/rng.hpp"

namespace localmap {

void adam_step(EmbeddingState& state, const Matrix& grad, const LocalMapConfig& cfg) {
    if (grad.rows() != state.coords.rows() || grad.cols() != state.coords.cols()) {
        throw Error("adam_step: gradient shape mismatch");
    }
    if (!grad.all_finite()) throw Error("adam_step: non-finite gradient");

    state.step_count += 1;
    const double t = static_cast<double>(state.step_count);
    const double bc1 = 1.0 - std::pow(cfg.adam_beta1, t);
    const double bc2 = 1.0 - std::pow(cfg.adam_beta2, t);

    const std::size_t total = state.coords.data().size();
    double* y = state.coords.data().data();
    double* m = state.adam_m.data().data();
    double* v = state.adam_v.data().data();
    const double* g = grad.data().data();
    for (std::size_t i = 0; i < total; ++i) {
        m[i] = cfg.adam_beta1 * m[i] + (1.0 - cfg.adam_beta1) * g[i];
        v[i] = cfg.adam_beta2 * v[i] + (1.0 - cfg.adam_beta2) * g[i] * g[i];
        const double m_hat = m[i] / bc1;
        const double v_hat = v[i] / bc2;
        y[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
    }
}

EmbeddingState init_embedding(const DataMatrix& x, const LocalMapConfig& cfg) {
    const std::size_t n = x.n();
    const std::size_t out_dim = static_cast<std::size_t>(cfg.out_dim);

    EmbeddingState state;
    state.coords = Matrix(n, out_dim);
    state.adam_m = Matrix(n, out_dim);
    state.adam_v = Matrix(n, out_dim);

    if (cfg.init_mode == InitMode::kPca) {
        const std::size_t k = std::min(out_dim, std::min(n, x.dim()));
        PcaResult p = pca(x.values, k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) state.coords(i, j) = 0.01 * p.scores(i, j);
        }
    } else {
        CounterRng rng(static_cast<std::uint64_t>(cfg.seed), stream::kEmbeddingInit);
        for (double& v : state.coords.data()) v = 1e-4 * rng.next_gaussian();
    }
    return state;
}

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

FitResult fit(const DataMatrix& x, const LocalMapConfig& cfg, int threads) {
    const auto violations = validate_config(cfg, x.n());
    if (!violations.empty()) {
        throw Error("fit: invalid config: " + join(violations, "; "));
    }

    const DataMatrix pre = preprocess(x, 100);

    FitResult result;
    result.pairs = build_pair_graph(pre.values, cfg, threads);
    EmbeddingState state = init_embedding(pre, cfg);

    const std::size_t n = pre.n();
    const std::size_t n_fp = static_cast<std::size_t>(cfg.n_fp());
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.seed);
    const int total = cfg.total_iters();
    const int phase3_start = cfg.phase1_iters + cfg.phase2_iters;

    auto current_loss = [&](const PhaseWeights& w) {
        return w.phase == 3 ? localmap_loss(state.coords, result.pairs, cfg)
                            : pacmap_loss(state.coords, result.pairs, w, cfg);
    };

    for (int iter = 0; iter < total; ++iter) {
        const PhaseWeights w = weight_schedule(iter, cfg);

        bool resampled = false;
        if (w.phase == 3 && (iter - phase3_start) % cfg.resample_interval == 0 && n_fp > 0) {
            if (cfg.enable_local_fp) {
                result.pairs.fp_pairs =
                    resample_local_fp(state.coords, result.pairs.nn_pairs, n_fp, cfg.d_adj,
                                      cfg.max_resample_attempts, seed, iter);
            } else {
                result.pairs.fp_pairs =
                    sample_fp_pairs(n, result.pairs.nn_pairs, n_fp, seed,
                                    static_cast<std::uint64_t>(iter) + 1);
            }
            resampled = true;
        }

        if (iter % 10 == 0 || resampled) {
            const double loss = current_loss(w);
            if (!std::isfinite(loss)) {
                throw Error("fit: non-finite loss at iteration " + std::to_string(iter));
            }
            result.log.push_back({iter, w.phase, loss, resampled ? "resample_fp" : "loss"});
        }

        const Matrix grad = w.phase == 3
                                ? phase3_force(state.coords, result.pairs, cfg)
                                : loss_grad(state.coords, result.pairs, w, cfg, LossMode::kPacmap);
        if (!grad.all_finite()) {
            throw Error("fit: non-finite gradient at iteration " + std::to_string(iter));
        }
        adam_step(state, grad, cfg);
        if (!state.coords.all_finite()) {
            throw Error("fit: non-finite coordinates after iteration " + std::to_string(iter));
        }
    }

    const PhaseWeights w_last = weight_schedule(total - 1, cfg);
    result.log.push_back({total, w_last.phase, current_loss(w_last), "final"});

    result.embedding = std::move(state);
    return result;
}

std::string run_log_to_jsonl(const std::vector<RunLogRecord>& log) {
    std::string out;
    char buf[64];
    for (const RunLogRecord& rec : log) {
        out += "{\"iter\":";
        out += std::to_string(rec.iter);
        out += ",\"phase\":";
        out += std::to_string(rec.phase);
        out += ",\"loss\":";
        const auto res = std::to_chars(buf, buf + sizeof(buf), rec.loss);
        out.append(buf, res.ptr);
        out += ",\"event\":\"";
        out += rec.event;
        out += "\"}\n";
    }
    return out;
}

}  // namespace localmap
