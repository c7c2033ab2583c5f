#include "localmap/loss.hpp"

#include <cmath>

#include "localmap/error.hpp"

namespace localmap {

namespace {

inline double dist_sq(const Matrix& y, const IndexPair& p) {
    return squared_distance(y.row(p.anchor), y.row(p.partner), y.cols());
}

}  // namespace

double pacmap_loss(const Matrix& y, const PairGraph& pairs, const PhaseWeights& w,
                   const LocalMapConfig& cfg) {
    double loss = 0.0;
    for (const IndexPair& p : pairs.nn_pairs) {
        const double dt = dist_sq(y, p) + 1.0;
        loss += w.w_nn * dt / (cfg.c_nn + dt);
    }
    for (const IndexPair& p : pairs.mn_pairs) {
        const double dt = dist_sq(y, p) + 1.0;
        loss += w.w_mn * dt / (cfg.c_mn + dt);
    }
    for (const IndexPair& p : pairs.fp_pairs) {
        const double dt = dist_sq(y, p) + 1.0;
        loss += w.w_fp / (cfg.c_fp + dt);
    }
    return loss;
}

double localmap_loss(const Matrix& y, const PairGraph& pairs, const LocalMapConfig& cfg) {
    double loss = 0.0;
    for (const IndexPair& p : pairs.nn_pairs) {
        const double dt = dist_sq(y, p) + 1.0;
        if (cfg.enable_nn_weighting) {
            loss += cfg.d_adj * std::sqrt(dt) / (2.0 * (cfg.c_nn + dt));
        } else {
            loss += dt / (cfg.c_nn + dt);
        }
    }
    for (const IndexPair& p : pairs.fp_pairs) {
        const double dt = dist_sq(y, p) + 1.0;
        loss += 1.0 / (cfg.c_fp + dt);
    }
    return loss;
}

namespace {

// Adds factor * (y_i - y_j) to grad_i and the opposite to grad_j; the shared
// factor is dLoss/d(dt) * 2 for the pair's dt = d^2 + 1.
inline void accumulate(Matrix& grad, const Matrix& y, const IndexPair& p, double factor) {
    const std::size_t dim = y.cols();
    const double* yi = y.row(p.anchor);
    const double* yj = y.row(p.partner);
    double* gi = grad.row(p.anchor);
    double* gj = grad.row(p.partner);
    for (std::size_t k = 0; k < dim; ++k) {
        const double step = factor * (yi[k] - yj[k]);
        gi[k] += step;
        gj[k] -= step;
    }
}

}  // namespace

Matrix loss_grad(const Matrix& y, const PairGraph& pairs, const PhaseWeights& w,
                 const LocalMapConfig& cfg, LossMode mode) {
    Matrix grad(y.rows(), y.cols());

    if (mode == LossMode::kPacmap) {
        for (const IndexPair& p : pairs.nn_pairs) {
            const double dt = dist_sq(y, p) + 1.0;
            const double denom = cfg.c_nn + dt;
            accumulate(grad, y, p, 2.0 * w.w_nn * cfg.c_nn / (denom * denom));
        }
        for (const IndexPair& p : pairs.mn_pairs) {
            const double dt = dist_sq(y, p) + 1.0;
            const double denom = cfg.c_mn + dt;
            accumulate(grad, y, p, 2.0 * w.w_mn * cfg.c_mn / (denom * denom));
        }
        for (const IndexPair& p : pairs.fp_pairs) {
            const double dt = dist_sq(y, p) + 1.0;
            const double denom = cfg.c_fp + dt;
            accumulate(grad, y, p, -2.0 * w.w_fp / (denom * denom));
        }
        return grad;
    }

    // Final-phase loss; unit weights, no mid-near term.
    for (const IndexPair& p : pairs.nn_pairs) {
        const double dt = dist_sq(y, p) + 1.0;
        const double denom = cfg.c_nn + dt;
        if (cfg.enable_nn_weighting) {
            // d/d(dt) of d_adj*sqrt(dt)/(2(c+dt)) = d_adj*(c-dt)/(4 sqrt(dt) (c+dt)^2)
            accumulate(grad, y, p,
                       cfg.d_adj * (cfg.c_nn - dt) / (2.0 * std::sqrt(dt) * denom * denom));
        } else {
            accumulate(grad, y, p, 2.0 * cfg.c_nn / (denom * denom));
        }
    }
    for (const IndexPair& p : pairs.fp_pairs) {
        const double dt = dist_sq(y, p) + 1.0;
        const double denom = cfg.c_fp + dt;
        accumulate(grad, y, p, -2.0 / (denom * denom));
    }
    return grad;
}

double nn_coefficient(double d, double d_adj) {
    return d_adj / (2.0 * std::sqrt(d * d + 1.0));
}

Matrix phase3_force(const Matrix& y, const PairGraph& pairs, const LocalMapConfig& cfg) {
    Matrix grad(y.rows(), y.cols());
    for (const IndexPair& p : pairs.nn_pairs) {
        const double dt = dist_sq(y, p) + 1.0;
        const double denom = cfg.c_nn + dt;
        double factor = 2.0 * cfg.c_nn / (denom * denom);
        if (cfg.enable_nn_weighting) factor *= cfg.d_adj / (2.0 * std::sqrt(dt));
        accumulate(grad, y, p, factor);
    }
    for (const IndexPair& p : pairs.fp_pairs) {
        const double dt = dist_sq(y, p) + 1.0;
        const double denom = cfg.c_fp + dt;
        accumulate(grad, y, p, -2.0 / (denom * denom));
    }
    return grad;
}

double nn_force(double d, const LocalMapConfig& cfg) {
    const double dt = d * d + 1.0;
    const double denom = cfg.c_nn + dt;
    if (cfg.enable_nn_weighting) {
        return cfg.d_adj * d * (cfg.c_nn - dt) / (2.0 * std::sqrt(dt) * denom * denom);
    }
    return 2.0 * d * cfg.c_nn / (denom * denom);
}

double fp_force(double d, const LocalMapConfig& cfg) {
    const double dt = d * d + 1.0;
    const double denom = cfg.c_fp + dt;
    return 2.0 * d / (denom * denom);
}

ForceProfiles force_profiles(const LocalMapConfig& cfg, double d_max, std::size_t samples) {
    if (samples < 1 || d_max <= 0.0) throw Error("force_profiles: bad grid");
    ForceProfiles out;
    out.d.resize(samples);
    out.f.resize(samples);
    out.g.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double d = d_max * static_cast<double>(i + 1) / static_cast<double>(samples);
        out.d[i] = d;
        out.f[i] = nn_force(d, cfg);
        out.g[i] = fp_force(d, cfg);
    }
    return out;
}

PhaseWeights weight_schedule(int iter, const LocalMapConfig& cfg) {
    if (iter < 0 || iter >= cfg.total_iters()) {
        throw Error("weight_schedule: iteration " + std::to_string(iter) + " outside [0, " +
                    std::to_string(cfg.total_iters()) + ")");
    }
    PhaseWeights w;
    if (iter < cfg.phase1_iters) {
        const double t = static_cast<double>(iter) / static_cast<double>(cfg.phase1_iters);
        w.w_nn = 2.0;
        w.w_mn = (1.0 - t) * 1000.0 + t * 3.0;
        w.w_fp = 1.0;
        w.phase = 1;
    } else if (iter < cfg.phase1_iters + cfg.phase2_iters) {
        w.w_nn = 3.0;
        w.w_mn = 3.0;
        w.w_fp = 1.0;
        w.phase = 2;
    } else {
        w.w_nn = 1.0;
        w.w_mn = 0.0;
        w.w_fp = 1.0;
        w.phase = 3;
    }
    return w;
}

}  // namespace localmap
