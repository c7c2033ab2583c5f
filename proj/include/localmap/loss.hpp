#ifndef LOCALMAP_LOSS_HPP
#define LOCALMAP_LOSS_HPP

#include <cstddef>
#include <vector>

#include "localmap/config.hpp"
#include "localmap/types.hpp"

namespace localmap {

struct PhaseWeights {
    double w_nn = 0.0;
    double w_mn = 0.0;
    double w_fp = 0.0;
    int phase = 1;
};

enum class LossMode { kPacmap, kLocalmap };

// Three-term graph loss with dt = d^2 + 1 per pair:
//   w_nn * sum_NN dt/(c_nn + dt) + w_mn * sum_MN dt/(c_mn + dt)
//   + w_fp * sum_FP 1/(c_fp + dt)
double pacmap_loss(const Matrix& y, const PairGraph& pairs, const PhaseWeights& w,
                   const LocalMapConfig& cfg);

// Final-phase loss:
//   sum_NN d_adj * sqrt(dt) / (2 (c_nn + dt)) + sum_FP 1/(c_fp + dt).
// With cfg.enable_nn_weighting off, the NN term reverts to dt/(c_nn + dt).
double localmap_loss(const Matrix& y, const PairGraph& pairs, const LocalMapConfig& cfg);

// Analytic gradient of the selected loss. Per-pair contributions accumulate
// onto both endpoints with opposite signs, so column sums vanish exactly up
// to roundoff. In kLocalmap mode, w is ignored (the final-phase loss carries
// unit weights) and mn pairs contribute nothing.
Matrix loss_grad(const Matrix& y, const PairGraph& pairs, const PhaseWeights& w,
                 const LocalMapConfig& cfg, LossMode mode);

// d_adj / (2 sqrt(d^2 + 1)): the multiplicative adjustment applied to the NN
// attraction; > 1 below the cluster-midpoint scale, < 1 beyond it.
double nn_coefficient(double d, double d_adj);

// Update direction applied by the optimizer in the final phase: the standard
// NN attraction scaled by nn_coefficient at the pair's current distance (the
// coefficient acts as a per-step edge weight, so attraction never flips
// sign), plus the FP repulsion. With enable_nn_weighting off the NN term is
// the unweighted attraction, making the field identical to the
// phase-weights-(1,0,1) kPacmap gradient. loss_grad(kLocalmap) is the exact
// derivative of localmap_loss instead; the two coincide only where the
// coefficient is locally constant.
Matrix phase3_force(const Matrix& y, const PairGraph& pairs, const LocalMapConfig& cfg);

// Radial force magnitudes as functions of the pair distance d:
//   f = d/dd of the NN per-pair loss (attractive where positive),
//   g = -d/dd of the FP per-pair loss (always repulsive).
double nn_force(double d, const LocalMapConfig& cfg);
double fp_force(double d, const LocalMapConfig& cfg);

struct ForceProfiles {
    std::vector<double> d;  // uniform grid over (0, d_max]
    std::vector<double> f;
    std::vector<double> g;
};
ForceProfiles force_profiles(const LocalMapConfig& cfg, double d_max = 20.0,
                             std::size_t samples = 2000);

// Phase-1 weights ramp w_mn from 1000 down to 3; phase 2 holds 3/3/1;
// phase 3 is 1/0/1 under the final-phase loss. Throws when iter is outside
// [0, total_iters).
PhaseWeights weight_schedule(int iter, const LocalMapConfig& cfg);

}  // namespace localmap

#endif  // LOCALMAP_LOSS_HPP
