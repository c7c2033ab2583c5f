#ifndef LOCALMAP_FIT_HPP
#define LOCALMAP_FIT_HPP

#include <vector>

#include "localmap/config.hpp"
#include "localmap/types.hpp"

namespace localmap {

// Bias-corrected Adam update in place; increments step_count. Throws on a
// non-finite gradient.
void adam_step(EmbeddingState& state, const Matrix& grad, const LocalMapConfig& cfg);

// Starting coordinates: top-out_dim PCA scores scaled by 0.01, or seeded
// i.i.d. Gaussians with std 1e-4. Moment buffers zeroed.
EmbeddingState init_embedding(const DataMatrix& x, const LocalMapConfig& cfg);

struct FitResult {
    EmbeddingState embedding;
    std::vector<RunLogRecord> log;
    PairGraph pairs;  // graph state at the end of the run
};

// End-to-end pipeline: preprocess, pair construction, init, phases 1-2 under
// the three-term loss, phase 3 under the final-phase loss with FP re-draws
// every resample_interval iterations (locally constrained when
// cfg.enable_local_fp, plain uniform re-draws otherwise). The log records the
// loss every 10 iterations, each resampling event, and a final entry.
// Single-threaded runs are bitwise reproducible for fixed (x, cfg).
FitResult fit(const DataMatrix& x, const LocalMapConfig& cfg, int threads = 1);

std::string run_log_to_jsonl(const std::vector<RunLogRecord>& log);

}  // namespace localmap

#endif  // LOCALMAP_FIT_HPP
