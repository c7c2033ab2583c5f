#ifndef LOCALMAP_CONFIG_HPP
#define LOCALMAP_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace localmap {

enum class InitMode { kPca, kRandom };

// Full hyperparameter set for one run. Defaults reproduce the standard
// three-phase schedule with the locally adjusted third phase enabled.
struct LocalMapConfig {
    int n_nn = 10;
    double mn_ratio = 0.5;
    double fp_ratio = 2.0;
    double c_nn = 10.0;
    double c_mn = 10000.0;
    double c_fp = 1.0;
    double d_adj = 10.0;
    int phase1_iters = 100;
    int phase2_iters = 100;
    int phase3_iters = 250;
    int resample_interval = 10;
    int max_resample_attempts = 20;
    double learning_rate = 1.0;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-7;
    int out_dim = 2;
    std::int64_t seed = 0;
    InitMode init_mode = InitMode::kPca;
    bool enable_nn_weighting = true;
    bool enable_local_fp = true;

    int n_mn() const { return static_cast<int>(std::llround(mn_ratio * n_nn)); }
    int n_fp() const { return static_cast<int>(std::llround(fp_ratio * n_nn)); }
    int total_iters() const { return phase1_iters + phase2_iters + phase3_iters; }

    bool operator==(const LocalMapConfig&) const = default;
};

// Checks every config invariant against a dataset of n points. Returns one
// message per violation; an empty list means the config is accepted.
std::vector<std::string> validate_config(const LocalMapConfig& cfg, std::size_t n);

// Flat JSON object whose keys are exactly the config field names.
// Parsing rejects unknown keys; serialize-then-parse is the identity.
std::string config_to_json_string(const LocalMapConfig& cfg, bool pretty = false);
LocalMapConfig config_from_json_string(const std::string& text);

struct MetricsReport {
    std::optional<double> silhouette;         // absent when the run had no labels
    std::optional<double> posthoc_accuracy;
    std::optional<double> edge_ratio;
    double wall_time_seconds = 0.0;
    LocalMapConfig config_echo;
    std::int64_t seed_echo = 0;
};

std::string report_to_json_string(const MetricsReport& report);

}  // namespace localmap

#endif  // LOCALMAP_CONFIG_HPP
