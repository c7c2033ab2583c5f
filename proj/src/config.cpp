#include "localmap/config.hpp"

#include <cmath>

#include "json.hpp"
#include "localmap/error.hpp"

namespace localmap {

std::vector<std::string> validate_config(const LocalMapConfig& cfg, std::size_t n) {
    std::vector<std::string> violations;
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) violations.push_back(msg);
    };

    require(cfg.c_nn > 1.0, "c_nn > 1");
    require(cfg.c_mn > 0.0, "c_mn > 0");
    require(cfg.c_fp > 0.0, "c_fp > 0");
    require(cfg.d_adj > 0.0, "d_adj > 0");
    require(cfg.n_nn >= 1, "n_NN >= 1");
    require(cfg.mn_ratio >= 0.0, "mn_ratio >= 0");
    require(cfg.fp_ratio >= 0.0, "fp_ratio >= 0");
    if (cfg.n_nn >= 1 && cfg.fp_ratio >= 0.0) {
        require(static_cast<std::size_t>(cfg.n_nn) + 1 + static_cast<std::size_t>(cfg.n_fp()) <= n,
                "n_NN+1+n_FP <= n");
    }
    require(cfg.resample_interval >= 1, "resample_interval >= 1");
    require(cfg.max_resample_attempts >= 1, "max_resample_attempts >= 1");
    require(cfg.phase1_iters >= 0 && cfg.phase2_iters >= 0 && cfg.phase3_iters >= 0,
            "phase iteration counts >= 0");
    require(cfg.total_iters() >= 1, "total iterations >= 1");
    require(cfg.learning_rate > 0.0, "learning_rate > 0");
    require(cfg.adam_beta1 >= 0.0 && cfg.adam_beta1 < 1.0, "adam_beta1 in [0,1)");
    require(cfg.adam_beta2 >= 0.0 && cfg.adam_beta2 < 1.0, "adam_beta2 in [0,1)");
    require(cfg.adam_eps > 0.0, "adam_eps > 0");
    require(cfg.out_dim >= 1, "out_dim >= 1");
    return violations;
}

namespace {

const char* init_mode_name(InitMode mode) {
    return mode == InitMode::kPca ? "pca" : "random";
}

InitMode init_mode_from_name(const std::string& name) {
    if (name == "pca") return InitMode::kPca;
    if (name == "random") return InitMode::kRandom;
    throw Error("init_mode must be \"pca\" or \"random\", got \"" + name + "\"");
}

nlohmann::ordered_json config_to_json(const LocalMapConfig& cfg) {
    nlohmann::ordered_json j;
    j["n_NN"] = cfg.n_nn;
    j["mn_ratio"] = cfg.mn_ratio;
    j["fp_ratio"] = cfg.fp_ratio;
    j["c_nn"] = cfg.c_nn;
    j["c_mn"] = cfg.c_mn;
    j["c_fp"] = cfg.c_fp;
    j["d_adj"] = cfg.d_adj;
    j["phase1_iters"] = cfg.phase1_iters;
    j["phase2_iters"] = cfg.phase2_iters;
    j["phase3_iters"] = cfg.phase3_iters;
    j["resample_interval"] = cfg.resample_interval;
    j["max_resample_attempts"] = cfg.max_resample_attempts;
    j["learning_rate"] = cfg.learning_rate;
    j["adam_beta1"] = cfg.adam_beta1;
    j["adam_beta2"] = cfg.adam_beta2;
    j["adam_eps"] = cfg.adam_eps;
    j["out_dim"] = cfg.out_dim;
    j["seed"] = cfg.seed;
    j["init_mode"] = init_mode_name(cfg.init_mode);
    j["enable_nn_weighting"] = cfg.enable_nn_weighting;
    j["enable_local_fp"] = cfg.enable_local_fp;
    return j;
}

LocalMapConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("config must be a JSON object");
    LocalMapConfig cfg;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "n_NN") {
                cfg.n_nn = value.get<int>();
            } else if (key == "mn_ratio") {
                cfg.mn_ratio = value.get<double>();
            } else if (key == "fp_ratio") {
                cfg.fp_ratio = value.get<double>();
            } else if (key == "c_nn") {
                cfg.c_nn = value.get<double>();
            } else if (key == "c_mn") {
                cfg.c_mn = value.get<double>();
            } else if (key == "c_fp") {
                cfg.c_fp = value.get<double>();
            } else if (key == "d_adj") {
                cfg.d_adj = value.get<double>();
            } else if (key == "phase1_iters") {
                cfg.phase1_iters = value.get<int>();
            } else if (key == "phase2_iters") {
                cfg.phase2_iters = value.get<int>();
            } else if (key == "phase3_iters") {
                cfg.phase3_iters = value.get<int>();
            } else if (key == "resample_interval") {
                cfg.resample_interval = value.get<int>();
            } else if (key == "max_resample_attempts") {
                cfg.max_resample_attempts = value.get<int>();
            } else if (key == "learning_rate") {
                cfg.learning_rate = value.get<double>();
            } else if (key == "adam_beta1") {
                cfg.adam_beta1 = value.get<double>();
            } else if (key == "adam_beta2") {
                cfg.adam_beta2 = value.get<double>();
            } else if (key == "adam_eps") {
                cfg.adam_eps = value.get<double>();
            } else if (key == "out_dim") {
                cfg.out_dim = value.get<int>();
            } else if (key == "seed") {
                cfg.seed = value.get<std::int64_t>();
            } else if (key == "init_mode") {
                cfg.init_mode = init_mode_from_name(value.get<std::string>());
            } else if (key == "enable_nn_weighting") {
                cfg.enable_nn_weighting = value.get<bool>();
            } else if (key == "enable_local_fp") {
                cfg.enable_local_fp = value.get<bool>();
            } else {
                throw Error("unknown config key: \"" + key + "\"");
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error("config key \"" + key + "\": " + e.what());
        }
    }
    return cfg;
}

}  // namespace

std::string config_to_json_string(const LocalMapConfig& cfg, bool pretty) {
    return config_to_json(cfg).dump(pretty ? 2 : -1);
}

LocalMapConfig config_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

std::string report_to_json_string(const MetricsReport& report) {
    nlohmann::ordered_json j;
    if (report.silhouette.has_value()) {
        j["silhouette"] = *report.silhouette;
    } else {
        j["silhouette"] = nullptr;
    }
    if (report.posthoc_accuracy.has_value()) j["posthoc_accuracy"] = *report.posthoc_accuracy;
    if (report.edge_ratio.has_value()) j["edge_ratio"] = *report.edge_ratio;
    j["wall_time_seconds"] = report.wall_time_seconds;
    j["config_echo"] = config_to_json(report.config_echo);
    j["seed_echo"] = report.seed_echo;
    return j.dump(2) + "\n";
}

}  // namespace localmap
