#include "localmap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "localmap/error.hpp"
#include "localmap/parallel.hpp"
#include "localmap/rng.hpp"

namespace localmap {

namespace {

// Maps arbitrary integer labels to compact ids 0..m-1 in ascending label order.
std::vector<int> compact_labels(const std::vector<int>& labels, std::size_t n, std::size_t& m) {
    if (labels.size() != n) throw Error("labels missing or wrong length");
    std::map<int, int> ids;
    for (int l : labels) ids.emplace(l, 0);
    int next = 0;
    for (auto& [label, id] : ids) id = next++;
    m = ids.size();
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = ids[labels[i]];
    return out;
}

}  // namespace

double silhouette(const Matrix& y, const std::vector<int>& labels, int threads) {
    const std::size_t n = y.rows();
    const std::size_t dim = y.cols();
    std::size_t m = 0;
    const std::vector<int> ids = compact_labels(labels, n, m);
    if (m < 2) throw Error("silhouette: need at least 2 distinct classes, got single class");

    std::vector<std::size_t> class_size(m, 0);
    for (int id : ids) ++class_size[static_cast<std::size_t>(id)];

    std::vector<double> scores(n, 0.0);
    parallel_for(0, n, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> class_sum(m);
        for (std::size_t i = lo; i < hi; ++i) {
            const std::size_t own = static_cast<std::size_t>(ids[i]);
            if (class_size[own] < 2) continue;  // singleton contributes 0

            std::fill(class_sum.begin(), class_sum.end(), 0.0);
            const double* yi = y.row(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                class_sum[static_cast<std::size_t>(ids[j])] +=
                    euclidean_distance(yi, y.row(j), dim);
            }
            const double a = class_sum[own] / static_cast<double>(class_size[own] - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < m; ++c) {
                if (c == own || class_size[c] == 0) continue;
                b = std::min(b, class_sum[c] / static_cast<double>(class_size[c]));
            }
            const double denom = std::max(a, b);
            scores[i] = denom == 0.0 ? 0.0 : (b - a) / denom;
        }
    });

    double total = 0.0;
    for (double s : scores) total += s;
    return total / static_cast<double>(n);
}

double posthoc_knn_accuracy(const Matrix& y, const std::vector<int>& labels, int k,
                            double test_fraction, std::uint64_t seed) {
    const std::size_t n = y.rows();
    const std::size_t dim = y.cols();
    std::size_t m = 0;
    const std::vector<int> ids = compact_labels(labels, n, m);
    if (m < 2) throw Error("posthoc_knn_accuracy: need at least 2 distinct classes");
    if (k < 1) throw Error("posthoc_knn_accuracy: k >= 1 required");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw Error("posthoc_knn_accuracy: test_fraction must be in (0,1)");
    }

    // Seeded stratified split: shuffle each class, first round(frac * size)
    // indices become test points.
    std::vector<std::vector<std::size_t>> by_class(m);
    for (std::size_t i = 0; i < n; ++i) by_class[static_cast<std::size_t>(ids[i])].push_back(i);

    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    for (std::size_t c = 0; c < m; ++c) {
        auto& members = by_class[c];
        CounterRng rng(seed, stream_key(stream::kPosthocSplit, c));
        for (std::size_t i = members.size(); i > 1; --i) {
            const std::size_t j = rng.next_below(i);
            std::swap(members[i - 1], members[j]);
        }
        const std::size_t n_test = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(members.size())));
        if (n_test >= members.size()) {
            throw Error("posthoc_knn_accuracy: degenerate split leaves class without training points");
        }
        test.insert(test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
        train.insert(train.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
    }
    if (test.empty()) throw Error("posthoc_knn_accuracy: degenerate split produced no test points");
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());

    const std::size_t k_eff = std::min<std::size_t>(static_cast<std::size_t>(k), train.size());
    std::size_t correct = 0;
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(train.size());
    for (std::size_t t : test) {
        dist.clear();
        const double* yt = y.row(t);
        for (std::size_t tr : train) {
            dist.emplace_back(euclidean_distance(yt, y.row(tr), dim), tr);
        }
        std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_eff - 1),
                         dist.end());
        std::sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_eff));

        std::map<int, std::pair<std::size_t, double>> votes;  // label -> (count, distance sum)
        for (std::size_t r = 0; r < k_eff; ++r) {
            auto& slot = votes[ids[dist[r].second]];
            slot.first += 1;
            slot.second += dist[r].first;
        }
        // Majority; ties by smallest mean distance, then lowest label id.
        int best_label = -1;
        std::size_t best_count = 0;
        double best_mean = 0.0;
        for (const auto& [label, tally] : votes) {
            const double mean = tally.second / static_cast<double>(tally.first);
            const bool wins = tally.first > best_count ||
                              (tally.first == best_count && mean < best_mean) ||
                              (tally.first == best_count && mean == best_mean && label < best_label);
            if (best_label < 0 || wins) {
                best_label = label;
                best_count = tally.first;
                best_mean = mean;
            }
        }
        if (best_label == ids[t]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

double estimate_d_adj(const Matrix& y, const std::vector<int>& labels) {
    const std::size_t n = y.rows();
    const std::size_t dim = y.cols();
    std::size_t m = 0;
    const std::vector<int> ids = compact_labels(labels, n, m);
    if (m < 2) throw Error("estimate_d_adj: need at least 2 distinct classes");

    Matrix centroids(m, dim);
    std::vector<std::size_t> counts(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = static_cast<std::size_t>(ids[i]);
        ++counts[c];
        const double* row = y.row(i);
        for (std::size_t j = 0; j < dim; ++j) centroids(c, j) += row[j];
    }
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t j = 0; j < dim; ++j) centroids(c, j) /= static_cast<double>(counts[c]);
    }

    double total = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t o = 0; o < m; ++o) {
            if (o == c) continue;
            nearest = std::min(nearest, euclidean_distance(centroids.row(c), centroids.row(o), dim));
        }
        total += nearest;
    }
    return total / static_cast<double>(m);
}

EdgeRatioStats edge_ratio_simulation(std::size_t n, std::size_t n_clusters, double p_nn,
                                     std::size_t n_fp, std::size_t seeds,
                                     std::uint64_t base_seed) {
    if (n_clusters < 2) throw Error("edge_ratio_simulation: need at least 2 clusters");
    if (n % n_clusters != 0) throw Error("edge_ratio_simulation: equal-size clusters required");
    if (p_nn < 0.0 || p_nn > 1.0) throw Error("edge_ratio_simulation: p_nn must be in [0,1]");
    if (n_fp < 1) throw Error("edge_ratio_simulation: n_FP >= 1 required");
    if (seeds < 1) throw Error("edge_ratio_simulation: seeds >= 1 required");
    const std::size_t size = n / n_clusters;

    EdgeRatioStats stats;
    stats.samples.reserve(seeds);
    for (std::size_t s = 0; s < seeds; ++s) {
        // Each cross-cluster point pair becomes an NN edge with probability p_nn.
        std::size_t nn_total = 0;
        if (p_nn > 0.0) {
            CounterRng rng(base_seed, stream_key(stream::kSimulationNn, s));
            for (std::size_t ca = 0; ca < n_clusters; ++ca) {
                for (std::size_t cb = ca + 1; cb < n_clusters; ++cb) {
                    const std::size_t pair_count = size * size;
                    for (std::size_t p = 0; p < pair_count; ++p) {
                        if (rng.next_double() < p_nn) ++nn_total;
                    }
                }
            }
        }

        // Every point draws n_fp uniform partners over all n points; the share
        // landing in another cluster mirrors the cluster mass exactly.
        std::size_t fp_total = 0;
        CounterRng rng(base_seed, stream_key(stream::kSimulationFp, s));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ci = i / size;
            for (std::size_t f = 0; f < n_fp; ++f) {
                const std::size_t j = rng.next_below(n);
                if (j / size != ci) ++fp_total;
            }
        }

        if (fp_total == 0) {
            if (nn_total != 0) throw Error("edge_ratio_simulation: zero FP edges with NN edges present");
            stats.samples.push_back(0.0);
        } else {
            stats.samples.push_back(static_cast<double>(nn_total) / static_cast<double>(fp_total));
        }
    }

    double mean = 0.0;
    for (double v : stats.samples) mean += v;
    mean /= static_cast<double>(seeds);
    double var = 0.0;
    for (double v : stats.samples) var += (v - mean) * (v - mean);
    stats.mean = mean;
    stats.stddev = seeds > 1 ? std::sqrt(var / static_cast<double>(seeds - 1)) : 0.0;
    return stats;
}

}  // namespace localmap
