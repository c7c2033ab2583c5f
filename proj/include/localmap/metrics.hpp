#ifndef LOCALMAP_METRICS_HPP
#define LOCALMAP_METRICS_HPP

#include <cstdint>
#include <vector>

#include "localmap/matrix.hpp"

namespace localmap {

// Mean silhouette over all points: S_i = (b_i - a_i) / max(a_i, b_i) with
// a_i the mean intra-class distance (excluding self) and b_i the smallest
// mean distance to any other class. Singleton-class points and points with
// max(a_i, b_i) = 0 contribute 0. Requires at least two distinct labels.
double silhouette(const Matrix& y, const std::vector<int>& labels, int threads = 1);

// Majority-vote k-NN accuracy on a seeded stratified split. Vote ties break
// by smallest mean distance among the tied classes' neighbors, then lowest
// label id. Throws when the split leaves a class without training points or
// produces no test points.
double posthoc_knn_accuracy(const Matrix& y, const std::vector<int>& labels, int k = 5,
                            double test_fraction = 0.2, std::uint64_t seed = 0);

// Mean, over classes, of the distance from each class centroid to its
// nearest other class centroid.
double estimate_d_adj(const Matrix& y, const std::vector<int>& labels);

struct EdgeRatioStats {
    double mean = 0.0;
    double stddev = 0.0;
    std::vector<double> samples;  // one cross-cluster NN/FP ratio per seed
};

// Direct synthesis of the abstract edge-count model: n points in equal-size
// clusters, each cross-cluster point pair becomes an NN edge independently
// with probability p_nn, and every point draws n_fp uniform FP partners.
// Returns sample statistics of the cross-cluster NN/FP count ratio over
// `seeds` independent runs; the expected ratio is n * p_nn / (2 * n_fp).
EdgeRatioStats edge_ratio_simulation(std::size_t n, std::size_t n_clusters, double p_nn,
                                     std::size_t n_fp, std::size_t seeds,
                                     std::uint64_t base_seed = 0);

}  // namespace localmap

#endif  // LOCALMAP_METRICS_HPP
