#ifndef LOCALMAP_PAIRS_HPP
#define LOCALMAP_PAIRS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "localmap/config.hpp"
#include "localmap/knn.hpp"
#include "localmap/types.hpp"

namespace localmap {

// Near-neighbor selection over an oversampled candidate pool: picks, per
// anchor i, the n_nn candidates minimizing d^2(i,j) / (sigma_i * sigma_j),
// where sigma_i is the mean distance from i to its 4th-6th nearest neighbors.
// neighbor_lists must come from knn_exact with k = min(n_nn + 50, n - 1).
// Selection is fully deterministic; seed is part of the contract but unused.
std::vector<IndexPair> select_nn_pairs(const Matrix& x, const NeighborLists& neighbor_lists,
                                       std::size_t n_nn, std::uint64_t seed);

// Mid-near pairs: per anchor and slot, draws 6 distinct non-anchor points
// uniformly and keeps the second-nearest to the anchor. Requires n >= 7.
std::vector<IndexPair> sample_mn_pairs(const Matrix& x, std::size_t n_mn, std::uint64_t seed);

// Further pairs: per anchor, n_fp distinct partners uniform over indices
// excluding the anchor and its near-neighbor partners. `round` separates the
// initial draw (0) from later re-draws. Requires n_nn + 1 + n_fp <= n.
std::vector<IndexPair> sample_fp_pairs(std::size_t n, const std::vector<IndexPair>& nn_pairs,
                                       std::size_t n_fp, std::uint64_t seed,
                                       std::uint64_t round = 0);

// Refills every further-pair slot with a local draw: up to max_attempts
// uniform eligible candidates (non-self, non-NN), accepting the first whose
// low-dimensional distance is <= d_adj; if every attempt fails the last drawn
// candidate is kept. Streams are keyed by (seed, iter, anchor, slot).
std::vector<IndexPair> resample_local_fp(const Matrix& y, const std::vector<IndexPair>& nn_pairs,
                                         std::size_t n_fp, double d_adj, int max_attempts,
                                         std::uint64_t seed, int iter);

struct ClusterPairEdgeStats {
    int cluster_a = 0;
    int cluster_b = 0;
    std::size_t nn_count = 0;
    std::size_t fp_count = 0;
    std::optional<double> ratio;  // nn/fp; absent when fp_count == 0
};

// Cross-cluster edge tallies for every unordered label pair (a < b).
std::vector<ClusterPairEdgeStats> edge_counts_between(const PairGraph& pairs,
                                                      const std::vector<int>& labels);

// Full high-dimensional graph construction: kNN, scaled NN selection, MN and
// FP sampling, using the counts and seed from cfg.
PairGraph build_pair_graph(const Matrix& x, const LocalMapConfig& cfg, int threads = 1);

}  // namespace localmap

#endif  // LOCALMAP_PAIRS_HPP
