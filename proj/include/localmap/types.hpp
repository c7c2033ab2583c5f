#ifndef LOCALMAP_TYPES_HPP
#define LOCALMAP_TYPES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "localmap/matrix.hpp"

namespace localmap {

// High-dimensional input: one sample per row, optional integer class labels.
struct DataMatrix {
    Matrix values;
    std::optional<std::vector<int>> labels;

    std::size_t n() const { return values.rows(); }
    std::size_t dim() const { return values.cols(); }
};

// Low-dimensional coordinates plus the Adam moment buffers that evolve with them.
struct EmbeddingState {
    Matrix coords;
    Matrix adam_m;
    Matrix adam_v;
    std::int64_t step_count = 0;
};

struct IndexPair {
    std::uint32_t anchor = 0;
    std::uint32_t partner = 0;
    bool operator==(const IndexPair&) const = default;
};

// Edge sets anchoring attraction (nn, mn) and repulsion (fp). All three
// vectors are anchor-major: anchor 0's slots first, then anchor 1's, etc.,
// with a fixed slot count per anchor.
struct PairGraph {
    std::size_t n_points = 0;
    std::size_t nn_per_anchor = 0;
    std::size_t mn_per_anchor = 0;
    std::size_t fp_per_anchor = 0;
    std::vector<IndexPair> nn_pairs;
    std::vector<IndexPair> mn_pairs;
    std::vector<IndexPair> fp_pairs;
};

// Returns one message per violated structural invariant; empty means valid.
std::vector<std::string> validate_pair_graph(const PairGraph& graph);

struct RunLogRecord {
    int iter = 0;
    int phase = 0;
    double loss = 0.0;
    std::string event;
};

struct BlobSpec {
    int n_clusters = 10;
    int points_per_cluster = 500;
    int dim = 50;
    double center_spread = 50.0;
    double cluster_std = 1.0;
    double bridge_fraction = 0.0;
    std::int64_t seed = 0;
};

}  // namespace localmap

#endif  // LOCALMAP_TYPES_HPP
