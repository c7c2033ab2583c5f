#ifndef LOCALMAP_KNN_HPP
#define LOCALMAP_KNN_HPP

#include <cstdint>
#include <vector>

#include "localmap/matrix.hpp"

namespace localmap {

using NeighborLists = std::vector<std::vector<std::uint32_t>>;

// Exact k nearest other points per row of x by Euclidean distance, ascending,
// ties broken by lower index. Brute force; parallel over anchors with
// identical output for any thread count. Requires 1 <= k <= n-1.
NeighborLists knn_exact(const Matrix& x, std::size_t k, int threads = 1);

}  // namespace localmap

#endif  // LOCALMAP_KNN_HPP
