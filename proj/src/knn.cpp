#include "localmap/knn.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "localmap/error.hpp"
#include "localmap/parallel.hpp"

namespace localmap {

NeighborLists knn_exact(const Matrix& x, std::size_t k, int threads) {
    const std::size_t n = x.rows();
    const std::size_t dim = x.cols();
    if (n < 2 || k < 1 || k > n - 1) {
        throw Error("knn_exact: k must be in [1, n-1], got k=" + std::to_string(k) +
                    " with n=" + std::to_string(n));
    }

    NeighborLists lists(n);
    parallel_for(0, n, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> dist(n);
        std::vector<std::uint32_t> order(n);
        for (std::size_t i = lo; i < hi; ++i) {
            const double* anchor = x.row(i);
            for (std::size_t j = 0; j < n; ++j) {
                dist[j] = squared_distance(anchor, x.row(j), dim);
            }
            dist[i] = std::numeric_limits<double>::infinity();  // exclude self
            std::iota(order.begin(), order.end(), 0u);
            const auto closer = [&](std::uint32_t a, std::uint32_t b) {
                if (dist[a] != dist[b]) return dist[a] < dist[b];
                return a < b;
            };
            std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1),
                             order.end(), closer);
            std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), closer);
            lists[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
        }
    });
    return lists;
}

}  // namespace localmap
