#ifndef LOCALMAP_PCA_HPP
#define LOCALMAP_PCA_HPP

#include <cstddef>
#include <vector>

#include "localmap/types.hpp"

namespace localmap {

struct PcaResult {
    Matrix scores;                            // n x k projections of the centered data
    Matrix components;                        // k x D orthonormal rows, top eigenspace first
    std::vector<double> explained_variance;   // non-increasing covariance eigenvalues
};

// Principal components of x via covariance eigendecomposition (full Jacobi for
// D <= 512, subspace iteration above). Each component's largest-magnitude
// entry is made positive so results are reproducible up to nothing.
// Requires 1 <= k <= min(n, D).
PcaResult pca(const Matrix& x, std::size_t k);

// Mean-centers; when D > target_dim, replaces values with the top-target_dim
// PCA scores. Labels pass through untouched.
DataMatrix preprocess(const DataMatrix& x, std::size_t target_dim = 100);

// Eigendecomposition of a symmetric matrix (row-major d x d): eigenvalues
// descending, eigenvectors as matching rows of `vectors`.
struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors;
};
SymmetricEigen eigen_symmetric(const Matrix& a);

}  // namespace localmap

#endif  // LOCALMAP_PCA_HPP
