#include "localmap/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "localmap/error.hpp"
#include "localmap/rng.hpp"

namespace localmap {

namespace {

// Cyclic Jacobi rotations on a symmetric matrix; eigenvectors accumulate in
// the columns of v.
void jacobi_eigen(Matrix& a, Matrix& v) {
    const std::size_t d = a.rows();
    v = Matrix(d, d);
    for (std::size_t i = 0; i < d; ++i) v(i, i) = 1.0;

    double frob = 0.0;
    for (double x : a.data()) frob += x * x;
    const double stop = 1e-28 * std::max(frob, 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) off += 2.0 * a(p, q) * a(p, q);
        }
        if (off <= stop) break;

        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < d; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = c * arp - s * arq;
                    a(p, r) = a(r, p);
                    a(r, q) = s * arp + c * arq;
                    a(q, r) = a(r, q);
                }
                for (std::size_t r = 0; r < d; ++r) {
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = c * vrp - s * vrq;
                    v(r, q) = s * vrp + c * vrq;
                }
            }
        }
    }
}

// Modified Gram-Schmidt on the columns of b.
void orthonormalize_columns(Matrix& b) {
    const std::size_t rows = b.rows();
    const std::size_t cols = b.cols();
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            double dot = 0.0;
            for (std::size_t r = 0; r < rows; ++r) dot += b(r, i) * b(r, j);
            for (std::size_t r = 0; r < rows; ++r) b(r, j) -= dot * b(r, i);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < rows; ++r) norm += b(r, j) * b(r, j);
        norm = std::sqrt(norm);
        if (norm < 1e-300) {
            // Degenerate direction: replace with a deterministic unit vector.
            for (std::size_t r = 0; r < rows; ++r) b(r, j) = 0.0;
            b(j % rows, j) = 1.0;
        } else {
            for (std::size_t r = 0; r < rows; ++r) b(r, j) /= norm;
        }
    }
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

// Orthogonal (subspace) iteration with Rayleigh-Ritz extraction for the top-k
// eigenpairs of a large symmetric matrix; residual tolerance 1e-9 relative to
// the dominant eigenvalue.
SymmetricEigen subspace_eigen(const Matrix& c, std::size_t k) {
    const std::size_t d = c.rows();
    const std::size_t m = std::min(d, k + 8);

    Matrix basis(d, m);
    CounterRng rng(0x70ca0001u, stream::kSubspaceInit);
    for (double& x : basis.data()) x = rng.next_gaussian();
    orthonormalize_columns(basis);

    std::vector<double> ritz_values(m, 0.0);
    Matrix ritz_basis;
    for (int iter = 0; iter < 2000; ++iter) {
        Matrix z = multiply(c, basis);
        basis = z;
        orthonormalize_columns(basis);

        if (iter % 5 != 4 && iter != 1999) continue;

        // Rayleigh-Ritz on the current subspace.
        Matrix cb = multiply(c, basis);
        Matrix h(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                double dot = 0.0;
                for (std::size_t r = 0; r < d; ++r) dot += basis(r, i) * cb(r, j);
                h(i, j) = dot;
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                const double sym = 0.5 * (h(i, j) + h(j, i));
                h(i, j) = sym;
                h(j, i) = sym;
            }
        }
        Matrix w;
        jacobi_eigen(h, w);

        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return h(x, x) > h(y, y); });

        ritz_basis = Matrix(d, m);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t src = order[j];
            ritz_values[j] = h(src, src);
            for (std::size_t r = 0; r < d; ++r) {
                double acc = 0.0;
                for (std::size_t t = 0; t < m; ++t) acc += basis(r, t) * w(t, src);
                ritz_basis(r, j) = acc;
            }
        }

        const double scale = std::max(std::abs(ritz_values[0]), 1e-30);
        double worst = 0.0;
        Matrix cr = multiply(c, ritz_basis);
        for (std::size_t j = 0; j < k; ++j) {
            double res = 0.0;
            for (std::size_t r = 0; r < d; ++r) {
                const double e = cr(r, j) - ritz_values[j] * ritz_basis(r, j);
                res += e * e;
            }
            worst = std::max(worst, std::sqrt(res));
        }
        if (worst <= 1e-9 * scale) break;
        basis = ritz_basis;
    }

    SymmetricEigen out;
    out.values.assign(ritz_values.begin(), ritz_values.begin() + k);
    out.vectors = Matrix(k, d);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t r = 0; r < d; ++r) out.vectors(j, r) = ritz_basis(r, j);
    }
    return out;
}

}  // namespace

SymmetricEigen eigen_symmetric(const Matrix& a) {
    Matrix work = a;
    Matrix v;
    jacobi_eigen(work, v);
    const std::size_t d = a.rows();

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return work(x, x) > work(y, y); });

    SymmetricEigen out;
    out.values.resize(d);
    out.vectors = Matrix(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        out.values[j] = work(order[j], order[j]);
        for (std::size_t r = 0; r < d; ++r) out.vectors(j, r) = v(r, order[j]);
    }
    return out;
}

namespace {

Matrix centered(const Matrix& x) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = x.row(i);
        for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
    }
    for (double& m : mean) m /= static_cast<double>(n);
    Matrix out(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const double* src = x.row(i);
        double* dst = out.row(i);
        for (std::size_t j = 0; j < d; ++j) dst[j] = src[j] - mean[j];
    }
    return out;
}

Matrix covariance(const Matrix& xc) {
    const std::size_t n = xc.rows();
    const std::size_t d = xc.cols();
    Matrix c(d, d);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = xc.row(i);
        for (std::size_t a = 0; a < d; ++a) {
            const double ra = row[a];
            if (ra == 0.0) continue;
            double* crow = c.row(a);
            for (std::size_t b = a; b < d; ++b) crow[b] += ra * row[b];
        }
    }
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            c(a, b) /= denom;
            c(b, a) = c(a, b);
        }
    }
    return c;
}

// Flips each component so its largest-magnitude entry (lowest index on ties)
// is positive.
void fix_signs(Matrix& components) {
    for (std::size_t j = 0; j < components.rows(); ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t r = 0; r < components.cols(); ++r) {
            const double mag = std::abs(components(j, r));
            if (mag > best) {
                best = mag;
                arg = r;
            }
        }
        if (components(j, arg) < 0.0) {
            for (std::size_t r = 0; r < components.cols(); ++r) components(j, r) = -components(j, r);
        }
    }
}

constexpr std::size_t kFullEigenMaxDim = 512;

}  // namespace

PcaResult pca(const Matrix& x, std::size_t k) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (k < 1 || k > std::min(n, d)) {
        throw Error("pca: k must be in [1, min(n, D)], got " + std::to_string(k));
    }

    const Matrix xc = centered(x);
    const Matrix cov = covariance(xc);

    PcaResult out;
    if (d <= kFullEigenMaxDim) {
        SymmetricEigen eig = eigen_symmetric(cov);
        out.components = Matrix(k, d);
        out.explained_variance.assign(eig.values.begin(), eig.values.begin() + k);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t r = 0; r < d; ++r) out.components(j, r) = eig.vectors(j, r);
        }
    } else {
        SymmetricEigen eig = subspace_eigen(cov, k);
        out.components = eig.vectors;
        out.explained_variance = eig.values;
    }
    fix_signs(out.components);

    out.scores = Matrix(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = xc.row(i);
        for (std::size_t j = 0; j < k; ++j) {
            double dot = 0.0;
            const double* comp = out.components.row(j);
            for (std::size_t r = 0; r < d; ++r) dot += row[r] * comp[r];
            out.scores(i, j) = dot;
        }
    }
    return out;
}

DataMatrix preprocess(const DataMatrix& x, std::size_t target_dim) {
    DataMatrix out;
    out.labels = x.labels;
    if (x.dim() > target_dim) {
        out.values = pca(x.values, target_dim).scores;
    } else {
        out.values = centered(x.values);
    }
    return out;
}

}  // namespace localmap
