#include "localmap/blobs.hpp"

#include <cmath>

#include "localmap/error.hpp"
#include "localmap/rng.hpp"

namespace localmap {

DataMatrix generate_blobs(const BlobSpec& spec) {
    if (spec.n_clusters < 1) throw Error("generate_blobs: n_clusters >= 1 required");
    if (spec.points_per_cluster < 1) throw Error("generate_blobs: points_per_cluster >= 1 required");
    if (spec.dim < 1) throw Error("generate_blobs: dim >= 1 required");
    if (spec.cluster_std <= 0.0) throw Error("generate_blobs: cluster_std > 0 required");
    if (spec.center_spread < 0.0) throw Error("generate_blobs: center_spread >= 0 required");
    if (spec.bridge_fraction < 0.0 || spec.bridge_fraction > 1.0) {
        throw Error("generate_blobs: bridge_fraction in [0,1] required");
    }

    const std::uint64_t seed = static_cast<std::uint64_t>(spec.seed);
    const std::size_t dim = static_cast<std::size_t>(spec.dim);
    const std::size_t core = static_cast<std::size_t>(spec.n_clusters) *
                             static_cast<std::size_t>(spec.points_per_cluster);
    const std::size_t bridges =
        static_cast<std::size_t>(std::llround(spec.bridge_fraction * static_cast<double>(core)));

    Matrix centers(spec.n_clusters, dim);
    {
        CounterRng rng(seed, stream::kBlobCenters);
        for (double& v : centers.data()) {
            v = (2.0 * rng.next_double() - 1.0) * spec.center_spread;
        }
    }

    DataMatrix out;
    out.values = Matrix(core + bridges, dim);
    out.labels.emplace();
    out.labels->reserve(core + bridges);

    std::size_t row = 0;
    for (int c = 0; c < spec.n_clusters; ++c) {
        for (int p = 0; p < spec.points_per_cluster; ++p, ++row) {
            CounterRng rng(seed, stream_key(stream::kBlobPoints, static_cast<std::uint64_t>(c),
                                            static_cast<std::uint64_t>(p)));
            double* dst = out.values.row(row);
            const double* center = centers.row(c);
            for (std::size_t j = 0; j < dim; ++j) {
                dst[j] = center[j] + spec.cluster_std * rng.next_gaussian();
            }
            out.labels->push_back(c);
        }
    }

    for (std::size_t b = 0; b < bridges; ++b, ++row) {
        CounterRng rng(seed, stream_key(stream::kBlobBridges, b));
        const std::size_t a = rng.next_below(static_cast<std::uint64_t>(spec.n_clusters));
        std::size_t other =
            rng.next_below(static_cast<std::uint64_t>(spec.n_clusters > 1 ? spec.n_clusters - 1 : 1));
        if (spec.n_clusters > 1 && other >= a) ++other;
        const double t = rng.next_double();

        double* dst = out.values.row(row);
        const double* ca = centers.row(a);
        const double* cb = centers.row(other);
        for (std::size_t j = 0; j < dim; ++j) dst[j] = ca[j] + t * (cb[j] - ca[j]);

        // Nearest center wins the label; ties go to the lower id.
        int label = 0;
        double best = squared_distance(dst, centers.row(0), dim);
        for (int c = 1; c < spec.n_clusters; ++c) {
            const double d2 = squared_distance(dst, centers.row(c), dim);
            if (d2 < best) {
                best = d2;
                label = c;
            }
        }
        out.labels->push_back(label);
    }
    return out;
}

}  // namespace localmap
