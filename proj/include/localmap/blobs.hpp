#ifndef LOCALMAP_BLOBS_HPP
#define LOCALMAP_BLOBS_HPP

#include "localmap/types.hpp"

namespace localmap {

// Synthetic clustered data: cluster centers uniform in
// [-center_spread, center_spread]^dim, points Gaussian around them, labels =
// cluster ids. Bridge points lie exactly on segments between random center
// pairs at uniform interpolation and take the label of the nearest center;
// their count is bridge_fraction * core points, rounded. Layout is core
// points first (cluster-major), bridges appended. Deterministic in every
// BlobSpec field, including the seed.
DataMatrix generate_blobs(const BlobSpec& spec);

}  // namespace localmap

#endif  // LOCALMAP_BLOBS_HPP
