#ifndef LOCALMAP_SVG_HPP
#define LOCALMAP_SVG_HPP

#include <string>
#include <vector>

#include "localmap/matrix.hpp"

namespace localmap {

// Scatter plot of 2-d coordinates: one circle per point, colored by label
// through a fixed 20-color palette (gray when labels is null), viewBox padded
// by 5% of each axis range. Byte output is deterministic for fixed input.
std::string svg_scatter(const Matrix& coords, const std::vector<int>* labels);

}  // namespace localmap

#endif  // LOCALMAP_SVG_HPP
