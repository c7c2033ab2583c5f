#include "localmap/types.hpp"

#include <algorithm>
#include <set>

namespace localmap {

namespace {

void check_pair_set(const std::vector<IndexPair>& pairs, std::size_t n, std::size_t per_anchor,
                    const char* name, std::vector<std::string>& out) {
    if (pairs.size() != n * per_anchor) {
        out.push_back(std::string(name) + ": expected " + std::to_string(n * per_anchor) +
                      " pairs, got " + std::to_string(pairs.size()));
        return;
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t s = 0; s < per_anchor; ++s) {
            const IndexPair& p = pairs[a * per_anchor + s];
            if (p.anchor != a) {
                out.push_back(std::string(name) + ": pair out of anchor-major order at anchor " +
                              std::to_string(a));
                return;
            }
            if (p.partner >= n) {
                out.push_back(std::string(name) + ": partner index out of range for anchor " +
                              std::to_string(a));
                return;
            }
            if (p.partner == p.anchor) {
                out.push_back(std::string(name) + ": self-pair at anchor " + std::to_string(a));
                return;
            }
        }
    }
}

}  // namespace

std::vector<std::string> validate_pair_graph(const PairGraph& graph) {
    std::vector<std::string> out;
    const std::size_t n = graph.n_points;
    check_pair_set(graph.nn_pairs, n, graph.nn_per_anchor, "nn_pairs", out);
    check_pair_set(graph.mn_pairs, n, graph.mn_per_anchor, "mn_pairs", out);
    check_pair_set(graph.fp_pairs, n, graph.fp_per_anchor, "fp_pairs", out);
    if (!out.empty()) return out;

    // FP partners must not duplicate the anchor's NN partners.
    for (std::size_t a = 0; a < n; ++a) {
        std::set<std::uint32_t> nn_set;
        for (std::size_t s = 0; s < graph.nn_per_anchor; ++s) {
            nn_set.insert(graph.nn_pairs[a * graph.nn_per_anchor + s].partner);
        }
        for (std::size_t s = 0; s < graph.fp_per_anchor; ++s) {
            if (nn_set.count(graph.fp_pairs[a * graph.fp_per_anchor + s].partner) > 0) {
                out.push_back("fp_pairs: partner overlaps NN set at anchor " + std::to_string(a));
                return out;
            }
        }
    }
    return out;
}

}  // namespace localmap
