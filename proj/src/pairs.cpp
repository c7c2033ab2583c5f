#include "localmap/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "localmap/error.hpp"
#include "localmap/rng.hpp"

namespace localmap {

namespace {

// Per-anchor sorted partner sets, for O(log) membership checks.
std::vector<std::vector<std::uint32_t>> partner_sets(const std::vector<IndexPair>& pairs,
                                                     std::size_t n) {
    std::vector<std::vector<std::uint32_t>> sets(n);
    for (const IndexPair& p : pairs) sets[p.anchor].push_back(p.partner);
    for (auto& s : sets) std::sort(s.begin(), s.end());
    return sets;
}

bool contains(const std::vector<std::uint32_t>& sorted, std::uint32_t v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

std::vector<IndexPair> select_nn_pairs(const Matrix& x, const NeighborLists& neighbor_lists,
                                       std::size_t n_nn, [[maybe_unused]] std::uint64_t seed) {
    const std::size_t n = x.rows();
    const std::size_t dim = x.cols();
    if (neighbor_lists.size() != n) throw Error("select_nn_pairs: neighbor list count != n");
    const std::size_t k = neighbor_lists.empty() ? 0 : neighbor_lists[0].size();
    if (n_nn < 1 || n_nn > k) {
        throw Error("select_nn_pairs: n_NN must be in [1, candidate count]");
    }

    // Local scale: mean distance to the 4th-6th nearest neighbors, falling
    // back to whatever ranks exist for very small candidate pools.
    std::vector<double> sigma(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& cands = neighbor_lists[i];
        std::size_t lo = 3, hi = std::min<std::size_t>(6, cands.size());
        if (lo >= hi) {
            lo = 0;
            hi = cands.size();
        }
        double sum = 0.0;
        for (std::size_t r = lo; r < hi; ++r) {
            sum += euclidean_distance(x.row(i), x.row(cands[r]), dim);
        }
        sigma[i] = std::max(sum / static_cast<double>(hi - lo), 1e-10);
    }

    std::vector<IndexPair> out;
    out.reserve(n * n_nn);
    std::vector<std::pair<double, std::uint32_t>> scaled;
    for (std::size_t i = 0; i < n; ++i) {
        scaled.clear();
        for (std::uint32_t j : neighbor_lists[i]) {
            const double d2 = squared_distance(x.row(i), x.row(j), dim);
            scaled.emplace_back(d2 / (sigma[i] * sigma[j]), j);
        }
        std::sort(scaled.begin(), scaled.end());
        for (std::size_t s = 0; s < n_nn; ++s) {
            out.push_back({static_cast<std::uint32_t>(i), scaled[s].second});
        }
    }
    return out;
}

std::vector<IndexPair> sample_mn_pairs(const Matrix& x, std::size_t n_mn, std::uint64_t seed) {
    const std::size_t n = x.rows();
    if (n_mn == 0) return {};
    if (n < 7) throw Error("sample_mn_pairs: n >= 7 required, got " + std::to_string(n));
    const std::size_t dim = x.cols();

    std::vector<IndexPair> out;
    out.reserve(n * n_mn);
    std::uint32_t draws[6];
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t s = 0; s < n_mn; ++s) {
            CounterRng rng(seed, stream_key(stream::kMnSampling, a, s));
            std::size_t got = 0;
            while (got < 6) {
                const std::uint32_t cand = static_cast<std::uint32_t>(rng.next_below(n));
                if (cand == a) continue;
                bool dup = false;
                for (std::size_t t = 0; t < got; ++t) dup |= (draws[t] == cand);
                if (dup) continue;
                draws[got++] = cand;
            }
            // Keep the second-nearest of the six; ties break by lower index.
            std::pair<double, std::uint32_t> ranked[6];
            for (std::size_t t = 0; t < 6; ++t) {
                ranked[t] = {squared_distance(x.row(a), x.row(draws[t]), dim), draws[t]};
            }
            std::sort(ranked, ranked + 6);
            out.push_back({static_cast<std::uint32_t>(a), ranked[1].second});
        }
    }
    return out;
}

std::vector<IndexPair> sample_fp_pairs(std::size_t n, const std::vector<IndexPair>& nn_pairs,
                                       std::size_t n_fp, std::uint64_t seed, std::uint64_t round) {
    if (n_fp == 0) return {};
    const auto nn_sets = partner_sets(nn_pairs, n);

    std::vector<IndexPair> out;
    out.reserve(n * n_fp);
    std::vector<std::uint32_t> chosen;
    for (std::size_t a = 0; a < n; ++a) {
        if (nn_sets[a].size() + 1 + n_fp > n) {
            throw Error("sample_fp_pairs: infeasible counts at anchor " + std::to_string(a) +
                        " (n_NN+1+n_FP > n)");
        }
        CounterRng rng(seed, stream_key(stream::kFpSampling, round, a));
        chosen.clear();
        while (chosen.size() < n_fp) {
            const std::uint32_t cand = static_cast<std::uint32_t>(rng.next_below(n));
            if (cand == a || contains(nn_sets[a], cand)) continue;
            if (std::find(chosen.begin(), chosen.end(), cand) != chosen.end()) continue;
            chosen.push_back(cand);
        }
        for (std::uint32_t c : chosen) out.push_back({static_cast<std::uint32_t>(a), c});
    }
    return out;
}

std::vector<IndexPair> resample_local_fp(const Matrix& y, const std::vector<IndexPair>& nn_pairs,
                                         std::size_t n_fp, double d_adj, int max_attempts,
                                         std::uint64_t seed, int iter) {
    const std::size_t n = y.rows();
    const std::size_t dim = y.cols();
    if (max_attempts < 1) throw Error("resample_local_fp: max_attempts >= 1 required");
    const auto nn_sets = partner_sets(nn_pairs, n);
    const double bound2 = d_adj * d_adj;

    std::vector<IndexPair> out;
    out.reserve(n * n_fp);
    for (std::size_t a = 0; a < n; ++a) {
        if (nn_sets[a].size() + 1 + n_fp > n) {
            throw Error("resample_local_fp: infeasible counts at anchor " + std::to_string(a));
        }
        for (std::size_t s = 0; s < n_fp; ++s) {
            CounterRng rng(seed, stream_key(stream::kFpResample, static_cast<std::uint64_t>(iter),
                                            a, s));
            std::uint32_t kept = 0;
            for (int attempt = 0; attempt < max_attempts; ++attempt) {
                std::uint32_t cand;
                do {
                    cand = static_cast<std::uint32_t>(rng.next_below(n));
                } while (cand == a || contains(nn_sets[a], cand));
                kept = cand;
                if (squared_distance(y.row(a), y.row(cand), dim) <= bound2) break;
            }
            out.push_back({static_cast<std::uint32_t>(a), kept});
        }
    }
    return out;
}

std::vector<ClusterPairEdgeStats> edge_counts_between(const PairGraph& pairs,
                                                      const std::vector<int>& labels) {
    if (labels.size() != pairs.n_points) {
        throw Error("edge_counts_between: labels missing or wrong length");
    }

    std::map<std::pair<int, int>, std::pair<std::size_t, std::size_t>> counts;
    std::set<int> distinct(labels.begin(), labels.end());
    for (auto a = distinct.begin(); a != distinct.end(); ++a) {
        for (auto b = std::next(a); b != distinct.end(); ++b) {
            counts[{*a, *b}] = {0, 0};
        }
    }
    auto tally = [&](const std::vector<IndexPair>& edges, bool is_nn) {
        for (const IndexPair& p : edges) {
            const int la = labels[p.anchor];
            const int lb = labels[p.partner];
            if (la == lb) continue;
            auto& slot = counts[{std::min(la, lb), std::max(la, lb)}];
            if (is_nn) {
                ++slot.first;
            } else {
                ++slot.second;
            }
        }
    };
    tally(pairs.nn_pairs, true);
    tally(pairs.fp_pairs, false);

    std::vector<ClusterPairEdgeStats> out;
    out.reserve(counts.size());
    for (const auto& [key, value] : counts) {
        ClusterPairEdgeStats stats;
        stats.cluster_a = key.first;
        stats.cluster_b = key.second;
        stats.nn_count = value.first;
        stats.fp_count = value.second;
        if (value.second > 0) {
            stats.ratio = static_cast<double>(value.first) / static_cast<double>(value.second);
        }
        out.push_back(stats);
    }
    return out;
}

PairGraph build_pair_graph(const Matrix& x, const LocalMapConfig& cfg, int threads) {
    const std::size_t n = x.rows();
    const std::size_t n_nn = static_cast<std::size_t>(cfg.n_nn);
    const std::size_t n_mn = static_cast<std::size_t>(cfg.n_mn());
    const std::size_t n_fp = static_cast<std::size_t>(cfg.n_fp());
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.seed);

    const std::size_t k = std::min(n_nn + 50, n - 1);
    const NeighborLists lists = knn_exact(x, k, threads);

    PairGraph graph;
    graph.n_points = n;
    graph.nn_per_anchor = n_nn;
    graph.mn_per_anchor = n_mn;
    graph.fp_per_anchor = n_fp;
    graph.nn_pairs = select_nn_pairs(x, lists, n_nn, seed);
    graph.mn_pairs = sample_mn_pairs(x, n_mn, seed);
    graph.fp_pairs = sample_fp_pairs(n, graph.nn_pairs, n_fp, seed, 0);
    return graph;
}

}  // namespace localmap
