#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "localmap/blobs.hpp"
#include "localmap/error.hpp"
#include "localmap/metrics.hpp"
#include "localmap/rng.hpp"
#include "oracles.hpp"

using namespace localmap;

TEST_CASE("silhouette hand instance") {
    Matrix y(4, 2);
    y(0, 0) = 0;  y(0, 1) = 0;
    y(1, 0) = 0;  y(1, 1) = 1;
    y(2, 0) = 10; y(2, 1) = 0;
    y(3, 0) = 10; y(3, 1) = 1;
    const std::vector<int> labels = {0, 0, 1, 1};
    const double s = silhouette(y, labels);
    // a = 1, b = (10 + sqrt(101)) / 2 for every point.
    const double b = (10.0 + std::sqrt(101.0)) / 2.0;
    CHECK(s == doctest::Approx((b - 1.0) / b).epsilon(1e-9));
    CHECK(s == doctest::Approx(0.900249).epsilon(1e-6));
}

TEST_CASE("coincident classes score zero") {
    Matrix y(4, 2, 1.0);
    const std::vector<int> labels = {0, 0, 1, 1};
    CHECK(silhouette(y, labels) == 0.0);
}

TEST_CASE("silhouette matches the brute-force oracle on random instances") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::size_t n = 30 + 14 * seed;
        const Matrix y = oracles::random_matrix(n, 2, seed, 5.0);
        std::vector<int> labels(n);
        CounterRng rng(seed, 404);
        const int classes = 2 + static_cast<int>(seed % 4);
        for (auto& l : labels) l = static_cast<int>(rng.next_below(classes)) * 3 - 1;
        const double got = silhouette(y, labels, 2);
        const double want = oracles::naive_silhouette(y, labels);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
        CHECK(got >= -1.0);
        CHECK(got <= 1.0);
    }
}

TEST_CASE("silhouette is identical for any thread count") {
    const Matrix y = oracles::random_matrix(150, 2, 71, 3.0);
    std::vector<int> labels(150);
    for (std::size_t i = 0; i < 150; ++i) labels[i] = static_cast<int>(i % 5);
    CHECK(silhouette(y, labels, 1) == silhouette(y, labels, 4));
}

TEST_CASE("silhouette is invariant under rigid motion and relabeling") {
    const Matrix y = oracles::random_matrix(80, 2, 77, 4.0);
    std::vector<int> labels(80);
    for (std::size_t i = 0; i < 80; ++i) labels[i] = static_cast<int>(i % 3);
    const double base = silhouette(y, labels);

    Matrix moved(80, 2);
    const double c = std::cos(1.1), s = std::sin(1.1);
    for (std::size_t i = 0; i < 80; ++i) {
        moved(i, 0) = c * y(i, 0) - s * y(i, 1) + 40.0;
        moved(i, 1) = s * y(i, 0) + c * y(i, 1) - 13.0;
    }
    CHECK(silhouette(moved, labels) == doctest::Approx(base).epsilon(1e-9));

    std::vector<int> permuted(80);
    for (std::size_t i = 0; i < 80; ++i) permuted[i] = 100 - labels[i] * 7;
    CHECK(silhouette(y, permuted) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("silhouette requires two classes") {
    const Matrix y = oracles::random_matrix(10, 2, 5);
    CHECK_THROWS_WITH_AS((void)silhouette(y, std::vector<int>(10, 1)),
                         doctest::Contains("single class"), Error);
}

TEST_CASE("singleton classes contribute zero") {
    Matrix y(3, 2);
    y(0, 0) = 0;
    y(1, 0) = 1;
    y(2, 0) = 9;
    const std::vector<int> labels = {0, 0, 1};
    // Point 2 is a singleton (S=0); for points 0 and 1, a = 1 and b is the
    // distance to the lone class-1 point.
    const double s0 = (9.0 - 1.0) / 9.0;
    const double s1 = (8.0 - 1.0) / 8.0;
    CHECK(silhouette(y, labels) == doctest::Approx((s0 + s1) / 3.0).epsilon(1e-12));
}

TEST_CASE("posthoc accuracy is 1 on separated blobs") {
    BlobSpec spec;
    spec.n_clusters = 4;
    spec.points_per_cluster = 50;
    spec.dim = 2;
    spec.center_spread = 100.0;
    spec.cluster_std = 0.5;
    spec.seed = 31;
    const DataMatrix data = generate_blobs(spec);
    CHECK(posthoc_knn_accuracy(data.values, *data.labels, 5, 0.2, 7) == 1.0);
}

TEST_CASE("posthoc accuracy on random labels is near one half") {
    const std::size_t n = 2000;
    const Matrix y = oracles::random_matrix(n, 2, 83, 3.0);
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::vector<int> labels(n);
        CounterRng rng(seed, 505);
        for (auto& l : labels) l = static_cast<int>(rng.next_below(2));
        total += posthoc_knn_accuracy(y, labels, 5, 0.2, seed);
    }
    CHECK(std::abs(total / 20.0 - 0.5) < 0.04);
}

TEST_CASE("posthoc k=1 agrees with exhaustive evaluation on a hand instance") {
    Matrix y(4, 1);
    y(0, 0) = 0.0;
    y(1, 0) = 1.0;
    y(2, 0) = 10.0;
    y(3, 0) = 11.0;
    const std::vector<int> labels = {0, 0, 1, 1};
    // round(0.25 * 2) = 1 test point per class (the shuffled class head).
    // Whichever point of a class is held out, its nearest training point is
    // its same-class partner, so accuracy is exactly 1.
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        CHECK(posthoc_knn_accuracy(y, labels, 1, 0.25, seed) == 1.0);
    }
}

TEST_CASE("posthoc accuracy is invariant under rigid motions") {
    const Matrix y = oracles::random_matrix(120, 2, 87, 4.0);
    std::vector<int> labels(120);
    for (std::size_t i = 0; i < 120; ++i) labels[i] = static_cast<int>(i % 3);
    const double base = posthoc_knn_accuracy(y, labels, 5, 0.2, 9);
    Matrix moved(120, 2);
    const double c = std::cos(0.7), s = std::sin(0.7);
    for (std::size_t i = 0; i < 120; ++i) {
        moved(i, 0) = c * y(i, 0) - s * y(i, 1) + 5.0;
        moved(i, 1) = s * y(i, 0) + c * y(i, 1) - 2.0;
    }
    CHECK(posthoc_knn_accuracy(moved, labels, 5, 0.2, 9) == base);
    CHECK(base >= 0.0);
    CHECK(base <= 1.0);
}

TEST_CASE("posthoc rejects degenerate splits") {
    const Matrix y = oracles::random_matrix(6, 2, 3);
    const std::vector<int> labels = {0, 0, 0, 1, 1, 1};
    CHECK_THROWS_AS((void)posthoc_knn_accuracy(y, labels, 5, 0.9, 1), Error);
    CHECK_THROWS_AS((void)posthoc_knn_accuracy(y, labels, 5, 1.5, 1), Error);
    CHECK_THROWS_AS((void)posthoc_knn_accuracy(y, std::vector<int>(6, 0), 5, 0.2, 1), Error);
}

TEST_CASE("d_adj estimator hand instances") {
    {
        Matrix y(2, 2);
        y(1, 0) = 10.0;
        CHECK(estimate_d_adj(y, {0, 1}) == doctest::Approx(10.0).epsilon(1e-12));
    }
    {
        Matrix y(3, 1);
        y(0, 0) = 0.0;
        y(1, 0) = 10.0;
        y(2, 0) = 30.0;
        CHECK(estimate_d_adj(y, {0, 1, 2}) == doctest::Approx(40.0 / 3.0).epsilon(1e-9));
    }
}

TEST_CASE("d_adj estimator is translation invariant and scales linearly") {
    const Matrix y = oracles::random_matrix(60, 2, 91, 5.0);
    std::vector<int> labels(60);
    for (std::size_t i = 0; i < 60; ++i) labels[i] = static_cast<int>(i % 4);
    const double base = estimate_d_adj(y, labels);
    CHECK(base > 0.0);

    Matrix shifted = y;
    for (std::size_t i = 0; i < 60; ++i) {
        shifted(i, 0) += 17.0;
        shifted(i, 1) -= 4.0;
    }
    CHECK(estimate_d_adj(shifted, labels) == doctest::Approx(base).epsilon(1e-9));

    Matrix scaled = y;
    for (double& v : scaled.data()) v *= 2.5;
    CHECK(estimate_d_adj(scaled, labels) == doctest::Approx(2.5 * base).epsilon(1e-9));

    CHECK_THROWS_AS((void)estimate_d_adj(y, std::vector<int>(60, 0)), Error);
}

TEST_CASE("edge ratio simulation matches the closed form") {
    const EdgeRatioStats stats = edge_ratio_simulation(1000, 2, 0.001, 20, 50, 7);
    const double predicted = 1000.0 * 0.001 / (2.0 * 20.0);
    const double se = stats.stddev / std::sqrt(50.0);
    CHECK(std::abs(stats.mean - predicted) < 3.0 * se + 1e-12);
    CHECK(std::abs(stats.mean - predicted) < 0.005);
}

TEST_CASE("edge ratio grows linearly with n") {
    const EdgeRatioStats s1 = edge_ratio_simulation(1000, 2, 0.001, 20, 30, 11);
    const EdgeRatioStats s2 = edge_ratio_simulation(2000, 2, 0.001, 20, 30, 11);
    CHECK(s2.mean == doctest::Approx(2.0 * s1.mean).epsilon(0.2));
    CHECK(s2.mean == doctest::Approx(0.05).epsilon(0.2));
}

TEST_CASE("zero NN probability gives exactly zero ratios") {
    const EdgeRatioStats stats = edge_ratio_simulation(500, 2, 0.0, 20, 10, 3);
    for (double v : stats.samples) CHECK(v == 0.0);
    CHECK(stats.mean == 0.0);
}

TEST_CASE("edge ratio simulation validates its inputs") {
    CHECK_THROWS_AS((void)edge_ratio_simulation(1001, 2, 0.001, 20, 5, 0), Error);
    CHECK_THROWS_AS((void)edge_ratio_simulation(1000, 1, 0.001, 20, 5, 0), Error);
    CHECK_THROWS_AS((void)edge_ratio_simulation(1000, 2, -0.1, 20, 5, 0), Error);
    CHECK_THROWS_AS((void)edge_ratio_simulation(1000, 2, 0.001, 0, 5, 0), Error);
}
