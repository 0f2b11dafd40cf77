#include "doctest.h"

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "imtk/errors.hpp"
#include "imtk/rng.hpp"
#include "imtk/tsne.hpp"

#include "helpers.hpp"

using namespace imtk;

namespace {

/// Three well-separated 5-D Gaussian blobs, 30 points each.
std::vector<std::vector<double>> three_blobs(std::vector<int>* labels) {
    RandomStream rng(404);
    const double centers[3][5] = {
        {0, 0, 0, 0, 0}, {10, 0, 0, 0, 0}, {0, 10, 0, 0, 0}};
    std::vector<std::vector<double>> pts;
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j < 30; ++j) {
            std::vector<double> p(5);
            for (int d = 0; d < 5; ++d)
                p[static_cast<std::size_t>(d)] =
                    centers[c][d] + 0.1 * rng.normal();
            pts.push_back(std::move(p));
            if (labels) labels->push_back(c);
        }
    return pts;
}

double dist2(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

} // namespace

TEST_SUITE("tsne") {

TEST_CASE("separated clusters embed to high-purity clusters") {
    std::vector<int> labels;
    const auto pts = three_blobs(&labels);
    const auto emb = tsne_embed(pts, 10.0, 200.0, 1000, 7);
    REQUIRE(emb.size() == pts.size());
    for (const auto& e : emb) {
        CHECK(std::isfinite(e[0]));
        CHECK(std::isfinite(e[1]));
    }
    const std::vector<int> assign = kmeans_2d(emb, 3, 7);
    CHECK(cluster_purity(assign, labels) >= 0.95);
}

TEST_CASE("duplicate inputs land together") {
    std::vector<int> labels;
    auto pts = three_blobs(&labels);
    pts.push_back(pts[0]);   // exact copy from blob 0
    pts.push_back(pts[30]);  // exact copy from blob 1
    const auto emb = tsne_embed(pts, 10.0, 200.0, 600, 3);
    // Centroid gap between the two source blobs in the embedding.
    std::array<double, 2> c0{0, 0}, c1{0, 0};
    for (int j = 0; j < 30; ++j)
        for (int d = 0; d < 2; ++d) {
            c0[static_cast<std::size_t>(d)] += emb[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)] / 30.0;
            c1[static_cast<std::size_t>(d)] += emb[static_cast<std::size_t>(30 + j)][static_cast<std::size_t>(d)] / 30.0;
        }
    const double gap = std::sqrt(dist2(c0, c1));
    CHECK(std::sqrt(dist2(emb[90], emb[0])) <= 0.1 * gap);
    CHECK(std::sqrt(dist2(emb[91], emb[30])) <= 0.1 * gap);
}

TEST_CASE("deterministic per seed") {
    const auto pts = three_blobs(nullptr);
    const auto a = tsne_embed(pts, 10.0, 200.0, 300, 5);
    const auto b = tsne_embed(pts, 10.0, 200.0, 300, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i][0] == b[i][0]);
        CHECK(a[i][1] == b[i][1]);
    }
    const auto c = tsne_embed(pts, 10.0, 200.0, 300, 6);
    bool differs = false;
    for (std::size_t i = 0; i < a.size() && !differs; ++i)
        differs = a[i] != c[i];
    CHECK(differs);
}

TEST_CASE("KL divergence trace settles") {
    const auto pts = three_blobs(nullptr);
    std::vector<double> kl;
    tsne_embed(pts, 10.0, 200.0, 400, 9, &kl);
    REQUIRE(kl.size() == 400);
    for (double v : kl) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
    }
    // After early exaggeration ends the objective should be essentially
    // non-increasing; allow slack for momentum overshoot.
    for (std::size_t i = 300; i + 1 < kl.size(); ++i)
        CHECK(kl[i + 1] <= kl[i] + 1e-3);
    CHECK(kl.back() < kl.front());
}

TEST_CASE("embedding rejects bad parameters") {
    const auto pts = three_blobs(nullptr);
    CHECK_THROWS_AS(tsne_embed(pts, 0.0, 200.0, 100, 1), DomainError);
    CHECK_THROWS_AS(tsne_embed(pts, 10.0, 0.0, 100, 1), DomainError);
    CHECK_THROWS_AS(tsne_embed(pts, 10.0, 200.0, 0, 1), DomainError);
    // Fewer than 3x perplexity points.
    std::vector<std::vector<double>> few(pts.begin(), pts.begin() + 29);
    CHECK_THROWS_AS(tsne_embed(few, 10.0, 200.0, 100, 1), DomainError);
    auto ragged = three_blobs(nullptr);
    ragged[4].push_back(0.0);
    CHECK_THROWS_AS(tsne_embed(ragged, 10.0, 200.0, 100, 1), DomainError);
}

TEST_CASE("k-means on the plane") {
    std::vector<std::array<double, 2>> pts;
    RandomStream rng(11);
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < 20; ++j)
            pts.push_back({c * 8.0 + 0.05 * rng.normal(), 0.05 * rng.normal()});
    const std::vector<int> assign = kmeans_2d(pts, 2, 3);
    REQUIRE(assign.size() == pts.size());
    std::vector<int> truth(40, 0);
    for (int j = 20; j < 40; ++j) truth[static_cast<std::size_t>(j)] = 1;
    CHECK(cluster_purity(assign, truth) == 1.0);

    CHECK(kmeans_2d(pts, 1, 3) == std::vector<int>(40, 0));
    CHECK_THROWS_AS(kmeans_2d(pts, 0, 3), DomainError);
    CHECK_THROWS_AS(kmeans_2d(pts, 41, 3), DomainError);
}

TEST_CASE("cluster purity") {
    CHECK(cluster_purity({0, 0, 1, 1}, {5, 5, 9, 9}) == 1.0);
    // Cluster 0 mixes 3 of label A with 2 of label B; cluster 1 is pure.
    CHECK(cluster_purity({0, 0, 0, 0, 0, 1, 1, 1, 1, 1},
                         {0, 0, 0, 1, 1, 2, 2, 2, 2, 2}) == doctest::Approx(0.8));
    CHECK_THROWS_AS(cluster_purity({0, 1}, {0}), DomainError);
    CHECK_THROWS_AS(cluster_purity({}, {}), DomainError);
}

} // TEST_SUITE
