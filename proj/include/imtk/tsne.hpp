#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace imtk {

/// Standard t-SNE to 2 dimensions: per-point conditional Gaussian
/// bandwidths binary-searched to the target perplexity, symmetrized P,
/// Student-t Q, KL gradient descent with early exaggeration (x12 for the
/// first 250 iterations) and momentum 0.5 switching to 0.8 at iteration
/// 250, with per-dimension adaptive gains. Deterministic per seed.
/// When kl_trace is non-null it receives KL(P||Q) per iteration, computed
/// against the true (unexaggerated) P, as a convergence diagnostic.
/// Throws DomainError when fewer than 3 * perplexity points are given or a
/// parameter is nonpositive.
std::vector<std::array<double, 2>> tsne_embed(const std::vector<std::vector<double>>& points,
                                              double perplexity = 10.0,
                                              double learning_rate = 200.0,
                                              int iterations = 1000,
                                              std::uint64_t rng_seed = 0,
                                              std::vector<double>* kl_trace = nullptr);

/// Lloyd k-means on 2-D points (k-means++ style farthest-first seeding from
/// the stream, 100 iterations max). Returns per-point cluster labels.
/// Used by embedding-quality checks.
std::vector<int> kmeans_2d(const std::vector<std::array<double, 2>>& points, int k,
                           std::uint64_t rng_seed);

/// Cluster purity of predicted labels against ground truth: for each
/// predicted cluster take its dominant true label, sum the matches, divide
/// by n. 1.0 = perfect separation.
double cluster_purity(const std::vector<int>& predicted, const std::vector<int>& truth);

} // namespace imtk
