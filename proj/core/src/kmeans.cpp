#include "offload/kmeans.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "offload/rng.hpp"

namespace offload {
namespace {

double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::vector<Point> compute_centroids(std::span<const Point> points, std::span<const int> labels, int clusters,
                                     const std::vector<Point>& previous) {
  std::vector<Point> sums(static_cast<std::size_t>(clusters));
  std::vector<int> counts(static_cast<std::size_t>(clusters), 0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto c = static_cast<std::size_t>(labels[p] - 1);
    sums[c].x += points[p].x;
    sums[c].y += points[p].y;
    ++counts[c];
  }
  std::vector<Point> out(previous);
  for (std::size_t c = 0; c < sums.size(); ++c) {
    if (counts[c] > 0) out[c] = {sums[c].x / counts[c], sums[c].y / counts[c]};
  }
  return out;
}

}  // namespace

double within_cluster_ss(std::span<const Point> points, std::span<const int> labels, int clusters) {
  std::vector<Point> zero(static_cast<std::size_t>(clusters));
  const auto centroids = compute_centroids(points, labels, clusters, zero);
  double total = 0.0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    total += squared_distance(points[p], centroids[static_cast<std::size_t>(labels[p] - 1)]);
  }
  return total;
}

KMeansResult lloyd_kmeans(std::span<const Point> points, int clusters, std::uint64_t seed, int max_rounds) {
  const auto n = points.size();
  if (clusters < 1 || static_cast<std::size_t>(clusters) > n) {
    throw std::invalid_argument(fmt::format("k-means: need 1 <= clusters <= points, got {} for {}", clusters, n));
  }
  const auto k = static_cast<std::size_t>(clusters);

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<long>(i), static_cast<long>(n - 1)));
    std::swap(order[i], order[j]);
  }

  KMeansResult result;
  result.centroids.resize(k);
  for (std::size_t c = 0; c < k; ++c) result.centroids[c] = points[order[c]];
  result.labels.assign(n, 0);

  for (int round = 1; round <= max_rounds; ++round) {
    bool changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      int best = 1;
      double best_d = squared_distance(points[p], result.centroids[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = squared_distance(points[p], result.centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c) + 1;
        }
      }
      if (result.labels[p] != best) {
        result.labels[p] = best;
        changed = true;
      }
    }

    // Re-seed empty clusters with the point farthest from its centroid,
    // taken only from clusters that keep at least one other member.
    std::vector<int> counts(k, 0);
    for (int label : result.labels) ++counts[static_cast<std::size_t>(label - 1)];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t p = 0; p < n; ++p) {
        const auto own = static_cast<std::size_t>(result.labels[p] - 1);
        if (counts[own] < 2) continue;
        const double d = squared_distance(points[p], result.centroids[own]);
        if (d > far_d) {
          far_d = d;
          far = p;
        }
      }
      --counts[static_cast<std::size_t>(result.labels[far] - 1)];
      result.labels[far] = static_cast<int>(c) + 1;
      counts[c] = 1;
      result.centroids[c] = points[far];
      changed = true;
    }

    result.centroids = compute_centroids(points, result.labels, clusters, result.centroids);
    double wcss = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      wcss += squared_distance(points[p], result.centroids[static_cast<std::size_t>(result.labels[p] - 1)]);
    }
    result.wcss_history.push_back(wcss);
    result.rounds = round;
    if (!changed) break;
  }
  return result;
}

KMeansResult cluster_points(std::span<const Point> points, int clusters, std::uint64_t seed, int restarts,
                            int max_rounds) {
  if (restarts < 1) throw std::invalid_argument("k-means: restarts must be >= 1");
  KMeansResult best;
  double best_wcss = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    auto run = lloyd_kmeans(points, clusters, derive_seed(seed, static_cast<std::uint64_t>(r)), max_rounds);
    if (run.wcss() < best_wcss) {
      best_wcss = run.wcss();
      best = std::move(run);
    }
  }
  return best;
}

std::vector<int> cluster_sbs(std::span<const Point> sbs_positions, int clusters, std::uint64_t seed) {
  return cluster_points(sbs_positions, clusters, seed).labels;
}

}  // namespace offload
