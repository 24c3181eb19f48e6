#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "offload/scenario.hpp"

namespace offload {

struct KMeansResult {
  std::vector<int> labels;          // 1-based cluster id per point
  std::vector<Point> centroids;     // index c-1 holds cluster c
  std::vector<double> wcss_history; // within-cluster sum of squares after each round
  int rounds = 0;

  double wcss() const { return wcss_history.empty() ? 0.0 : wcss_history.back(); }
};

/// Within-cluster sum of squared distances for a labelling (1-based labels).
double within_cluster_ss(std::span<const Point> points, std::span<const int> labels, int clusters);

/// Lloyd's algorithm from one seeded initialisation.
///
/// Initial centroids are `clusters` distinct points drawn from the stream.
/// Assignment ties go to the lowest cluster id; an emptied cluster is
/// re-seeded with the point farthest from its current centroid. Stops when
/// assignments no longer change or after `max_rounds` rounds.
KMeansResult lloyd_kmeans(std::span<const Point> points, int clusters, std::uint64_t seed,
                          int max_rounds = 100);

/// Best (lowest WCSS) of `restarts` seeded Lloyd runs; ties keep the earliest.
KMeansResult cluster_points(std::span<const Point> points, int clusters, std::uint64_t seed,
                            int restarts = 10, int max_rounds = 100);

/// SBS clustering: cluster id (1..W) per SBS, in SBS order.
std::vector<int> cluster_sbs(std::span<const Point> sbs_positions, int clusters, std::uint64_t seed);

}  // namespace offload
