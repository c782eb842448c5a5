#ifndef SKYSWEEP_CLUSTERING_HPP_
#define SKYSWEEP_CLUSTERING_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "skysweep/common.hpp"

namespace skysweep {

struct KMedoidsResult {
  std::vector<int> medoids;             // indices into the input point set
  std::vector<int> assignment;          // point -> position in medoids
  std::vector<double> objective_trace;  // J after each iteration, non-increasing
  int iterations = 0;
};

/// PAM-style alternation: assign every point to its nearest medoid, then move
/// each medoid to the cluster member minimizing the intra-cluster distance
/// sum. Initial medoids are a seeded random distinct subset. Ties go to the
/// lowest index so runs are reproducible.
KMedoidsResult kmedoids(const std::vector<Vector3d>& points, int k, int max_iters,
                        std::uint64_t seed);

}  // namespace skysweep

#endif  // SKYSWEEP_CLUSTERING_HPP_
