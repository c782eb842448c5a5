#include "skysweep/clustering.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace skysweep {

namespace {

double objective(const std::vector<Vector3d>& pts, const std::vector<int>& medoids,
                 const std::vector<int>& assignment) {
  double j = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    j += (pts[i] - pts[static_cast<std::size_t>(medoids[static_cast<std::size_t>(
             assignment[i])])]).norm();
  return j;
}

}  // namespace

KMedoidsResult kmedoids(const std::vector<Vector3d>& points, int k, int max_iters,
                        std::uint64_t seed) {
  const int n = static_cast<int>(points.size());
  if (k <= 0) throw std::invalid_argument("kmedoids: k must be positive");
  if (k > n) throw std::invalid_argument("kmedoids: k exceeds the sample count");

  KMedoidsResult res;
  Rng rng(seed);
  res.medoids = rng.sampleIndices(n, k);
  std::sort(res.medoids.begin(), res.medoids.end());
  res.assignment.assign(static_cast<std::size_t>(n), 0);

  auto assignAll = [&] {
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int best_j = 0;
      for (int j = 0; j < k; ++j) {
        const double d =
            (points[static_cast<std::size_t>(i)] -
             points[static_cast<std::size_t>(res.medoids[static_cast<std::size_t>(j)])]).norm();
        if (d < best) {
          best = d;
          best_j = j;
        }
      }
      res.assignment[static_cast<std::size_t>(i)] = best_j;
    }
  };

  assignAll();
  for (int it = 0; it < max_iters; ++it) {
    // Move each medoid to the member of its cluster minimizing the summed
    // distance to the rest of the cluster.
    bool changed = false;
    for (int j = 0; j < k; ++j) {
      std::vector<int> members;
      for (int i = 0; i < n; ++i)
        if (res.assignment[static_cast<std::size_t>(i)] == j) members.push_back(i);
      if (members.empty()) continue;
      double best_sum = std::numeric_limits<double>::infinity();
      int best_m = res.medoids[static_cast<std::size_t>(j)];
      for (int cand : members) {
        double sum = 0.0;
        for (int m : members)
          sum += (points[static_cast<std::size_t>(cand)] - points[static_cast<std::size_t>(m)])
                     .norm();
        if (sum < best_sum - 1e-15 || (sum < best_sum + 1e-15 && cand < best_m)) {
          best_sum = sum;
          best_m = cand;
        }
      }
      if (best_m != res.medoids[static_cast<std::size_t>(j)]) {
        res.medoids[static_cast<std::size_t>(j)] = best_m;
        changed = true;
      }
    }
    assignAll();
    res.objective_trace.push_back(objective(points, res.medoids, res.assignment));
    res.iterations = it + 1;
    if (!changed) break;
  }
  if (res.objective_trace.empty())
    res.objective_trace.push_back(objective(points, res.medoids, res.assignment));
  return res;
}

}  // namespace skysweep
