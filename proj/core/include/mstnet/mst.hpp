#pragma once

#include <string>
#include <vector>

#include "mstnet/distance.hpp"

namespace mstnet {

// Distances below this are degenerate (perfectly correlated pairs, e.g.
// dual-listed shares); edge strength is capped at its inverse instead of
// blowing up.
inline constexpr double kMinEdgeDistance = 1e-6;

// strength = 1 / distance, capped at 1 / kMinEdgeDistance.
double strength_of(double distance);

struct Edge {
  int i = 0;  // node indices into the owning tree's ticker list, i < j
  int j = 0;
  double distance = 0.0;
  double strength = 0.0;

  bool operator==(const Edge&) const = default;
};

// Minimal spanning tree of the complete distance network: n nodes, n-1
// edges sorted by (distance, i, j).
struct WeightedTree {
  std::vector<std::string> tickers;
  std::vector<Edge> edges;

  int node_count() const { return static_cast<int>(tickers.size()); }
};

// Kruskal over all pairs sorted ascending by (distance, i, j), joining
// distinct clusters with union-find; equivalent to single-link agglomeration
// of the distance matrix. The lexicographic tie-break makes the tree unique
// even when the minimum is not.
WeightedTree build_mst(const DistanceMatrix& dm);

}  // namespace mstnet
