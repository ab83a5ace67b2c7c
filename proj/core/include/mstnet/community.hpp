#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mstnet/mst.hpp"
#include "mstnet/price_table.hpp"

namespace mstnet {

// Node -> community assignment. Community ids are contiguous from 0, in
// order of first appearance over the node indices.
struct Partition {
  std::vector<int> labels;

  std::size_t node_count() const { return labels.size(); }
  int community_count() const;

  bool operator==(const Partition&) const = default;
};

// Relabel to contiguous ids in first-appearance order.
Partition normalized(const Partition& partition);

struct ModularityScore {
  double q = 0.0;
};

// Newman-Girvan modularity of a partition on an undirected graph: the
// fraction of edge weight inside communities minus its expectation under a
// degree-preserving random rewiring. Weighted uses edge strengths,
// unweighted counts edges. Accepts general simple graphs; requires >= 1
// edge and a label for every node.
ModularityScore modularity(int node_count, std::span<const Edge> edges,
                           const Partition& partition, bool weighted);
ModularityScore modularity(const WeightedTree& tree, const Partition& partition,
                           bool weighted);

struct LouvainResult {
  Partition partition;
  ModularityScore score;  // modularity at the requested resolution
};

// Two-phase modularity maximization: seeded-order local node moves until no
// move gains more than 1e-12, then community aggregation, repeated until the
// hierarchy is stable; a final node-level sweep on the input graph makes the
// returned partition a local optimum under single-node moves (to a
// neighboring community or a fresh singleton). Runs a few restarts with
// derived visit orders internally and keeps the best-scoring partition, so
// one call is dependable even on tiny graphs. Fully deterministic given
// (graph, resolution, seed). A graph with no edges yields the singleton
// partition with q = 0.
LouvainResult louvain(int node_count, std::span<const Edge> edges,
                      double resolution, std::uint64_t seed, bool weighted);
LouvainResult louvain(const WeightedTree& tree, double resolution,
                      std::uint64_t seed, bool weighted);

// Reference partition from sector labels: tickers sharing a sector share a
// community id; ids in first-appearance order over `tickers`.
Partition sectors_to_partition(const PriceTable& table,
                               const std::vector<std::string>& tickers);

}  // namespace mstnet
