#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mstnet/community.hpp"
#include "mstnet/mst.hpp"
#include "mstnet/price_table.hpp"

namespace mstnet {

// All-pairs hop counts via BFS from every node; in a tree the path is unique.
std::vector<std::vector<int>> tree_distances(const WeightedTree& tree);

struct PathStats {
  int diameter = 0;              // max hop count over pairs
  double char_path_length = 0.0; // mean hop count over unordered pairs
};

// Requires >= 2 nodes.
PathStats diameter_and_cpl(const WeightedTree& tree);

struct DegreeStats {
  int max_degree = 0;
  int leaf_count = 0;        // nodes of degree 1
  std::vector<int> degrees;  // ticker order
};

DegreeStats degree_stats(const WeightedTree& tree);

// Fraction of correctly classified nodes. A node's partners are the other
// members of its reference community (count P); the node is correct when at
// least ceil(P / 2) partners share its detected community, vacuously so when
// P = 0. Both partitions must cover the same node set.
double sigma(const Partition& reference, const Partition& detected);

// Degree share of a node subset: sum of degree(v) over `selected`, divided
// by the edge count N - 1. Large overlapping selections can exceed 1; the
// full node set gives exactly 2.
double link_share(const WeightedTree& tree, std::span<const int> selected);

// Indices of the ceil(q * N) largest values, ties broken by node order.
// Requires a non-empty value list and 0 < q <= 1.
std::vector<int> top_fraction_by(const std::vector<double>& values, double q);

// Mean market-cap cell per sector over the window's (ticker, day) cells.
// Requires the market-cap panel; sectors with no cap cells in the window are
// omitted from the result.
std::map<std::string, double> sector_cap_averages(const PriceTable& table,
                                                  const WindowSpec& window);

// Consolidated per-window topology report.
struct MetricsReport {
  int diameter = 0;
  double char_path_length = 0.0;
  double modularity = 0.0;
  double sigma = 0.0;       // fraction in [0, 1]
  int max_degree = 0;
  int leaf_count = 0;
  double star_ratio = 0.0;  // diameter / (N - 1); 1 exactly for a path
  double leaf_ratio = 0.0;  // leaf_count / (N - 1); 1 exactly for a star
  int n_nodes = 0;

  bool operator==(const MetricsReport&) const = default;
};

// Assemble the report for a tree with >= 2 nodes.
MetricsReport build_metrics_report(const WeightedTree& tree, double modularity_q,
                                   double sigma_value);

// Flat key-value JSON document with exactly the report's field names as keys.
std::string metrics_json(const MetricsReport& report);

}  // namespace mstnet
