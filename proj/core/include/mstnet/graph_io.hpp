#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mstnet/community.hpp"
#include "mstnet/distance.hpp"
#include "mstnet/mst.hpp"

namespace mstnet {

// All exports are byte-stable: nodes in ticker order, edges in the canonical
// (distance, i, j) order, floats in shortest round-trip form.

// GraphML with node attributes ticker/sector/community/degree and edge
// attributes distance/strength. `sectors` is aligned to tree.tickers.
void write_graphml(std::ostream& os, const WeightedTree& tree,
                   const std::vector<std::string>& sectors,
                   const Partition& detected);

// DOT mirror of the GraphML content.
void write_dot(std::ostream& os, const WeightedTree& tree,
               const std::vector<std::string>& sectors,
               const Partition& detected);

// `ticker_i,ticker_j,distance,strength` edge list.
void write_edge_csv(std::ostream& os, const WeightedTree& tree);

// Rebuild a tree from an edge-list CSV; tickers are numbered in order of
// first appearance and edges re-sorted canonically.
WeightedTree read_edge_csv(std::istream& is);

// `ticker,community_id`, one row per node in ticker order.
void write_partition_csv(std::ostream& os, const std::vector<std::string>& tickers,
                         const Partition& partition);

// Square matrix with a ticker header row and leading ticker column.
void write_matrix_csv(std::ostream& os, const std::vector<std::string>& tickers,
                      const Matrix& values);

// `stat,value` rows: pairs, min, median, mean, max.
void write_distance_summary_csv(std::ostream& os, const DistanceSummary& summary);

// `bin_start,bin_end,count` rows over [0, 2].
void write_distance_histogram_csv(std::ostream& os, const DistanceSummary& summary);

}  // namespace mstnet
