#include "mstnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <json.hpp>

#include "mstnet/error.hpp"

namespace mstnet {

std::vector<std::vector<int>> tree_distances(const WeightedTree& tree) {
  const int n = tree.node_count();
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : tree.edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  std::deque<int> queue;
  for (int s = 0; s < n; ++s) {
    dist[s][s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const int v : adj[u]) {
        if (dist[s][v] < 0) {
          dist[s][v] = dist[s][u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

PathStats diameter_and_cpl(const WeightedTree& tree) {
  const int n = tree.node_count();
  if (n < 2) throw Error(Errc::InvalidArgument, "need at least 2 nodes");
  if (static_cast<int>(tree.edges.size()) != n - 1) {
    throw Error(Errc::InvalidArgument, "not a tree: " +
                                           std::to_string(tree.edges.size()) +
                                           " edges for " + std::to_string(n) +
                                           " nodes");
  }
  const auto dist = tree_distances(tree);
  PathStats stats;
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dist[i][j] < 0) {
        throw Error(Errc::InvalidArgument, "graph is not connected");
      }
      stats.diameter = std::max(stats.diameter, dist[i][j]);
      total += dist[i][j];
    }
  }
  const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  stats.char_path_length = static_cast<double>(total) / static_cast<double>(pairs);
  return stats;
}

DegreeStats degree_stats(const WeightedTree& tree) {
  DegreeStats stats;
  stats.degrees.assign(tree.node_count(), 0);
  for (const Edge& e : tree.edges) {
    ++stats.degrees[e.i];
    ++stats.degrees[e.j];
  }
  for (const int d : stats.degrees) {
    stats.max_degree = std::max(stats.max_degree, d);
    if (d == 1) ++stats.leaf_count;
  }
  return stats;
}

double sigma(const Partition& reference, const Partition& detected) {
  const std::size_t n = reference.node_count();
  if (n == 0 || detected.node_count() != n) {
    throw Error(Errc::NodeSetMismatch,
                "reference covers " + std::to_string(n) + " nodes, detected " +
                    std::to_string(detected.node_count()));
  }
  std::size_t correct = 0;
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t partners = 0;
    std::size_t agree = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || reference.labels[v] != reference.labels[u]) continue;
      ++partners;
      if (detected.labels[v] == detected.labels[u]) ++agree;
    }
    // ceil(partners / 2) in integers; 0 partners is vacuously correct.
    if (2 * agree >= partners) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

double link_share(const WeightedTree& tree, std::span<const int> selected) {
  if (tree.edges.empty()) {
    throw Error(Errc::InvalidArgument, "tree has no edges");
  }
  const DegreeStats stats = degree_stats(tree);
  long long total = 0;
  for (const int v : selected) {
    if (v < 0 || v >= tree.node_count()) {
      throw Error(Errc::InvalidArgument, "node index " + std::to_string(v) +
                                             " out of range");
    }
    total += stats.degrees[v];
  }
  return static_cast<double>(total) / static_cast<double>(tree.edges.size());
}

std::vector<int> top_fraction_by(const std::vector<double>& values, double q) {
  if (values.empty()) throw Error(Errc::InvalidArgument, "empty value list");
  if (!(q > 0.0 && q <= 1.0)) {
    throw Error(Errc::InvalidArgument, "fraction must be in (0, 1]");
  }
  const auto want = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(values.size())));
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return values[a] > values[b];
  });
  order.resize(std::min(want, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

std::map<std::string, double> sector_cap_averages(const PriceTable& table,
                                                  const WindowSpec& window) {
  if (!table.market_caps) {
    throw Error(Errc::MissingMarketCaps, "table has no market-cap panel");
  }
  const auto first = std::lower_bound(table.dates.begin(), table.dates.end(),
                                      window.start);
  const auto last = std::upper_bound(table.dates.begin(), table.dates.end(),
                                     window.end);
  std::map<std::string, double> sums;
  std::map<std::string, std::size_t> counts;
  for (std::size_t c = 0; c < table.ticker_count(); ++c) {
    const std::string& sector = table.sector_of(c);
    for (auto it = first; it != last; ++it) {
      const auto r = static_cast<std::size_t>(it - table.dates.begin());
      const double cap = (*table.market_caps)(r, c);
      if (std::isnan(cap)) continue;
      sums[sector] += cap;
      counts[sector] += 1;
    }
  }
  std::map<std::string, double> means;
  for (const auto& [sector, sum] : sums) {
    means[sector] = sum / static_cast<double>(counts[sector]);
  }
  return means;
}

MetricsReport build_metrics_report(const WeightedTree& tree, double modularity_q,
                                   double sigma_value) {
  const int n = tree.node_count();
  if (n < 2) throw Error(Errc::InvalidArgument, "need at least 2 nodes");
  const PathStats paths = diameter_and_cpl(tree);
  const DegreeStats degrees = degree_stats(tree);
  MetricsReport report;
  report.diameter = paths.diameter;
  report.char_path_length = paths.char_path_length;
  report.modularity = modularity_q;
  report.sigma = sigma_value;
  report.max_degree = degrees.max_degree;
  report.leaf_count = degrees.leaf_count;
  report.star_ratio = static_cast<double>(paths.diameter) / (n - 1);
  report.leaf_ratio = static_cast<double>(degrees.leaf_count) / (n - 1);
  report.n_nodes = n;
  return report;
}

std::string metrics_json(const MetricsReport& report) {
  nlohmann::ordered_json doc;
  doc["diameter"] = report.diameter;
  doc["char_path_length"] = report.char_path_length;
  doc["modularity"] = report.modularity;
  doc["sigma"] = report.sigma;
  doc["max_degree"] = report.max_degree;
  doc["leaf_count"] = report.leaf_count;
  doc["star_ratio"] = report.star_ratio;
  doc["leaf_ratio"] = report.leaf_ratio;
  doc["n_nodes"] = report.n_nodes;
  return doc.dump(2) + "\n";
}

}  // namespace mstnet
