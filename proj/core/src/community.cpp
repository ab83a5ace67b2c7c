#include "mstnet/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "mstnet/error.hpp"

namespace mstnet {
namespace {

// A move must beat staying put by more than this to be taken.
constexpr double kGainEps = 1e-12;

// Undirected graph with explicit self-loop weights. `self_loop[u]` stores the
// loop weight once; `degree[u]` counts it twice. `total_weight` sums every
// edge once plus every self-loop once, so aggregation preserves it exactly.
struct LocalGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> adj;  // no self entries
  std::vector<double> self_loop;
  std::vector<double> degree;
  double total_weight = 0.0;
};

void finalize(LocalGraph& g) {
  g.degree.assign(g.n, 0.0);
  g.total_weight = 0.0;
  for (int u = 0; u < g.n; ++u) {
    double sum = 0.0;
    for (const auto& [v, w] : g.adj[u]) {
      sum += w;
      if (v > u) g.total_weight += w;
    }
    g.degree[u] = sum + 2.0 * g.self_loop[u];
    g.total_weight += g.self_loop[u];
  }
}

LocalGraph from_edges(int node_count, std::span<const Edge> edges, bool weighted) {
  if (node_count < 1) {
    throw Error(Errc::InvalidArgument, "graph needs at least one node");
  }
  LocalGraph g;
  g.n = node_count;
  g.adj.resize(node_count);
  g.self_loop.assign(node_count, 0.0);
  for (const Edge& e : edges) {
    if (e.i < 0 || e.j <= e.i || e.j >= node_count) {
      throw Error(Errc::InvalidArgument,
                  "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                      ") outside 0 <= i < j < " + std::to_string(node_count));
    }
    const double w = weighted ? e.strength : 1.0;
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(Errc::InvalidArgument, "edge strength must be positive and finite");
    }
    g.adj[e.i].emplace_back(e.j, w);
    g.adj[e.j].emplace_back(e.i, w);
  }
  finalize(g);
  return g;
}

double q_of(const LocalGraph& g, const std::vector<int>& community, int n_comms,
            double resolution) {
  const double m = g.total_weight;
  std::vector<double> in(n_comms, 0.0);
  std::vector<double> tot(n_comms, 0.0);
  for (int u = 0; u < g.n; ++u) {
    in[community[u]] += g.self_loop[u];
    tot[community[u]] += g.degree[u];
    for (const auto& [v, w] : g.adj[u]) {
      if (v > u && community[v] == community[u]) in[community[u]] += w;
    }
  }
  double q = 0.0;
  for (int c = 0; c < n_comms; ++c) {
    const double share = tot[c] / (2.0 * m);
    q += in[c] / m - resolution * share * share;
  }
  return q;
}

// Relabel `community` in place to contiguous ids in first-appearance order;
// returns the community count.
int renumber(std::vector<int>& community) {
  std::unordered_map<int, int> ids;
  ids.reserve(community.size());
  for (int& label : community) {
    const auto [it, inserted] =
        ids.emplace(label, static_cast<int>(ids.size()));
    label = it->second;
  }
  return static_cast<int>(ids.size());
}

// One sweep phase: repeated passes of single-node moves until no move gains
// more than kGainEps. Candidates are every neighboring community, staying,
// and a fresh singleton. Returns true if any node changed community.
// Community ids stay within [0, g.n).
bool one_level(const LocalGraph& g, double resolution, std::mt19937_64& rng,
               std::vector<int>& community) {
  const double m = g.total_weight;
  const int n = g.n;
  std::vector<double> in(n, 0.0);
  std::vector<double> tot(n, 0.0);
  std::vector<int> size(n, 0);
  for (int u = 0; u < n; ++u) {
    in[community[u]] += g.self_loop[u];
    tot[community[u]] += g.degree[u];
    size[community[u]] += 1;
  }
  for (int u = 0; u < n; ++u) {
    for (const auto& [v, w] : g.adj[u]) {
      if (v > u && community[v] == community[u]) in[community[u]] += w;
    }
  }
  std::vector<int> empties;
  for (int c = n - 1; c >= 0; --c) {
    if (size[c] == 0) empties.push_back(c);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> neigh_w(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<int> touched;
  bool improved_any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (const int u : order) {
      const int c_old = community[u];
      const double k_u = g.degree[u];
      touched.clear();
      for (const auto& [v, w] : g.adj[u]) {
        const int c = community[v];
        if (!seen[c]) {
          seen[c] = 1;
          neigh_w[c] = 0.0;
          touched.push_back(c);
        }
        neigh_w[c] += w;
      }

      // Take u out of its community; gains below compare insertion targets.
      const double k_u_old = seen[c_old] ? neigh_w[c_old] : 0.0;
      tot[c_old] -= k_u;
      in[c_old] -= k_u_old + g.self_loop[u];
      size[c_old] -= 1;
      if (size[c_old] == 0) empties.push_back(c_old);

      const auto gain_of = [&](int c) {
        const double k_uc = seen[c] ? neigh_w[c] : 0.0;
        return k_uc / m - resolution * tot[c] * k_u / (2.0 * m * m);
      };
      int best_c = c_old;
      double best_gain = gain_of(c_old);
      for (const int c : touched) {
        if (c == c_old) continue;
        const double gain = gain_of(c);
        if (gain > best_gain + kGainEps) {
          best_c = c;
          best_gain = gain;
        }
      }
      // A fresh singleton has gain 0. One empty id always exists when this
      // fires: best_gain < 0 implies u was not alone, so <= n-1 ids are used.
      if (0.0 > best_gain + kGainEps) best_c = empties.back();

      if (size[best_c] == 0) empties.pop_back();  // c_old re-entered or fresh
      tot[best_c] += k_u;
      in[best_c] += (seen[best_c] ? neigh_w[best_c] : 0.0) + g.self_loop[u];
      size[best_c] += 1;
      community[u] = best_c;
      if (best_c != c_old) {
        moved = true;
        improved_any = true;
      }

      for (const int c : touched) seen[c] = 0;
    }
  }
  return improved_any;
}

LocalGraph aggregate(const LocalGraph& g, const std::vector<int>& community,
                     int n_comms) {
  LocalGraph out;
  out.n = n_comms;
  out.adj.resize(n_comms);
  out.self_loop.assign(n_comms, 0.0);
  std::vector<std::map<int, double>> acc(n_comms);
  for (int u = 0; u < g.n; ++u) {
    out.self_loop[community[u]] += g.self_loop[u];
    for (const auto& [v, w] : g.adj[u]) {
      if (v < u) continue;  // each edge once
      const int cu = community[u];
      const int cv = community[v];
      if (cu == cv) {
        out.self_loop[cu] += w;
      } else {
        acc[std::min(cu, cv)][std::max(cu, cv)] += w;
      }
    }
  }
  for (int c = 0; c < n_comms; ++c) {
    for (const auto& [d, w] : acc[c]) {
      out.adj[c].emplace_back(d, w);
      out.adj[d].emplace_back(c, w);
    }
  }
  finalize(out);
  return out;
}

}  // namespace

int Partition::community_count() const {
  std::vector<int> copy = labels;
  std::sort(copy.begin(), copy.end());
  copy.erase(std::unique(copy.begin(), copy.end()), copy.end());
  return static_cast<int>(copy.size());
}

Partition normalized(const Partition& partition) {
  Partition out = partition;
  renumber(out.labels);
  return out;
}

ModularityScore modularity(int node_count, std::span<const Edge> edges,
                           const Partition& partition, bool weighted) {
  if (edges.empty()) {
    throw Error(Errc::InvalidArgument, "modularity needs at least one edge");
  }
  if (static_cast<int>(partition.labels.size()) != node_count) {
    throw Error(Errc::InvalidArgument,
                "partition labels " + std::to_string(partition.labels.size()) +
                    " nodes, graph has " + std::to_string(node_count));
  }
  const LocalGraph g = from_edges(node_count, edges, weighted);
  std::vector<int> labels = partition.labels;
  const int n_comms = renumber(labels);
  return {q_of(g, labels, n_comms, 1.0)};
}

ModularityScore modularity(const WeightedTree& tree, const Partition& partition,
                           bool weighted) {
  return modularity(tree.node_count(), tree.edges, partition, weighted);
}

namespace {

LouvainResult louvain_single(const LocalGraph& base, int node_count,
                             double resolution, std::uint64_t seed) {
  LouvainResult result;
  result.partition.labels.resize(node_count);
  std::iota(result.partition.labels.begin(), result.partition.labels.end(), 0);

  std::mt19937_64 rng(seed);
  std::vector<int>& node_to_comm = result.partition.labels;
  LocalGraph level = base;
  while (true) {
    std::vector<int> community(level.n);
    std::iota(community.begin(), community.end(), 0);
    const bool improved = one_level(level, resolution, rng, community);
    const int n_comms = renumber(community);
    for (int& label : node_to_comm) label = community[label];
    if (!improved || n_comms == level.n) break;
    level = aggregate(level, community, n_comms);
  }

  // Node-level polish on the input graph: guarantees no single-node move
  // (neighboring community or fresh singleton) gains more than kGainEps.
  one_level(base, resolution, rng, node_to_comm);
  const int n_comms = renumber(node_to_comm);
  result.score.q = q_of(base, node_to_comm, n_comms, resolution);
  return result;
}

// splitmix64 of (seed, salt): decorrelates the restart visit orders.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

LouvainResult louvain(int node_count, std::span<const Edge> edges,
                      double resolution, std::uint64_t seed, bool weighted) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(Errc::InvalidArgument, "resolution must be positive and finite");
  }
  const LocalGraph base = from_edges(node_count, edges, weighted);

  if (edges.empty()) {  // singletons, q = 0
    LouvainResult result;
    result.partition.labels.resize(node_count);
    std::iota(result.partition.labels.begin(), result.partition.labels.end(), 0);
    return result;
  }

  // The greedy sweeps are visit-order sensitive; on small graphs a bad order
  // can lock into a poor local optimum (even the all-in-one partition). A
  // handful of deterministic restarts with derived orders is cheap and makes
  // a single call dependable. Ties keep the earliest restart.
  constexpr int kRestarts = 8;
  LouvainResult best;
  for (int r = 0; r < kRestarts; ++r) {
    LouvainResult cand =
        louvain_single(base, node_count, resolution, mix_seed(seed, r));
    if (r == 0 || cand.score.q > best.score.q + kGainEps) best = std::move(cand);
  }
  return best;
}

LouvainResult louvain(const WeightedTree& tree, double resolution,
                      std::uint64_t seed, bool weighted) {
  return louvain(tree.node_count(), tree.edges, resolution, seed, weighted);
}

Partition sectors_to_partition(const PriceTable& table,
                               const std::vector<std::string>& tickers) {
  Partition out;
  out.labels.reserve(tickers.size());
  std::unordered_map<std::string, int> ids;
  for (const std::string& ticker : tickers) {
    const auto it = table.sectors.find(ticker);
    if (it == table.sectors.end()) {
      throw Error(Errc::MissingSector, "ticker '" + ticker + "' has no sector label");
    }
    const auto [sit, inserted] =
        ids.emplace(it->second, static_cast<int>(ids.size()));
    out.labels.push_back(sit->second);
  }
  return out;
}

}  // namespace mstnet
