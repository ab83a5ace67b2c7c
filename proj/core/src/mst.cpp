#include "mstnet/mst.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "mstnet/error.hpp"

namespace mstnet {

double strength_of(double distance) {
  if (distance < 0.0) {
    throw Error(Errc::InvalidArgument, "negative distance");
  }
  return 1.0 / std::max(distance, kMinEdgeDistance);
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

}  // namespace

WeightedTree build_mst(const DistanceMatrix& dm) {
  const std::size_t n = dm.dist.rows();
  if (n == 0) throw Error(Errc::EmptyUniverse, "no nodes");

  struct Candidate {
    double distance;
    int i;
    int j;
  };
  std::vector<Candidate> all;
  all.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      all.push_back({dm.dist(i, j), static_cast<int>(i), static_cast<int>(j)});
    }
  }
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.distance, a.i, a.j) < std::tie(b.distance, b.i, b.j);
  });

  WeightedTree tree;
  tree.tickers = dm.tickers;
  tree.edges.reserve(n - 1);
  UnionFind uf(n);
  for (const Candidate& c : all) {
    if (tree.edges.size() + 1 == n) break;
    if (!uf.unite(static_cast<std::size_t>(c.i), static_cast<std::size_t>(c.j))) {
      continue;
    }
    tree.edges.push_back({c.i, c.j, c.distance, strength_of(c.distance)});
  }
  // n-1 accepted edges is guaranteed: the candidate list covers every pair.
  std::sort(tree.edges.begin(), tree.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.distance, a.i, a.j) < std::tie(b.distance, b.i, b.j);
  });
  return tree;
}

}  // namespace mstnet
