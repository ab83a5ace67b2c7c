#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "mstnet/distance.hpp"
#include "mstnet/error.hpp"
#include "mstnet/mst.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace mstnet;

namespace {

ReturnsMatrix returns_of(const std::vector<std::vector<double>>& columns) {
  ReturnsMatrix r;
  r.tickers = testutil::default_tickers(static_cast<int>(columns.size()));
  r.values = Matrix(columns.at(0).size(), columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    REQUIRE(columns[i].size() == columns[0].size());
    for (std::size_t t = 0; t < columns[i].size(); ++t) {
      r.values(t, i) = columns[i][t];
    }
  }
  return r;
}

DistanceMatrix matrix_as_distances(const Matrix& dist) {
  DistanceMatrix dm;
  dm.tickers = testutil::default_tickers(static_cast<int>(dist.rows()));
  dm.dist = dist;
  dm.rho = Matrix(dist.rows(), dist.cols(), 0.0);
  return dm;
}

std::set<std::pair<int, int>> edge_set(const WeightedTree& tree) {
  std::set<std::pair<int, int>> out;
  for (const Edge& e : tree.edges) out.insert({e.i, e.j});
  return out;
}

ReturnsMatrix random_returns(std::mt19937_64& rng, int rows, int cols) {
  ReturnsMatrix r;
  r.tickers = testutil::default_tickers(cols);
  r.values = Matrix(rows, cols);
  std::normal_distribution<double> shock(0.0, 0.02);
  for (int t = 0; t < rows; ++t) {
    for (int i = 0; i < cols; ++i) r.values(t, i) = shock(rng);
  }
  return r;
}

}  // namespace

TEST_CASE("mantegna distance hits the exact endpoints") {
  CHECK(mantegna_distance(1.0) == 0.0);
  CHECK(mantegna_distance(-1.0) == 2.0);
  CHECK(mantegna_distance(0.0) == std::sqrt(2.0));
  CHECK(mantegna_distance(0.0) ==
        doctest::Approx(1.41421356237309504880168872421).epsilon(1e-15));
  CHECK(mantegna_distance(0.5) == 1.0);
}

TEST_CASE("mantegna distance decreases strictly in rho") {
  double prev = mantegna_distance(-1.0);
  for (int k = 1; k <= 200; ++k) {
    const double rho = -1.0 + 2.0 * k / 200.0;
    const double d = mantegna_distance(rho);
    CHECK(d < prev);
    CHECK(d >= 0.0);
    CHECK(d <= 2.0);
    prev = d;
  }
}

TEST_CASE("mantegna distance rejects out-of-range correlations") {
  for (double rho : {-1.0001, 1.0001, 2.0, std::nan("")}) {
    CHECK_THROWS_AS(mantegna_distance(rho), Error);
  }
}

TEST_CASE("strength is the capped inverse distance") {
  CHECK(strength_of(2.0) == 0.5);
  CHECK(strength_of(1.0) == 1.0);
  CHECK(strength_of(0.0) == 1e6);
  CHECK(strength_of(1e-7) == 1e6);
  CHECK(strength_of(kMinEdgeDistance) == 1e6);
  CHECK(strength_of(2e-6) == 5e5);
  CHECK_THROWS_AS(strength_of(-0.1), Error);
}

TEST_CASE("pearson correlation values") {
  const ReturnsMatrix r = returns_of({{1, 2, 3}, {1, 2, 4}});
  const DistanceMatrix dm = pearson(r);
  CHECK(dm.rho(0, 1) ==
        doctest::Approx(0.98198050606196571569743868437).epsilon(1e-15));
  CHECK(dm.rho(0, 0) == 1.0);
  CHECK(dm.rho(1, 1) == 1.0);
  CHECK(dm.dist(0, 0) == 0.0);
  CHECK(dm.dist(0, 1) == mantegna_distance(dm.rho(0, 1)));

  SUBCASE("a series against its negation is exactly -1") {
    const DistanceMatrix anti =
        pearson(returns_of({{-1, -1, 1, 1}, {1, 1, -1, -1}}));
    CHECK(anti.rho(0, 1) == -1.0);
    CHECK(anti.dist(0, 1) == 2.0);
  }

  SUBCASE("identical symmetric columns give exactly rho 1, distance 0") {
    const DistanceMatrix same =
        pearson(returns_of({{-1, -1, 1, 1}, {-1, -1, 1, 1}}));
    CHECK(same.rho(0, 1) == 1.0);
    CHECK(same.dist(0, 1) == 0.0);
  }
}

TEST_CASE("pearson rejects constant columns, naming the ticker") {
  const ReturnsMatrix r = returns_of({{1, 2, 3}, {4, 4, 4}});
  try {
    pearson(r);
    FAIL("expected ZeroVariance");
  } catch (const Error& e) {
    CHECK(e.errc() == Errc::ZeroVariance);
    CHECK(std::string(e.what()).find("T1") != std::string::npos);
  }
}

TEST_CASE("pearson matrix invariants on random panels") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 10; ++round) {
    const ReturnsMatrix r = random_returns(rng, 30, 8);
    const DistanceMatrix dm = pearson(r);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(dm.rho(i, i) == 1.0);
      CHECK(dm.dist(i, i) == 0.0);
      for (std::size_t j = 0; j < 8; ++j) {
        CHECK(dm.rho(i, j) == dm.rho(j, i));
        CHECK(dm.dist(i, j) == dm.dist(j, i));
        CHECK(dm.rho(i, j) >= -1.0);
        CHECK(dm.rho(i, j) <= 1.0);
        CHECK(dm.dist(i, j) >= 0.0);
        CHECK(dm.dist(i, j) <= 2.0);
      }
    }
  }
}

TEST_CASE("pearson is invariant under affine return transforms") {
  std::mt19937_64 rng(7);
  const ReturnsMatrix r = random_returns(rng, 40, 5);
  ReturnsMatrix shifted = r;
  for (std::size_t t = 0; t < 40; ++t) {
    shifted.values(t, 2) = 3.5 * r.values(t, 2) + 0.125;
  }
  const DistanceMatrix base = pearson(r);
  const DistanceMatrix after = pearson(shifted);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(after.rho(i, j) == doctest::Approx(base.rho(i, j)).epsilon(1e-10));
    }
  }
}

TEST_CASE("pearson is bitwise independent of the thread count") {
  std::mt19937_64 rng(99);
  const ReturnsMatrix r = random_returns(rng, 120, 24);
  const DistanceMatrix serial = pearson(r, 1);
  const DistanceMatrix threaded = pearson(r, 8);
  CHECK(serial.rho == threaded.rho);
  CHECK(serial.dist == threaded.dist);
  const DistanceMatrix threaded3 = pearson(r, 3);
  CHECK(serial.rho == threaded3.rho);
}

TEST_CASE("pearson is equivariant under column permutation") {
  std::mt19937_64 rng(17);
  const ReturnsMatrix r = random_returns(rng, 25, 6);
  std::vector<std::size_t> perm{3, 0, 5, 1, 4, 2};
  ReturnsMatrix shuffled;
  shuffled.tickers.resize(6);
  shuffled.values = Matrix(25, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    shuffled.tickers[i] = r.tickers[perm[i]];
    for (std::size_t t = 0; t < 25; ++t) {
      shuffled.values(t, i) = r.values(t, perm[i]);
    }
  }
  const DistanceMatrix base = pearson(r);
  const DistanceMatrix after = pearson(shuffled);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(after.rho(i, j) == base.rho(perm[i], perm[j]));
    }
  }
}

TEST_CASE("distance summary on a known matrix") {
  Matrix dist(3, 3, 0.0);
  dist(0, 1) = dist(1, 0) = 0.5;
  dist(0, 2) = dist(2, 0) = 1.0;
  dist(1, 2) = dist(2, 1) = 2.0;
  const DistanceSummary s = distance_summary(matrix_as_distances(dist), 4);
  CHECK(s.pair_count == 3);
  CHECK(s.min == 0.5);
  CHECK(s.median == 1.0);
  CHECK(s.max == 2.0);
  CHECK(s.mean == doctest::Approx(3.5 / 3.0).epsilon(1e-15));
  // bins over [0,2): [0,0.5) [0.5,1) [1,1.5) [1.5,2]; 2.0 lands in the last.
  CHECK(s.bin_counts == std::vector<std::size_t>{0, 1, 1, 1});

  SUBCASE("even pair count medians average the midpoints") {
    Matrix d4(4, 4, 0.0);
    const double vals[6] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        d4(i, j) = d4(j, i) = vals[k++];
      }
    }
    const DistanceSummary se = distance_summary(matrix_as_distances(d4), 2);
    CHECK(se.pair_count == 6);
    CHECK(se.median == doctest::Approx(0.35).epsilon(1e-15));
  }
}

TEST_CASE("build_mst on a single node returns no edges") {
  Matrix dist(1, 1, 0.0);
  const WeightedTree tree = build_mst(matrix_as_distances(dist));
  CHECK(tree.node_count() == 1);
  CHECK(tree.edges.empty());
}

TEST_CASE("build_mst picks the two cheapest edges of a triangle") {
  Matrix dist(3, 3, 0.0);
  dist(0, 1) = dist(1, 0) = 1.0;
  dist(0, 2) = dist(2, 0) = 2.0;
  dist(1, 2) = dist(2, 1) = 3.0;
  const WeightedTree tree = build_mst(matrix_as_distances(dist));
  REQUIRE(tree.edges.size() == 2);
  CHECK(tree.edges[0] == Edge{0, 1, 1.0, 1.0});
  CHECK(tree.edges[1] == Edge{0, 2, 2.0, 0.5});
}

TEST_CASE("all-equal distances break ties toward the lowest indices") {
  const int n = 5;
  Matrix dist(n, n, 1.0);
  for (int i = 0; i < n; ++i) dist(i, i) = 0.0;
  const WeightedTree tree = build_mst(matrix_as_distances(dist));
  REQUIRE(tree.edges.size() == 4);
  // (0,1) joins first, then (0,2), (0,3), (0,4): a star at node 0.
  for (int k = 0; k < 4; ++k) {
    CHECK(tree.edges[k].i == 0);
    CHECK(tree.edges[k].j == k + 1);
  }
}

TEST_CASE("build_mst agrees with the exhaustive oracle") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 40; ++round) {
    const int n = 3 + static_cast<int>(rng() % 5);  // 3..7
    const Matrix dist = oracle::random_symmetric(rng, n, 0.05, 2.0);
    const WeightedTree tree = build_mst(matrix_as_distances(dist));
    const oracle::SpanningTree best = oracle::min_spanning_tree(dist);

    REQUIRE(tree.edges.size() == static_cast<std::size_t>(n - 1));
    double total = 0.0;
    for (const Edge& e : tree.edges) total += e.distance;
    CHECK(total == doctest::Approx(best.min_total).epsilon(1e-12));

    std::set<std::pair<int, int>> got = edge_set(tree);
    std::set<std::pair<int, int>> want(best.edges.begin(), best.edges.end());
    CHECK(got == want);
  }
}

TEST_CASE("tie-heavy matrices still match the oracle's tie-break") {
  std::mt19937_64 rng(555);
  for (int round = 0; round < 25; ++round) {
    const int n = 4 + static_cast<int>(rng() % 3);  // 4..6
    // Distances drawn from {0.25, 0.5, 0.75, 1.0}: ties guaranteed.
    Matrix dist(n, n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double d = 0.25 * (1 + static_cast<int>(rng() % 4));
        dist(i, j) = dist(j, i) = d;
      }
    }
    const WeightedTree tree = build_mst(matrix_as_distances(dist));
    const oracle::SpanningTree best = oracle::min_spanning_tree(dist);
    std::set<std::pair<int, int>> want(best.edges.begin(), best.edges.end());
    CHECK(edge_set(tree) == want);
    double total = 0.0;
    for (const Edge& e : tree.edges) total += e.distance;
    CHECK(total == doctest::Approx(best.min_total).epsilon(1e-12));
  }
}

TEST_CASE("every non-tree pair is at least as distant as the tree path max") {
  // Cycle property: adding pair (i,j) to the tree closes a cycle; (i,j) must
  // be a maximum-distance edge on it, else the tree is not minimal.
  std::mt19937_64 rng(31);
  for (int round = 0; round < 15; ++round) {
    const int n = 6;
    const Matrix dist = oracle::random_symmetric(rng, n, 0.05, 2.0);
    const WeightedTree tree = build_mst(matrix_as_distances(dist));

    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const Edge& e : tree.edges) {
      adj[e.i].push_back({e.j, e.distance});
      adj[e.j].push_back({e.i, e.distance});
    }
    // max edge distance along the unique tree path, by DFS from each source
    for (int src = 0; src < n; ++src) {
      std::vector<double> path_max(n, -1.0);
      std::vector<int> stack{src};
      path_max[src] = 0.0;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, d] : adj[u]) {
          if (path_max[v] < 0.0) {
            path_max[v] = std::max(path_max[u], d);
            stack.push_back(v);
          }
        }
      }
      for (int dst = src + 1; dst < n; ++dst) {
        CHECK(dist(src, dst) >= path_max[dst] - 1e-12);
      }
    }
  }
}

TEST_CASE("build_mst output is sorted, connected, and spanning") {
  std::mt19937_64 rng(8);
  const Matrix dist = oracle::random_symmetric(rng, 12, 0.1, 1.9);
  const WeightedTree tree = build_mst(matrix_as_distances(dist));
  REQUIRE(tree.edges.size() == 11);

  for (std::size_t k = 0; k + 1 < tree.edges.size(); ++k) {
    const Edge& a = tree.edges[k];
    const Edge& b = tree.edges[k + 1];
    CHECK(std::tie(a.distance, a.i, a.j) <= std::tie(b.distance, b.i, b.j));
  }
  for (const Edge& e : tree.edges) {
    CHECK(e.i < e.j);
    CHECK(e.strength == strength_of(e.distance));
  }
  const auto hops = oracle::floyd_warshall_hops(12, tree.edges);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) CHECK(hops[i][j] >= 0);
  }
}

TEST_CASE("relabeling nodes relabels the tree") {
  std::mt19937_64 rng(77);
  const int n = 6;
  // Continuous draws make all pair distances distinct, so the MST is unique
  // and the permuted tree must map back onto the original.
  Matrix dist = oracle::random_symmetric(rng, n, 0.05, 2.0);
  const std::vector<int> perm{4, 2, 0, 5, 1, 3};
  Matrix permuted(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) permuted(i, j) = dist(perm[i], perm[j]);
  }
  const auto base = edge_set(build_mst(matrix_as_distances(dist)));
  const auto moved = edge_set(build_mst(matrix_as_distances(permuted)));
  std::set<std::pair<int, int>> mapped;
  for (const auto& [i, j] : moved) {
    const int a = perm[i];
    const int b = perm[j];
    mapped.insert({std::min(a, b), std::max(a, b)});
  }
  CHECK(mapped == base);
}
