#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mstnet/matrix.hpp"
#include "mstnet/returns.hpp"

namespace mstnet {

// Pairwise Pearson correlations and the induced metric
// d(i,j) = sqrt(2 (1 - rho_ij)), both n x n symmetric.
struct DistanceMatrix {
  std::vector<std::string> tickers;
  Matrix rho;   // diagonal exactly 1, entries clamped to [-1, 1]
  Matrix dist;  // diagonal exactly 0, entries in [0, 2]
};

// d = sqrt(2 (1 - rho)); rho must lie in [-1, 1]. Maps 1 -> 0, 0 -> sqrt(2),
// -1 -> 2, and is strictly decreasing in rho.
double mantegna_distance(double rho);

// Sample Pearson correlation for every ticker pair, with the distance matrix
// filled elementwise from it. Throws Error(Errc::ZeroVariance) naming the
// first constant column. The summation order within each pair is fixed, so
// the result is bitwise independent of `threads`.
DistanceMatrix pearson(const ReturnsMatrix& returns, int threads = 1);

// Histogram and order statistics of the n(n-1)/2 upper-triangle distances.
struct DistanceSummary {
  std::size_t pair_count = 0;
  double min = 0.0;
  double median = 0.0;  // midpoint-averaged for even counts
  double mean = 0.0;
  double max = 0.0;
  std::vector<std::size_t> bin_counts;  // uniform bins over [0, 2]
};

DistanceSummary distance_summary(const DistanceMatrix& dm, std::size_t bins = 40);

}  // namespace mstnet
