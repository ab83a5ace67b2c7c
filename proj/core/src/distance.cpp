#include "mstnet/distance.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mstnet/error.hpp"

namespace mstnet {

double mantegna_distance(double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw Error(Errc::InvalidArgument,
                "correlation " + std::to_string(rho) + " outside [-1, 1]");
  }
  return std::sqrt(2.0 * (1.0 - rho));
}

namespace {

struct ColumnStats {
  double mean = 0.0;
  double norm = 0.0;  // sqrt of centered sum of squares
};

}  // namespace

DistanceMatrix pearson(const ReturnsMatrix& returns, int threads) {
  const std::size_t n = returns.values.cols();
  const std::size_t rows = returns.values.rows();
  if (n == 0) throw Error(Errc::EmptyUniverse, "no tickers to correlate");
  if (rows < 2) {
    throw Error(Errc::TooFewRows, "need at least 2 return rows, got " +
                                      std::to_string(rows));
  }

  // Center columns once; rho(i,j) = <xi, xj> / (|xi| |xj|).
  std::vector<ColumnStats> stats(n);
  Matrix centered(rows, n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t t = 0; t < rows; ++t) sum += returns.values(t, i);
    stats[i].mean = sum / static_cast<double>(rows);
    double ssd = 0.0;
    for (std::size_t t = 0; t < rows; ++t) {
      const double d = returns.values(t, i) - stats[i].mean;
      centered(t, i) = d;
      ssd += d * d;
    }
    const double sd = std::sqrt(ssd / static_cast<double>(rows));
    if (ssd == 0.0 || sd <= 1e-13 * std::abs(stats[i].mean)) {
      throw Error(Errc::ZeroVariance,
                  "ticker '" + returns.tickers[i] + "' has zero return variance");
    }
    stats[i].norm = std::sqrt(ssd);
  }

  DistanceMatrix dm;
  dm.tickers = returns.tickers;
  dm.rho = Matrix(n, n);
  dm.dist = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) dm.rho(i, i) = 1.0;

  // Pairs are split across workers; each pair is summed t = 0..rows-1 in one
  // fixed order, so thread count cannot change any value.
  const auto fill_pair = [&](std::size_t i, std::size_t j) {
    double dot = 0.0;
    for (std::size_t t = 0; t < rows; ++t) dot += centered(t, i) * centered(t, j);
    const double rho = std::clamp(dot / (stats[i].norm * stats[j].norm), -1.0, 1.0);
    dm.rho(i, j) = rho;
    dm.rho(j, i) = rho;
    const double dist = mantegna_distance(rho);
    dm.dist(i, j) = dist;
    dm.dist(j, i) = dist;
  };

  int workers = threads;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  if (workers == 1 || n < 4) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) fill_pair(i, j);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < n;
             i += static_cast<std::size_t>(workers)) {
          for (std::size_t j = i + 1; j < n; ++j) fill_pair(i, j);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  return dm;
}

DistanceSummary distance_summary(const DistanceMatrix& dm, std::size_t bins) {
  if (bins == 0) throw Error(Errc::InvalidArgument, "need at least 1 bin");
  const std::size_t n = dm.dist.rows();
  std::vector<double> upper;
  upper.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) upper.push_back(dm.dist(i, j));
  }

  DistanceSummary s;
  s.pair_count = upper.size();
  s.bin_counts.assign(bins, 0);
  if (upper.empty()) return s;

  std::sort(upper.begin(), upper.end());
  s.min = upper.front();
  s.max = upper.back();
  const std::size_t mid = upper.size() / 2;
  s.median = (upper.size() % 2 == 1) ? upper[mid]
                                     : 0.5 * (upper[mid - 1] + upper[mid]);
  double sum = 0.0;
  for (double d : upper) sum += d;
  s.mean = sum / static_cast<double>(upper.size());
  for (double d : upper) {
    // Distances live in [0, 2]; the top edge lands in the last bin.
    auto bin = static_cast<std::size_t>(d / 2.0 * static_cast<double>(bins));
    if (bin >= bins) bin = bins - 1;
    ++s.bin_counts[bin];
  }
  return s;
}

}  // namespace mstnet
