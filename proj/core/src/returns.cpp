#include "mstnet/returns.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mstnet/error.hpp"

namespace mstnet {

ReturnsMatrix log_returns(const PriceTable& table, std::string window_label) {
  if (table.day_count() < 3) {
    throw Error(Errc::TooFewRows, "need at least 3 price rows, got " +
                                      std::to_string(table.day_count()));
  }
  if (!table.complete()) {
    throw Error(Errc::InvalidArgument,
                "log returns require a complete panel; slice a window first");
  }
  ReturnsMatrix out;
  out.tickers = table.tickers;
  out.values = Matrix(table.day_count() - 1, table.ticker_count());
  for (std::size_t t = 0; t + 1 < table.day_count(); ++t) {
    for (std::size_t i = 0; i < table.ticker_count(); ++i) {
      out.values(t, i) = std::log(table.prices(t + 1, i) / table.prices(t, i));
    }
  }
  out.source_window.start = table.dates.front();
  out.source_window.end = table.dates.back();
  out.source_window.label = std::move(window_label);
  return out;
}

std::vector<std::string> constant_tickers(const ReturnsMatrix& returns) {
  std::vector<std::string> out;
  const std::size_t rows = returns.values.rows();
  for (std::size_t i = 0; i < returns.values.cols(); ++i) {
    double sum = 0.0;
    for (std::size_t t = 0; t < rows; ++t) sum += returns.values(t, i);
    const double mean = sum / static_cast<double>(rows);
    double ssd = 0.0;
    for (std::size_t t = 0; t < rows; ++t) {
      const double d = returns.values(t, i) - mean;
      ssd += d * d;
    }
    const double sd = std::sqrt(ssd / static_cast<double>(rows));
    if (ssd == 0.0 || sd <= 1e-13 * std::abs(mean)) out.push_back(returns.tickers[i]);
  }
  return out;
}

ReturnsMatrix drop_tickers(const ReturnsMatrix& returns,
                           const std::vector<std::string>& tickers) {
  std::unordered_set<std::string> doomed(tickers.begin(), tickers.end());
  for (const std::string& name : doomed) {
    if (std::find(returns.tickers.begin(), returns.tickers.end(), name) ==
        returns.tickers.end()) {
      throw Error(Errc::UnknownTicker, "unknown ticker '" + name + "'");
    }
  }
  ReturnsMatrix out;
  out.source_window = returns.source_window;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < returns.tickers.size(); ++i) {
    if (!doomed.contains(returns.tickers[i])) {
      kept.push_back(i);
      out.tickers.push_back(returns.tickers[i]);
    }
  }
  out.values = Matrix(returns.values.rows(), kept.size());
  for (std::size_t t = 0; t < returns.values.rows(); ++t) {
    for (std::size_t i = 0; i < kept.size(); ++i) {
      out.values(t, i) = returns.values(t, kept[i]);
    }
  }
  return out;
}

}  // namespace mstnet
