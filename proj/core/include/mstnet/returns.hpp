#pragma once

#include <string>
#include <vector>

#include "mstnet/matrix.hpp"
#include "mstnet/price_table.hpp"

namespace mstnet {

// (T-1) x n panel of one-day log returns.
struct ReturnsMatrix {
  std::vector<std::string> tickers;
  Matrix values;             // (T-1) x n
  WindowSpec source_window;  // provenance of the slice that produced this
};

// values[t][i] = ln(prices[t+1][i] / prices[t][i]). The table must be
// complete (slice a window first) with T >= 3.
ReturnsMatrix log_returns(const PriceTable& table, std::string window_label = "");

// Tickers whose return series has zero sample variance (frozen or halted
// series). A column counts as constant when its centered sum of squares is
// exactly zero or its standard deviation is below 1e-13 of the mean's
// magnitude.
std::vector<std::string> constant_tickers(const ReturnsMatrix& returns);

// Copy without the named columns; throws Error(Errc::UnknownTicker) for
// names not in the matrix.
ReturnsMatrix drop_tickers(const ReturnsMatrix& returns,
                           const std::vector<std::string>& tickers);

}  // namespace mstnet
