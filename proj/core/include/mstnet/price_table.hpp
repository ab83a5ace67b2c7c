#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mstnet/date.hpp"
#include "mstnet/matrix.hpp"

namespace mstnet {

// Closed interval of trading days plus a label used for report rows and
// output directories.
struct WindowSpec {
  Date start;
  Date end;
  std::string label;

  bool operator==(const WindowSpec&) const = default;
};

// Aligned dates x tickers price panel. Missing cells are NaN; present cells
// are strictly positive. `market_caps`, when present, has the same shape and
// the same missing-cell convention.
struct PriceTable {
  std::vector<Date> dates;                     // strictly increasing
  std::vector<std::string> tickers;            // unique, defines column order
  Matrix prices;                               // T x n
  std::map<std::string, std::string> sectors;  // ticker -> sector label
  std::optional<Matrix> market_caps;           // T x n

  std::size_t day_count() const { return dates.size(); }
  std::size_t ticker_count() const { return tickers.size(); }

  // Column of `ticker`; throws Error(Errc::UnknownTicker).
  std::size_t ticker_index(const std::string& ticker) const;
  // Sector label of the ticker in `column`; throws Error(Errc::MissingSector).
  const std::string& sector_of(std::size_t column) const;
  // True when no price cell is missing.
  bool complete() const;
};

struct LoadResult {
  PriceTable table;
  // Sector-file rows whose ticker does not appear in the price file.
  std::size_t ignored_sector_rows = 0;
};

struct SliceResult {
  PriceTable table;
  // Tickers excluded because a price was missing inside the window.
  std::vector<std::string> dropped_tickers;
};

// Parse and validate the price panel, the ticker -> sector map, and the
// optional market-cap panel (same wide CSV shape as prices, aligned by date
// and ticker; cells for unknown dates or tickers are ignored).
LoadResult load_price_table(const std::string& prices_path,
                            const std::string& sectors_path,
                            const std::optional<std::string>& caps_path = std::nullopt);

// Rows with window.start <= date <= window.end; tickers with any missing
// price inside the window are dropped. Slicing a complete table with its
// full date range reproduces it exactly.
SliceResult slice_window(const PriceTable& table, const WindowSpec& window);

// Panel serialization in the exact formats the loader reads. Floats use the
// shortest round-trip form, so write -> load -> write is byte-stable.
void write_prices_csv(std::ostream& os, const PriceTable& table);
void write_sectors_csv(std::ostream& os, const PriceTable& table);
void write_caps_csv(std::ostream& os, const PriceTable& table);

}  // namespace mstnet
