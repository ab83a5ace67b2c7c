#include "mstnet/price_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "csv.hpp"
#include "mstnet/error.hpp"
#include "num_format.hpp"

namespace mstnet {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trimmed(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  return text;
}

double parse_cell(std::string_view raw, const std::string& path,
                  const std::string& ticker, const Date& date) {
  const std::string_view text = trimmed(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(Errc::MalformedCsv, path + ": unparsable value '" + std::string(raw) +
                                        "' for " + ticker + " at " + date.to_string());
  }
  return value;
}

bool blank_record(const std::vector<std::string>& fields) {
  return fields.size() == 1 && trimmed(fields[0]).empty();
}

struct WidePanel {
  std::vector<Date> dates;
  std::vector<std::string> tickers;
  Matrix values;
};

// Parse `date,TICKER,...` wide CSV; empty cells become NaN. `is_price_panel`
// selects the domain error for non-positive values.
WidePanel parse_wide_panel(std::istream& is, const std::string& path,
                           bool is_price_panel) {
  std::vector<std::string> fields;
  if (!detail::read_csv_record(is, fields) || fields.empty()) {
    throw Error(Errc::MalformedCsv, path + ": empty file");
  }
  std::string head(trimmed(fields[0]));
  std::transform(head.begin(), head.end(), head.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (head != "date" || fields.size() < 2) {
    throw Error(Errc::MalformedCsv,
                path + ": header must be 'date,TICKER1,TICKER2,...'");
  }

  WidePanel panel;
  std::unordered_set<std::string> seen;
  for (std::size_t col = 1; col < fields.size(); ++col) {
    std::string ticker(trimmed(fields[col]));
    if (ticker.empty()) {
      throw Error(Errc::MalformedCsv, path + ": empty ticker in header");
    }
    if (!seen.insert(ticker).second) {
      throw Error(Errc::DuplicateTicker, path + ": duplicate ticker '" + ticker + "'");
    }
    panel.tickers.push_back(std::move(ticker));
  }

  std::vector<std::vector<double>> rows;
  while (detail::read_csv_record(is, fields)) {
    if (blank_record(fields)) continue;
    if (fields.size() != panel.tickers.size() + 1) {
      throw Error(Errc::MalformedCsv,
                  path + ": row " + std::to_string(rows.size() + 2) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(panel.tickers.size() + 1));
    }
    const Date date = Date::parse(trimmed(fields[0]));
    if (!panel.dates.empty()) {
      if (date == panel.dates.back()) {
        throw Error(Errc::DuplicateCell,
                    path + ": duplicate rows for date " + date.to_string());
      }
      if (date < panel.dates.back()) {
        throw Error(Errc::MalformedCsv,
                    path + ": dates out of order at " + date.to_string());
      }
    }
    std::vector<double> row(panel.tickers.size(), kNaN);
    for (std::size_t col = 0; col < panel.tickers.size(); ++col) {
      const std::string& raw = fields[col + 1];
      if (trimmed(raw).empty()) continue;  // missing cell
      const double value = parse_cell(raw, path, panel.tickers[col], date);
      if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(is_price_panel ? Errc::NonPositivePrice : Errc::NonPositiveCap,
                    path + ": non-positive value " + std::string(trimmed(raw)) +
                        " for " + panel.tickers[col] + " at " + date.to_string());
      }
      row[col] = value;
    }
    panel.dates.push_back(date);
    rows.push_back(std::move(row));
  }

  panel.values = Matrix(rows.size(), panel.tickers.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < panel.tickers.size(); ++c) {
      panel.values(r, c) = rows[r][c];
    }
  }
  return panel;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  return in;
}

}  // namespace

std::size_t PriceTable::ticker_index(const std::string& ticker) const {
  const auto it = std::find(tickers.begin(), tickers.end(), ticker);
  if (it == tickers.end()) {
    throw Error(Errc::UnknownTicker, "unknown ticker '" + ticker + "'");
  }
  return static_cast<std::size_t>(it - tickers.begin());
}

const std::string& PriceTable::sector_of(std::size_t column) const {
  const auto it = sectors.find(tickers.at(column));
  if (it == sectors.end()) {
    throw Error(Errc::MissingSector,
                "ticker '" + tickers.at(column) + "' has no sector label");
  }
  return it->second;
}

bool PriceTable::complete() const {
  return std::none_of(prices.data().begin(), prices.data().end(),
                      [](double v) { return std::isnan(v); });
}

LoadResult load_price_table(const std::string& prices_path,
                            const std::string& sectors_path,
                            const std::optional<std::string>& caps_path) {
  auto prices_in = open_input(prices_path);
  WidePanel prices = parse_wide_panel(prices_in, prices_path, true);
  if (prices.dates.size() < 3) {
    throw Error(Errc::TooFewRows, prices_path + ": need at least 3 price rows, got " +
                                      std::to_string(prices.dates.size()));
  }

  auto sectors_in = open_input(sectors_path);
  std::vector<std::string> fields;
  if (!detail::read_csv_record(sectors_in, fields) || fields.size() != 2 ||
      std::string(trimmed(fields[0])) != "ticker" ||
      std::string(trimmed(fields[1])) != "sector") {
    throw Error(Errc::MalformedCsv, sectors_path + ": header must be 'ticker,sector'");
  }
  const std::unordered_set<std::string> price_tickers(prices.tickers.begin(),
                                                      prices.tickers.end());
  std::map<std::string, std::string> sectors;
  std::size_t ignored = 0;
  while (detail::read_csv_record(sectors_in, fields)) {
    if (blank_record(fields)) continue;
    if (fields.size() != 2) {
      throw Error(Errc::MalformedCsv, sectors_path + ": rows must be 'ticker,sector'");
    }
    std::string ticker(trimmed(fields[0]));
    std::string sector(trimmed(fields[1]));
    if (ticker.empty() || sector.empty()) {
      throw Error(Errc::MalformedCsv, sectors_path + ": empty ticker or sector");
    }
    if (!price_tickers.contains(ticker)) {
      ++ignored;
      continue;
    }
    const auto [it, inserted] = sectors.emplace(std::move(ticker), std::move(sector));
    if (!inserted) {
      throw Error(Errc::DuplicateTicker,
                  sectors_path + ": duplicate sector row for '" + it->first + "'");
    }
  }
  for (const std::string& ticker : prices.tickers) {
    if (!sectors.contains(ticker)) {
      throw Error(Errc::MissingSector, "ticker '" + ticker + "' missing from '" +
                                           sectors_path + "'");
    }
  }

  LoadResult result;
  result.table.dates = std::move(prices.dates);
  result.table.tickers = std::move(prices.tickers);
  result.table.prices = std::move(prices.values);
  result.table.sectors = std::move(sectors);
  result.ignored_sector_rows = ignored;

  if (caps_path) {
    auto caps_in = open_input(*caps_path);
    WidePanel caps = parse_wide_panel(caps_in, *caps_path, false);
    // Align by (date, ticker); cells outside the price panel are ignored.
    std::unordered_map<std::string, std::size_t> col_of;
    for (std::size_t c = 0; c < result.table.tickers.size(); ++c) {
      col_of.emplace(result.table.tickers[c], c);
    }
    Matrix aligned(result.table.dates.size(), result.table.tickers.size(), kNaN);
    std::size_t row = 0;
    for (std::size_t r = 0; r < caps.dates.size(); ++r) {
      while (row < result.table.dates.size() && result.table.dates[row] < caps.dates[r]) {
        ++row;
      }
      if (row == result.table.dates.size()) break;
      if (result.table.dates[row] != caps.dates[r]) continue;
      for (std::size_t c = 0; c < caps.tickers.size(); ++c) {
        const auto it = col_of.find(caps.tickers[c]);
        if (it != col_of.end()) aligned(row, it->second) = caps.values(r, c);
      }
    }
    result.table.market_caps = std::move(aligned);
  }
  return result;
}

SliceResult slice_window(const PriceTable& table, const WindowSpec& window) {
  if (window.end < window.start) {
    throw Error(Errc::InvalidArgument, "window '" + window.label +
                                           "' has start after end");
  }
  const auto first = std::lower_bound(table.dates.begin(), table.dates.end(),
                                      window.start);
  const auto last = std::upper_bound(table.dates.begin(), table.dates.end(),
                                     window.end);
  const std::size_t begin_row = static_cast<std::size_t>(first - table.dates.begin());
  const std::size_t end_row = static_cast<std::size_t>(last - table.dates.begin());
  const std::size_t rows = end_row - begin_row;
  if (rows < 3) {
    throw Error(Errc::WindowTooShort,
                "window '" + window.label + "' selects " + std::to_string(rows) +
                    " rows, need at least 3");
  }

  SliceResult result;
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < table.ticker_count(); ++c) {
    bool has_gap = false;
    for (std::size_t r = begin_row; r < end_row && !has_gap; ++r) {
      has_gap = std::isnan(table.prices(r, c));
    }
    if (has_gap) {
      result.dropped_tickers.push_back(table.tickers[c]);
    } else {
      kept.push_back(c);
    }
  }
  if (kept.empty()) {
    throw Error(Errc::WindowDropsAll,
                "window '" + window.label + "' drops every ticker");
  }

  PriceTable& out = result.table;
  out.dates.assign(first, last);
  out.prices = Matrix(rows, kept.size());
  if (table.market_caps) out.market_caps = Matrix(rows, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const std::size_t src = kept[c];
    out.tickers.push_back(table.tickers[src]);
    const auto it = table.sectors.find(table.tickers[src]);
    if (it != table.sectors.end()) out.sectors.emplace(it->first, it->second);
    for (std::size_t r = 0; r < rows; ++r) {
      out.prices(r, c) = table.prices(begin_row + r, src);
      if (table.market_caps) {
        (*out.market_caps)(r, c) = (*table.market_caps)(begin_row + r, src);
      }
    }
  }
  return result;
}

namespace {

void write_wide_panel(std::ostream& os, const PriceTable& table, const Matrix& values) {
  os << "date";
  for (const std::string& ticker : table.tickers) {
    os << ',' << detail::csv_escape(ticker);
  }
  os << '\n';
  for (std::size_t r = 0; r < table.day_count(); ++r) {
    os << table.dates[r].to_string();
    for (std::size_t c = 0; c < table.ticker_count(); ++c) {
      os << ',';
      if (!std::isnan(values(r, c))) os << detail::format_double(values(r, c));
    }
    os << '\n';
  }
}

}  // namespace

void write_prices_csv(std::ostream& os, const PriceTable& table) {
  write_wide_panel(os, table, table.prices);
}

void write_sectors_csv(std::ostream& os, const PriceTable& table) {
  os << "ticker,sector\n";
  for (const std::string& ticker : table.tickers) {
    const auto it = table.sectors.find(ticker);
    if (it == table.sectors.end()) {
      throw Error(Errc::MissingSector, "ticker '" + ticker + "' has no sector label");
    }
    os << detail::csv_escape(ticker) << ',' << detail::csv_escape(it->second) << '\n';
  }
}

void write_caps_csv(std::ostream& os, const PriceTable& table) {
  if (!table.market_caps) {
    throw Error(Errc::MissingMarketCaps, "table has no market-cap panel");
  }
  write_wide_panel(os, table, *table.market_caps);
}

}  // namespace mstnet
