#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mstnet/community.hpp"
#include "mstnet/distance.hpp"
#include "mstnet/metrics.hpp"
#include "mstnet/mst.hpp"
#include "mstnet/price_table.hpp"

namespace mstnet {

inline const std::vector<std::string> kKnownFormats = {"graphml", "dot", "json",
                                                       "csv"};

struct RunConfig {
  std::string prices_path;
  std::string sectors_path;
  std::optional<std::string> caps_path;
  std::vector<WindowSpec> windows;  // at least one, labels unique
  std::uint64_t seed = 0;
  double resolution = 1.0;
  bool weighted = true;        // community detection on strength weights
  bool drop_constant = false;  // drop zero-variance tickers instead of failing
  std::string output_dir;
  std::vector<std::string> formats = {"json", "csv"};  // subset of kKnownFormats
  int threads = 1;  // windows run concurrently; output is thread-count independent
  std::size_t summary_bins = 40;
};

// "START:END:LABEL" with ISO dates; the label is free-form and may contain
// ':'. "START:END" defaults the label to "START_END".
WindowSpec parse_window_spec(const std::string& text);

struct WindowResult {
  WindowSpec window;
  std::vector<std::string> tickers;  // surviving tickers, node order
  std::vector<std::string> sectors;  // aligned to tickers
  WeightedTree tree;
  Partition detected;
  Partition sector_partition;
  MetricsReport metrics;
  DistanceSummary summary;
  std::vector<std::string> dropped_missing;   // dropped by the window slice
  std::vector<std::string> dropped_constant;  // dropped under drop_constant
};

// Full pipeline per window: slice -> log returns -> correlation/distance ->
// MST -> community detection -> sector comparison -> metrics, with every
// artifact written under output_dir/<label>/ in each requested format and a
// consolidated table1.csv (columns label,d,C,Q,sigma,mk) at the root.
// Errors are annotated with the window label and a failed window's partial
// outputs are removed.
std::vector<WindowResult> run_pipeline(const RunConfig& config);

}  // namespace mstnet
