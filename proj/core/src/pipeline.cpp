#include "mstnet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include <json.hpp>

#include "csv.hpp"
#include "mstnet/error.hpp"
#include "mstnet/graph_io.hpp"
#include "mstnet/returns.hpp"
#include "num_format.hpp"

namespace fs = std::filesystem;

namespace mstnet {

WindowSpec parse_window_spec(const std::string& text) {
  const auto p1 = text.find(':');
  if (p1 == std::string::npos) {
    throw Error(Errc::InvalidArgument,
                "window spec '" + text + "' is not START:END[:LABEL]");
  }
  const auto p2 = text.find(':', p1 + 1);
  WindowSpec w;
  w.start = Date::parse(text.substr(0, p1));
  w.end = Date::parse(p2 == std::string::npos ? text.substr(p1 + 1)
                                              : text.substr(p1 + 1, p2 - p1 - 1));
  if (p2 == std::string::npos) {
    w.label = w.start.to_string() + "_" + w.end.to_string();
  } else {
    w.label = text.substr(p2 + 1);
  }
  if (w.label.empty()) {
    throw Error(Errc::InvalidArgument, "window label must not be empty");
  }
  return w;
}

namespace {

void validate_config(const RunConfig& config) {
  if (config.windows.empty()) {
    throw Error(Errc::InvalidArgument, "config needs at least one window");
  }
  if (config.formats.empty()) {
    throw Error(Errc::InvalidArgument, "config needs at least one output format");
  }
  for (const std::string& format : config.formats) {
    if (std::find(kKnownFormats.begin(), kKnownFormats.end(), format) ==
        kKnownFormats.end()) {
      throw Error(Errc::InvalidArgument, "unknown format '" + format + "'");
    }
  }
  if (config.output_dir.empty()) {
    throw Error(Errc::InvalidArgument, "output_dir must be set");
  }
  std::set<std::string> labels;
  for (const WindowSpec& w : config.windows) {
    if (w.label.empty() || w.label == "." || w.label == ".." ||
        w.label.find('/') != std::string::npos ||
        w.label.find('\\') != std::string::npos) {
      throw Error(Errc::InvalidArgument,
                  "window label '" + w.label + "' is not usable as a directory name");
    }
    if (!labels.insert(w.label).second) {
      throw Error(Errc::InvalidArgument, "duplicate window label '" + w.label + "'");
    }
  }
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
  return out;
}

bool wants(const RunConfig& config, const char* format) {
  return std::find(config.formats.begin(), config.formats.end(), format) !=
         config.formats.end();
}

// Mean market cap per surviving ticker over the sliced window; tickers with
// no cap cells get 0 so cap ranking still covers every node.
std::vector<double> mean_caps(const PriceTable& sliced,
                              const std::vector<std::string>& tickers) {
  std::vector<double> means(tickers.size(), 0.0);
  for (std::size_t k = 0; k < tickers.size(); ++k) {
    const std::size_t c = sliced.ticker_index(tickers[k]);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < sliced.day_count(); ++r) {
      const double cap = (*sliced.market_caps)(r, c);
      if (std::isnan(cap)) continue;
      sum += cap;
      ++count;
    }
    if (count > 0) means[k] = sum / static_cast<double>(count);
  }
  return means;
}

nlohmann::ordered_json bundle_json(const RunConfig& config,
                                   const WindowResult& result,
                                   const PriceTable& sliced) {
  nlohmann::ordered_json doc;
  doc["window"] = {{"start", result.window.start.to_string()},
                   {"end", result.window.end.to_string()},
                   {"label", result.window.label}};
  doc["parameters"] = {{"seed", config.seed},
                       {"resolution", config.resolution},
                       {"weighted", config.weighted},
                       {"drop_constant", config.drop_constant},
                       {"summary_bins", config.summary_bins}};
  doc["n_nodes"] = result.tickers.size();
  doc["tickers"] = result.tickers;
  doc["sectors"] = result.sectors;
  doc["dropped_missing"] = result.dropped_missing;
  doc["dropped_constant"] = result.dropped_constant;
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : result.tree.edges) {
    edges.push_back({{"ticker_i", result.tree.tickers[e.i]},
                     {"ticker_j", result.tree.tickers[e.j]},
                     {"distance", e.distance},
                     {"strength", e.strength}});
  }
  doc["edges"] = std::move(edges);
  doc["communities"] = result.detected.labels;
  doc["community_count"] = result.detected.community_count();
  doc["sector_partition"] = result.sector_partition.labels;
  doc["metrics"] = nlohmann::ordered_json::parse(metrics_json(result.metrics));
  doc["distance_summary"] = {{"pairs", result.summary.pair_count},
                             {"min", result.summary.min},
                             {"median", result.summary.median},
                             {"mean", result.summary.mean},
                             {"max", result.summary.max},
                             {"bin_range", {0.0, 2.0}},
                             {"bin_counts", result.summary.bin_counts}};

  const DegreeStats degrees = degree_stats(result.tree);
  const std::vector<double> degree_values(degrees.degrees.begin(),
                                          degrees.degrees.end());
  const std::vector<int> top_degree = top_fraction_by(degree_values, 0.05);
  auto hub_names = [&](const std::vector<int>& nodes) {
    std::vector<std::string> names;
    names.reserve(nodes.size());
    for (const int v : nodes) names.push_back(result.tickers[v]);
    return names;
  };
  nlohmann::ordered_json hubs;
  hubs["top_degree_nodes"] = hub_names(top_degree);
  hubs["top_degree_link_share"] = link_share(result.tree, top_degree);
  if (sliced.market_caps) {
    const std::vector<int> top_cap =
        top_fraction_by(mean_caps(sliced, result.tickers), 0.05);
    hubs["top_cap_nodes"] = hub_names(top_cap);
    hubs["top_cap_link_share"] = link_share(result.tree, top_cap);
  }
  doc["hubs"] = std::move(hubs);
  if (sliced.market_caps) {
    doc["sector_cap_averages"] = sector_cap_averages(sliced, result.window);
  }
  return doc;
}

WindowResult process_window(const PriceTable& table, const RunConfig& config,
                            const WindowSpec& window, const fs::path& dir) {
  WindowResult result;
  result.window = window;

  SliceResult sliced = slice_window(table, window);
  result.dropped_missing = sliced.dropped_tickers;

  ReturnsMatrix returns = log_returns(sliced.table, window.label);
  if (config.drop_constant) {
    result.dropped_constant = constant_tickers(returns);
    if (!result.dropped_constant.empty()) {
      returns = drop_tickers(returns, result.dropped_constant);
    }
  }
  if (returns.tickers.size() < 2) {
    throw Error(Errc::WindowDropsAll, "fewer than 2 tickers survive the window");
  }

  const DistanceMatrix dm = pearson(returns, config.threads);
  result.tree = build_mst(dm);
  result.tickers = result.tree.tickers;
  result.sectors.reserve(result.tickers.size());
  for (const std::string& ticker : result.tickers) {
    result.sectors.push_back(sliced.table.sectors.at(ticker));
  }

  const LouvainResult detected =
      louvain(result.tree, config.resolution, config.seed, config.weighted);
  result.detected = detected.partition;
  result.sector_partition = sectors_to_partition(sliced.table, result.tickers);
  const double sigma_value = sigma(result.sector_partition, result.detected);
  result.metrics = build_metrics_report(result.tree, detected.score.q, sigma_value);
  result.summary = distance_summary(dm, config.summary_bins);

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create '" + dir.string() + "'");

  if (wants(config, "graphml")) {
    auto os = open_output(dir / "mst.graphml");
    write_graphml(os, result.tree, result.sectors, result.detected);
  }
  if (wants(config, "dot")) {
    auto os = open_output(dir / "mst.dot");
    write_dot(os, result.tree, result.sectors, result.detected);
  }
  if (wants(config, "csv")) {
    {
      auto os = open_output(dir / "edges.csv");
      write_edge_csv(os, result.tree);
    }
    {
      auto os = open_output(dir / "partition.csv");
      write_partition_csv(os, result.tickers, result.detected);
    }
    {
      auto os = open_output(dir / "sector_partition.csv");
      write_partition_csv(os, result.tickers, result.sector_partition);
    }
    {
      auto os = open_output(dir / "rho.csv");
      write_matrix_csv(os, dm.tickers, dm.rho);
    }
    {
      auto os = open_output(dir / "dist.csv");
      write_matrix_csv(os, dm.tickers, dm.dist);
    }
    {
      auto os = open_output(dir / "distance_summary.csv");
      write_distance_summary_csv(os, result.summary);
    }
    {
      auto os = open_output(dir / "distance_histogram.csv");
      write_distance_histogram_csv(os, result.summary);
    }
  }
  if (wants(config, "json")) {
    {
      auto os = open_output(dir / "metrics.json");
      os << metrics_json(result.metrics);
    }
    {
      auto os = open_output(dir / "bundle.json");
      os << bundle_json(config, result, sliced.table).dump(2) << '\n';
    }
  }
  return result;
}

}  // namespace

std::vector<WindowResult> run_pipeline(const RunConfig& config) {
  validate_config(config);
  const LoadResult loaded =
      load_price_table(config.prices_path, config.sectors_path, config.caps_path);

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create '" + config.output_dir + "'");

  const std::size_t n_windows = config.windows.size();
  std::vector<WindowResult> results(n_windows);
  std::vector<std::exception_ptr> failures(n_windows);

  const auto run_one = [&](std::size_t w) {
    const fs::path dir = fs::path(config.output_dir) / config.windows[w].label;
    try {
      results[w] = process_window(loaded.table, config, config.windows[w], dir);
    } catch (const Error& e) {
      std::error_code ignored;
      fs::remove_all(dir, ignored);
      failures[w] = std::make_exception_ptr(Error(
          e.errc(), "window '" + config.windows[w].label + "': " + e.what()));
    } catch (...) {
      std::error_code ignored;
      fs::remove_all(dir, ignored);
      failures[w] = std::current_exception();
    }
  };

  int workers = config.threads;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min<int>(workers, static_cast<int>(n_windows));
  if (workers <= 1) {
    for (std::size_t w = 0; w < n_windows; ++w) run_one(w);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t w = next.fetch_add(1);
          if (w >= n_windows) return;
          run_one(w);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  auto os = open_output(fs::path(config.output_dir) / "table1.csv");
  os << "label,d,C,Q,sigma,mk\n";
  for (const WindowResult& r : results) {
    os << detail::csv_escape(r.window.label) << ',' << r.metrics.diameter << ','
       << detail::format_double(r.metrics.char_path_length) << ','
       << detail::format_double(r.metrics.modularity) << ','
       << detail::format_double(r.metrics.sigma) << ',' << r.metrics.max_degree
       << '\n';
  }
  return results;
}

}  // namespace mstnet
