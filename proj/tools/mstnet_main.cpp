#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mstnet/error.hpp"
#include "mstnet/pipeline.hpp"
#include "mstnet/price_table.hpp"
#include "mstnet/synth.hpp"

namespace fs = std::filesystem;

namespace {

std::string round3(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

void do_run(const mstnet::RunConfig& config) {
  const std::vector<mstnet::WindowResult> results = mstnet::run_pipeline(config);
  for (const mstnet::WindowResult& r : results) {
    const mstnet::MetricsReport& m = r.metrics;
    char pct[16];
    std::snprintf(pct, sizeof pct, "%.1f%%", 100.0 * m.sigma);
    std::cout << r.window.label << ": N=" << m.n_nodes << " d=" << m.diameter
              << " C=" << round3(m.char_path_length) << " Q=" << round3(m.modularity)
              << " sigma=" << round3(m.sigma) << " (" << pct << ")"
              << " mk=" << m.max_degree;
    if (!r.dropped_missing.empty() || !r.dropped_constant.empty()) {
      std::cout << " [dropped " << r.dropped_missing.size() << " missing, "
                << r.dropped_constant.size() << " constant]";
    }
    std::cout << '\n';
  }
  std::cout << "wrote " << (fs::path(config.output_dir) / "table1.csv").string()
            << '\n';
}

void write_file(const fs::path& path, const auto& writer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw mstnet::Error(mstnet::Errc::Io, "cannot write '" + path.string() + "'");
  writer(os);
}

void do_synth(const mstnet::SynthSpec& spec, const std::string& out_dir) {
  const mstnet::PriceTable table = mstnet::make_planted_panel(spec);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw mstnet::Error(mstnet::Errc::Io, "cannot create '" + out_dir + "'");
  const fs::path root(out_dir);
  write_file(root / "prices.csv", [&](std::ostream& os) { write_prices_csv(os, table); });
  write_file(root / "sectors.csv", [&](std::ostream& os) { write_sectors_csv(os, table); });
  if (table.market_caps) {
    write_file(root / "caps.csv", [&](std::ostream& os) { write_caps_csv(os, table); });
  }
  std::cout << "wrote " << table.ticker_count() << " tickers x "
            << table.day_count() << " days (" << spec.blocks << " blocks of "
            << spec.per_block << ") to " << out_dir << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation-network toolkit: price panels to minimal spanning "
               "trees, communities, and topology reports"};
  app.set_version_flag("--version", "mstnet 0.1.0");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "",
                 "INI config file with a [run] or [synth] section; command "
                 "line flags override its keys");

  auto* run = app.add_subcommand("run", "Run the pipeline over one or more windows");
  std::string prices;
  std::string sectors;
  std::string caps;
  std::string output_dir;
  std::vector<std::string> window_specs;
  mstnet::RunConfig config;
  run->add_option("--prices", prices, "Wide price CSV: date,TICKER1,...")->required();
  run->add_option("--sectors", sectors, "Sector map CSV: ticker,sector")->required();
  run->add_option("--caps", caps, "Wide market-cap CSV aligned to the price panel");
  run->add_option("--window", window_specs,
                  "Window START:END[:LABEL] (ISO dates); repeatable")
      ->required();
  run->add_option("--seed", config.seed, "Community detection shuffle seed")
      ->capture_default_str();
  run->add_option("--resolution", config.resolution, "Modularity resolution")
      ->capture_default_str();
  run->add_flag("--weighted,!--unweighted", config.weighted,
                "Use strength weights for community detection");
  run->add_flag("--drop-constant", config.drop_constant,
                "Drop zero-variance tickers instead of failing");
  run->add_option("--output-dir", output_dir, "Artifact root directory")->required();
  run->add_option("--format", config.formats,
                  "Artifact formats (graphml, dot, json, csv); repeatable")
      ->check(CLI::IsMember(mstnet::kKnownFormats))
      ->capture_default_str();
  run->add_option("--threads", config.threads,
                  "Worker threads, 0 means hardware count")
      ->capture_default_str();
  run->add_option("--bins", config.summary_bins, "Distance histogram bin count")
      ->capture_default_str();
  run->callback([&] {
    config.prices_path = prices;
    config.sectors_path = sectors;
    if (!caps.empty()) config.caps_path = caps;
    config.output_dir = output_dir;
    config.windows.clear();
    for (const std::string& text : window_specs) {
      config.windows.push_back(mstnet::parse_window_spec(text));
    }
    do_run(config);
  });

  auto* synth = app.add_subcommand("synth", "Generate a planted-block price panel");
  mstnet::SynthSpec spec;
  std::string out_dir;
  std::string start_date = spec.start_date.to_string();
  bool no_caps = false;
  synth->add_option("--blocks", spec.blocks, "Planted block count")->capture_default_str();
  synth->add_option("--per-block", spec.per_block, "Tickers per block")
      ->capture_default_str();
  synth->add_option("--days", spec.days, "Price rows to generate")->capture_default_str();
  synth->add_option("--rho-in", spec.rho_in, "Within-block return correlation")
      ->capture_default_str();
  synth->add_option("--rho-out", spec.rho_out, "Cross-block return correlation")
      ->capture_default_str();
  synth->add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
  synth->add_option("--drift", spec.drift, "Mean daily log return")->capture_default_str();
  synth->add_option("--volatility", spec.volatility, "Daily shock scale")
      ->capture_default_str();
  synth->add_option("--loading-spread", spec.loading_spread,
                    "Within-block factor-loading spread (0 = equicorrelated)")
      ->capture_default_str();
  synth->add_option("--start-date", start_date, "First price row date")
      ->capture_default_str();
  synth->add_flag("--no-caps", no_caps, "Skip the market-cap panel");
  synth->add_option("--out", out_dir, "Output directory")->required();
  synth->callback([&] {
    spec.start_date = mstnet::Date::parse(start_date);
    spec.with_market_caps = !no_caps;
    do_synth(spec, out_dir);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const mstnet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
