#include "mstnet/synth.hpp"

#include <cmath>
#include <random>
#include <string>

#include "mstnet/error.hpp"

namespace mstnet {
namespace {

std::string block_name(int block) {
  // B01, B02, ... keeps labels sortable for any block count.
  std::string name = "B";
  const std::string digits = std::to_string(block + 1);
  if (digits.size() < 2) name += '0';
  return name + digits;
}

}  // namespace

PriceTable make_planted_panel(const SynthSpec& spec) {
  if (spec.blocks < 1 || spec.per_block < 1) {
    throw Error(Errc::InvalidArgument, "need at least one block and one member");
  }
  if (spec.days < 3) {
    throw Error(Errc::InvalidArgument, "need at least 3 days");
  }
  if (!(0.0 <= spec.rho_out && spec.rho_out <= spec.rho_in && spec.rho_in <= 1.0)) {
    throw Error(Errc::InvalidArgument,
                "correlations must satisfy 0 <= rho_out <= rho_in <= 1");
  }
  if (!(spec.volatility > 0.0)) {
    throw Error(Errc::InvalidArgument, "volatility must be positive");
  }
  if (!(spec.loading_spread >= 0.0)) {
    throw Error(Errc::InvalidArgument, "loading spread must be non-negative");
  }
  const double top_loading = 1.0 + spec.loading_spread;
  if ((spec.rho_in - spec.rho_out) * top_loading * top_loading >
      1.0 - spec.rho_out + 1e-12) {
    const double max_spread =
        std::sqrt((1.0 - spec.rho_out) / (spec.rho_in - spec.rho_out)) - 1.0;
    throw Error(Errc::InvalidArgument,
                "loading spread " + std::to_string(spec.loading_spread) +
                    " too large for these correlations (max " +
                    std::to_string(max_spread) + ")");
  }

  const int n = spec.blocks * spec.per_block;
  PriceTable table;
  table.tickers.reserve(n);
  for (int b = 0; b < spec.blocks; ++b) {
    const std::string sector = block_name(b);
    for (int k = 0; k < spec.per_block; ++k) {
      std::string ticker = sector + "S";
      const std::string digits = std::to_string(k + 1);
      if (digits.size() < 2) ticker += '0';
      ticker += digits;
      table.sectors.emplace(ticker, sector);
      table.tickers.push_back(std::move(ticker));
    }
  }

  table.dates.reserve(spec.days);
  Date day = spec.start_date;
  for (int t = 0; t < spec.days; ++t) {
    table.dates.push_back(day);
    day = day.next_day();
  }

  // Shock for member k of block b on day t (independent standard normals):
  //   sqrt(rho_out) G_t + w_block c_k F_{b,t} + sqrt(1 - rho_out - w_block^2 c_k^2) e
  // giving unit variance, within-block corr rho_out + w_block^2 c_k c_l, and
  // cross-block corr rho_out.
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double w_global = std::sqrt(spec.rho_out);
  const double w_block = std::sqrt(spec.rho_in - spec.rho_out);
  std::vector<double> w_member(spec.per_block);
  std::vector<double> w_own(spec.per_block);
  for (int k = 0; k < spec.per_block; ++k) {
    const double u = spec.per_block == 1
                         ? 0.0
                         : (2.0 * k - (spec.per_block - 1)) / (spec.per_block - 1);
    w_member[k] = w_block * (1.0 + spec.loading_spread * u);
    w_own[k] = std::sqrt(
        std::max(0.0, 1.0 - spec.rho_out - w_member[k] * w_member[k]));
  }

  table.prices = Matrix(spec.days, n);
  std::vector<double> log_price(n, std::log(100.0));
  for (int i = 0; i < n; ++i) table.prices(0, i) = std::exp(log_price[i]);
  for (int t = 1; t < spec.days; ++t) {
    const double global = gauss(rng);
    std::vector<double> block_factor(spec.blocks);
    for (int b = 0; b < spec.blocks; ++b) block_factor[b] = gauss(rng);
    for (int i = 0; i < n; ++i) {
      const int k = i % spec.per_block;
      const double shock = w_global * global +
                           w_member[k] * block_factor[i / spec.per_block] +
                           w_own[k] * gauss(rng);
      log_price[i] += spec.drift + spec.volatility * shock;
      table.prices(t, i) = std::exp(log_price[i]);
    }
  }

  if (spec.with_market_caps) {
    // cap = price x a fixed per-ticker share count, log-uniform across two
    // decades so cap ranking is stable within the window.
    std::uniform_real_distribution<double> log_shares(std::log(1e7), std::log(1e9));
    std::vector<double> shares(n);
    for (int i = 0; i < n; ++i) shares[i] = std::exp(log_shares(rng));
    Matrix caps(spec.days, n);
    for (int t = 0; t < spec.days; ++t) {
      for (int i = 0; i < n; ++i) caps(t, i) = table.prices(t, i) * shares[i];
    }
    table.market_caps = std::move(caps);
  }
  return table;
}

}  // namespace mstnet
