#pragma once

#include <cstdint>

#include "mstnet/price_table.hpp"

namespace mstnet {

// Planted-block panel: geometric random walks whose daily shocks share a
// block factor, giving pairwise return correlation rho_in inside a block and
// rho_out across blocks. Sector labels are the block names, so the planted
// map doubles as the reference partition.
//
// Block loadings are heterogeneous: member k of every block carries a fixed
// factor loading 1 + loading_spread * u_k with u_k evenly spaced in [-1, 1],
// so the planted correlation of members k and l is
//   rho_out + (rho_in - rho_out) * (1 + s u_k)(1 + s u_l),
// averaging rho_in over pairs (exactly rho_in when loading_spread = 0). The
// spread mimics heterogeneous market betas: once correlations dominate
// sampling noise, high-loading members turn into tree hubs.
struct SynthSpec {
  int blocks = 8;
  int per_block = 10;
  int days = 500;        // price rows; returns rows = days - 1
  double rho_in = 0.7;   // 0 <= rho_out <= rho_in <= 1
  double rho_out = 0.0;
  std::uint64_t seed = 0;
  double drift = 0.0002;        // mean daily log return
  double volatility = 0.02;     // daily shock scale
  double loading_spread = 0.15; // needs (rho_in-rho_out)(1+s)^2 <= 1-rho_out
  Date start_date{2004, 1, 2};
  bool with_market_caps = true;
};

PriceTable make_planted_panel(const SynthSpec& spec);

}  // namespace mstnet
