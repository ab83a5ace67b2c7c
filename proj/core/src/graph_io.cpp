#include "mstnet/graph_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <tuple>
#include <unordered_map>

#include "csv.hpp"
#include "mstnet/error.hpp"
#include "mstnet/metrics.hpp"
#include "num_format.hpp"

namespace mstnet {
namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void check_alignment(const WeightedTree& tree,
                     const std::vector<std::string>& sectors,
                     const Partition& detected) {
  if (sectors.size() != tree.tickers.size() ||
      detected.node_count() != tree.tickers.size()) {
    throw Error(Errc::NodeSetMismatch,
                "sectors and partition must align with the tree's tickers");
  }
}

}  // namespace

void write_graphml(std::ostream& os, const WeightedTree& tree,
                   const std::vector<std::string>& sectors,
                   const Partition& detected) {
  check_alignment(tree, sectors, detected);
  const DegreeStats degrees = degree_stats(tree);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"d0\" for=\"node\" attr.name=\"ticker\" attr.type=\"string\"/>\n"
     << "  <key id=\"d1\" for=\"node\" attr.name=\"sector\" attr.type=\"string\"/>\n"
     << "  <key id=\"d2\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n"
     << "  <key id=\"d3\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n"
     << "  <key id=\"d4\" for=\"edge\" attr.name=\"distance\" attr.type=\"double\"/>\n"
     << "  <key id=\"d5\" for=\"edge\" attr.name=\"strength\" attr.type=\"double\"/>\n"
     << "  <graph id=\"mst\" edgedefault=\"undirected\">\n";
  for (int v = 0; v < tree.node_count(); ++v) {
    os << "    <node id=\"n" << v << "\">\n"
       << "      <data key=\"d0\">" << xml_escape(tree.tickers[v]) << "</data>\n"
       << "      <data key=\"d1\">" << xml_escape(sectors[v]) << "</data>\n"
       << "      <data key=\"d2\">" << detected.labels[v] << "</data>\n"
       << "      <data key=\"d3\">" << degrees.degrees[v] << "</data>\n"
       << "    </node>\n";
  }
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const Edge& edge = tree.edges[e];
    os << "    <edge id=\"e" << e << "\" source=\"n" << edge.i << "\" target=\"n"
       << edge.j << "\">\n"
       << "      <data key=\"d4\">" << detail::format_double(edge.distance)
       << "</data>\n"
       << "      <data key=\"d5\">" << detail::format_double(edge.strength)
       << "</data>\n"
       << "    </edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& os, const WeightedTree& tree,
               const std::vector<std::string>& sectors,
               const Partition& detected) {
  check_alignment(tree, sectors, detected);
  os << "graph mst {\n";
  for (int v = 0; v < tree.node_count(); ++v) {
    os << "  n" << v << " [label=\"" << dot_escape(tree.tickers[v])
       << "\" sector=\"" << dot_escape(sectors[v]) << "\" community="
       << detected.labels[v] << "];\n";
  }
  for (const Edge& e : tree.edges) {
    os << "  n" << e.i << " -- n" << e.j << " [distance="
       << detail::format_double(e.distance) << " strength="
       << detail::format_double(e.strength) << "];\n";
  }
  os << "}\n";
}

void write_edge_csv(std::ostream& os, const WeightedTree& tree) {
  os << "ticker_i,ticker_j,distance,strength\n";
  for (const Edge& e : tree.edges) {
    os << detail::csv_escape(tree.tickers[e.i]) << ','
       << detail::csv_escape(tree.tickers[e.j]) << ','
       << detail::format_double(e.distance) << ','
       << detail::format_double(e.strength) << '\n';
  }
}

WeightedTree read_edge_csv(std::istream& is) {
  std::vector<std::string> fields;
  if (!detail::read_csv_record(is, fields) || fields.size() != 4 ||
      fields[0] != "ticker_i" || fields[1] != "ticker_j" ||
      fields[2] != "distance" || fields[3] != "strength") {
    throw Error(Errc::MalformedCsv,
                "edge CSV header must be 'ticker_i,ticker_j,distance,strength'");
  }
  WeightedTree tree;
  std::unordered_map<std::string, int> ids;
  const auto node_of = [&](const std::string& ticker) {
    const auto [it, inserted] = ids.emplace(ticker, static_cast<int>(ids.size()));
    if (inserted) tree.tickers.push_back(ticker);
    return it->second;
  };
  while (detail::read_csv_record(is, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 4) {
      throw Error(Errc::MalformedCsv, "edge CSV rows need 4 fields");
    }
    Edge e;
    const int a = node_of(fields[0]);
    const int b = node_of(fields[1]);
    if (a == b) throw Error(Errc::MalformedCsv, "self edge '" + fields[0] + "'");
    e.i = std::min(a, b);
    e.j = std::max(a, b);
    try {
      e.distance = std::stod(fields[2]);
      e.strength = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw Error(Errc::MalformedCsv, "unparsable edge weight");
    }
    tree.edges.push_back(e);
  }
  std::sort(tree.edges.begin(), tree.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.distance, a.i, a.j) < std::tie(b.distance, b.i, b.j);
  });
  return tree;
}

void write_partition_csv(std::ostream& os, const std::vector<std::string>& tickers,
                         const Partition& partition) {
  if (partition.node_count() != tickers.size()) {
    throw Error(Errc::NodeSetMismatch, "partition does not cover the ticker list");
  }
  os << "ticker,community_id\n";
  for (std::size_t v = 0; v < tickers.size(); ++v) {
    os << detail::csv_escape(tickers[v]) << ',' << partition.labels[v] << '\n';
  }
}

void write_matrix_csv(std::ostream& os, const std::vector<std::string>& tickers,
                      const Matrix& values) {
  if (values.rows() != tickers.size() || values.cols() != tickers.size()) {
    throw Error(Errc::NodeSetMismatch, "matrix shape does not match ticker list");
  }
  os << "ticker";
  for (const std::string& ticker : tickers) os << ',' << detail::csv_escape(ticker);
  os << '\n';
  for (std::size_t r = 0; r < values.rows(); ++r) {
    os << detail::csv_escape(tickers[r]);
    for (std::size_t c = 0; c < values.cols(); ++c) {
      os << ',' << detail::format_double(values(r, c));
    }
    os << '\n';
  }
}

void write_distance_summary_csv(std::ostream& os, const DistanceSummary& summary) {
  os << "stat,value\n"
     << "pairs," << summary.pair_count << '\n'
     << "min," << detail::format_double(summary.min) << '\n'
     << "median," << detail::format_double(summary.median) << '\n'
     << "mean," << detail::format_double(summary.mean) << '\n'
     << "max," << detail::format_double(summary.max) << '\n';
}

void write_distance_histogram_csv(std::ostream& os, const DistanceSummary& summary) {
  os << "bin_start,bin_end,count\n";
  const auto bins = static_cast<double>(summary.bin_counts.size());
  for (std::size_t b = 0; b < summary.bin_counts.size(); ++b) {
    os << detail::format_double(2.0 * static_cast<double>(b) / bins) << ','
       << detail::format_double(2.0 * static_cast<double>(b + 1) / bins) << ','
       << summary.bin_counts[b] << '\n';
  }
}

}  // namespace mstnet
