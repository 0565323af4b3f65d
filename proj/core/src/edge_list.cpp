#include "rescon/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "rescon/errors.hpp"

namespace rescon {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool parse_count(std::string_view tok, std::size_t& out) {
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && p == end;
}

}  // namespace

Graph parse_edge_list(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '#') continue;
    if (toks.size() != 2) {
      throw ParseError(source, lineno,
                       have_header ? "expected 'i j', got " + std::to_string(toks.size()) + " fields"
                                   : "expected header 'n m'");
    }
    std::size_t a = 0, b = 0;
    if (!parse_count(toks[0], a) || !parse_count(toks[1], b)) {
      throw ParseError(source, lineno, "expected two non-negative integers");
    }
    if (!have_header) {
      n = a;
      m = b;
      have_header = true;
      edges.reserve(m);
      continue;
    }
    if (edges.size() == m) {
      throw ParseError(source, lineno, "more edge lines than the declared " + std::to_string(m));
    }
    if (a >= n || b >= n) {
      throw ParseError(source, lineno, "node index out of range [0," + std::to_string(n) + ")");
    }
    if (a == b) throw ParseError(source, lineno, "self-loop at node " + std::to_string(a));
    edges.emplace_back(a, b);
  }

  if (!have_header) throw ParseError(source, lineno, "missing header 'n m'");
  if (edges.size() != m) {
    throw ParseError(source, lineno,
                     "declared " + std::to_string(m) + " edges but found " + std::to_string(edges.size()));
  }
  try {
    return Graph::from_edge_list(n, edges);
  } catch (const GraphError& e) {
    throw ParseError(source, 0, e.what());
  }
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_edge_list(in, path);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

}  // namespace rescon
