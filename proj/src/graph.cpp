#include "sgtest/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>

#include "sgtest/errors.hpp"

namespace sgt {

Graph Graph::from_edges(NodeId n, const EdgeList& edges) {
  EdgeList normalized;
  normalized.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw NodeOutOfRange("edge (" + std::to_string(u) + "," +
                           std::to_string(v) + ") outside [0," +
                           std::to_string(n) + ")");
    }
    if (u == v) {
      throw SelfLoop("self-loop at node " + std::to_string(u));
    }
    normalized.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(normalized.begin(), normalized.end());
  normalized.erase(std::unique(normalized.begin(), normalized.end()),
                   normalized.end());

  Graph g;
  g.n_ = n;
  g.m_ = normalized.size();
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : normalized) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) {
    g.offsets_[i] += g.offsets_[i - 1];
  }
  g.adj_.resize(2 * g.m_);
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Lexicographic edge order fills every neighbor list in ascending order.
  for (const auto& [u, v] : normalized) {
    g.adj_[cursor[u]++] = v;
    g.adj_[cursor[v]++] = u;
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u == v) return false;
  // Probe the smaller list.
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

EdgeList Graph::edges() const {
  EdgeList out;
  out.reserve(m_);
  for (NodeId u = 0; u < n_; ++u) {
    for (NodeId v : neighbors(u)) {
      if (v > u) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

bool parse_u32(std::string_view token, std::uint32_t& value) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  std::string line;
  std::uint64_t line_no = 0;
  bool have_n = false;
  std::uint32_t n = 0;
  EdgeList edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (!have_n) {
      if (tokens.size() != 1 || !parse_u32(tokens[0], n)) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                         ": expected node count");
      }
      have_n = true;
      continue;
    }
    std::uint32_t u = 0, v = 0;
    if (tokens.size() != 2 || !parse_u32(tokens[0], u) ||
        !parse_u32(tokens[1], v)) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected \"u v\"");
    }
    edges.emplace_back(u, v);
  }
  if (!have_n) {
    throw ParseError(path.string() + ": missing node count line");
  }
  return Graph::from_edges(n, edges);
}

void write_edge_list(const Graph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot open " + path.string() + " for writing");
  }
  out << graph.node_count() << '\n';
  for (const auto& [u, v] : graph.edges()) {
    out << u << ' ' << v << '\n';
  }
  if (!out) {
    throw ParseError("short write to " + path.string());
  }
}

}  // namespace sgt
