#include "radiosim/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "radiosim/rng.hpp"

namespace radiosim {

std::size_t DirectedGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& row : out_edges) m += row.size();
  return m;
}

std::vector<std::vector<NodeId>> DirectedGraph::in_edges() const {
  std::vector<std::vector<NodeId>> in(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : out_edges[u]) in[v].push_back(u);
  return in;
}

DirectedGraph gen_gnp_directed(std::uint32_t n, double p, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_gnp_directed: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("gen_gnp_directed: p must be in [0,1]");

  DirectedGraph g;
  g.n = n;
  g.out_edges.resize(n);

  if (p == 0.0) return g;

  rng::Stream stream(rng::derive(seed, rng::kTagGraph));
  if (p == 1.0) {
    for (NodeId u = 0; u < n; ++u) {
      g.out_edges[u].reserve(n - 1);
      for (NodeId v = 0; v < n; ++v)
        if (v != u) g.out_edges[u].push_back(v);
    }
    return g;
  }

  // Geometric skipping over the n-1 candidate receivers of each node.
  const double log1mp = std::log1p(-p);
  for (NodeId u = 0; u < n; ++u) {
    std::int64_t idx = -1;
    const std::int64_t limit = static_cast<std::int64_t>(n) - 1;
    while (true) {
      const double r = stream.next_u01();
      const double skip = std::floor(std::log1p(-r) / log1mp);
      idx += 1 + static_cast<std::int64_t>(skip);
      if (idx >= limit) break;
      NodeId v = static_cast<NodeId>(idx);
      if (v >= u) ++v;  // candidate list excludes u itself
      g.out_edges[u].push_back(v);
    }
  }
  return g;
}

DirectedGraph gen_lowerbound_network(std::uint32_t n, std::uint32_t diameter) {
  if (n < 2 || !std::has_single_bit(n))
    throw std::invalid_argument(
        "gen_lowerbound_network: n must be a power of two >= 2");
  const std::uint32_t logn = static_cast<std::uint32_t>(std::bit_width(n)) - 1;
  if (diameter <= 4 * logn)
    throw std::invalid_argument(
        "gen_lowerbound_network: requires D > 4*log2(n)");

  DirectedGraph g;
  // Stars S_1..S_logn laid out as center then leaves, followed by the path.
  std::vector<NodeId> centers(logn);
  std::vector<std::vector<NodeId>> leaves(logn);
  NodeId next = 0;
  for (std::uint32_t i = 1; i <= logn; ++i) {
    centers[i - 1] = next;
    g.labels[next] = "center:" + std::to_string(i);
    ++next;
    const std::uint32_t count = 1u << i;
    leaves[i - 1].reserve(count);
    for (std::uint32_t j = 0; j < count; ++j) {
      leaves[i - 1].push_back(next);
      g.labels[next] = "leaf:" + std::to_string(i);
      ++next;
    }
  }
  const std::uint32_t path_len = diameter - 2 * logn;  // L edges, L+1 nodes
  std::vector<NodeId> path(path_len + 1);
  for (std::uint32_t j = 0; j <= path_len; ++j) {
    path[j] = next;
    g.labels[next] = "path:" + std::to_string(j);
    ++next;
  }

  g.n = next;
  g.out_edges.resize(g.n);
  for (std::uint32_t i = 0; i < logn; ++i) {
    for (NodeId leaf : leaves[i]) {
      g.out_edges[centers[i]].push_back(leaf);
      // Leaves of S_i feed the next center; the last star feeds the path
      // head. Only leaves connect forward, which puts the path tail at
      // distance exactly D from c_1.
      g.out_edges[leaf].push_back(i + 1 < logn ? centers[i + 1] : path[0]);
    }
  }
  for (std::uint32_t j = 0; j < path_len; ++j)
    g.out_edges[path[j]].push_back(path[j + 1]);
  return g;
}

DirectedGraph gen_star_dumbbell(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("gen_star_dumbbell: n must be >= 1");
  DirectedGraph g;
  g.n = 3 * n + 1;
  g.out_edges.resize(g.n);
  g.labels[0] = "source";
  for (std::uint32_t j = 1; j <= 2 * n; ++j) {
    g.out_edges[0].push_back(j);
    g.labels[j] = "mid:" + std::to_string(j);
  }
  for (std::uint32_t i = 1; i <= n; ++i) {
    const NodeId dest = 2 * n + i;
    g.out_edges[2 * i - 1].push_back(dest);
    g.out_edges[2 * i].push_back(dest);
    g.labels[dest] = "dest:" + std::to_string(i);
  }
  return g;
}

std::optional<std::uint32_t> bfs_eccentricity(const DirectedGraph& g,
                                              NodeId source) {
  if (source >= g.n)
    throw std::invalid_argument("bfs_eccentricity: source out of range");
  std::vector<std::uint32_t> dist(g.n, UINT32_MAX);
  std::deque<NodeId> queue;
  dist[source] = 0;
  queue.push_back(source);
  std::uint32_t reached = 0;
  std::uint32_t ecc = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    ++reached;
    ecc = std::max(ecc, dist[u]);
    for (NodeId v : g.out_edges[u]) {
      if (dist[v] == UINT32_MAX) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  if (reached < g.n) return std::nullopt;
  return ecc;
}

GraphSummary summarize_graph(const DirectedGraph& g) {
  GraphSummary s;
  s.n = g.n;
  s.edges = g.edge_count();
  s.avg_out_degree = g.n ? static_cast<double>(s.edges) / g.n : 0.0;
  if (g.n == 0) return s;
  s.source_eccentricity = bfs_eccentricity(g, 0);
  // Cheap diameter lower bound: max eccentricity over a few sources.
  std::optional<std::uint32_t> best = s.source_eccentricity;
  const std::uint32_t samples = std::min<std::uint32_t>(g.n, 8);
  for (std::uint32_t k = 1; k < samples; ++k) {
    const NodeId src = static_cast<NodeId>(
        (static_cast<std::uint64_t>(k) * g.n) / samples);
    if (auto e = bfs_eccentricity(g, src))
      best = std::max(best.value_or(0), *e);
  }
  s.diameter_estimate = best;
  return s;
}

void write_graph(std::ostream& os, const DirectedGraph& g) {
  os << "radiograph v1 " << g.n << ' ' << g.edge_count() << '\n';
  for (NodeId u = 0; u < g.n; ++u)
    for (NodeId v : g.out_edges[u]) os << u << ' ' << v << '\n';
  for (const auto& [node, role] : g.labels)
    os << "# label " << node << ' ' << role << '\n';
}

DirectedGraph read_graph(std::istream& is) {
  std::string magic, version;
  std::uint32_t n = 0;
  std::size_t m = 0;
  if (!(is >> magic >> version >> n >> m) || magic != "radiograph")
    throw std::runtime_error("graph file: bad header");
  if (version != "v1")
    throw std::runtime_error("graph file: unsupported version " + version);

  DirectedGraph g;
  g.n = n;
  g.out_edges.resize(n);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t u = 0, v = 0;
    if (!(is >> u >> v)) throw std::runtime_error("graph file: truncated");
    if (u >= n || v >= n || u == v)
      throw std::runtime_error("graph file: invalid edge");
    g.out_edges[u].push_back(v);
  }
  std::string line;
  std::getline(is, line);  // consume end of last edge line
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string hash, kw;
    std::uint32_t node = 0;
    std::string role;
    if (!(ls >> hash >> kw >> node >> role) || hash != "#" || kw != "label")
      throw std::runtime_error("graph file: bad label line");
    if (node >= n) throw std::runtime_error("graph file: label out of range");
    g.labels[node] = role;
  }
  return g;
}

void write_graph_file(const std::string& path, const DirectedGraph& g) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  write_graph(os, g);
}

DirectedGraph read_graph_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_graph(is);
}

}  // namespace radiosim
