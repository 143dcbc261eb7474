#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace radiosim {

using NodeId = std::uint32_t;

/// Directed radio network. An edge u -> v means v can hear a transmission
/// from u (transmitter -> receiver). The reverse need not hold.
struct DirectedGraph {
  std::uint32_t n = 0;
  std::vector<std::vector<NodeId>> out_edges;  // per node, receiver ids
  std::map<NodeId, std::string> labels;        // construction roles, optional

  std::size_t edge_count() const;

  // Receiver-side adjacency, derived on demand.
  std::vector<std::vector<NodeId>> in_edges() const;
};

struct GraphSummary {
  std::uint32_t n = 0;
  std::size_t edges = 0;
  double avg_out_degree = 0.0;
  std::optional<std::uint32_t> source_eccentricity;  // from node 0
  std::optional<std::uint32_t> diameter_estimate;    // max sampled eccentricity
};

/// G(n,p): each ordered pair (u,v), u != v, gets edge u -> v independently
/// with probability p. Deterministic for a given seed.
DirectedGraph gen_gnp_directed(std::uint32_t n, double p, std::uint64_t seed);

/// Layered star-and-path network. n must be a power of two and
/// D > 4*log2(n). Stars S_1..S_log n (center c_i, 2^i leaves, edges
/// center -> leaf), each leaf of S_i feeding c_{i+1}, the leaves of
/// S_log n feeding the head of a path of length D - 2*log2(n).
/// Node 0 is c_1, the broadcast source. Labels: center:i, leaf:i, path:j.
DirectedGraph gen_lowerbound_network(std::uint32_t n, std::uint32_t diameter);

/// Dumbbell witness network with 3n+1 nodes: source s -> u_1..u_2n, and
/// u_{2i-1} -> d_i, u_{2i} -> d_i. Node 0 is s. Labels: source, mid:j, dest:i.
DirectedGraph gen_star_dumbbell(std::uint32_t n);

/// Longest shortest path from source over directed edges, or nullopt if
/// some node is unreachable.
std::optional<std::uint32_t> bfs_eccentricity(const DirectedGraph& g,
                                              NodeId source);

GraphSummary summarize_graph(const DirectedGraph& g);

// Graph file format: "radiograph v1 <n> <m>" header, m edge lines "<u> <v>",
// then optional "# label <node> <role>" lines. Readers reject other versions.
void write_graph(std::ostream& os, const DirectedGraph& g);
DirectedGraph read_graph(std::istream& is);

void write_graph_file(const std::string& path, const DirectedGraph& g);
DirectedGraph read_graph_file(const std::string& path);

}  // namespace radiosim
