#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace mstga {

using NodeId = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph. Node ids are dense 0..n-1; the
// original input labels are kept for writing results back out.
// Edges are stored once with u < v; adjacency lists are sorted.
class Graph {
public:
    Graph(NodeId node_count, std::vector<Edge> edges,
          std::vector<std::string> labels = {});

    NodeId node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }

    std::span<const NodeId> neighbors(NodeId v) const;
    NodeId degree(NodeId v) const;
    bool has_edge(NodeId u, NodeId v) const;

    const std::string& label(NodeId v) const { return labels_[v]; }
    std::optional<NodeId> node_of_label(const std::string& label) const;

private:
    NodeId node_count_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> adjacency_offsets_;  // CSR over sorted neighbor lists
    std::vector<NodeId> adjacency_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> label_to_id_;
};

struct WeightedGraph {
    Graph graph;
    std::vector<double> weights;  // aligned with graph.edges()
};

struct LoadResult {
    Graph graph;
    std::size_t dropped_self_loops = 0;
    std::size_t dropped_duplicates = 0;
};

// Parses "u v" edge lines; '#' lines are comments. Labels may be arbitrary
// tokens and are remapped to dense ids in first-appearance order.
// Self-loops and duplicate edges are dropped and counted.
// Throws std::runtime_error on malformed lines (with the line number) and
// on inputs containing no edges.
LoadResult load_edge_list(std::istream& in);
LoadResult load_edge_list_file(const std::string& path);

// Writes one "u v" line per edge, using the original labels.
void write_edge_list(std::ostream& out, const Graph& g);

// Fraction of closed triplets centred at v; 0 when degree(v) < 2.
double clustering_coefficient(const Graph& g, NodeId v);

// Mean clustering coefficient over all nodes.
double mean_clustering_coefficient(const Graph& g);

// Largest h such that v has at least h neighbors of degree >= h.
std::uint32_t h_index(const Graph& g, NodeId v);

}  // namespace mstga
