#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "mstga/graph.hpp"

namespace mstga {

using GeneIndex = std::uint32_t;

// Maximum-weight spanning forest of the similarity-weighted graph.
// Tree edges carry the stable gene indexing used by the chromosome
// encoding: gene i <-> tree_edges[i] in Prim discovery order.
class SkeletonTree {
public:
    SkeletonTree(NodeId node_count, std::vector<Edge> tree_edges,
                 std::vector<double> edge_weights, std::uint32_t component_count);

    NodeId node_count() const { return node_count_; }
    GeneIndex gene_count() const { return static_cast<GeneIndex>(tree_edges_.size()); }
    std::uint32_t component_count() const { return component_count_; }

    // Throws std::out_of_range for an invalid gene index.
    Edge edge_of_gene(GeneIndex i) const;
    double weight_of_gene(GeneIndex i) const;
    GeneIndex gene_of_edge(NodeId u, NodeId v) const;

    std::span<const GeneIndex> incident_genes(NodeId v) const;
    NodeId other_endpoint(GeneIndex i, NodeId v) const;

private:
    NodeId node_count_;
    std::vector<Edge> tree_edges_;
    std::vector<double> edge_weights_;
    std::uint32_t component_count_;
    std::vector<std::size_t> incidence_offsets_;
    std::vector<GeneIndex> incidence_;
    std::unordered_map<std::uint64_t, GeneIndex> edge_to_gene_;
};

// Prim with a max-priority queue, started from the smallest node id of each
// component. Equal weights are resolved toward the lexicographically smaller
// (min-endpoint, max-endpoint) pair, so the result is deterministic.
// Disconnected inputs yield a forest with node_count - component_count genes.
SkeletonTree build_max_spanning_forest(const WeightedGraph& wg);

// Writes "gene_index u v weight" lines using the original labels.
void write_skeleton(std::ostream& out, const SkeletonTree& tree, const Graph& g);

}  // namespace mstga
