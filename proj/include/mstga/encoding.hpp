#pragma once

#include <cstdint>
#include <vector>

#include "mstga/skeleton.hpp"

namespace mstga {

// Binary gene vector over skeleton edges: gene = 1 cuts the tree edge
// (community boundary), gene = 0 keeps it. The per-community modularity
// terms and their sum are cached alongside, aligned with decode() ids.
struct Chromosome {
    std::vector<std::uint8_t> genes;
    double fitness = 0.0;
    std::vector<double> community_q;

    bool has_cache() const { return !community_q.empty() || genes.empty(); }
};

// Node -> community assignment with the tallies modularity needs.
// Community ids are dense and canonical: ordered by smallest member node.
struct Partition {
    std::vector<std::uint32_t> assignment;
    std::vector<std::uint32_t> community_sizes;
    std::vector<std::uint64_t> intra_edges;  // edges of the full graph inside C
    std::vector<std::uint64_t> degree_sums;  // sum of full-graph degrees over C

    std::uint32_t community_count() const {
        return static_cast<std::uint32_t>(community_sizes.size());
    }
};

// Communities are the connected components of the skeleton forest after
// removing all gene = 1 edges; tallies are computed against the full graph.
// Throws std::invalid_argument on a gene-length mismatch.
Partition decode(const Chromosome& c, const SkeletonTree& tree, const Graph& g);

// Inverse of decode: gene i = 1 iff tree edge i crosses communities.
// Throws std::invalid_argument if some community is disconnected in the
// skeleton (such a partition is not representable).
Chromosome encode(const Partition& p, const SkeletonTree& tree);

// Builds a partition (canonical ids, tallies) from a raw node -> community
// map, which does not need to be tree-connected or densely labeled.
Partition partition_from_assignment(std::span<const std::uint32_t> raw,
                                    const Graph& g);

// Writes "node_label community_id" lines (the ground-truth schema).
void write_partition(std::ostream& out, const Partition& p, const Graph& g);

// Gene vector as a 0/1 string, for debugging.
std::string gene_string(const Chromosome& c);

}  // namespace mstga
