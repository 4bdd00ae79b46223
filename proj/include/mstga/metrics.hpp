#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "mstga/encoding.hpp"
#include "mstga/graph.hpp"

namespace mstga {

// Per-community modularity term q(C) = l_C / m - (d_C / 2m)^2.
// Throws std::invalid_argument when m = 0.
double community_q(std::uint64_t intra_edges, std::uint64_t degree_sum,
                   std::uint64_t edge_count);

// Newman-Girvan modularity as the sum of per-community terms.
double modularity(const Partition& p, const Graph& g);

// Reference partition loaded from "node_label community_id" lines.
struct GroundTruth {
    std::vector<std::uint32_t> assignment;  // dense ids, graph node order
    bool covers_all_nodes = false;

    // Throws on unknown labels, duplicate nodes, or malformed lines.
    static GroundTruth load(std::istream& in, const Graph& g);
    static GroundTruth load_file(const std::string& path, const Graph& g);
};

// Normalized mutual information between two assignments over the same
// node set (label-invariant, symmetric, in [0, 1]).
double nmi(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// Throws std::invalid_argument unless the truth covers every graph node.
double nmi(const Partition& p, const GroundTruth& truth);

}  // namespace mstga
