#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mstga/graph.hpp"

namespace mstga {

// Node-similarity indices used to weight the edges of the input graph.
// All of them are evaluated on existing edges only; neighborhoods are open
// (a node is not its own neighbor).
enum class SimilarityKind {
    CommonNeighbors,
    Jaccard,
    Cosine,
    HubPromoted,
    AdamicAdar,
    ResourceAllocation,
    Cndp,
    Srw,
    Hin,
};

struct SimilarityParams {
    double cndp_beta = 1.76;  // degree-penalization exponent constant
    int walk_horizon = 5;     // T for the random-walk measures
};

// CLI names: cn, jaccard, cosine, hpi, aa, ra, cndp, srw, hin.
std::optional<SimilarityKind> similarity_from_name(std::string_view name);
std::string_view similarity_name(SimilarityKind kind);

// Row-stochastic random-walk transition probabilities of a graph.
// Rows of isolated nodes are all-zero and flagged.
class WalkMatrix {
public:
    explicit WalkMatrix(const Graph& g) : graph_(&g) {}

    // Dense rows of pi^l for walks starting at u, for l = 0..horizon.
    std::vector<std::vector<double>> power_rows(NodeId u, int horizon) const;

    bool isolated(NodeId v) const { return graph_->degree(v) == 0; }

private:
    const Graph* graph_;
};

// Assigns weight similarity(u, v) to every existing edge (u, v).
WeightedGraph weigh_edges(const Graph& g, SimilarityKind kind,
                          const SimilarityParams& params = {});

double srw_similarity(const Graph& g, NodeId u, NodeId v, int horizon);
double hin_similarity(const Graph& g, NodeId u, NodeId v, int horizon);
double cndp_similarity(const Graph& g, NodeId u, NodeId v, double beta);

// Writes "u v weight" lines using the original labels.
void write_weighted_edge_list(std::ostream& out, const WeightedGraph& wg);

}  // namespace mstga
