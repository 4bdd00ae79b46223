#include "mstga/skeleton.hpp"

#include <ostream>
#include <queue>
#include <stdexcept>

namespace mstga {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v) {
        std::swap(u, v);
    }
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

struct Candidate {
    double weight;
    Edge edge;
    NodeId to;  // endpoint outside the tree at push time
};

// Max-weight first; ties prefer the smaller (u, v) pair.
struct CandidateLess {
    bool operator()(const Candidate& a, const Candidate& b) const {
        if (a.weight != b.weight) {
            return a.weight < b.weight;
        }
        if (a.edge.u != b.edge.u) {
            return a.edge.u > b.edge.u;
        }
        return a.edge.v > b.edge.v;
    }
};

}  // namespace

SkeletonTree::SkeletonTree(NodeId node_count, std::vector<Edge> tree_edges,
                           std::vector<double> edge_weights,
                           std::uint32_t component_count)
    : node_count_(node_count),
      tree_edges_(std::move(tree_edges)),
      edge_weights_(std::move(edge_weights)),
      component_count_(component_count) {
    if (tree_edges_.size() != edge_weights_.size()) {
        throw std::invalid_argument("tree edge/weight size mismatch");
    }
    std::vector<std::size_t> degree(node_count_, 0);
    for (GeneIndex i = 0; i < tree_edges_.size(); ++i) {
        const Edge e = tree_edges_[i];
        ++degree[e.u];
        ++degree[e.v];
        edge_to_gene_.emplace(edge_key(e.u, e.v), i);
    }
    incidence_offsets_.assign(node_count_ + 1, 0);
    for (NodeId v = 0; v < node_count_; ++v) {
        incidence_offsets_[v + 1] = incidence_offsets_[v] + degree[v];
    }
    incidence_.resize(incidence_offsets_.back());
    std::vector<std::size_t> cursor(incidence_offsets_.begin(),
                                    incidence_offsets_.end() - 1);
    for (GeneIndex i = 0; i < tree_edges_.size(); ++i) {
        incidence_[cursor[tree_edges_[i].u]++] = i;
        incidence_[cursor[tree_edges_[i].v]++] = i;
    }
}

Edge SkeletonTree::edge_of_gene(GeneIndex i) const {
    if (i >= tree_edges_.size()) {
        throw std::out_of_range("gene index out of range");
    }
    return tree_edges_[i];
}

double SkeletonTree::weight_of_gene(GeneIndex i) const {
    if (i >= edge_weights_.size()) {
        throw std::out_of_range("gene index out of range");
    }
    return edge_weights_[i];
}

GeneIndex SkeletonTree::gene_of_edge(NodeId u, NodeId v) const {
    auto it = edge_to_gene_.find(edge_key(u, v));
    if (it == edge_to_gene_.end()) {
        throw std::out_of_range("edge is not part of the skeleton");
    }
    return it->second;
}

std::span<const GeneIndex> SkeletonTree::incident_genes(NodeId v) const {
    return {incidence_.data() + incidence_offsets_[v],
            incidence_offsets_[v + 1] - incidence_offsets_[v]};
}

NodeId SkeletonTree::other_endpoint(GeneIndex i, NodeId v) const {
    const Edge e = tree_edges_[i];
    return e.u == v ? e.v : e.u;
}

SkeletonTree build_max_spanning_forest(const WeightedGraph& wg) {
    const Graph& g = wg.graph;
    if (wg.weights.size() != g.edge_count()) {
        throw std::invalid_argument("weight list does not match edge list");
    }

    // Per-node incident edge ids, for pushing candidates.
    std::vector<std::vector<std::size_t>> incident(g.node_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        incident[g.edges()[e].u].push_back(e);
        incident[g.edges()[e].v].push_back(e);
    }

    std::vector<bool> in_tree(g.node_count(), false);
    std::vector<Edge> tree_edges;
    std::vector<double> tree_weights;
    std::uint32_t components = 0;
    std::priority_queue<Candidate, std::vector<Candidate>, CandidateLess> frontier;

    auto visit = [&](NodeId v) {
        in_tree[v] = true;
        for (std::size_t e : incident[v]) {
            const Edge edge = g.edges()[e];
            const NodeId to = edge.u == v ? edge.v : edge.u;
            if (!in_tree[to]) {
                frontier.push({wg.weights[e], edge, to});
            }
        }
    };

    for (NodeId start = 0; start < g.node_count(); ++start) {
        if (in_tree[start]) {
            continue;
        }
        ++components;
        visit(start);
        while (!frontier.empty()) {
            const Candidate best = frontier.top();
            frontier.pop();
            if (in_tree[best.to]) {
                continue;  // stale entry
            }
            tree_edges.push_back(best.edge);
            tree_weights.push_back(best.weight);
            visit(best.to);
        }
    }

    return SkeletonTree(g.node_count(), std::move(tree_edges),
                        std::move(tree_weights), components);
}

void write_skeleton(std::ostream& out, const SkeletonTree& tree, const Graph& g) {
    for (GeneIndex i = 0; i < tree.gene_count(); ++i) {
        const Edge e = tree.edge_of_gene(i);
        out << i << ' ' << g.label(e.u) << ' ' << g.label(e.v) << ' '
            << tree.weight_of_gene(i) << '\n';
    }
}

}  // namespace mstga
