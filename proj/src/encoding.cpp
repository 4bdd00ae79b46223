#include "mstga/encoding.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mstga {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

// Canonical community ids from union-find roots: communities are numbered
// by their smallest member node.
std::pair<std::vector<std::uint32_t>, std::uint32_t> canonical_assignment(
    UnionFind& uf, NodeId node_count) {
    std::vector<std::uint32_t> assignment(node_count);
    std::vector<std::uint32_t> root_to_id(node_count,
                                          std::numeric_limits<std::uint32_t>::max());
    std::uint32_t next_id = 0;
    for (NodeId v = 0; v < node_count; ++v) {
        const std::uint32_t root = uf.find(v);
        if (root_to_id[root] == std::numeric_limits<std::uint32_t>::max()) {
            root_to_id[root] = next_id++;
        }
        assignment[v] = root_to_id[root];
    }
    return {std::move(assignment), next_id};
}

Partition tallies_from_assignment(std::vector<std::uint32_t> assignment,
                                  std::uint32_t community_count, const Graph& g) {
    Partition p;
    p.assignment = std::move(assignment);
    p.community_sizes.assign(community_count, 0);
    p.intra_edges.assign(community_count, 0);
    p.degree_sums.assign(community_count, 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        ++p.community_sizes[p.assignment[v]];
        p.degree_sums[p.assignment[v]] += g.degree(v);
    }
    for (const Edge& e : g.edges()) {
        if (p.assignment[e.u] == p.assignment[e.v]) {
            ++p.intra_edges[p.assignment[e.u]];
        }
    }
    return p;
}

}  // namespace

Partition decode(const Chromosome& c, const SkeletonTree& tree, const Graph& g) {
    if (c.genes.size() != tree.gene_count()) {
        throw std::invalid_argument("chromosome length does not match skeleton");
    }
    UnionFind uf(g.node_count());
    for (GeneIndex i = 0; i < tree.gene_count(); ++i) {
        if (c.genes[i] == 0) {
            const Edge e = tree.edge_of_gene(i);
            uf.unite(e.u, e.v);
        }
    }
    auto [assignment, count] = canonical_assignment(uf, g.node_count());
    return tallies_from_assignment(std::move(assignment), count, g);
}

Chromosome encode(const Partition& p, const SkeletonTree& tree) {
    Chromosome c;
    c.genes.resize(tree.gene_count());
    UnionFind uf(tree.node_count());
    for (GeneIndex i = 0; i < tree.gene_count(); ++i) {
        const Edge e = tree.edge_of_gene(i);
        c.genes[i] = p.assignment[e.u] != p.assignment[e.v] ? 1 : 0;
        if (c.genes[i] == 0) {
            uf.unite(e.u, e.v);
        }
    }
    // Each community must form a single tree component, otherwise the
    // partition is outside the encodable space.
    std::vector<std::uint32_t> seen_root(p.community_count(),
                                         std::numeric_limits<std::uint32_t>::max());
    for (NodeId v = 0; v < tree.node_count(); ++v) {
        const std::uint32_t community = p.assignment[v];
        const std::uint32_t root = uf.find(v);
        if (seen_root[community] == std::numeric_limits<std::uint32_t>::max()) {
            seen_root[community] = root;
        } else if (seen_root[community] != root) {
            throw std::invalid_argument(
                "community " + std::to_string(community) +
                " is disconnected in the skeleton and cannot be encoded");
        }
    }
    return c;
}

Partition partition_from_assignment(std::span<const std::uint32_t> raw,
                                    const Graph& g) {
    if (raw.size() != g.node_count()) {
        throw std::invalid_argument("assignment length does not match graph");
    }
    // Relabel to canonical dense ids ordered by smallest member.
    std::vector<std::uint32_t> dense(raw.size());
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    for (NodeId v = 0; v < raw.size(); ++v) {
        auto it = remap.emplace(raw[v], static_cast<std::uint32_t>(remap.size())).first;
        dense[v] = it->second;
    }
    return tallies_from_assignment(std::move(dense),
                                   static_cast<std::uint32_t>(remap.size()), g);
}

void write_partition(std::ostream& out, const Partition& p, const Graph& g) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << g.label(v) << ' ' << p.assignment[v] << '\n';
    }
}

std::string gene_string(const Chromosome& c) {
    std::string s;
    s.reserve(c.genes.size());
    for (std::uint8_t gene : c.genes) {
        s.push_back(gene ? '1' : '0');
    }
    return s;
}

}  // namespace mstga
