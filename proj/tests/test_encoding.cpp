#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>

#include "mstga/encoding.hpp"
#include "oracles.hpp"

using namespace mstga;

namespace {

// The 14-node illustration tree used across the codec and GA tests
// (labels 1..14 map to ids 0..13). The graph is the tree itself.
WeightedGraph illustration_tree() {
    std::vector<Edge> edges = {{0, 1}, {1, 2},  {1, 3},   {3, 4},  {4, 5},
                               {4, 7}, {5, 9},  {6, 7},   {7, 8},  {9, 10},
                               {10, 11}, {10, 12}, {12, 13}};
    Graph g(14, std::move(edges));
    std::vector<double> weights(g.edge_count(), 1.0);
    return {std::move(g), std::move(weights)};
}

}  // namespace

TEST_CASE("all-zero genes decode to a single community") {
    const WeightedGraph wg = illustration_tree();
    const SkeletonTree tree = build_max_spanning_forest(wg);
    Chromosome c;
    c.genes.assign(tree.gene_count(), 0);
    const Partition p = decode(c, tree, wg.graph);
    CHECK(p.community_count() == 1);
    CHECK(p.community_sizes[0] == 14);
    CHECK(p.intra_edges[0] == wg.graph.edge_count());
    CHECK(p.degree_sums[0] == 2 * wg.graph.edge_count());
}

TEST_CASE("all-one genes decode to singletons") {
    const WeightedGraph wg = illustration_tree();
    const SkeletonTree tree = build_max_spanning_forest(wg);
    Chromosome c;
    c.genes.assign(tree.gene_count(), 1);
    const Partition p = decode(c, tree, wg.graph);
    CHECK(p.community_count() == wg.graph.node_count());
    for (std::uint32_t size : p.community_sizes) {
        CHECK(size == 1);
    }
}

TEST_CASE("illustration chromosome decodes to its three communities") {
    const WeightedGraph wg = illustration_tree();
    const SkeletonTree tree = build_max_spanning_forest(wg);
    Chromosome c;
    c.genes.assign(tree.gene_count(), 0);
    c.genes[tree.gene_of_edge(3, 4)] = 1;
    c.genes[tree.gene_of_edge(5, 9)] = 1;
    const Partition p = decode(c, tree, wg.graph);
    REQUIRE(p.community_count() == 3);
    const std::vector<std::uint32_t> expected = {0, 0, 0, 0, 1, 1, 1,
                                                 1, 1, 2, 2, 2, 2, 2};
    CHECK(p.assignment == expected);
}

TEST_CASE("decode rejects a gene-length mismatch") {
    const WeightedGraph wg = illustration_tree();
    const SkeletonTree tree = build_max_spanning_forest(wg);
    Chromosome c;
    c.genes.assign(tree.gene_count() + 1, 0);
    CHECK_THROWS_AS(decode(c, tree, wg.graph), std::invalid_argument);
}

TEST_CASE("encode of the trivial partitions") {
    const WeightedGraph wg = illustration_tree();
    const SkeletonTree tree = build_max_spanning_forest(wg);

    Chromosome ones;
    ones.genes.assign(tree.gene_count(), 1);
    const Partition singletons = decode(ones, tree, wg.graph);
    CHECK(encode(singletons, tree).genes == ones.genes);

    Chromosome zeros;
    zeros.genes.assign(tree.gene_count(), 0);
    const Partition whole = decode(zeros, tree, wg.graph);
    CHECK(encode(whole, tree).genes == zeros.genes);
}

TEST_CASE("encode rejects communities disconnected in the skeleton") {
    const WeightedGraph wg = illustration_tree();
    const SkeletonTree tree = build_max_spanning_forest(wg);
    Partition p;
    // nodes 0 and 13 together, everything else a second community: node 0
    // cannot reach node 13 without crossing the other community
    p.assignment.assign(14, 1);
    p.assignment[0] = 0;
    p.assignment[13] = 0;
    p.community_sizes = {2, 12};
    p.intra_edges = {0, 0};
    p.degree_sums = {0, 0};
    CHECK_THROWS_AS(encode(p, tree), std::invalid_argument);
}

TEST_CASE("decode and encode are mutually inverse on random trees") {
    Rng rng(2027);
    int cases = 0;
    while (cases < 1000) {
        const WeightedGraph wg = oracles::random_tree(rng, 10);
        const SkeletonTree tree = build_max_spanning_forest(wg);
        Chromosome c;
        c.genes.resize(tree.gene_count());
        for (auto& gene : c.genes) {
            gene = static_cast<std::uint8_t>(uniform_below(rng, 2));
        }
        const Partition p = decode(c, tree, wg.graph);
        CHECK(encode(p, tree).genes == c.genes);
        ++cases;
    }
}

TEST_CASE("community count is component count plus number of cut genes") {
    Rng rng(2029);
    for (int round = 0; round < 200; ++round) {
        const WeightedGraph wg = oracles::random_weighted_graph(rng, 9, 0.3);
        const SkeletonTree tree = build_max_spanning_forest(wg);
        Chromosome c;
        c.genes.resize(tree.gene_count());
        std::uint32_t ones = 0;
        for (auto& gene : c.genes) {
            gene = static_cast<std::uint8_t>(uniform_below(rng, 2));
            ones += gene;
        }
        const Partition p = decode(c, tree, wg.graph);
        CHECK(p.community_count() == tree.component_count() + ones);
    }
}

TEST_CASE("every decoded community is connected in the skeleton") {
    Rng rng(2039);
    for (int round = 0; round < 100; ++round) {
        const WeightedGraph wg = oracles::random_weighted_graph(rng, 10, 0.4);
        const SkeletonTree tree = build_max_spanning_forest(wg);
        Chromosome c;
        c.genes.resize(tree.gene_count());
        for (auto& gene : c.genes) {
            gene = static_cast<std::uint8_t>(uniform_below(rng, 2));
        }
        const Partition p = decode(c, tree, wg.graph);
        // encode throws iff some community is tree-disconnected
        CHECK_NOTHROW(encode(p, tree));
        // partition tallies are consistent
        CHECK(std::accumulate(p.community_sizes.begin(),
                              p.community_sizes.end(), 0u) ==
              wg.graph.node_count());
        CHECK(std::accumulate(p.degree_sums.begin(), p.degree_sums.end(),
                              std::uint64_t{0}) ==
              2 * wg.graph.edge_count());
        std::uint64_t intra_total = std::accumulate(
            p.intra_edges.begin(), p.intra_edges.end(), std::uint64_t{0});
        CHECK(intra_total <= wg.graph.edge_count());
    }
}

TEST_CASE("flipping any single gene changes the partition") {
    Rng rng(2053);
    const WeightedGraph wg = oracles::random_tree(rng, 10);
    const SkeletonTree tree = build_max_spanning_forest(wg);
    Chromosome c;
    c.genes.resize(tree.gene_count());
    for (auto& gene : c.genes) {
        gene = static_cast<std::uint8_t>(uniform_below(rng, 2));
    }
    const Partition before = decode(c, tree, wg.graph);
    for (GeneIndex i = 0; i < tree.gene_count(); ++i) {
        Chromosome flipped = c;
        flipped.genes[i] ^= 1;
        const Partition after = decode(flipped, tree, wg.graph);
        CHECK(after.assignment != before.assignment);
    }
}

TEST_CASE("partition output uses the node_label community_id schema") {
    const WeightedGraph wg{Graph(2, {{0, 1}}, {"left", "right"}), {1.0}};
    const SkeletonTree tree = build_max_spanning_forest(wg);
    Chromosome c;
    c.genes.assign(1, 1);
    const Partition p = decode(c, tree, wg.graph);
    std::ostringstream out;
    write_partition(out, p, wg.graph);
    CHECK(out.str() == "left 0\nright 1\n");
    CHECK(gene_string(c) == "1");
}
