#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mstga/similarity.hpp"
#include "oracles.hpp"

using namespace mstga;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

double edge_weight(const WeightedGraph& wg, NodeId u, NodeId v) {
    if (u > v) {
        std::swap(u, v);
    }
    for (std::size_t e = 0; e < wg.graph.edge_count(); ++e) {
        if (wg.graph.edges()[e] == Edge{u, v}) {
            return wg.weights[e];
        }
    }
    FAIL("edge not found");
    return 0.0;
}

Graph ring(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v + 1 < n; ++v) {
        edges.push_back({v, static_cast<NodeId>(v + 1)});
    }
    edges.push_back({0, static_cast<NodeId>(n - 1)});
    return Graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("triangle edge weights across the simple measures") {
    const Graph g = triangle();
    CHECK(edge_weight(weigh_edges(g, SimilarityKind::CommonNeighbors), 0, 1) ==
          doctest::Approx(1.0));
    CHECK(edge_weight(weigh_edges(g, SimilarityKind::Jaccard), 0, 1) ==
          doctest::Approx(1.0 / 3.0));
    CHECK(edge_weight(weigh_edges(g, SimilarityKind::Cosine), 0, 1) ==
          doctest::Approx(0.5));
    CHECK(edge_weight(weigh_edges(g, SimilarityKind::HubPromoted), 0, 1) ==
          doctest::Approx(0.5));
    CHECK(edge_weight(weigh_edges(g, SimilarityKind::ResourceAllocation), 0, 1) ==
          doctest::Approx(0.5));
    CHECK(edge_weight(weigh_edges(g, SimilarityKind::AdamicAdar), 0, 1) ==
          doctest::Approx(1.0 / std::log(2.0)));
}

TEST_CASE("walk matrix rows are stochastic and isolated rows are flagged") {
    Graph g(4, {{0, 1}, {1, 2}, {0, 2}});  // node 3 is isolated
    const WalkMatrix walk(g);
    CHECK(walk.isolated(3));
    CHECK_FALSE(walk.isolated(0));
    for (NodeId u = 0; u < 3; ++u) {
        const auto rows = walk.power_rows(u, 5);
        for (int l = 1; l <= 5; ++l) {
            double sum = 0.0;
            for (double p : rows[l]) {
                sum += p;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    const auto isolated_rows = walk.power_rows(3, 3);
    for (double p : isolated_rows[2]) {
        CHECK(p == 0.0);
    }
}

TEST_CASE("srw is symmetric on a triangle edge") {
    const Graph g = triangle();
    CHECK(srw_similarity(g, 0, 1, 5) ==
          doctest::Approx(srw_similarity(g, 1, 0, 5)));
}

TEST_CASE("two-node path: even walk powers return to the start") {
    const Graph g(2, {{0, 1}});
    const WalkMatrix walk(g);
    const auto rows = walk.power_rows(0, 2);
    CHECK(rows[2][0] == doctest::Approx(1.0));
    CHECK(rows[2][1] == doctest::Approx(0.0));
    // so the l=2 term of srw(0,1) contributes nothing
    CHECK(srw_similarity(g, 0, 1, 2) == doctest::Approx(0.0));
}

TEST_CASE("srw matches the dense matrix-power oracle") {
    Rng rng(101);
    for (int round = 0; round < 40; ++round) {
        const Graph g = oracles::random_graph(rng, 6, 0.5);
        for (const Edge& e : g.edges()) {
            CHECK(srw_similarity(g, e.u, e.v, 5) ==
                  doctest::Approx(oracles::naive_srw(g, e.u, e.v, 5))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("hin equals srw on regular graphs") {
    const Graph c6 = ring(6);
    for (const Edge& e : c6.edges()) {
        CHECK(hin_similarity(c6, e.u, e.v, 5) ==
              doctest::Approx(srw_similarity(c6, e.u, e.v, 5)).epsilon(1e-12));
    }
    // triangle: every neighbor has degree 2 and h-index 2, multiplier sqrt(4)
    const Graph k3 = triangle();
    CHECK(hin_similarity(k3, 0, 1, 5) ==
          doctest::Approx(srw_similarity(k3, 0, 1, 5)).epsilon(1e-12));
}

TEST_CASE("walk similarities vanish for isolated nodes") {
    // No neighbors means no walk mass and a zero averaging multiplier.
    const Graph with_isolate(3, {{0, 1}});
    CHECK(srw_similarity(with_isolate, 2, 0, 3) == doctest::Approx(0.0));
    CHECK(hin_similarity(with_isolate, 2, 0, 3) == doctest::Approx(0.0));
}

TEST_CASE("hin matches the naive oracle") {
    Rng rng(211);
    for (int round = 0; round < 30; ++round) {
        const Graph g = oracles::random_graph(rng, 6, 0.5);
        for (const Edge& e : g.edges()) {
            CHECK(hin_similarity(g, e.u, e.v, 5) ==
                  doctest::Approx(oracles::naive_hin(g, e.u, e.v, 5))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("cndp on the fixed examples") {
    // no common neighbors -> empty sum
    const Graph path(3, {{0, 1}, {1, 2}});
    CHECK(cndp_similarity(path, 0, 1, 1.76) == doctest::Approx(0.0));

    // K4 edge: two common neighbors, each adjacent to the other one
    const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const double expected = 2.0 * std::pow(3.0, -1.76);  // mean clustering 1
    CHECK(cndp_similarity(k4, 0, 1, 1.76) == doctest::Approx(expected));
}

TEST_CASE("cndp matches the naive oracle") {
    Rng rng(307);
    for (int round = 0; round < 40; ++round) {
        const Graph g = oracles::random_graph(rng, 8, 0.5);
        for (const Edge& e : g.edges()) {
            CHECK(cndp_similarity(g, e.u, e.v, 1.76) ==
                  doctest::Approx(oracles::naive_cndp(g, e.u, e.v, 1.76))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("every measure is symmetric, finite, non-negative on random graphs") {
    Rng rng(401);
    const SimilarityParams params;
    for (int round = 0; round < 15; ++round) {
        const Graph g = oracles::random_graph(rng, 8, 0.5);
        for (SimilarityKind kind :
             {SimilarityKind::CommonNeighbors, SimilarityKind::Jaccard,
              SimilarityKind::Cosine, SimilarityKind::HubPromoted,
              SimilarityKind::AdamicAdar, SimilarityKind::ResourceAllocation,
              SimilarityKind::Cndp, SimilarityKind::Srw, SimilarityKind::Hin}) {
            const WeightedGraph wg = weigh_edges(g, kind, params);
            for (double w : wg.weights) {
                CHECK(std::isfinite(w));
                CHECK(w >= 0.0);
            }
            // bounded measures stay in [0, 1]
            if (kind == SimilarityKind::Jaccard ||
                kind == SimilarityKind::Cosine ||
                kind == SimilarityKind::HubPromoted) {
                for (double w : wg.weights) {
                    CHECK(w <= 1.0 + 1e-12);
                }
            }
        }
        // symmetry via the free functions
        for (const Edge& e : g.edges()) {
            CHECK(srw_similarity(g, e.u, e.v, 4) ==
                  doctest::Approx(srw_similarity(g, e.v, e.u, 4)));
            CHECK(hin_similarity(g, e.u, e.v, 4) ==
                  doctest::Approx(hin_similarity(g, e.v, e.u, 4)));
            CHECK(cndp_similarity(g, e.u, e.v, 1.76) ==
                  doctest::Approx(cndp_similarity(g, e.v, e.u, 1.76)));
        }
    }
}

TEST_CASE("weigh_edges agrees with the naive re-implementations") {
    Rng rng(503);
    const SimilarityParams params;
    for (int round = 0; round < 20; ++round) {
        const Graph g = oracles::random_graph(rng, 8, 0.5);
        using Naive = double (*)(const Graph&, NodeId, NodeId);
        const std::pair<SimilarityKind, Naive> table[] = {
            {SimilarityKind::CommonNeighbors, &oracles::naive_common_neighbors},
            {SimilarityKind::Jaccard, &oracles::naive_jaccard},
            {SimilarityKind::Cosine, &oracles::naive_cosine},
            {SimilarityKind::HubPromoted, &oracles::naive_hpi},
            {SimilarityKind::AdamicAdar, &oracles::naive_adamic_adar},
            {SimilarityKind::ResourceAllocation,
             &oracles::naive_resource_allocation},
        };
        for (const auto& [kind, naive] : table) {
            const WeightedGraph wg = weigh_edges(g, kind, params);
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                const Edge edge = g.edges()[e];
                CHECK(wg.weights[e] ==
                      doctest::Approx(naive(g, edge.u, edge.v)).epsilon(1e-12));
            }
        }
        for (SimilarityKind kind : {SimilarityKind::Srw, SimilarityKind::Hin}) {
            const WeightedGraph wg = weigh_edges(g, kind, params);
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                const Edge edge = g.edges()[e];
                const double expected =
                    kind == SimilarityKind::Srw
                        ? oracles::naive_srw(g, edge.u, edge.v, 5)
                        : oracles::naive_hin(g, edge.u, edge.v, 5);
                CHECK(wg.weights[e] == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("similarity names round-trip") {
    for (SimilarityKind kind :
         {SimilarityKind::CommonNeighbors, SimilarityKind::Jaccard,
          SimilarityKind::Cosine, SimilarityKind::HubPromoted,
          SimilarityKind::AdamicAdar, SimilarityKind::ResourceAllocation,
          SimilarityKind::Cndp, SimilarityKind::Srw, SimilarityKind::Hin}) {
        CHECK(similarity_from_name(similarity_name(kind)) == kind);
    }
    CHECK_FALSE(similarity_from_name("nope").has_value());
}

TEST_CASE("weighted dump format is u v weight") {
    const Graph g = triangle();
    const WeightedGraph wg = weigh_edges(g, SimilarityKind::Jaccard);
    std::ostringstream out;
    write_weighted_edge_list(out, wg);
    CHECK(out.str().find("0 1 0.333333") != std::string::npos);
}
