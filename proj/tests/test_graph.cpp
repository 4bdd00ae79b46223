#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mstga/graph.hpp"
#include "oracles.hpp"

using namespace mstga;

namespace {

Graph from_text(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in).graph;
}

}  // namespace

TEST_CASE("load_edge_list parses a triangle") {
    std::istringstream in("0 1\n1 2\n0 2");
    const LoadResult loaded = load_edge_list(in);
    CHECK(loaded.graph.node_count() == 3);
    CHECK(loaded.graph.edge_count() == 3);
    CHECK(loaded.dropped_self_loops == 0);
    CHECK(loaded.dropped_duplicates == 0);
}

TEST_CASE("load_edge_list drops self-loops and duplicates with counts") {
    std::istringstream in("a b\nb a\na a");
    const LoadResult loaded = load_edge_list(in);
    CHECK(loaded.graph.node_count() == 2);
    CHECK(loaded.graph.edge_count() == 1);
    CHECK(loaded.dropped_self_loops == 1);
    CHECK(loaded.dropped_duplicates == 1);
    CHECK(loaded.graph.label(0) == "a");
    CHECK(loaded.graph.label(1) == "b");
}

TEST_CASE("load_edge_list skips comments and blank lines") {
    std::istringstream in("# header\n\n0 1\n  # indented comment\n1 2\n");
    CHECK(load_edge_list(in).graph.edge_count() == 2);
}

TEST_CASE("load_edge_list rejects empty input") {
    std::istringstream in("# nothing here\n");
    CHECK_THROWS_AS(load_edge_list(in), std::runtime_error);
}

TEST_CASE("load_edge_list reports the offending line number") {
    std::istringstream in("0 1\nbroken\n");
    CHECK_THROWS_WITH_AS(load_edge_list(in),
                         doctest::Contains("line 2"), std::runtime_error);
}

TEST_CASE("karate dataset loads with the published size") {
    const LoadResult loaded =
        load_edge_list_file(std::string(MSTGA_DATA_DIR) + "/karate.txt");
    CHECK(loaded.graph.node_count() == 34);
    CHECK(loaded.graph.edge_count() == 78);
}

TEST_CASE("arbitrary labels are remapped to dense ids in appearance order") {
    const Graph g = from_text("alpha beta\ngamma alpha\n");
    CHECK(g.node_count() == 3);
    CHECK(g.label(0) == "alpha");
    CHECK(g.label(1) == "beta");
    CHECK(g.label(2) == "gamma");
    CHECK(g.node_of_label("gamma") == NodeId{2});
    CHECK_FALSE(g.node_of_label("delta").has_value());
}

TEST_CASE("degree sum equals twice the edge count and adjacency is symmetric") {
    Rng rng(7);
    for (int round = 0; round < 50; ++round) {
        const Graph g = oracles::random_graph(rng, 12, 0.4);
        std::size_t degree_sum = 0;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            degree_sum += g.degree(v);
            for (NodeId w : g.neighbors(v)) {
                CHECK(g.has_edge(w, v));
            }
        }
        CHECK(degree_sum == 2 * g.edge_count());
    }
}

TEST_CASE("edge list round-trips through serialization") {
    Rng rng(17);
    const Graph g = oracles::random_graph(rng, 10, 0.5);
    std::stringstream buffer;
    write_edge_list(buffer, g);
    const Graph reloaded = load_edge_list(buffer).graph;
    REQUIRE(reloaded.node_count() == g.node_count());
    REQUIRE(reloaded.edge_count() == g.edge_count());
    for (const Edge& e : g.edges()) {
        const NodeId u = *reloaded.node_of_label(g.label(e.u));
        const NodeId v = *reloaded.node_of_label(g.label(e.v));
        CHECK(reloaded.has_edge(u, v));
    }
}

TEST_CASE("clustering coefficient on the fixed examples") {
    const Graph triangle = from_text("0 1\n1 2\n0 2");
    for (NodeId v = 0; v < 3; ++v) {
        CHECK(clustering_coefficient(triangle, v) == doctest::Approx(1.0));
    }
    const Graph path = from_text("a b\nb c");
    CHECK(clustering_coefficient(path, *path.node_of_label("b")) == 0.0);
    CHECK(clustering_coefficient(path, *path.node_of_label("a")) == 0.0);
}

TEST_CASE("clustering coefficient matches brute-force triangle counting") {
    Rng rng(23);
    for (int round = 0; round < 60; ++round) {
        const Graph g = oracles::random_graph(rng, 8, 0.5);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            const double d = g.degree(v);
            const double expected =
                d < 2 ? 0.0
                      : 2.0 * static_cast<double>(oracles::triangles_at(g, v)) /
                            (d * (d - 1.0));
            CHECK(clustering_coefficient(g, v) == doctest::Approx(expected));
        }
    }
}

TEST_CASE("h-index of the fixed examples") {
    // isolated node: degree 0
    const Graph with_isolate(3, {{0, 1}});
    CHECK(h_index(with_isolate, 2) == 0);

    const Graph triangle = from_text("0 1\n1 2\n0 2");
    CHECK(h_index(triangle, 0) == 2);

    // star: center has 5 neighbors, all of degree 1
    const Graph star = from_text("c a\nc b\nc d\nc e\nc f");
    CHECK(h_index(star, *star.node_of_label("c")) == 1);
    CHECK(h_index(star, *star.node_of_label("a")) == 1);
}

TEST_CASE("h-index equals candidate enumeration on random graphs") {
    Rng rng(31);
    for (int round = 0; round < 40; ++round) {
        const Graph g = oracles::random_graph(rng, 9, 0.4);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            std::uint32_t expected = 0;
            for (std::uint32_t h = 0; h <= g.node_count(); ++h) {
                std::uint32_t qualified = 0;
                for (NodeId w : g.neighbors(v)) {
                    if (g.degree(w) >= h) {
                        ++qualified;
                    }
                }
                if (qualified >= h) {
                    expected = h;
                }
            }
            CHECK(h_index(g, v) == expected);
        }
    }
}
