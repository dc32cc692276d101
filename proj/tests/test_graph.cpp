#include <doctest.h>

#include <set>
#include <sstream>

#include "treelab/errors.hpp"
#include "treelab/graph.hpp"
#include "treelab/rng.hpp"

using namespace treelab;

namespace {

long long degree_sum(const Graph& g) {
    long long total = 0;
    for (VertexId v = 0; v < g.n_vertices(); ++v) total += g.degree(v);
    return total;
}

std::vector<EdgeId> all_edges(const Graph& g) {
    std::vector<EdgeId> ids(static_cast<std::size_t>(g.n_edges()));
    for (EdgeId e = 0; e < g.n_edges(); ++e) ids[static_cast<std::size_t>(e)] = e;
    return ids;
}

}  // namespace

TEST_CASE("complete graph basics") {
    const Graph k4 = complete_graph(4);
    CHECK(k4.n_vertices() == 4);
    CHECK(k4.n_edges() == 6);
    CHECK(k4.regular_degree() == 3);
    CHECK(k4.is_simple());

    const Graph k1 = complete_graph(1);
    CHECK(k1.n_vertices() == 1);
    CHECK(k1.n_edges() == 0);

    CHECK_THROWS_AS(complete_graph(0), std::invalid_argument);
}

TEST_CASE("complete bipartite basics") {
    const Graph c4 = complete_bipartite(2);
    CHECK(c4.n_vertices() == 4);
    CHECK(c4.n_edges() == 4);
    CHECK(c4.regular_degree() == 2);

    const Graph k33 = complete_bipartite(3);
    CHECK(k33.n_edges() == 9);
    CHECK(k33.regular_degree() == 3);
}

TEST_CASE("handshake over generated families") {
    for (int n : {1, 2, 5, 9}) {
        const Graph g = complete_graph(n);
        CHECK(degree_sum(g) == 2LL * g.n_edges());
    }
    for (int n : {2, 3, 6}) CHECK(degree_sum(complete_bipartite(n)) == 2LL * n * n);
    CHECK(degree_sum(petersen_graph()) == 30);
    CHECK(degree_sum(cycle_graph(17)) == 34);
}

TEST_CASE("lps gadget structure") {
    const LpsGadget gadget = lps_gadget();
    CHECK(gadget.graph.n_vertices() == 4);
    CHECK(gadget.graph.n_edges() == 10);
    for (VertexId v = 0; v < 4; ++v) CHECK(gadget.graph.degree(v) == 5);
    CHECK(gadget.graph.multiplicity(0, 1) == 3);
    CHECK(gadget.graph.multiplicity(2, 3) == 3);
    CHECK(!gadget.graph.is_simple());

    // Removing one full bundle leaves the graph connected.
    std::vector<Edge> remaining;
    std::set<EdgeId> bundle(gadget.bundle_a.begin(), gadget.bundle_a.end());
    for (EdgeId e = 0; e < gadget.graph.n_edges(); ++e)
        if (!bundle.count(e)) remaining.push_back(gadget.graph.edge(e));
    CHECK(is_connected(Graph(4, remaining)));
}

TEST_CASE("sharpness block degrees and edge count") {
    const SharpnessBlock block = sharpness_block(5);
    CHECK(block.graph.n_vertices() == 7);
    CHECK(block.graph.degree(block.port) == 4);
    for (VertexId v = 0; v < 7; ++v)
        if (v != block.port) CHECK(block.graph.degree(v) == 5);
    // Deleted: two port edges plus a matching of (q-3)/2 = 2 edges.
    CHECK(block.graph.n_edges() == 21 - 2 - 2);
    CHECK(is_connected(block.graph));

    CHECK_THROWS_AS(sharpness_block(4), std::invalid_argument);
    CHECK_THROWS_AS(sharpness_block(3), std::invalid_argument);
}

TEST_CASE("sharpness graph structure") {
    const SharpnessGraph g5 = sharpness_graph(5);
    CHECK(g5.graph.n_vertices() == 36);
    CHECK(g5.graph.regular_degree() == 5);
    CHECK(g5.graph.is_simple());
    CHECK(is_connected(g5.graph));

    const auto found = bridges(g5.graph);
    CHECK(found == g5.bridge_edges);

    // Removing the bridges leaves d block components plus the center.
    std::vector<EdgeId> non_bridges;
    std::set<EdgeId> bridge_set(found.begin(), found.end());
    for (EdgeId e = 0; e < g5.graph.n_edges(); ++e)
        if (!bridge_set.count(e)) non_bridges.push_back(e);
    CHECK(component_count(g5.graph, non_bridges) == 5 + 1);

    // Every copy is the block itself under the labelled translation.
    const SharpnessBlock block = sharpness_block(5);
    const int q = 7;
    const int block_edges = block.graph.n_edges();
    for (int copy = 0; copy < 5; ++copy) {
        const int base_vertex = 1 + copy * q;
        const int base_edge = copy * (block_edges + 1) + 1;  // skip the bridge
        CHECK(g5.ports[static_cast<std::size_t>(copy)] == base_vertex + block.port);
        for (EdgeId e = 0; e < block_edges; ++e) {
            const Edge& ours = g5.graph.edge(base_edge + e);
            const Edge& theirs = block.graph.edge(e);
            CHECK(ours.u == base_vertex + theirs.u);
            CHECK(ours.v == base_vertex + theirs.v);
        }
    }

    const SharpnessGraph g7 = sharpness_graph(7);
    CHECK(g7.graph.n_vertices() == 64);
    CHECK(g7.graph.regular_degree() == 7);
}

TEST_CASE("random regular generator") {
    const Graph g1 = random_regular(4, 3, 11);
    CHECK(g1.n_edges() == 6);  // K4 is the only simple 3-regular graph on 4 vertices
    CHECK(g1.regular_degree() == 3);

    const Graph g2 = random_regular(6, 3, 5);
    CHECK(g2.n_edges() == 9);
    CHECK(g2.regular_degree() == 3);
    CHECK(is_connected(g2));
    CHECK(g2.is_simple());

    CHECK_THROWS_AS(random_regular(5, 3, 1), std::invalid_argument);  // nd odd
}

TEST_CASE("random regular is deterministic in the seed") {
    const Graph a = random_regular(20, 4, 999);
    const Graph b = random_regular(20, 4, 999);
    REQUIRE(a.n_edges() == b.n_edges());
    for (EdgeId e = 0; e < a.n_edges(); ++e) {
        CHECK(a.edge(e).u == b.edge(e).u);
        CHECK(a.edge(e).v == b.edge(e).v);
    }
    const Graph c = random_regular(20, 4, 1000);
    bool identical = true;
    for (EdgeId e = 0; e < a.n_edges() && identical; ++e)
        identical = a.edge(e).u == c.edge(e).u && a.edge(e).v == c.edge(e).v;
    CHECK(!identical);
}

TEST_CASE("structural queries") {
    const Graph k4 = complete_graph(4);
    CHECK(component_count(k4, all_edges(k4)) == 1);
    CHECK(!is_forest(k4, all_edges(k4)));

    const std::vector<EdgeId> star = {0, 1, 2};  // edges 0-1, 0-2, 0-3
    CHECK(is_forest(k4, star));
    CHECK(component_count(k4, star) == 1);
    CHECK(component_count(k4, std::vector<EdgeId>{}) == 4);

    CHECK(bridges(k4).empty());
    // A path has every edge as a bridge.
    const Graph path(3, {{0, 1}, {1, 2}});
    CHECK(bridges(path).size() == 2);
    // Parallel edges are never bridges.
    const Graph doubled(2, {{0, 1}, {0, 1}});
    CHECK(bridges(doubled).empty());
}

TEST_CASE("self-loops and bad endpoints rejected") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("serialization round trip") {
    const LpsGadget gadget = lps_gadget();
    std::stringstream buffer;
    write_graph(buffer, gadget.graph);
    const Graph back = read_graph(buffer);
    REQUIRE(back.n_vertices() == gadget.graph.n_vertices());
    REQUIRE(back.n_edges() == gadget.graph.n_edges());
    for (EdgeId e = 0; e < back.n_edges(); ++e) {
        CHECK(back.edge(e).u == gadget.graph.edge(e).u);
        CHECK(back.edge(e).v == gadget.graph.edge(e).v);
    }
}

TEST_CASE("graph spec mini-language") {
    CHECK(graph_from_spec("complete:7").graph.n_edges() == 21);
    CHECK(graph_from_spec("bipartite:3").graph.n_edges() == 9);
    CHECK(graph_from_spec("cycle:8").graph.n_edges() == 8);
    CHECK(graph_from_spec("petersen").graph.n_vertices() == 10);
    CHECK(graph_from_spec("lps").graph.n_edges() == 10);
    CHECK(graph_from_spec("sharpness:5").graph.n_vertices() == 36);
    CHECK(graph_from_spec("regular:10:3:4").graph.regular_degree() == 3);
    CHECK_THROWS_AS(graph_from_spec("nope:3"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_spec("complete"), std::invalid_argument);
}
