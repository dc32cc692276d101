#include <doctest.h>

#include <cmath>
#include <vector>

#include "treelab/graph.hpp"
#include "treelab/laplacian.hpp"
#include "treelab/rng.hpp"

using namespace treelab;

namespace {

// Independent oracle: enumerate all spanning trees of a small graph by
// subset scan and count edge / pair memberships.
struct TreeEnumeration {
    long long trees = 0;
    std::vector<long long> edge_count;
    std::vector<std::vector<long long>> pair_count;
};

TreeEnumeration enumerate_trees(const Graph& g) {
    const int n = g.n_vertices();
    const int m = g.n_edges();
    REQUIRE(m <= 16);
    TreeEnumeration out;
    out.edge_count.assign(static_cast<std::size_t>(m), 0);
    out.pair_count.assign(static_cast<std::size_t>(m),
                          std::vector<long long>(static_cast<std::size_t>(m), 0));
    std::vector<int> parent(static_cast<std::size_t>(n));
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
        if (__builtin_popcount(mask) != n - 1) continue;
        for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
        int merges = 0;
        for (EdgeId e = 0; e < m; ++e) {
            if (!(mask >> e & 1U)) continue;
            const Edge& ed = g.edge(e);
            const int a = find(ed.u), b = find(ed.v);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                ++merges;
            }
        }
        if (merges != n - 1) continue;
        ++out.trees;
        for (EdgeId e = 0; e < m; ++e) {
            if (!(mask >> e & 1U)) continue;
            ++out.edge_count[static_cast<std::size_t>(e)];
            for (EdgeId f = e + 1; f < m; ++f)
                if (mask >> f & 1U) {
                    ++out.pair_count[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)];
                    ++out.pair_count[static_cast<std::size_t>(f)][static_cast<std::size_t>(e)];
                }
        }
    }
    return out;
}

Graph random_connected_multigraph(Rng& rng, int max_edges) {
    const int n = 4 + static_cast<int>(rng.next_below(4));
    std::vector<Edge> edges;
    for (VertexId v = 1; v < n; ++v)
        edges.push_back({static_cast<VertexId>(rng.next_below(static_cast<std::uint64_t>(v))), v});
    const int extra =
        static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_edges - (n - 1) + 1)));
    for (int k = 0; k < extra; ++k) {
        VertexId u = 0, v = 0;
        while (u == v) {
            u = static_cast<VertexId>(rng.next_below(static_cast<std::uint64_t>(n)));
            v = static_cast<VertexId>(rng.next_below(static_cast<std::uint64_t>(n)));
        }
        edges.push_back({u, v});
    }
    return Graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("effective resistance closed forms") {
    const LaplacianSystem k5(complete_graph(5));
    for (EdgeId e = 0; e < 10; ++e)
        CHECK(k5.edge_probability_ust(e) == doctest::Approx(0.4).epsilon(1e-12));

    const LaplacianSystem single(Graph(2, {{0, 1}}));
    CHECK(single.effective_resistance(0, 1) == doctest::Approx(1.0).epsilon(1e-12));

    const LaplacianSystem path(Graph(3, {{0, 1}, {1, 2}}));
    CHECK(path.effective_resistance(0, 2) == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(k5.effective_resistance(2, 2), std::invalid_argument);
    const LaplacianSystem split(Graph(4, {{0, 1}, {2, 3}}));
    CHECK_THROWS_AS(split.effective_resistance(0, 2), std::runtime_error);
}

TEST_CASE("resistance symmetry and triangle inequality") {
    const Graph g = random_regular(12, 3, 77);
    const LaplacianSystem sys(g);
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int u = static_cast<int>(rng.next_below(12));
        int v = u, w = u;
        while (v == u) v = static_cast<int>(rng.next_below(12));
        while (w == u || w == v) w = static_cast<int>(rng.next_below(12));
        CHECK(sys.effective_resistance(u, v) ==
              doctest::Approx(sys.effective_resistance(v, u)).epsilon(1e-12));
        CHECK(sys.effective_resistance(u, w) <=
              sys.effective_resistance(u, v) + sys.effective_resistance(v, w) + 1e-12);
    }
}

TEST_CASE("tree counts against closed forms") {
    CHECK(LaplacianSystem(complete_graph(4)).tree_count().count.to_string() == "16");
    CHECK(LaplacianSystem(cycle_graph(4)).tree_count().count.to_string() == "4");
    CHECK(LaplacianSystem(complete_graph(9)).tree_count().count.to_string() == "4782969");
    // Cayley for a larger case and the bipartite double power.
    CHECK(LaplacianSystem(complete_graph(20)).tree_count().count ==
          BigInt::pow(20, 18));
    CHECK(LaplacianSystem(complete_bipartite(3)).tree_count().count.to_string() == "81");

    const TreeCount lps_count = LaplacianSystem(lps_gadget().graph).tree_count();
    CHECK(lps_count.count.to_int64() == enumerate_trees(lps_gadget().graph).trees);

    // Degenerate hosts.
    CHECK(LaplacianSystem(complete_graph(1)).tree_count().count.to_string() == "1");
    CHECK(LaplacianSystem(complete_graph(1)).foster_sum() == doctest::Approx(0.0));

    const TreeCount disconnected = LaplacianSystem(Graph(4, {{0, 1}, {2, 3}})).tree_count();
    CHECK(!disconnected.connected);
    CHECK(disconnected.count.is_zero());

    // Beyond the exact cap the log route kicks in; compare on a case where
    // the exact value is known: 70^68 for the complete graph on 70 vertices.
    const TreeCount big = LaplacianSystem(complete_graph(70)).tree_count();
    CHECK(!big.exact);
    CHECK(big.log_value == doctest::Approx(68.0 * std::log(70.0)).epsilon(1e-9));
}

TEST_CASE("edge and pair probabilities match enumeration on small graphs") {
    Rng rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        const Graph g = random_connected_multigraph(rng, 12);
        const TreeEnumeration brute = enumerate_trees(g);
        REQUIRE(brute.trees > 0);
        const LaplacianSystem sys(g);
        const double total = static_cast<double>(brute.trees);
        for (EdgeId e = 0; e < g.n_edges(); ++e) {
            CHECK(sys.edge_probability_ust(e) ==
                  doctest::Approx(brute.edge_count[static_cast<std::size_t>(e)] / total)
                      .epsilon(1e-10));
            for (EdgeId f = e + 1; f < g.n_edges(); ++f)
                CHECK(sys.pair_probability_ust(e, f) ==
                      doctest::Approx(
                          brute.pair_count[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] /
                          total)
                          .epsilon(1e-10));
        }
    }
}

TEST_CASE("bridges carry probability one and factor out of pairs") {
    // Two triangles joined by a bridge.
    const Graph g(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}});
    const LaplacianSystem sys(g);
    CHECK(sys.edge_probability_ust(3) == doctest::Approx(1.0).epsilon(1e-12));
    for (EdgeId f = 0; f < g.n_edges(); ++f) {
        if (f == 3) continue;
        CHECK(sys.pair_probability_ust(3, f) ==
              doctest::Approx(sys.edge_probability_ust(f)).epsilon(1e-10));
    }
}

TEST_CASE("parallel bundles split presence probability evenly") {
    const LpsGadget gadget = lps_gadget();
    const LaplacianSystem sys(gadget.graph);
    const TreeEnumeration brute = enumerate_trees(gadget.graph);
    const double total = static_cast<double>(brute.trees);
    // Each copy in a 3-bundle has the same probability, equal to the
    // endpoint resistance; the bundle as a whole gets three times that.
    const double each = sys.edge_probability_ust(gadget.bundle_a[0]);
    for (EdgeId e : gadget.bundle_a)
        CHECK(sys.edge_probability_ust(e) == doctest::Approx(each).epsilon(1e-12));
    CHECK(each ==
          doctest::Approx(brute.edge_count[static_cast<std::size_t>(gadget.bundle_a[0])] / total)
              .epsilon(1e-10));
    // Two edges of one bundle can never appear together.
    CHECK(sys.pair_probability_ust(gadget.bundle_a[0], gadget.bundle_a[1]) ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("node law at the source vertex") {
    for (const Graph& g : {petersen_graph(), random_regular(12, 3, 5), complete_graph(6)}) {
        const LaplacianSystem sys(g);
        for (EdgeId e = 0; e < std::min(g.n_edges(), 6); ++e) {
            const VertexId x = g.edge(e).u;
            double outflow = 0;
            for (const auto& [z, f] : g.adjacency(x)) {
                (void)z;
                const double current = sys.transfer_current(e, f);
                outflow += g.edge(f).u == x ? current : -current;
            }
            CHECK(outflow == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("foster sum equals n-1") {
    for (const Graph& g : {complete_graph(5), petersen_graph(), cycle_graph(9),
                           random_regular(20, 4, 91), lps_gadget().graph}) {
        const LaplacianSystem sys(g);
        CHECK(sys.foster_sum() ==
              doctest::Approx(g.n_vertices() - 1.0).epsilon(1e-10));
    }
    // Trees: every edge has resistance exactly one.
    const Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(LaplacianSystem(star).foster_sum() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("wedge resistances on complete hosts") {
    const LaplacianSystem k4(complete_graph(4));
    const WedgeResistances w = k4.wedge_resistances(0, 1, 2, 3);
    CHECK(w.r1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.r2 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.t == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.k == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(w.alpha == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.beta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.gamma == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(k4.wedge_resistances(0, 1, 1, 3), std::invalid_argument);
}

TEST_CASE("resistance buckets") {
    // Complete graphs: every edge sits in the lowest bucket.
    const LaplacianSystem k10(complete_graph(10));
    const ResistanceBuckets buckets = k10.resistance_buckets(9);
    CHECK(buckets.sizes.front() == k10.graph().n_edges());
    CHECK(buckets.bound_holds);

    // Sharpness hosts put exactly the bridges at resistance one.
    const SharpnessGraph g7 = sharpness_graph(7);
    REQUIRE(g7.bridge_edges.size() == 7);
    const LaplacianSystem sys(g7.graph);
    const ResistanceBuckets sharp = sys.resistance_buckets(7);
    CHECK(sharp.bound_holds);
    CHECK(sharp.sizes.back() == 7);

    const LaplacianSystem r60(random_regular(60, 3, 4242));
    CHECK(r60.resistance_buckets(3).bound_holds);
    CHECK_THROWS_AS(r60.resistance_buckets(2), std::invalid_argument);
}

TEST_CASE("dense-block neighbor resistances concentrate near 2/q") {
    const SharpnessBlock block = sharpness_block(7);
    const int q = block.graph.n_vertices();
    const LaplacianSystem sys(block.graph);
    const double center = 2.0 / q;
    const double band = 10.0 / (static_cast<double>(q) * q);
    for (const Edge& ed : block.graph.edges()) {
        const double r = sys.effective_resistance(ed.u, ed.v);
        CHECK(r >= center - band);
        CHECK(r <= center + band);
    }
}

TEST_CASE("non-adjacent pairs on complete graphs are exactly independent") {
    const LaplacianSystem k7(complete_graph(7));
    const Graph& g = k7.graph();
    for (EdgeId e = 0; e < g.n_edges(); ++e)
        for (EdgeId f = e + 1; f < g.n_edges(); ++f) {
            const Edge& a = g.edge(e);
            const Edge& b = g.edge(f);
            const bool adjacent = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
            if (adjacent) continue;
            CHECK(k7.pair_probability_ust(e, f) ==
                  doctest::Approx(4.0 / 49.0).epsilon(1e-12));
        }
}

TEST_CASE("complement-inverse route agrees with grounded solves") {
    for (int d : {5, 7}) {
        const SharpnessBlock block = sharpness_block(d);
        const LaplacianSystem sys(block.graph);
        Rng rng(static_cast<std::uint64_t>(d));
        for (int trial = 0; trial < 10; ++trial) {
            const int n = block.graph.n_vertices();
            const int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            int v = u;
            while (v == u) v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            CHECK(complement_route_resistance(block.graph, u, v) ==
                  doctest::Approx(sys.effective_resistance(u, v)).epsilon(1e-10));
        }
    }
}

TEST_CASE("pairwise negative correlation of the uniform measure") {
    for (const Graph& g : {random_regular(10, 3, 314), petersen_graph(), lps_gadget().graph,
                           complete_graph(7)}) {
        const LaplacianSystem sys(g);
        for (EdgeId e = 0; e < g.n_edges(); ++e)
            for (EdgeId f = e + 1; f < g.n_edges(); ++f) {
                const double pair = sys.pair_probability_ust(e, f);
                const double product =
                    sys.edge_probability_ust(e) * sys.edge_probability_ust(f);
                CHECK(pair <= product + 1e-12);
                CHECK(pair <= sys.edge_probability_ust(e) + 1e-12);
                CHECK(pair >= -1e-12);
            }
    }
}
