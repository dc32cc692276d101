#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "treelab/graph.hpp"
#include "treelab/laplacian.hpp"
#include "treelab/rng.hpp"
#include "treelab/ust.hpp"

using namespace treelab;

namespace {

// Enumeration oracle for sum over vertices of E[deg^2] on tiny graphs.
double brute_mean_sq_degree(const Graph& g) {
    const int n = g.n_vertices();
    const int m = g.n_edges();
    REQUIRE(m <= 16);
    std::vector<int> parent(static_cast<std::size_t>(n));
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    long long trees = 0, weighted = 0;
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
        if (__builtin_popcount(mask) != n - 1) continue;
        for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
        int merges = 0;
        for (EdgeId e = 0; e < m; ++e)
            if (mask >> e & 1U) {
                const Edge& ed = g.edge(e);
                const int a = find(ed.u), b = find(ed.v);
                if (a != b) {
                    parent[static_cast<std::size_t>(a)] = b;
                    ++merges;
                }
            }
        if (merges != n - 1) continue;
        ++trees;
        std::vector<int> degree(static_cast<std::size_t>(n), 0);
        for (EdgeId e = 0; e < m; ++e)
            if (mask >> e & 1U) {
                ++degree[static_cast<std::size_t>(g.edge(e).u)];
                ++degree[static_cast<std::size_t>(g.edge(e).v)];
            }
        for (int value : degree) weighted += static_cast<long long>(value) * value;
    }
    REQUIRE(trees > 0);
    return static_cast<double>(weighted) / (static_cast<double>(trees) * n);
}

std::vector<EdgeId> sorted(std::vector<EdgeId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("wilson sampler produces spanning trees uniformly on the 4-cycle") {
    const Graph c4 = cycle_graph(4);
    Rng rng(99);
    std::map<std::vector<EdgeId>, int> frequency;
    const int samples = 40000;
    for (int s = 0; s < samples; ++s) {
        auto tree = sorted(sample_ust(c4, rng));
        REQUIRE(tree.size() == 3);
        REQUIRE(is_forest(c4, tree));
        ++frequency[tree];
    }
    REQUIRE(frequency.size() == 4);
    for (const auto& [tree, count] : frequency) {
        // Each tree has probability 1/4; allow 4 standard deviations.
        const double se = std::sqrt(0.25 * 0.75 * samples);
        CHECK(std::abs(count - samples * 0.25) <= 4 * se);
    }
}

TEST_CASE("wilson edge frequency on K4 matches 1/2") {
    const Graph k4 = complete_graph(4);
    Rng rng(123);
    const int samples = 100000;
    std::vector<long long> count(6, 0);
    for (int s = 0; s < samples; ++s)
        for (EdgeId e : sample_ust(k4, rng)) ++count[static_cast<std::size_t>(e)];
    for (long long c : count) {
        const double se = std::sqrt(0.5 * 0.5 * samples);
        CHECK(std::abs(c - samples * 0.5) <= 4 * se);
    }
}

TEST_CASE("wilson on a tree returns the tree") {
    const Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    Rng rng(5);
    CHECK(sorted(sample_ust(star, rng)) == std::vector<EdgeId>{0, 1, 2, 3});
}

TEST_CASE("closed-form complete-graph moments") {
    const KnMoments m4 = kn_ust_moments(4);
    CHECK(m4.mean_sq_degree == doctest::Approx(2.625).epsilon(1e-14));
    CHECK(m4.p0 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m4.p2 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(m4.p1 == doctest::Approx(3.0 / 16).epsilon(1e-14));
    // p2 equals p0^2 exactly for the uniform measure on complete hosts.
    for (int n : {4, 7, 19}) {
        const KnMoments m = kn_ust_moments(n);
        CHECK(m.p2 == doctest::Approx(m.p0 * m.p0).epsilon(1e-14));
    }
    CHECK(kn_ust_moments(1000000).mean_sq_degree == doctest::Approx(5.0).epsilon(1e-5));
    CHECK_THROWS_AS(kn_ust_moments(3), std::invalid_argument);
}

TEST_CASE("upper bound closed form") {
    CHECK(ust_upper_bound(3) == doctest::Approx(6.0 - 10.0 / 16 - 2.0 / 12).epsilon(1e-14));
    CHECK(ust_upper_bound(9) == doctest::Approx(6.0 - 16.0 / 100 - 2.0 / 90).epsilon(1e-14));
    CHECK(ust_upper_bound(100000) == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("bipartite threshold closed form") {
    CHECK(knn_threshold(2) == doctest::Approx(2.4375).epsilon(1e-14));
    CHECK(knn_threshold(3) ==
          doctest::Approx(5.0 - 13.0 / 6 + 1.0 / 3 - 1.0 / 54).epsilon(1e-14));
    CHECK(knn_threshold(100000000) == doctest::Approx(5.0).epsilon(1e-6));
    CHECK_THROWS_AS(knn_threshold(1), std::invalid_argument);
}

TEST_CASE("exact mean squared degree on complete graphs") {
    for (int n : {4, 5, 8, 12}) {
        const LaplacianSystem sys(complete_graph(n));
        const SecondMomentReport report = exact_mean_sq_degree(sys);
        CHECK(report.mean_sq_degree ==
              doctest::Approx(kn_ust_moments(n).mean_sq_degree).epsilon(1e-10));
        CHECK(report.identity_residual <= 1e-10);
    }
}

TEST_CASE("exact mean squared degree on cycles matches enumeration") {
    for (int n : {4, 5, 6, 7, 8}) {
        const Graph c = cycle_graph(n);
        const double brute = brute_mean_sq_degree(c);
        const LaplacianSystem sys(c);
        const SecondMomentReport report = exact_mean_sq_degree(sys);
        CHECK(report.mean_sq_degree == doctest::Approx(brute).epsilon(1e-10));
        // The enumeration gives 4 - 6/n: one uniformly random cycle edge is
        // dropped and only its endpoints lose degree.
        CHECK(brute == doctest::Approx(4.0 - 6.0 / n).epsilon(1e-12));
    }
}

TEST_CASE("petersen second moment sits under the bound") {
    const LaplacianSystem sys(petersen_graph());
    const SecondMomentReport report = exact_mean_sq_degree(sys);
    CHECK(report.mean_sq_degree < 6.0);
    CHECK(report.mean_sq_degree <= report.upper_bound_value);
    CHECK(report.mean_sq_degree == doctest::Approx(brute_mean_sq_degree(petersen_graph()))
                                       .epsilon(1e-9));
}

TEST_CASE("wedge-law weighting equals the ordered-pair average") {
    const Graph g = random_regular(14, 4, 321);
    const LaplacianSystem sys(g);
    const int d = 4;
    // Route A: uniform ordered wedges.
    double route_a = 0;
    long long wedges = 0;
    for (VertexId x = 0; x < g.n_vertices(); ++x) {
        const auto& adj = g.adjacency(x);
        for (std::size_t i = 0; i < adj.size(); ++i)
            for (std::size_t j = 0; j < adj.size(); ++j) {
                if (i == j) continue;
                const WedgeResistances w = sys.wedge_resistances(x, adj[i].first, adj[j].first, d);
                route_a += w.r1 * w.r2 - w.k * w.k;
                ++wedges;
            }
    }
    route_a /= static_cast<double>(wedges);
    // Route B: two-step walk from a uniform vertex conditioned on not
    // backtracking; each wedge then has weight 1/(n d^2) / (1 - 1/d).
    double route_b = 0;
    for (VertexId x = 0; x < g.n_vertices(); ++x) {
        const auto& adj = g.adjacency(x);
        for (std::size_t i = 0; i < adj.size(); ++i)
            for (std::size_t j = 0; j < adj.size(); ++j) {
                if (adj[i].first == adj[j].first) continue;
                const WedgeResistances w = sys.wedge_resistances(x, adj[i].first, adj[j].first, d);
                route_b += (w.r1 * w.r2 - w.k * w.k) /
                           (g.n_vertices() * d * d * (1.0 - 1.0 / d));
            }
    }
    CHECK(route_a == doctest::Approx(route_b).epsilon(1e-10));
}

TEST_CASE("second-moment identities from transfer currents") {
    for (const Graph& g : {complete_graph(4), complete_graph(5), cycle_graph(6),
                           lps_gadget().graph}) {
        const LaplacianSystem sys(g);
        const IdentityResiduals residuals = second_moment_identity_check(sys);
        CHECK(std::abs(residuals.adjacent) <= 1e-10);
        CHECK(std::abs(residuals.non_adjacent) <= 1e-10);
    }
}

TEST_CASE("identities hold pathwise on empirical frequencies") {
    // The ordered-pair relations are deterministic per spanning tree, so
    // sampled frequency tables must satisfy them up to rounding even at
    // small sample counts.
    const Graph petersen = petersen_graph();
    const PairTable table = empirical_pair_table(petersen, 2000, 7, 2);
    const IdentityResiduals residuals = check_pair_identities(petersen, table);
    CHECK(std::abs(residuals.adjacent) <= 1e-9);
    CHECK(std::abs(residuals.non_adjacent) <= 1e-9);
}

TEST_CASE("identity residuals vanish on trees") {
    const Graph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    const IdentityResiduals residuals = second_moment_identity_check(LaplacianSystem(path));
    CHECK(std::abs(residuals.adjacent) <= 1e-12);
    CHECK(std::abs(residuals.non_adjacent) <= 1e-12);
}

TEST_CASE("wedge expectations match closed forms") {
    const LaplacianSystem petersen(petersen_graph());
    const WedgeExpectationReport report = wedge_expectations(petersen);
    CHECK(report.e_alpha == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(report.e_alpha == doctest::Approx(report.alpha_closed_form).epsilon(1e-10));
    CHECK(report.e_gamma == doctest::Approx(report.gamma_closed_form).epsilon(1e-10));
    CHECK(report.e_k == doctest::Approx(report.k_closed_form).epsilon(1e-10));
    CHECK(report.e_alpha_beta <= report.alpha_beta_bound + 1e-12);
    CHECK(report.alpha_beta_bound == doctest::Approx(1.0 / 12).epsilon(1e-12));
    CHECK(report.split_identity_max <= 1e-12);

    // Complete hosts have alpha = gamma = 0.
    const WedgeExpectationReport kn = wedge_expectations(LaplacianSystem(complete_graph(8)));
    CHECK(kn.e_alpha == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(kn.e_gamma == doctest::Approx(0.0).epsilon(1e-11));

    const WedgeExpectationReport reg =
        wedge_expectations(LaplacianSystem(random_regular(30, 4, 8)));
    CHECK(reg.alpha_closed_form == doctest::Approx(2.0 * 25 / (30.0 * 4 * 5)).epsilon(1e-12));
    CHECK(reg.e_alpha == doctest::Approx(reg.alpha_closed_form).epsilon(1e-10));

    CHECK_THROWS_AS(wedge_expectations(LaplacianSystem(cycle_graph(5))), std::invalid_argument);
}

TEST_CASE("resistance-square and degree-square budgets") {
    const MomentBudgetReport k20 = moment_budget_check(LaplacianSystem(complete_graph(20)));
    CHECK(k20.sum_reff_sq == doctest::Approx(190 * 0.01).epsilon(1e-10));
    CHECK(k20.ok);
    CHECK(moment_budget_check(LaplacianSystem(sharpness_graph(7).graph)).ok);
    CHECK(moment_budget_check(LaplacianSystem(random_regular(60, 6, 6))).ok);
}

TEST_CASE("sharpness sweep factorization matches the full graph at d = 5") {
    const auto rows = sharpness_sweep({5, 7});
    REQUIRE(rows.size() == 2);
    const LaplacianSystem full(sharpness_graph(5).graph);
    const SecondMomentReport direct = exact_mean_sq_degree(full);
    CHECK(rows[0].m_value == doctest::Approx(direct.mean_sq_degree).epsilon(1e-10));
    CHECK(rows[0].m_value < rows[0].upper_bound);
    CHECK(rows[1].m_value > rows[0].m_value);
    // Block average stays near 5 as promised by the dense-block estimate.
    CHECK(std::abs(rows[0].block_avg_deg_sq - 5.0) <= 30.0 / rows[0].q);
}

TEST_CASE("sampled mean squared degree agrees with the exact value") {
    struct Case {
        Graph graph;
        std::uint64_t samples;
    };
    const std::vector<Case> cases = {{petersen_graph(), 100000},
                                     {complete_graph(8), 50000},
                                     {cycle_graph(10), 50000},
                                     {random_regular(20, 4, 64), 50000}};
    std::uint64_t seed = 31337;
    for (const Case& c : cases) {
        const double exact = exact_mean_sq_degree(LaplacianSystem(c.graph)).mean_sq_degree;
        const EstimatorReport mc = mc_mean_sq_degree(c.graph, c.samples, seed++, 2);
        CHECK(mc.sigmas_from(exact) <= 4.0);
    }
}
