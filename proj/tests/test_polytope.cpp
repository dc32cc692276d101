#include <doctest.h>

#include <algorithm>
#include <vector>

#include "treelab/graph.hpp"
#include "treelab/laplacian.hpp"
#include "treelab/polytope.hpp"
#include "treelab/rational.hpp"
#include "treelab/rng.hpp"

using namespace treelab;

namespace {

std::vector<EdgeId> all_edges(const Graph& g) {
    std::vector<EdgeId> ids(static_cast<std::size_t>(g.n_edges()));
    for (EdgeId e = 0; e < g.n_edges(); ++e) ids[static_cast<std::size_t>(e)] = e;
    return ids;
}

std::vector<std::uint32_t> enumerate_forest_masks(const Graph& g) {
    const int n = g.n_vertices();
    const int m = g.n_edges();
    std::vector<std::uint32_t> forests;
    std::vector<int> parent(static_cast<std::size_t>(n));
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
        for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
        bool acyclic = true;
        for (EdgeId e = 0; e < m && acyclic; ++e) {
            if (!(mask >> e & 1U)) continue;
            const Edge& ed = g.edge(e);
            const int a = find(ed.u), b = find(ed.v);
            if (a == b)
                acyclic = false;
            else
                parent[static_cast<std::size_t>(a)] = b;
        }
        if (acyclic) forests.push_back(mask);
    }
    return forests;
}

// Exact rational feasibility of x in the convex hull of forest indicators:
// phase-one simplex with Bland's rule over equality constraints
//   sum_F lambda_F 1_F(e) = x_e  (each edge),  sum_F lambda_F = 1, lambda >= 0.
bool in_forest_hull_exact(const Graph& g, const std::vector<Rational>& x) {
    const auto forests = enumerate_forest_masks(g);
    const int m = g.n_edges();
    const int rows = m + 1;
    const int structural = static_cast<int>(forests.size());
    const int cols = structural + rows + 1;  // + artificials + rhs

    std::vector<std::vector<Rational>> tableau(
        static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols), Rational(0)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < structural; ++j)
            tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                Rational((forests[static_cast<std::size_t>(j)] >> i) & 1U);
        tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols - 1)] = x[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < structural; ++j)
        tableau[static_cast<std::size_t>(rows - 1)][static_cast<std::size_t>(j)] = Rational(1);
    tableau[static_cast<std::size_t>(rows - 1)][static_cast<std::size_t>(cols - 1)] = Rational(1);
    std::vector<int> basis(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        basis[static_cast<std::size_t>(i)] = structural + i;
        tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(structural + i)] = Rational(1);
    }
    // Phase-one objective: minimize the artificial total; expressed through
    // the negated column sums of the constraint rows.
    std::vector<Rational> objective(static_cast<std::size_t>(cols), Rational(0));
    for (int j = 0; j < cols; ++j) {
        Rational total(0);
        for (int i = 0; i < rows; ++i)
            total = total + tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        objective[static_cast<std::size_t>(j)] = -total;
    }
    for (int i = 0; i < rows; ++i)
        objective[static_cast<std::size_t>(structural + i)] = Rational(0);

    for (int round = 0; round < 100000; ++round) {
        int entering = -1;
        for (int j = 0; j < cols - 1; ++j)
            if (objective[static_cast<std::size_t>(j)] < Rational(0)) {
                entering = j;
                break;  // Bland's rule: smallest index
            }
        if (entering < 0) break;
        int leaving = -1;
        Rational best_ratio(0);
        for (int i = 0; i < rows; ++i) {
            const Rational& pivot = tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(entering)];
            if (pivot > Rational(0)) {
                const Rational ratio =
                    tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols - 1)] / pivot;
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio &&
                     basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
        }
        REQUIRE(leaving >= 0);  // phase-one problem is bounded below
        const Rational pivot =
            tableau[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(entering)];
        for (int j = 0; j < cols; ++j)
            tableau[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(j)] =
                tableau[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(j)] / pivot;
        for (int i = 0; i < rows; ++i) {
            if (i == leaving) continue;
            const Rational factor =
                tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(entering)];
            if (factor == Rational(0)) continue;
            for (int j = 0; j < cols; ++j)
                tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                    factor * tableau[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(j)];
        }
        const Rational factor = objective[static_cast<std::size_t>(entering)];
        if (factor != Rational(0))
            for (int j = 0; j < cols; ++j)
                objective[static_cast<std::size_t>(j)] =
                    objective[static_cast<std::size_t>(j)] -
                    factor * tableau[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(j)];
        basis[static_cast<std::size_t>(leaving)] = entering;
    }
    // Feasible iff every artificial ended at zero.
    Rational artificial_total(0);
    for (int i = 0; i < rows; ++i)
        if (basis[static_cast<std::size_t>(i)] >= structural)
            artificial_total = artificial_total +
                               tableau[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols - 1)];
    return artificial_total == Rational(0);
}

}  // namespace

TEST_CASE("matroid rank values") {
    const Graph k4 = complete_graph(4);
    CHECK(matroid_rank(k4, all_edges(k4)) == 3);
    CHECK(matroid_rank(k4, std::vector<EdgeId>{}) == 0);
    // Triangle inside K4 (edges 0-1, 0-2, 1-2 are ids 0, 1, 3).
    CHECK(matroid_rank(k4, std::vector<EdgeId>{0, 1, 3}) == 2);
}

TEST_CASE("rank is submodular on random pairs") {
    const Graph g = petersen_graph();
    Rng rng(17);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::uint32_t a = static_cast<std::uint32_t>(rng.next_u64() & 0x7fffU);
        const std::uint32_t b = static_cast<std::uint32_t>(rng.next_u64() & 0x7fffU);
        auto collect = [&](std::uint32_t mask) {
            std::vector<EdgeId> ids;
            for (EdgeId e = 0; e < g.n_edges(); ++e)
                if (mask >> e & 1U) ids.push_back(e);
            return ids;
        };
        const int ra = matroid_rank(g, collect(a));
        const int rb = matroid_rank(g, collect(b));
        const int r_union = matroid_rank(g, collect(a | b));
        const int r_inter = matroid_rank(g, collect(a & b));
        CHECK(ra + rb >= r_union + r_inter);
    }
}

TEST_CASE("membership basics") {
    const Graph k4 = complete_graph(4);
    CHECK(forest_polytope_membership(k4, std::vector<double>(6, 0.0)).member);
    // A spanning tree indicator is a vertex of the polytope.
    std::vector<double> star(6, 0.0);
    star[0] = star[1] = star[2] = 1.0;  // edges 0-1, 0-2, 0-3
    CHECK(forest_polytope_membership(k4, star).member);
    // All-ones on a triangle violates the rank of its vertex set.
    const Graph triangle = cycle_graph(3);
    const MembershipVerdict verdict =
        forest_polytope_membership(triangle, std::vector<double>(3, 1.0));
    CHECK(!verdict.member);
    CHECK(verdict.worst_violation == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(verdict.worst_set == std::vector<VertexId>{0, 1, 2});
    CHECK_THROWS_AS(forest_polytope_membership(triangle, {0.5, -0.1, 0.2}),
                    std::invalid_argument);
}

TEST_CASE("membership agrees with the exact convex-hull oracle") {
    std::vector<Graph> hosts;
    hosts.push_back(cycle_graph(3));
    hosts.push_back(cycle_graph(4));
    hosts.push_back(Graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}));           // triangle + pendant
    hosts.push_back(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}));   // C4 + chord
    hosts.push_back(complete_graph(4));
    hosts.push_back(Graph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}));  // bowtie
    hosts.push_back(Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {1, 3}}));
    Rng rng(2025);
    int members = 0, non_members = 0;
    for (const Graph& g : hosts) {
        REQUIRE(g.n_edges() <= 7);
        for (int trial = 0; trial < 24; ++trial) {
            std::vector<double> x(static_cast<std::size_t>(g.n_edges()));
            std::vector<Rational> x_exact(static_cast<std::size_t>(g.n_edges()));
            for (int e = 0; e < g.n_edges(); ++e) {
                const long long eighths = static_cast<long long>(rng.next_below(9));  // 0..1
                x[static_cast<std::size_t>(e)] = static_cast<double>(eighths) / 8.0;
                x_exact[static_cast<std::size_t>(e)] = Rational(eighths, 8);
            }
            const bool fast = forest_polytope_membership(g, x).member;
            const bool exact = in_forest_hull_exact(g, x_exact);
            CHECK(fast == exact);
            (exact ? members : non_members) += 1;
        }
    }
    // The sample must exercise both verdicts.
    CHECK(members > 10);
    CHECK(non_members > 10);
}

TEST_CASE("alpha vector membership on small regular hosts") {
    // Complete graphs: alpha vanishes identically.
    const AlphaMembershipReport kn = alpha_membership_check(LaplacianSystem(complete_graph(7)));
    CHECK(kn.alpha_nonneg);
    CHECK(kn.min_alpha == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(kn.membership.member);
    CHECK(kn.reff_rank_ok);

    const AlphaMembershipReport petersen =
        alpha_membership_check(LaplacianSystem(petersen_graph()));
    CHECK(petersen.alpha_nonneg);
    CHECK(petersen.membership.member);
    CHECK(petersen.membership.exact);
    CHECK(petersen.reff_rank_ok);

    const AlphaMembershipReport reg =
        alpha_membership_check(LaplacianSystem(random_regular(12, 3, 3)));
    CHECK(reg.membership.member);
    CHECK(reg.reff_rank_ok);
}

TEST_CASE("alpha membership falls back to the fuzzer above 20 vertices") {
    const AlphaMembershipReport report =
        alpha_membership_check(LaplacianSystem(random_regular(22, 3, 9)));
    CHECK(!report.membership.exact);
    CHECK(report.membership.member);  // heuristic search found no violation
}

TEST_CASE("forest degree inequality") {
    const Graph k4 = complete_graph(4);
    // Single edge: 1^2 + 1^2 = 2 <= d + 2.
    const ForestDegreeCheck single = forest_degree_check(k4, std::vector<EdgeId>{0}, 3);
    CHECK(single.identity_ok);
    CHECK(single.bound_ok);
    // A star with d leaves meets the bound with room: d^2 + d <= (d+2)d.
    const Graph star(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    const ForestDegreeCheck s =
        forest_degree_check(star, all_edges(star), 5);
    CHECK(s.sum_deg_sq == 25 + 5);
    CHECK(s.bound_value == 7 * 5);
    CHECK(s.bound_ok);
    CHECK(s.identity_ok);
    CHECK_THROWS_AS(forest_degree_check(cycle_graph(3), all_edges(cycle_graph(3)), 2),
                    std::invalid_argument);
}

TEST_CASE("randomized forest audit") {
    const Graph host = random_regular(30, 4, 123);
    Rng rng(321);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto forest = random_forest(host, rng);
        REQUIRE(is_forest(host, forest));
        const ForestDegreeCheck check = forest_degree_check(host, forest, 4);
        CHECK(check.identity_ok);
        CHECK(check.bound_ok);
    }
}

TEST_CASE("alpha total matches the closed form") {
    const FosterAlphaReport kn = foster_alpha_total(LaplacianSystem(complete_graph(9)));
    CHECK(kn.total == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(kn.closed_form == doctest::Approx(0.0).epsilon(1e-14));
    const FosterAlphaReport petersen = foster_alpha_total(LaplacianSystem(petersen_graph()));
    CHECK(petersen.closed_form == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(petersen.total == doctest::Approx(1.5).epsilon(1e-9));
    const FosterAlphaReport reg =
        foster_alpha_total(LaplacianSystem(random_regular(30, 4, 4)));
    CHECK(reg.closed_form == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(reg.total == doctest::Approx(5.0).epsilon(1e-9));
}
