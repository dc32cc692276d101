#include "treelab/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "treelab/graph.hpp"
#include "treelab/laplacian.hpp"
#include "treelab/mst.hpp"
#include "treelab/polytope.hpp"
#include "treelab/pwit.hpp"
#include "treelab/rng.hpp"
#include "treelab/ust.hpp"

namespace treelab {

namespace {

std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

struct CorpusEntry {
    std::string name;
    Graph graph;
};

std::vector<CorpusEntry> regular_corpus(std::uint64_t seed) {
    std::vector<CorpusEntry> corpus;
    for (int n = 4; n <= 15; ++n) corpus.push_back({"complete:" + std::to_string(n), complete_graph(n)});
    corpus.push_back({"complete:20", complete_graph(20)});
    corpus.push_back({"complete:30", complete_graph(30)});
    corpus.push_back({"complete:50", complete_graph(50)});
    for (int n = 2; n <= 8; ++n)
        corpus.push_back({"bipartite:" + std::to_string(n), complete_bipartite(n)});
    corpus.push_back({"bipartite:10", complete_bipartite(10)});
    corpus.push_back({"bipartite:12", complete_bipartite(12)});
    corpus.push_back({"petersen", petersen_graph()});
    for (int n = 3; n <= 12; ++n)
        corpus.push_back({"cycle:" + std::to_string(n), cycle_graph(n)});
    corpus.push_back({"cycle:20", cycle_graph(20)});
    corpus.push_back({"cycle:50", cycle_graph(50)});
    const std::vector<std::pair<int, int>> regulars = {
        {6, 3}, {12, 3}, {20, 4}, {30, 4}, {60, 3}, {60, 6}, {100, 4}, {200, 3}, {200, 6}};
    for (std::size_t i = 0; i < regulars.size(); ++i) {
        const auto [n, d] = regulars[i];
        corpus.push_back({"regular:" + std::to_string(n) + ":" + std::to_string(d),
                          random_regular(n, d, seed + i)});
    }
    for (int d = 5; d <= 13; d += 2)
        corpus.push_back({"sharpness:" + std::to_string(d), sharpness_graph(d).graph});
    return corpus;
}

// Connected random multigraph with at most 12 edges: a random spanning tree
// plus random extra edges, parallel copies allowed.
Graph random_small_graph(Rng& rng) {
    const int n = 4 + static_cast<int>(rng.next_below(4));
    std::vector<Edge> edges;
    for (VertexId v = 1; v < n; ++v)
        edges.push_back({static_cast<VertexId>(rng.next_below(static_cast<std::uint64_t>(v))), v});
    const int extra = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(12 - (n - 1) + 1)));
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

struct BruteForceTable {
    long long trees = 0;
    std::vector<long long> edge_count;
    std::vector<std::vector<long long>> pair_count;
};

BruteForceTable enumerate_spanning_trees(const Graph& g) {
    const int n = g.n_vertices();
    const int m = g.n_edges();
    BruteForceTable table;
    table.edge_count.assign(static_cast<std::size_t>(m), 0);
    table.pair_count.assign(static_cast<std::size_t>(m),
                            std::vector<long long>(static_cast<std::size_t>(m), 0));
    std::vector<int> parent(static_cast<std::size_t>(n));
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::vector<EdgeId> members;
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
        if (__builtin_popcount(mask) != n - 1) continue;
        for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
        int merges = 0;
        members.clear();
        for (EdgeId e = 0; e < m; ++e) {
            if (!(mask >> e & 1U)) continue;
            members.push_back(e);
            const Edge& ed = g.edge(e);
            const int a = find(ed.u), b = find(ed.v);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                ++merges;
            }
        }
        if (merges != n - 1) continue;
        ++table.trees;
        for (std::size_t i = 0; i < members.size(); ++i) {
            ++table.edge_count[static_cast<std::size_t>(members[i])];
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                ++table.pair_count[static_cast<std::size_t>(members[i])]
                                  [static_cast<std::size_t>(members[j])];
                ++table.pair_count[static_cast<std::size_t>(members[j])]
                                  [static_cast<std::size_t>(members[i])];
            }
        }
    }
    return table;
}

CriterionResult criterion_kirchhoff_foster(std::uint64_t seed, int threads) {
    (void)threads;
    CriterionResult result{1, "Kirchhoff edge probabilities and Foster sums", false, false, ""};
    double worst_edge = 0, worst_foster = 0;
    for (int n = 4; n <= 50; ++n) {
        const LaplacianSystem sys(complete_graph(n));
        for (EdgeId e = 0; e < sys.graph().n_edges(); ++e)
            worst_edge = std::max(worst_edge,
                                  std::abs(sys.edge_probability_ust(e) - 2.0 / n));
    }
    for (const CorpusEntry& entry : regular_corpus(seed)) {
        const LaplacianSystem sys(entry.graph);
        worst_foster = std::max(
            worst_foster, std::abs(sys.foster_sum() - (entry.graph.n_vertices() - 1)));
    }
    result.pass = worst_edge <= 1e-10 && worst_foster <= 1e-9;
    result.detail = "max |p_e - 2/n| = " + fmt(worst_edge) +
                    ", max |foster - (n-1)| = " + fmt(worst_foster);
    return result;
}

CriterionResult criterion_kn_second_moment(int threads) {
    CriterionResult result{2, "complete-graph UST second moment", false, false, ""};
    double worst = 0;
    for (int n = 4; n <= 50; ++n) {
        const LaplacianSystem sys(complete_graph(n));
        const SecondMomentReport report = exact_mean_sq_degree(sys, threads);
        worst = std::max(worst,
                         std::abs(report.mean_sq_degree - kn_ust_moments(n).mean_sq_degree));
    }
    result.pass = worst <= 1e-8;
    result.detail = "max |computed - closed form| = " + fmt(worst) + " over n = 4..50";
    return result;
}

CriterionResult criterion_identity_residuals(std::uint64_t seed) {
    CriterionResult result{3, "ordered-pair identities", false, false, ""};
    double worst = 0;
    std::vector<CorpusEntry> small;
    small.push_back({"complete:4", complete_graph(4)});
    for (int n = 3; n <= 12; ++n) small.push_back({"cycle", cycle_graph(n)});
    small.push_back({"bipartite:2", complete_bipartite(2)});
    small.push_back({"bipartite:3", complete_bipartite(3)});
    small.push_back({"lps", lps_gadget().graph});
    Rng rng(seed ^ 0x1d3a5u);
    for (int k = 0; k < 5; ++k) small.push_back({"random", random_small_graph(rng)});
    for (const CorpusEntry& entry : small) {
        if (entry.graph.n_edges() > 12) continue;
        const LaplacianSystem sys(entry.graph);
        const IdentityResiduals residuals = second_moment_identity_check(sys);
        worst = std::max({worst, std::abs(residuals.adjacent), std::abs(residuals.non_adjacent)});
    }
    // Complete-graph closed-form route.
    double worst_closed = 0;
    for (int n = 4; n <= 50; ++n) {
        const KnMoments moments = kn_ust_moments(n);
        const double lhs = static_cast<double>(n) * (n - 1) * (n - 2) * moments.p1;
        const double rhs = n * moments.mean_sq_degree - 2.0 * (n - 1);
        worst_closed = std::max(worst_closed, std::abs(lhs - rhs));
    }
    result.pass = worst <= 1e-10 && worst_closed <= 1e-10;
    result.detail = "max residual (pair tables) = " + fmt(worst) +
                    ", closed-form route = " + fmt(worst_closed);
    return result;
}

CriterionResult criterion_small_oracle(std::uint64_t seed) {
    CriterionResult result{4, "transfer currents vs spanning-tree enumeration", false, false, ""};
    Rng rng(seed ^ 0xbeefULL);
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_small_graph(rng);
        const BruteForceTable brute = enumerate_spanning_trees(g);
        const LaplacianSystem sys(g);
        const double total = static_cast<double>(brute.trees);
        for (EdgeId e = 0; e < g.n_edges(); ++e) {
            worst = std::max(worst, std::abs(sys.edge_probability_ust(e) -
                                             brute.edge_count[static_cast<std::size_t>(e)] / total));
            for (EdgeId f = e + 1; f < g.n_edges(); ++f)
                worst = std::max(
                    worst,
                    std::abs(sys.pair_probability_ust(e, f) -
                             brute.pair_count[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] /
                                 total));
        }
    }
    result.pass = worst <= 1e-10;
    result.detail = "max |transfer-current - enumeration| = " + fmt(worst) + " over 20 graphs";
    return result;
}

CriterionResult criterion_upper_bound(std::uint64_t seed, int threads) {
    CriterionResult result{5, "second-moment upper bound on the regular corpus", false, false, ""};
    bool ok = true;
    double closest = 1e300;
    std::string offender;
    for (const CorpusEntry& entry : regular_corpus(seed)) {
        const LaplacianSystem sys(entry.graph);
        const SecondMomentReport report = exact_mean_sq_degree(sys, threads);
        const double slack_six = 6.0 - report.mean_sq_degree;
        const double slack_bound = report.upper_bound_value - report.mean_sq_degree;
        closest = std::min(closest, std::min(slack_six, slack_bound));
        if (slack_six <= 0 || slack_bound < -1e-12) {
            ok = false;
            offender = entry.name;
        }
    }
    result.pass = ok;
    result.detail = ok ? "minimum slack to the bound = " + fmt(closest)
                       : "bound violated on " + offender;
    return result;
}

CriterionResult criterion_sharpness_trend(int threads) {
    CriterionResult result{6, "sharpness sweep trend", false, false, ""};
    std::vector<int> degrees;
    for (int d = 5; d <= 41; d += 2) degrees.push_back(d);
    const auto rows = sharpness_sweep(degrees, threads);
    bool increasing = true, gap_ok = true, block_ok = true;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        if (rows[i + 1].m_value <= rows[i].m_value) increasing = false;
    for (const SweepRow& row : rows) {
        if (row.d >= 11 && row.gap_to_6 > 10.0 / row.d) gap_ok = false;
        if (std::abs(row.block_avg_deg_sq - 5.0) > 30.0 / row.q) block_ok = false;
        if (row.m_value >= row.upper_bound) gap_ok = false;
    }
    // Full-graph cross-check at d = 5: the bridge factorization must agree
    // with the direct computation on the glued graph.
    const LaplacianSystem full(sharpness_graph(5).graph);
    const double direct = exact_mean_sq_degree(full, threads).mean_sq_degree;
    const double factored = rows.front().m_value;
    const bool cross_ok = std::abs(direct - factored) <= 1e-9;
    result.pass = increasing && gap_ok && block_ok && cross_ok;
    std::ostringstream detail;
    detail << "m(5) = " << fmt(rows.front().m_value) << ", m(41) = " << fmt(rows.back().m_value)
           << ", cross-check |delta| = " << fmt(std::abs(direct - factored));
    if (!increasing) detail << " [not increasing]";
    if (!gap_ok) detail << " [gap bound failed]";
    if (!block_ok) detail << " [block average failed]";
    result.detail = detail.str();
    return result;
}

CriterionResult criterion_wedge_expectations(std::uint64_t seed, int threads) {
    CriterionResult result{7, "wedge expectation closed forms", false, false, ""};
    double worst_alpha = 0, worst_gamma = 0, worst_k = 0;
    bool alpha_beta_ok = true;
    for (const CorpusEntry& entry : regular_corpus(seed)) {
        if (entry.graph.regular_degree() < 3) continue;
        const LaplacianSystem sys(entry.graph);
        const WedgeExpectationReport report = wedge_expectations(sys, threads);
        worst_alpha = std::max(worst_alpha, std::abs(report.e_alpha - report.alpha_closed_form));
        worst_gamma = std::max(worst_gamma, std::abs(report.e_gamma - report.gamma_closed_form));
        worst_k = std::max(worst_k, std::abs(report.e_k - report.k_closed_form));
        if (report.e_alpha_beta > report.alpha_beta_bound + 1e-12) alpha_beta_ok = false;
    }
    result.pass = worst_alpha <= 1e-9 && worst_gamma <= 1e-9 && worst_k <= 1e-9 && alpha_beta_ok;
    result.detail = "max |E[alpha] - closed| = " + fmt(worst_alpha) +
                    ", |E[gamma] - closed| = " + fmt(worst_gamma) +
                    (alpha_beta_ok ? ", E[alpha beta] bound ok" : ", E[alpha beta] bound FAILED");
    return result;
}

CriterionResult criterion_edmonds(std::uint64_t seed, int threads) {
    CriterionResult result{8, "forest-polytope membership and forest degree bounds", false, false, ""};
    bool membership_ok = true;
    std::string offender;
    int checked = 0;
    for (const CorpusEntry& entry : regular_corpus(seed)) {
        if (entry.graph.n_vertices() > 20) continue;
        const LaplacianSystem sys(entry.graph);
        const AlphaMembershipReport report = alpha_membership_check(sys, threads);
        ++checked;
        if (!report.alpha_nonneg || !report.membership.member || !report.reff_rank_ok) {
            membership_ok = false;
            offender = entry.name;
        }
    }
    bool forests_ok = true;
    const std::vector<std::pair<int, int>> hosts = {{30, 4}, {60, 6}, {100, 4}};
    int audited = 0;
    for (std::size_t h = 0; h < hosts.size(); ++h) {
        const Graph host = random_regular(hosts[h].first, hosts[h].second, seed + 101 + h);
        Rng rng = Rng::substream(seed, 9000 + h);
        for (int trial = 0; trial < 3334 && forests_ok; ++trial) {
            const auto forest = random_forest(host, rng);
            const ForestDegreeCheck check =
                forest_degree_check(host, forest, hosts[h].second);
            if (!check.identity_ok || !check.bound_ok) forests_ok = false;
            ++audited;
        }
    }
    result.pass = membership_ok && forests_ok;
    std::ostringstream detail;
    detail << checked << " hosts scanned";
    if (!membership_ok) detail << ", membership FAILED on " << offender;
    detail << ", " << audited << " random forests audited"
           << (forests_ok ? "" : " with FAILURES");
    result.detail = detail.str();
    return result;
}

CriterionResult criterion_pwit_constant(std::uint64_t seed, int threads) {
    CriterionResult result{9, "limit second moment of the root degree", false, false, ""};
    const double target = 10.0 - 4.0 * zeta3();
    const PwitMomentReport mc = mc_root_degree_moments(10000000, seed, threads);
    const double sigmas = mc.second_moment.sigmas_from(target);
    const MomentIntegrals integrals = moment_integrals();
    const double route_lambda = integrals.combo;
    const double route_q = integrals.q_integral;
    const double route_series = integrals.series_value;
    const double route_spread =
        std::max({std::abs(route_lambda - route_series), std::abs(route_q - route_series),
                  std::abs(2.0 * integrals.i2 - integrals.i1 - route_series)});
    result.pass = sigmas <= 4.0 && route_spread <= 1e-6;
    result.detail = "estimate " + fmt(mc.second_moment.estimate) + " vs " + fmt(target) + " (" +
                    fmt(sigmas) + " sigma), integral-route spread " + fmt(route_spread) +
                    ", truncation events " + std::to_string(mc.truncation_events);
    return result;
}

CriterionResult criterion_theta_machinery(std::uint64_t seed, int threads) {
    CriterionResult result{10, "survival-probability machinery", false, false, ""};
    double worst_residual = 0;
    for (double lambda : {1.000001, 1.0001, 1.001, 1.01, 1.1, 1.2, 1.5, 2.0, 3.0, 5.0, 10.0,
                          20.0, 35.0}) {
        const double th = theta(lambda);
        worst_residual =
            std::max(worst_residual, std::abs(1.0 - th - std::exp(-lambda * th)));
    }
    double worst_sigma = 0;
    for (double lambda : {1.5, 2.0, 3.0}) {
        const PgwBetaReport report = pgw_beta_check(lambda, 400000, seed ^ 0x77ULL, threads);
        worst_sigma = std::max(worst_sigma, report.inverse_size.sigmas_from(report.closed_form));
    }
    const PondSampler ponds;
    double worst_moment = 0;
    for (double lambda : {1.2, 1.5, 2.0, 3.0, 5.0}) {
        const double th = theta(lambda), q = 1 - th, tp = theta_deriv(lambda);
        worst_moment = std::max(worst_moment,
                                std::abs(ponds.inv_moment(lambda, 1) - th * q / tp));
        worst_moment = std::max(
            worst_moment, std::abs(ponds.inv_moment(lambda, 2) - th * beta_closed(lambda) / tp));
    }
    result.pass = worst_residual <= 1e-13 && worst_sigma <= 4.0 && worst_moment <= 1e-8;
    result.detail = "max fixed-point residual " + fmt(worst_residual) + ", beta sim " +
                    fmt(worst_sigma) + " sigma, pond moment residual " + fmt(worst_moment);
    return result;
}

CriterionResult criterion_mst_exactness(std::uint64_t seed, int threads) {
    CriterionResult result{11, "ordering-oracle exactness", false, false, ""};
    const Graph k4 = complete_graph(4);
    const OrderingOracleResult oracle4 = exact_ordering_oracle(k4, {}, threads);
    bool ok = true;
    for (EdgeId e = 0; e < k4.n_edges(); ++e)
        if (oracle4.edge_probability(e) != Rational(1, 2)) ok = false;
    // Identities between the pair table and the degree second moment, as
    // exact rationals.
    const Rational p1 = oracle4.p1_from_identity();
    const Rational p2 = oracle4.p2_from_identity();
    Rational adj_sum(0), non_sum(0);
    int adj_pairs = 0, non_pairs = 0;
    for (EdgeId e = 0; e < k4.n_edges(); ++e)
        for (EdgeId f = 0; f < k4.n_edges(); ++f) {
            if (e == f) continue;
            const Edge& a = k4.edge(e);
            const Edge& b = k4.edge(f);
            const bool adjacent = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
            if (adjacent) {
                adj_sum = adj_sum + oracle4.pair_probability(e, f);
                ++adj_pairs;
            } else {
                non_sum = non_sum + oracle4.pair_probability(e, f);
                ++non_pairs;
            }
        }
    if (adj_sum / Rational(adj_pairs) != p1) ok = false;
    if (non_sum / Rational(non_pairs) != p2) ok = false;

    const Graph k5 = complete_graph(5);
    const OrderingOracleResult oracle5 = exact_ordering_oracle(k5, {}, threads);
    for (EdgeId e = 1; e < k5.n_edges(); ++e)
        if (oracle5.edge_probability(e) != oracle5.edge_probability(0)) ok = false;
    const McMstReport mc = mc_mst_moments(k5, 1000000, seed ^ 0xabcULL, threads);
    const double exact_msq = oracle5.mean_sq_degree().to_double();
    const double sigmas = mc.mean_sq_degree.sigmas_from(exact_msq);
    const double p0_exact = oracle5.edge_probability(0).to_double();
    const double p0_sigma =
        std::abs(mc.p0_estimate[0] - p0_exact) / std::max(mc.p0_stderr[0], 1e-300);
    result.pass = ok && sigmas <= 4.0 && p0_sigma <= 4.0;
    result.detail = "K4 p0 = " + oracle4.edge_probability(0).to_string() +
                    ", K5 mean-square " + fmt(exact_msq) + " vs MC (" + fmt(sigmas) +
                    " sigma)";
    return result;
}

CriterionResult criterion_lps(int threads) {
    CriterionResult result{12, "parallel-bundle positive correlation", false, false, ""};
    const LpsGadget gadget = lps_gadget();
    const PncVerdict verdict = pnc_verdict_exact(
        gadget.graph, gadget.bundle_a.front(), gadget.bundle_b.front(), threads);
    result.pass = verdict.margin_rat > Rational(0);
    result.detail = "P[e,f] = " + verdict.p_pair_rat.to_string() + ", P[e]P[f] = " +
                    (verdict.p_e_rat * verdict.p_f_rat).to_string() + ", margin = " +
                    verdict.margin_rat.to_string();
    return result;
}

CriterionResult criterion_out_of_scope() {
    CriterionResult result{13, "asymptotic statements (recorded, not asserted)", true, true, ""};
    result.detail =
        "large-n MST negative correlation, the exact limit of the sharpness family, and the "
        "limit-exchange question are exposed as exploratory reports only";
    return result;
}

CriterionResult criterion_determinism(std::uint64_t seed) {
    CriterionResult result{14, "thread-count independence of Monte Carlo results", false, false,
                           ""};
    const PwitMomentReport pwit1 = mc_root_degree_moments(200000, seed, 1);
    const PwitMomentReport pwit2 = mc_root_degree_moments(200000, seed, 2);
    const Graph k12 = complete_graph(12);
    const McMstReport mst1 = mc_mst_moments(k12, 100000, seed, 1);
    const McMstReport mst2 = mc_mst_moments(k12, 100000, seed, 2);
    const Graph petersen = petersen_graph();
    const EstimatorReport ust1 = mc_mean_sq_degree(petersen, 100000, seed, 1);
    const EstimatorReport ust2 = mc_mean_sq_degree(petersen, 100000, seed, 2);
    const bool same =
        pwit1.second_moment.estimate == pwit2.second_moment.estimate &&
        pwit1.first_moment.estimate == pwit2.first_moment.estimate &&
        mst1.mean_sq_degree.estimate == mst2.mean_sq_degree.estimate &&
        mst1.p1_adjacent.estimate == mst2.p1_adjacent.estimate &&
        mst1.p0_estimate == mst2.p0_estimate && ust1.estimate == ust2.estimate;
    result.pass = same;
    result.detail = same ? "pwit / mst / ust estimates bit-identical across thread counts"
                         : "estimates differ across thread counts";
    return result;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, int threads) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_kirchhoff_foster(seed, threads));
    results.push_back(criterion_kn_second_moment(threads));
    results.push_back(criterion_identity_residuals(seed));
    results.push_back(criterion_small_oracle(seed));
    results.push_back(criterion_upper_bound(seed, threads));
    results.push_back(criterion_sharpness_trend(threads));
    results.push_back(criterion_wedge_expectations(seed, threads));
    results.push_back(criterion_edmonds(seed, threads));
    results.push_back(criterion_pwit_constant(seed, threads));
    results.push_back(criterion_theta_machinery(seed, threads));
    results.push_back(criterion_mst_exactness(seed, threads));
    results.push_back(criterion_lps(threads));
    results.push_back(criterion_out_of_scope());
    results.push_back(criterion_determinism(seed));
    return results;
}

bool report_acceptance(const std::vector<CriterionResult>& results) {
    bool all_pass = true;
    for (const CriterionResult& r : results) {
        const char* status = r.informational ? "NOTE" : (r.pass ? "PASS" : "FAIL");
        std::printf("%s criterion %2d: %s — %s\n", status, r.id, r.name.c_str(),
                    r.detail.c_str());
        if (!r.informational && !r.pass) all_pass = false;
    }
    return all_pass;
}

}  // namespace treelab
