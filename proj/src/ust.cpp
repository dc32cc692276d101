#include "treelab/ust.hpp"

#include <cmath>
#include <stdexcept>

#include "treelab/parallel.hpp"

namespace treelab {

std::vector<EdgeId> sample_ust(const Graph& g, Rng& rng) {
    const int n = g.n_vertices();
    if (!is_connected(g)) throw std::runtime_error("sample_ust: graph is disconnected");
    std::vector<EdgeId> exit_edge(static_cast<std::size_t>(n), -1);
    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    in_tree[static_cast<std::size_t>(n - 1)] = 1;  // root
    std::vector<EdgeId> tree;
    tree.reserve(static_cast<std::size_t>(n - 1));
    for (VertexId start = 0; start < n; ++start) {
        if (in_tree[static_cast<std::size_t>(start)]) continue;
        VertexId v = start;
        while (!in_tree[static_cast<std::size_t>(v)]) {
            const auto& adj = g.adjacency(v);
            const auto [w, e] = adj[rng.next_below(adj.size())];
            exit_edge[static_cast<std::size_t>(v)] = e;
            v = w;
        }
        v = start;
        while (!in_tree[static_cast<std::size_t>(v)]) {
            in_tree[static_cast<std::size_t>(v)] = 1;
            const EdgeId e = exit_edge[static_cast<std::size_t>(v)];
            tree.push_back(e);
            v = g.other_endpoint(e, v);
        }
    }
    return tree;
}

KnMoments kn_ust_moments(int n) {
    if (n < 4) throw std::invalid_argument("kn_ust_moments: n >= 4 required");
    KnMoments m;
    const double nn = n;
    m.p0 = 2.0 / nn;
    m.p1 = 3.0 / (nn * nn);
    m.p2 = 4.0 / (nn * nn);
    m.mean_sq_degree = 5.0 - 11.0 / nn + 6.0 / (nn * nn);
    return m;
}

double ust_upper_bound(int d) {
    const double dd = d;
    return 6.0 - (dd + 7.0) / ((dd + 1.0) * (dd + 1.0)) - 2.0 / (dd * (dd + 1.0));
}

double knn_threshold(int n) {
    if (n < 2) throw std::invalid_argument("knn_threshold: n >= 2 required");
    const double nn = n;
    return 5.0 - 13.0 / (2.0 * nn) + 3.0 / (nn * nn) - 0.5 / (nn * nn * nn);
}

namespace {

// E[deg(x)^2] = sum of incident edge probabilities plus the ordered-pair sum
// over distinct incident edges.  Valid on simple hosts where incident pairs
// form wedges.
double vertex_deg_sq(const LaplacianSystem& sys, VertexId x) {
    const Graph& g = sys.graph();
    const auto& adj = g.adjacency(x);
    double total = 0;
    for (const auto& [y, e] : adj) {
        (void)e;
        total += sys.effective_resistance(x, y);
    }
    for (std::size_t i = 0; i < adj.size(); ++i) {
        for (std::size_t j = i + 1; j < adj.size(); ++j) {
            const VertexId y = adj[i].first, z = adj[j].first;
            const double r1 = sys.effective_resistance(x, y);
            const double r2 = sys.effective_resistance(x, z);
            const double t = sys.effective_resistance(y, z);
            const double k = (r1 + r2 - t) / 2.0;
            total += 2.0 * (r1 * r2 - k * k);
        }
    }
    return total;
}

}  // namespace

double sum_expected_deg_sq(const LaplacianSystem& sys, int threads) {
    const Graph& g = sys.graph();
    if (!g.is_simple()) throw std::invalid_argument("sum_expected_deg_sq: simple host required");
    sys.effective_resistance(0, g.n_vertices() - 1);  // warm the solve cache
    const auto per_vertex = run_indexed<double>(
        static_cast<std::size_t>(g.n_vertices()), threads,
        [&](std::size_t x) { return vertex_deg_sq(sys, static_cast<VertexId>(x)); });
    double total = 0;
    for (double value : per_vertex) total += value;
    return total;
}

SecondMomentReport exact_mean_sq_degree(const LaplacianSystem& sys, int threads) {
    const Graph& g = sys.graph();
    const int n = g.n_vertices();
    const int d = g.regular_degree();
    if (!g.is_simple() || d < 1)
        throw std::invalid_argument("exact_mean_sq_degree: simple regular host required");
    sys.effective_resistance(0, n - 1);  // warm the solve cache

    SecondMomentReport report;
    report.n = n;
    report.d = d;
    report.upper_bound_value = ust_upper_bound(d);

    const auto per_vertex = run_indexed<double>(
        static_cast<std::size_t>(n), threads,
        [&](std::size_t x) { return vertex_deg_sq(sys, static_cast<VertexId>(x)); });
    report.per_vertex = per_vertex;
    double direct_sum = 0;
    for (double value : per_vertex) direct_sum += value;

    // Wedge-average route: p1 is the mean ordered incident-pair probability.
    double pair_sum = 0;
    if (d >= 2) {
        for (VertexId x = 0; x < n; ++x) {
            const auto& adj = g.adjacency(x);
            for (std::size_t i = 0; i < adj.size(); ++i) {
                for (std::size_t j = i + 1; j < adj.size(); ++j) {
                    const VertexId y = adj[i].first, z = adj[j].first;
                    const double r1 = sys.effective_resistance(x, y);
                    const double r2 = sys.effective_resistance(x, z);
                    const double t = sys.effective_resistance(y, z);
                    const double k = (r1 + r2 - t) / 2.0;
                    pair_sum += 2.0 * (r1 * r2 - k * k);
                }
            }
        }
        report.p1_adjacent =
            pair_sum / (static_cast<double>(n) * d * (d - 1));
    }
    const double via_wedges =
        2.0 - 2.0 / n + static_cast<double>(d) * (d - 1) * report.p1_adjacent;
    report.mean_sq_degree = direct_sum / n;
    report.identity_residual = std::abs(via_wedges - report.mean_sq_degree);
    if (report.identity_residual > 1e-9)
        throw std::runtime_error("exact_mean_sq_degree: wedge route disagrees with direct route");
    return report;
}

PairTable build_pair_table(const LaplacianSystem& sys) {
    const int m = sys.graph().n_edges();
    PairTable table;
    table.edge_prob.resize(static_cast<std::size_t>(m));
    table.pair_prob.assign(static_cast<std::size_t>(m),
                           std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (EdgeId e = 0; e < m; ++e)
        table.edge_prob[static_cast<std::size_t>(e)] = sys.edge_probability_ust(e);
    for (EdgeId e = 0; e < m; ++e) {
        for (EdgeId f = e + 1; f < m; ++f) {
            const double p = sys.pair_probability_ust(e, f);
            table.pair_prob[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] = p;
            table.pair_prob[static_cast<std::size_t>(f)][static_cast<std::size_t>(e)] = p;
        }
    }
    return table;
}

PairTable empirical_pair_table(const Graph& g, std::uint64_t n_samples, std::uint64_t seed,
                               int threads) {
    const int m = g.n_edges();
    struct Counts {
        std::vector<long long> edge;
        std::vector<long long> pair;  // flattened upper triangle
    };
    const auto chunks = run_chunked<Counts>(
        n_samples, seed, threads, [&](std::uint64_t, std::uint64_t count, Rng& rng) {
            Counts acc;
            acc.edge.assign(static_cast<std::size_t>(m), 0);
            acc.pair.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
            for (std::uint64_t s = 0; s < count; ++s) {
                const auto tree = sample_ust(g, rng);
                for (std::size_t i = 0; i < tree.size(); ++i) {
                    ++acc.edge[static_cast<std::size_t>(tree[i])];
                    for (std::size_t j = i + 1; j < tree.size(); ++j) {
                        const EdgeId a = std::min(tree[i], tree[j]);
                        const EdgeId b = std::max(tree[i], tree[j]);
                        ++acc.pair[static_cast<std::size_t>(a) * m + static_cast<std::size_t>(b)];
                    }
                }
            }
            return acc;
        });
    PairTable table;
    table.edge_prob.assign(static_cast<std::size_t>(m), 0.0);
    table.pair_prob.assign(static_cast<std::size_t>(m),
                           std::vector<double>(static_cast<std::size_t>(m), 0.0));
    const double total = static_cast<double>(n_samples);
    for (const Counts& c : chunks) {
        for (int e = 0; e < m; ++e)
            table.edge_prob[static_cast<std::size_t>(e)] +=
                static_cast<double>(c.edge[static_cast<std::size_t>(e)]) / total;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                const double value =
                    static_cast<double>(c.pair[static_cast<std::size_t>(a) * m +
                                               static_cast<std::size_t>(b)]) /
                    total;
                table.pair_prob[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += value;
                table.pair_prob[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] += value;
            }
    }
    return table;
}

IdentityResiduals check_pair_identities(const Graph& g, const PairTable& table) {
    const int n = g.n_vertices();
    const int m = g.n_edges();
    double adjacent_sum = 0, non_adjacent_sum = 0;
    for (EdgeId e = 0; e < m; ++e) {
        const Edge& se = g.edge(e);
        for (EdgeId f = 0; f < m; ++f) {
            if (e == f) continue;
            const Edge& sf = g.edge(f);
            const bool adjacent =
                se.u == sf.u || se.u == sf.v || se.v == sf.u || se.v == sf.v;
            const double p = table.pair_prob[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)];
            if (adjacent)
                adjacent_sum += p;
            else
                non_adjacent_sum += p;
        }
    }
    double sum_deg_sq = 0;
    for (VertexId x = 0; x < n; ++x) {
        const auto& adj = g.adjacency(x);
        double value = 0;
        for (const auto& [y, e] : adj) {
            (void)y;
            value += table.edge_prob[static_cast<std::size_t>(e)];
        }
        for (std::size_t i = 0; i < adj.size(); ++i)
            for (std::size_t j = 0; j < adj.size(); ++j)
                if (i != j)
                    value += table.pair_prob[static_cast<std::size_t>(adj[i].second)]
                                            [static_cast<std::size_t>(adj[j].second)];
        sum_deg_sq += value;
    }
    IdentityResiduals residuals;
    residuals.adjacent = adjacent_sum - (sum_deg_sq - 2.0 * (n - 1));
    residuals.non_adjacent =
        non_adjacent_sum - (static_cast<double>(n) * (n - 1) - sum_deg_sq);
    return residuals;
}

IdentityResiduals second_moment_identity_check(const LaplacianSystem& sys) {
    return check_pair_identities(sys.graph(), build_pair_table(sys));
}

WedgeExpectationReport wedge_expectations(const LaplacianSystem& sys, int threads) {
    const Graph& g = sys.graph();
    const int n = g.n_vertices();
    const int d = g.regular_degree();
    if (!g.is_simple() || d < 3)
        throw std::invalid_argument("wedge_expectations: simple regular host with d >= 3 required");
    sys.effective_resistance(0, n - 1);  // warm the solve cache

    struct Partial {
        double alpha = 0, gamma = 0, k = 0, alpha_beta = 0, split = 0;
    };
    const auto partials = run_indexed<Partial>(
        static_cast<std::size_t>(n), threads, [&](std::size_t xi) {
            const VertexId x = static_cast<VertexId>(xi);
            Partial p;
            const auto& adj = g.adjacency(x);
            for (std::size_t i = 0; i < adj.size(); ++i) {
                for (std::size_t j = 0; j < adj.size(); ++j) {
                    if (i == j) continue;
                    const WedgeResistances w =
                        sys.wedge_resistances(x, adj[i].first, adj[j].first, d);
                    p.alpha += w.alpha;
                    p.gamma += w.gamma;
                    p.k += w.k;
                    p.alpha_beta += w.alpha * w.beta;
                    p.split = std::max(
                        p.split, std::abs(2.0 * w.k - (w.a + w.alpha + w.beta - w.gamma)));
                }
            }
            return p;
        });

    const double wedges = static_cast<double>(n) * d * (d - 1);
    WedgeExpectationReport report;
    report.n = n;
    report.d = d;
    for (const Partial& p : partials) {
        report.e_alpha += p.alpha;
        report.e_gamma += p.gamma;
        report.e_k += p.k;
        report.e_alpha_beta += p.alpha_beta;
        report.split_identity_max = std::max(report.split_identity_max, p.split);
    }
    report.e_alpha /= wedges;
    report.e_gamma /= wedges;
    report.e_k /= wedges;
    report.e_alpha_beta /= wedges;

    const double nn = n, dd = d;
    report.alpha_closed_form = 2.0 * (nn - dd - 1.0) / (nn * dd * (dd + 1.0));
    report.gamma_closed_form = 4.0 * (nn - dd - 1.0) / (nn * (dd - 1.0) * (dd + 1.0));
    report.k_closed_form = (nn * dd - 2.0 * (nn - 1.0)) / (nn * dd * (dd - 1.0));
    report.alpha_beta_bound =
        (dd + 2.0) * (nn - dd - 1.0) / (nn * dd * dd * (dd + 1.0));
    return report;
}

MomentBudgetReport moment_budget_check(const LaplacianSystem& sys, int threads) {
    const Graph& g = sys.graph();
    const int d = g.regular_degree();
    if (d < 1) throw std::invalid_argument("moment_budget_check: regular host required");
    MomentBudgetReport report;
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
        const double r = sys.edge_probability_ust(e);
        report.sum_reff_sq += r * r;
    }
    report.resistance_bound = 45.0 * g.n_vertices() / d;
    report.sum_deg_sq = sum_expected_deg_sq(sys, threads);
    report.moment_bound = 92.0 * g.n_vertices();
    report.ok = report.sum_reff_sq <= report.resistance_bound &&
                report.sum_deg_sq <= report.moment_bound;
    return report;
}

std::vector<SweepRow> sharpness_sweep(const std::vector<int>& d_list, int threads) {
    return run_indexed<SweepRow>(d_list.size(), threads, [&](std::size_t i) {
        const int d = d_list[i];
        const SharpnessBlock block = sharpness_block(d);
        const LaplacianSystem sys(block.graph);
        const int q = d + 2;
        const double block_sum = sum_expected_deg_sq(sys, 1);
        double port_degree = 0;
        for (const auto& [y, e] : block.graph.adjacency(block.port)) {
            (void)e;
            port_degree += sys.effective_resistance(block.port, y);
        }
        // Bridges are present in every spanning tree, so the glued graph's
        // statistics decompose over independent block trees: the center
        // contributes d^2 and each port gains one deterministic edge.
        const double block_contribution = block_sum + 2.0 * port_degree + 1.0;
        SweepRow row;
        row.d = d;
        row.q = q;
        row.block_avg_deg_sq = block_sum / q;
        row.port_expected_degree = port_degree;
        row.m_value = (static_cast<double>(d) * d + d * block_contribution) /
                      (1.0 + static_cast<double>(d) * q);
        row.upper_bound = ust_upper_bound(d);
        row.gap_to_6 = 6.0 - row.m_value;
        return row;
    });
}

EstimatorReport mc_mean_sq_degree(const Graph& g, std::uint64_t n_samples,
                                  std::uint64_t seed, int threads) {
    const int n = g.n_vertices();
    struct Sums {
        double sum = 0, sum_sq = 0;
    };
    const auto chunks = run_chunked<Sums>(
        n_samples, seed, threads, [&](std::uint64_t, std::uint64_t count, Rng& rng) {
            Sums sums;
            std::vector<int> degree(static_cast<std::size_t>(n));
            for (std::uint64_t s = 0; s < count; ++s) {
                const auto tree = sample_ust(g, rng);
                std::fill(degree.begin(), degree.end(), 0);
                for (EdgeId e : tree) {
                    ++degree[static_cast<std::size_t>(g.edge(e).u)];
                    ++degree[static_cast<std::size_t>(g.edge(e).v)];
                }
                double mean_sq = 0;
                for (int value : degree) mean_sq += static_cast<double>(value) * value;
                mean_sq /= n;
                sums.sum += mean_sq;
                sums.sum_sq += mean_sq * mean_sq;
            }
            return sums;
        });
    double sum = 0, sum_sq = 0;
    for (const Sums& s : chunks) {
        sum += s.sum;
        sum_sq += s.sum_sq;
    }
    return EstimatorReport::from_sums(sum, sum_sq, n_samples, seed);
}

}  // namespace treelab
