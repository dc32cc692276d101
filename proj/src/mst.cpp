#include "treelab/mst.hpp"

#include "treelab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "treelab/parallel.hpp"

namespace treelab {

namespace {

struct UnionFind {
    std::vector<int> parent;
    std::vector<int> rank_;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    void reset(int n) {
        for (int i = 0; i < n; ++i) {
            parent[static_cast<std::size_t>(i)] = i;
            rank_[static_cast<std::size_t>(i)] = 0;
        }
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
        if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)])
            ++rank_[static_cast<std::size_t>(a)];
        return true;
    }
};

void check_weights(const Graph& g, const WeightAssignment& weights) {
    if (static_cast<int>(weights.size()) != g.n_edges())
        throw std::invalid_argument("weights: size mismatch");
}

}  // namespace

std::vector<EdgeId> mst_kruskal(const Graph& g, const WeightAssignment& weights) {
    check_weights(g, weights);
    std::vector<EdgeId> order(static_cast<std::size_t>(g.n_edges()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](EdgeId a, EdgeId b) { return weights[static_cast<std::size_t>(a)] <
                                               weights[static_cast<std::size_t>(b)]; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (weights[static_cast<std::size_t>(order[i])] ==
            weights[static_cast<std::size_t>(order[i + 1])])
            throw std::invalid_argument("mst_kruskal: tied weights");
    UnionFind uf(g.n_vertices());
    std::vector<EdgeId> tree;
    tree.reserve(static_cast<std::size_t>(g.n_vertices() - 1));
    for (EdgeId e : order) {
        const Edge& ed = g.edge(e);
        if (uf.unite(ed.u, ed.v)) tree.push_back(e);
    }
    if (static_cast<int>(tree.size()) != g.n_vertices() - 1)
        throw std::runtime_error("mst_kruskal: graph is disconnected");
    return tree;
}

std::vector<EdgeId> mst_prim(const Graph& g, const WeightAssignment& weights) {
    check_weights(g, weights);
    {
        WeightAssignment sorted = weights;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("mst_prim: tied weights");
    }
    const int n = g.n_vertices();
    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    using Item = std::pair<double, EdgeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    auto add_vertex = [&](VertexId v) {
        in_tree[static_cast<std::size_t>(v)] = 1;
        for (const auto& [w, e] : g.adjacency(v))
            if (!in_tree[static_cast<std::size_t>(w)])
                heap.emplace(weights[static_cast<std::size_t>(e)], e);
    };
    add_vertex(0);
    std::vector<EdgeId> tree;
    tree.reserve(static_cast<std::size_t>(n - 1));
    while (!heap.empty() && static_cast<int>(tree.size()) < n - 1) {
        const auto [w, e] = heap.top();
        heap.pop();
        const Edge& ed = g.edge(e);
        const bool have_u = in_tree[static_cast<std::size_t>(ed.u)];
        const bool have_v = in_tree[static_cast<std::size_t>(ed.v)];
        if (have_u == have_v) continue;  // stale or internal edge
        tree.push_back(e);
        add_vertex(have_u ? ed.v : ed.u);
    }
    if (static_cast<int>(tree.size()) != n - 1)
        throw std::runtime_error("mst_prim: graph is disconnected");
    std::sort(tree.begin(), tree.end());
    return tree;
}

// ---- ordering oracle ---------------------------------------------------------

Rational OrderingOracleResult::edge_probability(EdgeId e) const {
    return Rational(edge_count.at(static_cast<std::size_t>(e)),
                    static_cast<long long>(orderings));
}

Rational OrderingOracleResult::pair_probability(EdgeId e, EdgeId f) const {
    if (!has_pair_table) throw std::logic_error("ordering oracle: pair table not tracked");
    return Rational(pair_count.at(static_cast<std::size_t>(e)).at(static_cast<std::size_t>(f)),
                    static_cast<long long>(orderings));
}

Rational OrderingOracleResult::designated_probability(std::size_t k) const {
    return Rational(designated_count.at(k), static_cast<long long>(orderings));
}

Rational OrderingOracleResult::sum_deg_sq_expected() const {
    return Rational(sum_deg_sq, static_cast<long long>(orderings));
}

Rational OrderingOracleResult::mean_sq_degree() const {
    return sum_deg_sq_expected() / Rational(n);
}

Rational OrderingOracleResult::p1_from_identity() const {
    const Rational sum = sum_deg_sq_expected();
    const Rational numerator = sum - Rational(2LL * (n - 1));
    return numerator / Rational(static_cast<long long>(n) * (n - 1) * (n - 2));
}

Rational OrderingOracleResult::p2_from_identity() const {
    const Rational sum = sum_deg_sq_expected();
    const Rational numerator = (Rational(static_cast<long long>(n) * (n - 1)) - sum) * Rational(4);
    return numerator / Rational(static_cast<long long>(n) * (n - 1) * (n - 2) * (n - 3));
}

namespace {

struct OracleChunk {
    std::vector<long long> edge_count;
    long long sum_deg_sq = 0;
    std::vector<std::vector<long long>> pair_count;
    std::vector<long long> designated_count;
};

// Statistics of the Kruskal tree for one edge ordering.
template <bool TrackPairs>
void consume_ordering(const Graph& g, const EdgeId* order, int m, UnionFind& uf,
                      int* degree, EdgeId* tree_edges,
                      const std::vector<std::pair<EdgeId, EdgeId>>& designated,
                      OracleChunk& acc) {
    const int n = g.n_vertices();
    uf.reset(n);
    for (int v = 0; v < n; ++v) degree[v] = 0;
    int tree_size = 0;
    std::uint32_t tree_mask = 0;
    for (int i = 0; i < m && tree_size < n - 1; ++i) {
        const EdgeId e = order[i];
        const Edge& ed = g.edge(e);
        if (uf.unite(ed.u, ed.v)) {
            tree_edges[tree_size++] = e;
            tree_mask |= 1U << e;
            ++degree[ed.u];
            ++degree[ed.v];
        }
    }
    for (int i = 0; i < tree_size; ++i)
        ++acc.edge_count[static_cast<std::size_t>(tree_edges[i])];
    long long deg_sq = 0;
    for (int v = 0; v < n; ++v) deg_sq += static_cast<long long>(degree[v]) * degree[v];
    acc.sum_deg_sq += deg_sq;
    if constexpr (TrackPairs) {
        for (int i = 0; i < tree_size; ++i)
            for (int j = i + 1; j < tree_size; ++j) {
                const EdgeId a = std::min(tree_edges[i], tree_edges[j]);
                const EdgeId b = std::max(tree_edges[i], tree_edges[j]);
                ++acc.pair_count[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            }
    }
    for (std::size_t k = 0; k < designated.size(); ++k) {
        const auto [e, f] = designated[k];
        if ((tree_mask >> e & 1U) && (tree_mask >> f & 1U)) ++acc.designated_count[k];
    }
}

OrderingOracleResult reduce_chunks(const Graph& g, unsigned long long orderings, bool exact,
                                   bool track_pairs,
                                   const std::vector<std::pair<EdgeId, EdgeId>>& designated,
                                   const std::vector<OracleChunk>& chunks) {
    const int m = g.n_edges();
    OrderingOracleResult out;
    out.n = g.n_vertices();
    out.m = m;
    out.orderings = orderings;
    out.exact = exact;
    out.edge_count.assign(static_cast<std::size_t>(m), 0);
    out.designated_pairs = designated;
    out.designated_count.assign(designated.size(), 0);
    out.has_pair_table = track_pairs;
    if (track_pairs)
        out.pair_count.assign(static_cast<std::size_t>(m),
                              std::vector<long long>(static_cast<std::size_t>(m), 0));
    for (const OracleChunk& chunk : chunks) {
        for (int e = 0; e < m; ++e)
            out.edge_count[static_cast<std::size_t>(e)] += chunk.edge_count[static_cast<std::size_t>(e)];
        out.sum_deg_sq += chunk.sum_deg_sq;
        for (std::size_t k = 0; k < designated.size(); ++k)
            out.designated_count[k] += chunk.designated_count[k];
        if (track_pairs)
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    out.pair_count[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +=
                        chunk.pair_count[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    if (track_pairs)
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                out.pair_count[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
                    out.pair_count[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    // Every ordering yields a spanning tree, so edge counts sum to (n-1) * orderings.
    long long total = 0;
    for (long long c : out.edge_count) total += c;
    if (exact && total != static_cast<long long>(out.n - 1) * static_cast<long long>(orderings))
        throw std::logic_error("ordering oracle: edge counts violate the tree-size identity");
    return out;
}

}  // namespace

OrderingOracleResult exact_ordering_oracle(
    const Graph& g, const std::vector<std::pair<EdgeId, EdgeId>>& designated, int threads) {
    const int m = g.n_edges();
    if (m > 12)
        throw ResourceCapError("exact_ordering_oracle: hard cap m <= 12 (12! orderings)");
    if (!is_connected(g)) throw std::invalid_argument("exact_ordering_oracle: disconnected graph");
    const bool track_pairs = m <= 10;
    unsigned long long orderings = 1;
    for (int i = 2; i <= m; ++i) orderings *= static_cast<unsigned long long>(i);

    // Partition the permutation space by the identity of the lowest edge.
    const auto chunks = run_indexed<OracleChunk>(
        static_cast<std::size_t>(m), threads, [&](std::size_t first) {
            OracleChunk acc;
            acc.edge_count.assign(static_cast<std::size_t>(m), 0);
            acc.designated_count.assign(designated.size(), 0);
            if (track_pairs)
                acc.pair_count.assign(static_cast<std::size_t>(m),
                                      std::vector<long long>(static_cast<std::size_t>(m), 0));
            std::vector<EdgeId> order(static_cast<std::size_t>(m));
            order[0] = static_cast<EdgeId>(first);
            std::size_t pos = 1;
            for (int e = 0; e < m; ++e)
                if (e != static_cast<int>(first)) order[pos++] = e;
            std::sort(order.begin() + 1, order.end());
            UnionFind uf(g.n_vertices());
            std::vector<int> degree(static_cast<std::size_t>(g.n_vertices()));
            std::vector<EdgeId> tree_edges(static_cast<std::size_t>(g.n_vertices()));
            do {
                if (track_pairs)
                    consume_ordering<true>(g, order.data(), m, uf, degree.data(),
                                           tree_edges.data(), designated, acc);
                else
                    consume_ordering<false>(g, order.data(), m, uf, degree.data(),
                                            tree_edges.data(), designated, acc);
            } while (std::next_permutation(order.begin() + 1, order.end()));
            return acc;
        });
    return reduce_chunks(g, orderings, true, track_pairs, designated, chunks);
}

OrderingOracleResult stratified_ordering_oracle(
    const Graph& g, std::uint64_t orderings_per_stratum, std::uint64_t seed,
    const std::vector<std::pair<EdgeId, EdgeId>>& designated, int threads) {
    const int m = g.n_edges();
    if (m < 13 || m > 16)
        throw std::invalid_argument("stratified_ordering_oracle: intended for 13 <= m <= 16");
    if (!is_connected(g))
        throw std::invalid_argument("stratified_ordering_oracle: disconnected graph");
    const auto chunks = run_indexed<OracleChunk>(
        static_cast<std::size_t>(m), threads, [&](std::size_t first) {
            OracleChunk acc;
            acc.edge_count.assign(static_cast<std::size_t>(m), 0);
            acc.designated_count.assign(designated.size(), 0);
            Rng rng = Rng::substream(seed, first);
            std::vector<EdgeId> order(static_cast<std::size_t>(m));
            order[0] = static_cast<EdgeId>(first);
            std::size_t pos = 1;
            for (int e = 0; e < m; ++e)
                if (e != static_cast<int>(first)) order[pos++] = e;
            UnionFind uf(g.n_vertices());
            std::vector<int> degree(static_cast<std::size_t>(g.n_vertices()));
            std::vector<EdgeId> tree_edges(static_cast<std::size_t>(g.n_vertices()));
            for (std::uint64_t s = 0; s < orderings_per_stratum; ++s) {
                for (std::size_t i = order.size() - 1; i > 1; --i) {
                    const std::size_t j = 1 + rng.next_below(i);
                    std::swap(order[i], order[j]);
                }
                consume_ordering<false>(g, order.data(), m, uf, degree.data(),
                                        tree_edges.data(), designated, acc);
            }
            return acc;
        });
    const unsigned long long total =
        static_cast<unsigned long long>(m) * orderings_per_stratum;
    return reduce_chunks(g, total, false, false, designated, chunks);
}

// ---- Monte Carlo -------------------------------------------------------------

std::optional<std::pair<EdgeId, EdgeId>> find_adjacent_pair(const Graph& g) {
    for (EdgeId e = 0; e < g.n_edges(); ++e)
        for (EdgeId f = e + 1; f < g.n_edges(); ++f) {
            const Edge& a = g.edge(e);
            const Edge& b = g.edge(f);
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) return std::pair{e, f};
        }
    return std::nullopt;
}

std::optional<std::pair<EdgeId, EdgeId>> find_nonadjacent_pair(const Graph& g) {
    for (EdgeId e = 0; e < g.n_edges(); ++e)
        for (EdgeId f = e + 1; f < g.n_edges(); ++f) {
            const Edge& a = g.edge(e);
            const Edge& b = g.edge(f);
            if (a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v) return std::pair{e, f};
        }
    return std::nullopt;
}

namespace {

struct McChunk {
    std::vector<long long> edge_count;
    long long both_adj = 0, e_adj = 0, f_adj = 0;
    long long both_non = 0, e_non = 0, f_non = 0;
    double mean_sq_sum = 0, mean_sq_sum_sq = 0;
    std::uint64_t tie_redraws = 0;
};

}  // namespace

McMstReport mc_mst_moments(const Graph& g, std::uint64_t n_samples, std::uint64_t seed,
                           int threads, std::optional<std::pair<EdgeId, EdgeId>> adjacent,
                           std::optional<std::pair<EdgeId, EdgeId>> nonadjacent) {
    const int n = g.n_vertices();
    const int m = g.n_edges();
    if (!is_connected(g)) throw std::invalid_argument("mc_mst_moments: disconnected graph");
    if (!adjacent) adjacent = find_adjacent_pair(g);
    if (!nonadjacent) nonadjacent = find_nonadjacent_pair(g);
    const bool track_edges = m <= 1024;

    const auto chunks = run_chunked<McChunk>(
        n_samples, seed, threads, [&](std::uint64_t, std::uint64_t count, Rng& rng) {
            McChunk acc;
            if (track_edges) acc.edge_count.assign(static_cast<std::size_t>(m), 0);
            WeightAssignment weights(static_cast<std::size_t>(m));
            std::vector<EdgeId> order(static_cast<std::size_t>(m));
            UnionFind uf(n);
            std::vector<int> degree(static_cast<std::size_t>(n));
            std::vector<char> in_tree(static_cast<std::size_t>(m));
            for (std::uint64_t s = 0; s < count; ++s) {
                for (double& w : weights) w = rng.next_double();
                std::iota(order.begin(), order.end(), 0);
                for (;;) {
                    std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
                        return weights[static_cast<std::size_t>(a)] <
                               weights[static_cast<std::size_t>(b)];
                    });
                    bool tie = false;
                    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                        if (weights[static_cast<std::size_t>(order[i])] ==
                            weights[static_cast<std::size_t>(order[i + 1])]) {
                            weights[static_cast<std::size_t>(order[i])] = rng.next_double();
                            ++acc.tie_redraws;
                            tie = true;
                        }
                    }
                    if (!tie) break;
                }
                uf.reset(n);
                std::fill(degree.begin(), degree.end(), 0);
                std::fill(in_tree.begin(), in_tree.end(), 0);
                int tree_size = 0;
                for (EdgeId e : order) {
                    const Edge& ed = g.edge(e);
                    if (uf.unite(ed.u, ed.v)) {
                        in_tree[static_cast<std::size_t>(e)] = 1;
                        ++degree[static_cast<std::size_t>(ed.u)];
                        ++degree[static_cast<std::size_t>(ed.v)];
                        if (++tree_size == n - 1) break;
                    }
                }
                if (track_edges)
                    for (int e = 0; e < m; ++e)
                        acc.edge_count[static_cast<std::size_t>(e)] +=
                            in_tree[static_cast<std::size_t>(e)];
                if (adjacent) {
                    const bool he = in_tree[static_cast<std::size_t>(adjacent->first)];
                    const bool hf = in_tree[static_cast<std::size_t>(adjacent->second)];
                    acc.e_adj += he;
                    acc.f_adj += hf;
                    acc.both_adj += he && hf;
                }
                if (nonadjacent) {
                    const bool he = in_tree[static_cast<std::size_t>(nonadjacent->first)];
                    const bool hf = in_tree[static_cast<std::size_t>(nonadjacent->second)];
                    acc.e_non += he;
                    acc.f_non += hf;
                    acc.both_non += he && hf;
                }
                double mean_sq = 0;
                for (int value : degree) mean_sq += static_cast<double>(value) * value;
                mean_sq /= n;
                acc.mean_sq_sum += mean_sq;
                acc.mean_sq_sum_sq += mean_sq * mean_sq;
            }
            return acc;
        });

    McMstReport report;
    report.n_samples = n_samples;
    report.seed = seed;
    if (adjacent) report.adjacent_pair = *adjacent;
    if (nonadjacent) report.nonadjacent_pair = *nonadjacent;
    std::vector<long long> edge_count(track_edges ? static_cast<std::size_t>(m) : 0, 0);
    long long both_adj = 0, both_non = 0;
    double mean_sq_sum = 0, mean_sq_sum_sq = 0;
    for (const McChunk& c : chunks) {
        report.tie_redraws += c.tie_redraws;
        both_adj += c.both_adj;
        both_non += c.both_non;
        mean_sq_sum += c.mean_sq_sum;
        mean_sq_sum_sq += c.mean_sq_sum_sq;
        if (track_edges)
            for (int e = 0; e < m; ++e)
                edge_count[static_cast<std::size_t>(e)] += c.edge_count[static_cast<std::size_t>(e)];
    }
    if (track_edges) {
        report.p0_estimate.resize(static_cast<std::size_t>(m));
        report.p0_stderr.resize(static_cast<std::size_t>(m));
        for (int e = 0; e < m; ++e) {
            const double p = static_cast<double>(edge_count[static_cast<std::size_t>(e)]) /
                             static_cast<double>(n_samples);
            report.p0_estimate[static_cast<std::size_t>(e)] = p;
            report.p0_stderr[static_cast<std::size_t>(e)] =
                std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(n_samples));
        }
    }
    report.p1_adjacent = EstimatorReport::from_sums(
        static_cast<double>(both_adj), static_cast<double>(both_adj), n_samples, seed);
    report.p2_nonadjacent = EstimatorReport::from_sums(
        static_cast<double>(both_non), static_cast<double>(both_non), n_samples, seed);
    report.mean_sq_degree =
        EstimatorReport::from_sums(mean_sq_sum, mean_sq_sum_sq, n_samples, seed);
    return report;
}

PncVerdict pnc_verdict_exact(const Graph& g, EdgeId e, EdgeId f, int threads) {
    PncVerdict verdict;
    verdict.e = e;
    verdict.f = f;
    verdict.exact = true;
    const auto oracle = exact_ordering_oracle(g, {{e, f}}, threads);
    verdict.p_pair_rat = oracle.designated_probability(0);
    verdict.p_e_rat = oracle.edge_probability(e);
    verdict.p_f_rat = oracle.edge_probability(f);
    verdict.margin_rat = verdict.p_pair_rat - verdict.p_e_rat * verdict.p_f_rat;
    verdict.p_pair = verdict.p_pair_rat.to_double();
    verdict.p_e = verdict.p_e_rat.to_double();
    verdict.p_f = verdict.p_f_rat.to_double();
    verdict.margin = verdict.margin_rat.to_double();
    verdict.verdict = verdict.margin_rat > Rational(0) ? "p-NC VIOLATED" : "p-NC holds";
    return verdict;
}

PncVerdict pnc_verdict_mc(const Graph& g, EdgeId e, EdgeId f, std::uint64_t n_samples,
                          std::uint64_t seed, int threads) {
    struct Counts {
        long long both = 0, he = 0, hf = 0;
    };
    const int n = g.n_vertices();
    const auto chunks = run_chunked<Counts>(
        n_samples, seed, threads, [&](std::uint64_t, std::uint64_t count, Rng& rng) {
            Counts acc;
            WeightAssignment weights(static_cast<std::size_t>(g.n_edges()));
            UnionFind uf(n);
            for (std::uint64_t s = 0; s < count; ++s) {
                for (double& w : weights) w = rng.next_double();
                std::vector<EdgeId> order(static_cast<std::size_t>(g.n_edges()));
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
                    return weights[static_cast<std::size_t>(a)] <
                           weights[static_cast<std::size_t>(b)];
                });
                uf.reset(n);
                bool has_e = false, has_f = false;
                int tree_size = 0;
                for (EdgeId id : order) {
                    const Edge& ed = g.edge(id);
                    if (uf.unite(ed.u, ed.v)) {
                        if (id == e) has_e = true;
                        if (id == f) has_f = true;
                        if (++tree_size == n - 1) break;
                    }
                }
                acc.he += has_e;
                acc.hf += has_f;
                acc.both += has_e && has_f;
            }
            return acc;
        });
    long long both = 0, he = 0, hf = 0;
    for (const auto& c : chunks) {
        both += c.both;
        he += c.he;
        hf += c.hf;
    }
    PncVerdict verdict;
    verdict.e = e;
    verdict.f = f;
    verdict.exact = false;
    const double N = static_cast<double>(n_samples);
    verdict.p_pair = static_cast<double>(both) / N;
    verdict.p_e = static_cast<double>(he) / N;
    verdict.p_f = static_cast<double>(hf) / N;
    verdict.margin = verdict.p_pair - verdict.p_e * verdict.p_f;
    // Delta method for g(p_ef, p_e, p_f) = p_ef - p_e p_f with the indicator
    // covariance structure (the pair indicator is the product of the two
    // single indicators).
    const double pef = verdict.p_pair, pe = verdict.p_e, pf = verdict.p_f;
    const double var = pef * (1 - pef) + pf * pf * pe * (1 - pe) + pe * pe * pf * (1 - pf) -
                       2 * pf * pef * (1 - pe) - 2 * pe * pef * (1 - pf) +
                       2 * pe * pf * (pef - pe * pf);
    verdict.margin_stderr = std::sqrt(std::max(var, 0.0) / N);
    // Sampling alone never certifies a strict inequality.
    if (std::abs(verdict.margin) <= 4 * verdict.margin_stderr)
        verdict.verdict = "inconclusive (margin within 4 standard errors of 0)";
    else
        verdict.verdict = verdict.margin > 0 ? "p-NC violated (statistical)"
                                             : "p-NC holds (statistical)";
    return verdict;
}

}  // namespace treelab
