#ifndef TREELAB_MST_HPP
#define TREELAB_MST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treelab/estimator.hpp"
#include "treelab/graph.hpp"
#include "treelab/rational.hpp"
#include "treelab/rng.hpp"

namespace treelab {

// Per-edge weights; minimum spanning trees require pairwise distinct values.
using WeightAssignment = std::vector<double>;

// Kruskal with union by rank and path compression.  Throws on ties and on
// disconnected input.
std::vector<EdgeId> mst_kruskal(const Graph& g, const WeightAssignment& weights);

// Prim with a binary heap; same contract.
std::vector<EdgeId> mst_prim(const Graph& g, const WeightAssignment& weights);

// The minimum spanning tree (Kruskal route).
inline std::vector<EdgeId> mst_of(const Graph& g, const WeightAssignment& weights) {
    return mst_kruskal(g, weights);
}

// ---- exact ordering enumeration ---------------------------------------------

// The MST law depends only on the ordering of the i.i.d. continuous weights,
// so enumerating the m! edge orderings gives exact rational statistics.
struct OrderingOracleResult {
    int n = 0;
    int m = 0;
    unsigned long long orderings = 0;
    bool exact = true;  // false for the stratified sampler
    std::vector<long long> edge_count;       // orderings whose MST contains e
    long long sum_deg_sq = 0;                // sum over orderings of sum_x deg^2
    bool has_pair_table = false;
    std::vector<std::vector<long long>> pair_count;  // both-in-tree counts, m <= 10
    std::vector<std::pair<EdgeId, EdgeId>> designated_pairs;
    std::vector<long long> designated_count;

    Rational edge_probability(EdgeId e) const;
    Rational pair_probability(EdgeId e, EdgeId f) const;
    Rational designated_probability(std::size_t k) const;
    Rational mean_sq_degree() const;   // (1/n) sum_x E[deg^2]
    Rational sum_deg_sq_expected() const;
    // Complete-host identities.
    Rational p1_from_identity() const;  // (sum E[deg^2] - 2(n-1)) / (n(n-1)(n-2))
    Rational p2_from_identity() const;  // 4(n(n-1) - sum E[deg^2]) / (n(n-1)(n-2)(n-3))
};

// Full enumeration of all m! orderings; hard cap m <= 12.
OrderingOracleResult exact_ordering_oracle(
    const Graph& g, const std::vector<std::pair<EdgeId, EdgeId>>& designated = {},
    int threads = 0);

// Stratified sampling over random orderings for 13 <= m <= 16; the first
// edge is stratified exactly, the rest is sampled.  Clearly approximate.
OrderingOracleResult stratified_ordering_oracle(
    const Graph& g, std::uint64_t orderings_per_stratum, std::uint64_t seed,
    const std::vector<std::pair<EdgeId, EdgeId>>& designated = {}, int threads = 0);

// ---- Monte Carlo -------------------------------------------------------------

struct McMstReport {
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t tie_redraws = 0;
    // Per-edge presence estimates (populated when m <= 1024).
    std::vector<double> p0_estimate;
    std::vector<double> p0_stderr;
    std::pair<EdgeId, EdgeId> adjacent_pair{-1, -1};
    std::pair<EdgeId, EdgeId> nonadjacent_pair{-1, -1};
    EstimatorReport p1_adjacent;
    EstimatorReport p2_nonadjacent;
    EstimatorReport mean_sq_degree;
};

// i.i.d. uniform weights, one MST per sample; deterministic given the seed
// and independent of the thread count.
McMstReport mc_mst_moments(const Graph& g, std::uint64_t n_samples, std::uint64_t seed,
                           int threads = 0,
                           std::optional<std::pair<EdgeId, EdgeId>> adjacent = {},
                           std::optional<std::pair<EdgeId, EdgeId>> nonadjacent = {});

// ---- pairwise-negative-correlation verdicts ----------------------------------

struct PncVerdict {
    EdgeId e = -1;
    EdgeId f = -1;
    bool exact = false;
    double p_pair = 0;
    double p_e = 0;
    double p_f = 0;
    double margin = 0;  // p_pair - p_e * p_f; positive means p-NC violated
    double margin_stderr = 0;  // Monte Carlo only (delta method)
    Rational p_pair_rat, p_e_rat, p_f_rat, margin_rat;  // exact route only
    std::string verdict;  // "p-NC holds" / "p-NC VIOLATED" / "inconclusive (CI)"
};

PncVerdict pnc_verdict_exact(const Graph& g, EdgeId e, EdgeId f, int threads = 0);
PncVerdict pnc_verdict_mc(const Graph& g, EdgeId e, EdgeId f, std::uint64_t n_samples,
                          std::uint64_t seed, int threads = 0);

// First ordered pair of distinct edges sharing an endpoint / sharing none.
std::optional<std::pair<EdgeId, EdgeId>> find_adjacent_pair(const Graph& g);
std::optional<std::pair<EdgeId, EdgeId>> find_nonadjacent_pair(const Graph& g);

}  // namespace treelab

#endif
