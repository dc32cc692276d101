#ifndef TREELAB_UST_HPP
#define TREELAB_UST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "treelab/estimator.hpp"
#include "treelab/graph.hpp"
#include "treelab/laplacian.hpp"
#include "treelab/rng.hpp"

namespace treelab {

// Uniform spanning tree via Wilson's loop-erased random walk algorithm.
// Returns the n-1 tree edge ids; deterministic given the Rng state.
std::vector<EdgeId> sample_ust(const Graph& g, Rng& rng);

struct KnMoments {
    double p0 = 0;            // 2/n
    double p1 = 0;            // 3/n^2, adjacent pair
    double p2 = 0;            // 4/n^2 = p0^2, non-adjacent pair
    double mean_sq_degree = 0;  // 5 - 11/n + 6/n^2
};

// Closed-form UST quantities on the complete graph K_n (n >= 4).
KnMoments kn_ust_moments(int n);

// 6 - (d+7)/(d+1)^2 - 2/(d(d+1)); the refined second-moment bound for
// d-regular hosts (meaningful for d >= 3).
double ust_upper_bound(int d);

// Second-moment threshold for non-adjacent pairwise negative correlation on
// K_{n,n}: 5 - 13/(2n) + 3/n^2 - 1/(2n^3).
double knn_threshold(int n);

struct SecondMomentReport {
    std::string graph_name;
    int n = 0;
    int d = 0;
    double mean_sq_degree = 0;       // average over vertices of E[deg^2]
    double p1_adjacent = 0;          // average ordered incident-pair probability
    double upper_bound_value = 0;    // refined bound at this degree
    double identity_residual = 0;    // wedge route vs direct per-vertex route
    std::vector<double> per_vertex;  // E[deg(x)^2] per vertex
};

// Exact mean squared degree of a uniform vertex in the UST of a simple
// connected regular graph, via transfer currents over all ordered wedges.
SecondMomentReport exact_mean_sq_degree(const LaplacianSystem& sys, int threads = 0);

// Sum over vertices of E[deg^2] for an arbitrary simple connected graph
// (no regularity assumed); building block for the sharpness sweep.
double sum_expected_deg_sq(const LaplacianSystem& sys, int threads = 0);

// Full table of UST single and pair probabilities.
struct PairTable {
    std::vector<double> edge_prob;               // P[e in T]
    std::vector<std::vector<double>> pair_prob;  // P[e, f in T], symmetric, diag unused
};

PairTable build_pair_table(const LaplacianSystem& sys);

// Empirical single/pair frequencies over sampled trees; satisfies the
// ordered-pair identities exactly up to rounding because they hold
// configuration by configuration.
PairTable empirical_pair_table(const Graph& g, std::uint64_t n_samples, std::uint64_t seed,
                               int threads = 0);

struct IdentityResiduals {
    double adjacent = 0;      // ordered adjacent-pair sum vs sum E[deg^2] - 2(n-1)
    double non_adjacent = 0;  // ordered non-adjacent-pair sum vs n(n-1) - sum E[deg^2]
};

// Checks the two ordered-pair identities on a pair table over graph g.
IdentityResiduals check_pair_identities(const Graph& g, const PairTable& table);

// Convenience: transfer-current pair table on the host of sys.
IdentityResiduals second_moment_identity_check(const LaplacianSystem& sys);

struct WedgeExpectationReport {
    int n = 0;
    int d = 0;
    double e_alpha = 0;
    double e_gamma = 0;
    double e_k = 0;
    double e_alpha_beta = 0;
    double alpha_closed_form = 0;    // 2(n-d-1)/(n d (d+1))
    double gamma_closed_form = 0;    // 4(n-d-1)/(n (d-1)(d+1))
    double k_closed_form = 0;        // (n d - 2(n-1))/(n d (d-1))
    double alpha_beta_bound = 0;     // (d+2)(n-d-1)/(n d^2 (d+1))
    double split_identity_max = 0;   // max |2K - (a + alpha + beta - gamma)| over wedges
};

// Exact wedge expectations on a simple connected d-regular host (d >= 3).
WedgeExpectationReport wedge_expectations(const LaplacianSystem& sys, int threads = 0);

struct MomentBudgetReport {
    double sum_reff_sq = 0;
    double resistance_bound = 0;  // 45 |V| / d
    double sum_deg_sq = 0;        // sum over vertices of E[deg^2]
    double moment_bound = 0;      // 92 |V|
    bool ok = false;
};

MomentBudgetReport moment_budget_check(const LaplacianSystem& sys, int threads = 0);

struct SweepRow {
    int d = 0;
    int q = 0;
    double block_avg_deg_sq = 0;   // (1/q) sum over block vertices of E[deg^2]
    double port_expected_degree = 0;
    double m_value = 0;            // mean squared degree of the glued graph
    double upper_bound = 0;
    double gap_to_6 = 0;
};

// Sharpness family sweep assembled analytically from the bridge
// factorization: the UST of the glued graph is the product of block USTs
// plus the deterministic bridge set.
std::vector<SweepRow> sharpness_sweep(const std::vector<int>& d_list, int threads = 0);

// Mean over vertices of deg^2 in sampled USTs; chunked substreams.
EstimatorReport mc_mean_sq_degree(const Graph& g, std::uint64_t n_samples,
                                  std::uint64_t seed, int threads = 0);

}  // namespace treelab

#endif
