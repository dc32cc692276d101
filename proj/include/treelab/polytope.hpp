#ifndef TREELAB_POLYTOPE_HPP
#define TREELAB_POLYTOPE_HPP

#include <cstdint>
#include <vector>

#include "treelab/graph.hpp"
#include "treelab/laplacian.hpp"
#include "treelab/rng.hpp"

namespace treelab {

// Graphic-matroid rank: |V| minus the number of components of (V, S),
// isolated vertices included as components.
int matroid_rank(const Graph& g, std::span<const EdgeId> subset);

struct MembershipVerdict {
    bool member = true;
    bool exact = true;            // false when decided by the randomized fuzzer
    double worst_violation = 0;   // max over tested U of sum_U(x) - rank_U
    std::vector<VertexId> worst_set;
};

// Forest-polytope membership via vertex-induced rank constraints: for each
// U subseteq V, sum of x_e over edges inside U must not exceed
// |U| - c(G[U]).  For graphic matroids this family is equivalent to the full
// subset family.  Exact enumeration for |V| <= 20; a randomized local-search
// fuzzer (reported as heuristic) above that.
MembershipVerdict forest_polytope_membership(const Graph& g, const std::vector<double>& x,
                                             double tolerance = 0.0, int threads = 0,
                                             std::uint64_t fuzzer_seed = 1,
                                             int fuzzer_iterations = 20000);

struct AlphaMembershipReport {
    int n = 0;
    int d = 0;
    bool alpha_nonneg = true;
    double min_alpha = 0;
    MembershipVerdict membership;        // alpha vector against the rank constraints
    bool reff_rank_ok = true;            // sum_U reff <= rank_U route
    double worst_reff_violation = 0;
};

// Builds alpha_e = reff(e) - 2/(d+1) on a simple connected d-regular host and
// checks Edmonds membership along with the stronger resistance-rank route.
AlphaMembershipReport alpha_membership_check(const LaplacianSystem& sys, int threads = 0);

struct ForestDegreeCheck {
    bool is_forest = true;
    bool identity_ok = true;  // sum over non-isolated of (deg - 1) == m - c
    bool bound_ok = true;     // sum deg^2 <= (d+2) m
    long long sum_deg_sq = 0;
    long long bound_value = 0;
};

ForestDegreeCheck forest_degree_check(const Graph& g, std::span<const EdgeId> forest,
                                      int degree_cap);

struct FosterAlphaReport {
    double total = 0;        // sum over edges of alpha_e
    double closed_form = 0;  // (n - d - 1)/(d + 1)
};

FosterAlphaReport foster_alpha_total(const LaplacianSystem& sys);

// Uniformly shuffled greedy forest with a random target size; audit fodder.
std::vector<EdgeId> random_forest(const Graph& g, Rng& rng);

}  // namespace treelab

#endif
