#ifndef TREELAB_LAPLACIAN_HPP
#define TREELAB_LAPLACIAN_HPP

#include <Eigen/Dense>
#include <mutex>
#include <vector>

#include "treelab/bigint.hpp"
#include "treelab/graph.hpp"

namespace treelab {

// Three effective resistances of an ordered wedge (y, x, z) plus the derived
// split against the regular-graph baseline a = 2/(d+1).
struct WedgeResistances {
    double r1 = 0;     // reff(x <-> y)
    double r2 = 0;     // reff(x <-> z)
    double t = 0;      // reff(y <-> z)
    double a = 0;      // 2/(d+1)
    double alpha = 0;  // r1 - a
    double beta = 0;   // r2 - a
    double gamma = 0;  // t - a
    double k = 0;      // (r1 + r2 - t)/2, the off-diagonal transfer current
};

struct ResistanceBuckets {
    int m_levels = 0;                    // floor(log_3 d)
    std::vector<long long> sizes;        // |E_0| .. |E_M|
    std::vector<double> upper_edges;     // 3/d, 9/d, ..., capped at 1
    bool bound_holds = true;             // |E_i| <= n/(3^i - 2) for i >= 1
};

struct TreeCount {
    bool connected = true;
    bool exact = true;
    BigInt count;            // valid when exact
    double log_value = 0;    // natural log when approximate (n > 64)
    double log_error = 0;    // coarse bound on the log error
};

// Grounded reduced Laplacian with a dense Cholesky factorization.  The full
// matrix of grounded solve columns is materialized lazily on first use, after
// which every resistance and transfer-current query is O(1).  Immutable after
// construction; concurrent queries are safe.
class LaplacianSystem {
  public:
    explicit LaplacianSystem(const Graph& g);

    const Graph& graph() const { return graph_; }
    bool connected() const { return connected_; }

    double effective_resistance(VertexId u, VertexId v) const;

    // P[e in UST] = reff(endpoints) for a unit-conductance edge.
    double edge_probability_ust(EdgeId e) const;

    // Transfer current Y(e, f): current through f (oriented u->v as stored)
    // under a unit current imposed across e.
    double transfer_current(EdgeId e, EdgeId f) const;

    // P[e, f in UST] via the 2x2 transfer-current determinant.
    double pair_probability_ust(EdgeId e, EdgeId f) const;

    // Requires y and z to be distinct neighbors of x; d is the host degree
    // used for the baseline.
    WedgeResistances wedge_resistances(VertexId x, VertexId y, VertexId z, int d) const;

    // Sum of reff over edges, once per parallel edge; equals n-1 when connected.
    double foster_sum() const;

    ResistanceBuckets resistance_buckets(int d) const;

    TreeCount tree_count() const;

    double solve_tolerance() const { return solve_tol_; }

  private:
    void ensure_columns() const;
    double column_entry(VertexId i, VertexId j) const;

    Graph graph_;
    bool connected_;
    VertexId ground_;
    double solve_tol_ = 1e-11;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    mutable std::once_flag columns_once_;
    mutable Eigen::MatrixXd columns_;  // (n-1) x (n-1) inverse of the reduced Laplacian
};

// Resistance between u and v evaluated through the inverse of I - L_H/n,
// where H is the complement of g inside the complete graph on the same
// vertex set.  Valid when that matrix is invertible (complement of bounded
// degree), e.g. for the dense sharpness blocks.
double complement_route_resistance(const Graph& g, VertexId u, VertexId v);

}  // namespace treelab

#endif
