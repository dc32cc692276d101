#include "treelab/laplacian.hpp"

#include "treelab/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace treelab {

namespace {

constexpr int kDenseVertexCap = 2000;
constexpr int kExactTreeCountCap = 64;

Eigen::MatrixXd reduced_laplacian(const Graph& g, VertexId ground) {
    const int n = g.n_vertices();
    Eigen::MatrixXd reduced = Eigen::MatrixXd::Zero(n - 1, n - 1);
    auto index = [ground](VertexId v) { return v < ground ? v : v - 1; };
    for (const Edge& ed : g.edges()) {
        if (ed.u != ground && ed.v != ground) {
            const int iu = index(ed.u), iv = index(ed.v);
            reduced(iu, iu) += 1;
            reduced(iv, iv) += 1;
            reduced(iu, iv) -= 1;
            reduced(iv, iu) -= 1;
        } else {
            const VertexId other = ed.u == ground ? ed.v : ed.u;
            const int io = index(other);
            reduced(io, io) += 1;
        }
    }
    return reduced;
}

}  // namespace

LaplacianSystem::LaplacianSystem(const Graph& g)
    : graph_(g), connected_(is_connected(g)), ground_(g.n_vertices() - 1) {
    if (g.n_vertices() > kDenseVertexCap)
        throw ResourceCapError("LaplacianSystem: dense solver capped at 2000 vertices");
    if (connected_ && g.n_vertices() > 1) {
        llt_.compute(reduced_laplacian(graph_, ground_));
        if (llt_.info() != Eigen::Success)
            throw std::runtime_error("LaplacianSystem: Cholesky factorization failed");
    }
}

void LaplacianSystem::ensure_columns() const {
    std::call_once(columns_once_, [this] {
        if (!connected_) throw std::runtime_error("LaplacianSystem: graph is disconnected");
        const int r = graph_.n_vertices() - 1;
        if (r == 0) {
            columns_.resize(0, 0);
            return;
        }
        const Eigen::MatrixXd reduced = reduced_laplacian(graph_, ground_);
        Eigen::MatrixXd inverse = llt_.solve(Eigen::MatrixXd::Identity(r, r));
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::MatrixXd residual =
                Eigen::MatrixXd::Identity(r, r) - reduced * inverse;
            const double max_residual = residual.cwiseAbs().maxCoeff();
            if (max_residual <= solve_tol_) return void(columns_ = std::move(inverse));
            inverse += llt_.solve(residual);
        }
        const double final_residual =
            (Eigen::MatrixXd::Identity(r, r) - reduced * inverse).cwiseAbs().maxCoeff();
        if (final_residual > solve_tol_)
            throw std::runtime_error("LaplacianSystem: solve residual above tolerance");
        columns_ = std::move(inverse);
    });
}

double LaplacianSystem::column_entry(VertexId i, VertexId j) const {
    if (i == ground_ || j == ground_) return 0.0;
    const int ii = i < ground_ ? i : i - 1;
    const int jj = j < ground_ ? j : j - 1;
    return columns_(ii, jj);
}

double LaplacianSystem::effective_resistance(VertexId u, VertexId v) const {
    if (u == v) throw std::invalid_argument("effective_resistance: u == v");
    if (!connected_) throw std::runtime_error("effective_resistance: graph is disconnected");
    if (u < 0 || u >= graph_.n_vertices() || v < 0 || v >= graph_.n_vertices())
        throw std::invalid_argument("effective_resistance: vertex out of range");
    ensure_columns();
    return column_entry(u, u) + column_entry(v, v) - 2.0 * column_entry(u, v);
}

double LaplacianSystem::edge_probability_ust(EdgeId e) const {
    const Edge& ed = graph_.edge(e);
    return effective_resistance(ed.u, ed.v);
}

double LaplacianSystem::transfer_current(EdgeId e, EdgeId f) const {
    if (!connected_) throw std::runtime_error("transfer_current: graph is disconnected");
    ensure_columns();
    const Edge& se = graph_.edge(e);
    const Edge& sf = graph_.edge(f);
    // Potential of the unit e-current evaluated across f.
    return column_entry(sf.u, se.u) - column_entry(sf.u, se.v) -
           column_entry(sf.v, se.u) + column_entry(sf.v, se.v);
}

double LaplacianSystem::pair_probability_ust(EdgeId e, EdgeId f) const {
    if (e == f) throw std::invalid_argument("pair_probability_ust: e == f");
    const double y_ee = edge_probability_ust(e);
    const double y_ff = edge_probability_ust(f);
    const double y_ef = transfer_current(e, f);
    return y_ee * y_ff - y_ef * y_ef;
}

WedgeResistances LaplacianSystem::wedge_resistances(VertexId x, VertexId y, VertexId z,
                                                    int d) const {
    if (y == z) throw std::invalid_argument("wedge_resistances: y == z");
    if (graph_.multiplicity(x, y) == 0 || graph_.multiplicity(x, z) == 0)
        throw std::invalid_argument("wedge_resistances: y, z must be neighbors of x");
    WedgeResistances w;
    w.r1 = effective_resistance(x, y);
    w.r2 = effective_resistance(x, z);
    w.t = effective_resistance(y, z);
    w.a = 2.0 / (d + 1);
    w.alpha = w.r1 - w.a;
    w.beta = w.r2 - w.a;
    w.gamma = w.t - w.a;
    w.k = (w.r1 + w.r2 - w.t) / 2.0;
    return w;
}

double LaplacianSystem::foster_sum() const {
    double total = 0;
    for (EdgeId e = 0; e < graph_.n_edges(); ++e) total += edge_probability_ust(e);
    return total;
}

ResistanceBuckets LaplacianSystem::resistance_buckets(int d) const {
    if (d < 3) throw std::invalid_argument("resistance_buckets: requires degree >= 3");
    ResistanceBuckets out;
    // M = floor(log_3 d)
    int m_levels = 0;
    long long power = 1;
    while (power * 3 <= d) {
        power *= 3;
        ++m_levels;
    }
    out.m_levels = m_levels;
    out.sizes.assign(static_cast<std::size_t>(m_levels) + 1, 0);
    out.upper_edges.resize(static_cast<std::size_t>(m_levels) + 1);
    for (int i = 0; i <= m_levels; ++i) {
        const double edge = (i == m_levels) ? 1.0 : std::pow(3.0, i + 1) / d;
        out.upper_edges[static_cast<std::size_t>(i)] = edge;
    }
    const double slack = 1e-12;
    for (EdgeId e = 0; e < graph_.n_edges(); ++e) {
        const double r = edge_probability_ust(e);
        int bucket = 0;
        while (bucket < m_levels &&
               r > std::pow(3.0, bucket + 1) / d + slack)
            ++bucket;
        ++out.sizes[static_cast<std::size_t>(bucket)];
    }
    const long long n = graph_.n_vertices();
    double level = 3.0;
    for (int i = 1; i <= m_levels; ++i) {
        if (static_cast<double>(out.sizes[static_cast<std::size_t>(i)]) >
            static_cast<double>(n) / (level - 2.0) + slack)
            out.bound_holds = false;
        level *= 3.0;
    }
    return out;
}

TreeCount LaplacianSystem::tree_count() const {
    TreeCount out;
    if (!connected_) {
        out.connected = false;
        out.exact = true;
        out.count = BigInt(0);
        return out;
    }
    const int n = graph_.n_vertices();
    if (n == 1) {
        out.count = BigInt(1);
        return out;
    }
    if (n <= kExactTreeCountCap) {
        // Fraction-free (Bareiss) elimination of the grounded integer minor.
        const int r = n - 1;
        std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(r),
                                           std::vector<BigInt>(static_cast<std::size_t>(r), BigInt(0)));
        for (const Edge& ed : graph_.edges()) {
            if (ed.u != ground_ && ed.v != ground_) {
                m[static_cast<std::size_t>(ed.u)][static_cast<std::size_t>(ed.u)] =
                    m[static_cast<std::size_t>(ed.u)][static_cast<std::size_t>(ed.u)] + BigInt(1);
                m[static_cast<std::size_t>(ed.v)][static_cast<std::size_t>(ed.v)] =
                    m[static_cast<std::size_t>(ed.v)][static_cast<std::size_t>(ed.v)] + BigInt(1);
                m[static_cast<std::size_t>(ed.u)][static_cast<std::size_t>(ed.v)] =
                    m[static_cast<std::size_t>(ed.u)][static_cast<std::size_t>(ed.v)] - BigInt(1);
                m[static_cast<std::size_t>(ed.v)][static_cast<std::size_t>(ed.u)] =
                    m[static_cast<std::size_t>(ed.v)][static_cast<std::size_t>(ed.u)] - BigInt(1);
            } else {
                const VertexId other = ed.u == ground_ ? ed.v : ed.u;
                m[static_cast<std::size_t>(other)][static_cast<std::size_t>(other)] =
                    m[static_cast<std::size_t>(other)][static_cast<std::size_t>(other)] + BigInt(1);
            }
        }
        BigInt previous_pivot(1);
        for (int k = 0; k + 1 < r; ++k) {
            const BigInt pivot = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
            if (pivot.is_zero())
                throw std::logic_error("tree_count: zero pivot in a positive definite minor");
            for (int i = k + 1; i < r; ++i) {
                for (int j = k + 1; j < r; ++j) {
                    BigInt value = pivot * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                                   m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                                       m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        value.div_exact(previous_pivot);
                }
            }
            previous_pivot = pivot;
        }
        out.count = m[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(r - 1)];
        out.log_value = std::log(std::max(out.count.to_double(), 1.0));
        return out;
    }
    // Approximate route: log-determinant from the Cholesky factor.
    out.exact = false;
    const Eigen::MatrixXd factor = llt_.matrixL();
    double log_det = 0;
    for (int i = 0; i < factor.rows(); ++i) log_det += 2.0 * std::log(factor(i, i));
    out.log_value = log_det;
    out.log_error = 1e-11 * static_cast<double>(n);
    return out;
}

double complement_route_resistance(const Graph& g, VertexId u, VertexId v) {
    const int n = g.n_vertices();
    if (u == v) throw std::invalid_argument("complement_route_resistance: u == v");
    // L_H = L_{K_n} - L_G for the complement H of g in K_n.
    Eigen::MatrixXd lh = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        lh(i, i) = n - 1;
        for (int j = 0; j < n; ++j)
            if (j != i) lh(i, j) = -1;
    }
    for (const Edge& ed : g.edges()) {
        lh(ed.u, ed.u) -= 1;
        lh(ed.v, ed.v) -= 1;
        lh(ed.u, ed.v) += 1;
        lh(ed.v, ed.u) += 1;
    }
    const Eigen::MatrixXd system =
        Eigen::MatrixXd::Identity(n, n) - lh / static_cast<double>(n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(u) = 1;
    rhs(v) = -1;
    const Eigen::VectorXd solution = system.partialPivLu().solve(rhs);
    return (solution(u) - solution(v)) / static_cast<double>(n);
}

}  // namespace treelab
