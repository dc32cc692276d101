#include "treelab/pwit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treelab/parallel.hpp"
#include "treelab/quadrature.hpp"

namespace treelab {

namespace {
// Beyond this point q(x) = exp(-x theta(x)) < 1e-17, so integral tails are
// below every tolerance used here.
constexpr double kLambdaMax = 42.0;
}  // namespace

double theta(double lambda) {
    if (lambda <= 1.0) return 0.0;
    // Positive root of g(t) = 1 - t - exp(-lambda t); bracketed by
    // [1 - 1/lambda, 1 - exp(-lambda)] since log(lambda) <= lambda - 1.
    double lo = 1.0 - 1.0 / lambda;
    double hi = 1.0 - std::exp(-lambda);
    auto g = [lambda](double t) { return -t - std::expm1(-lambda * t); };
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double value = g(x);
        if (std::abs(value) <= 1e-15) return x;
        if (value > 0)
            lo = x;
        else
            hi = x;
        const double derivative = -1.0 + lambda * std::exp(-lambda * x);
        double next = x - value / derivative;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection safeguard
        if (next == x) break;
        x = next;
    }
    return x;
}

double theta_inv(double F) {
    if (!(F > 0.0 && F < 1.0))
        throw std::invalid_argument("theta_inv: F must lie strictly inside (0,1)");
    return -std::log1p(-F) / F;
}

double q_of(double lambda) { return 1.0 - theta(lambda); }

double theta_deriv(double lambda) {
    if (lambda <= 1.0) throw std::invalid_argument("theta_deriv: lambda > 1 required");
    const double q = q_of(lambda);
    return q * (1.0 - q) / (1.0 - lambda * q);
}

double beta_closed(double lambda) {
    const double q = q_of(lambda);
    return q - lambda * q * q / 2.0;
}

double alpha_integral(double lambda) {
    if (lambda <= 1.0) throw std::invalid_argument("alpha_integral: lambda > 1 required");
    if (lambda >= kLambdaMax) return 0.0;
    return adaptive_simpson([](double x) { return q_of(x); }, lambda, kLambdaMax, 1e-11);
}

double borel_log_pmf(double lambda, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("borel_log_pmf: m >= 1 required");
    const double md = static_cast<double>(m);
    return -lambda * md + (md - 1.0) * std::log(lambda * md) - std::lgamma(md + 1.0);
}

double borel_pmf(double lambda, std::uint64_t m) { return std::exp(borel_log_pmf(lambda, m)); }

namespace {

double zeta_tail_corrected(double s) {
    // Direct series plus the Euler-Maclaurin tail starting at K.
    constexpr long long K = 100000;
    double sum = 0;
    for (long long k = K - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    const double Kd = static_cast<double>(K);
    const double fK = std::pow(Kd, -s);
    sum += std::pow(Kd, 1.0 - s) / (s - 1.0);  // integral from K
    sum += fK / 2.0;
    sum += s * fK / (12.0 * Kd);
    return sum;
}

}  // namespace

double zeta2() {
    static const double value = zeta_tail_corrected(2.0);
    return value;
}

double zeta3() {
    static const double value = zeta_tail_corrected(3.0);
    return value;
}

// ---- ThetaTable --------------------------------------------------------------

ThetaTable::ThetaTable(double solver_tolerance)
    : tolerance_(solver_tolerance), grid_step_(1e-3), grid_max_(kLambdaMax) {
    const std::size_t nodes = static_cast<std::size_t>((grid_max_ - 1.0) / grid_step_) + 1;
    std::vector<double> q_nodes(nodes);
    for (std::size_t k = 0; k < nodes; ++k) q_nodes[k] = q_of(1.0 + static_cast<double>(k) * grid_step_);
    alpha_grid_.assign(nodes, 0.0);
    // alpha(grid_max) < 1e-17; accumulate Simpson panels downward.
    for (std::size_t k = nodes - 1; k-- > 0;) {
        const double x0 = 1.0 + static_cast<double>(k) * grid_step_;
        const double mid = q_of(x0 + grid_step_ / 2.0);
        alpha_grid_[k] = alpha_grid_[k + 1] +
                         grid_step_ / 6.0 * (q_nodes[k] + 4.0 * mid + q_nodes[k + 1]);
    }
    q_grid_ = std::move(q_nodes);
}

double ThetaTable::alpha(double lambda) const {
    if (lambda < 1.0) throw std::invalid_argument("ThetaTable::alpha: lambda >= 1 required");
    if (lambda >= grid_max_) return 0.0;
    const double position = (lambda - 1.0) / grid_step_;
    std::size_t k = static_cast<std::size_t>(position);
    if (k + 1 >= alpha_grid_.size()) k = alpha_grid_.size() - 2;
    const double t = position - static_cast<double>(k);
    // Cubic Hermite with exact derivatives alpha'(x) = -q(x).
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * alpha_grid_[k] + h10 * grid_step_ * (-q_grid_[k]) +
           h01 * alpha_grid_[k + 1] + h11 * grid_step_ * (-q_grid_[k + 1]);
}

ThetaTable::Point ThetaTable::eval(double lambda) const {
    if (lambda <= 1.0) throw std::invalid_argument("ThetaTable::eval: lambda > 1 required");
    Point p;
    p.theta = theta(lambda);
    p.q = 1.0 - p.theta;
    p.theta_prime = p.q * (1.0 - p.q) / (1.0 - lambda * p.q);
    p.alpha = alpha(lambda);
    p.beta = p.q - lambda * p.q * p.q / 2.0;
    return p;
}

// ---- PondSampler -------------------------------------------------------------

double PondSampler::pmf(double lambda, std::uint64_t m) const {
    if (m == 0) return 0.0;
    const double th = theta(lambda);
    const double tp = theta_deriv(lambda);
    const double md = static_cast<double>(m);
    const double log_term = -lambda * md + (md - 1.0) * std::log(lambda * md) - std::lgamma(md);
    return th / tp * std::exp(log_term);
}

double PondSampler::inv_moment(double lambda, int power, std::uint64_t max_terms) const {
    const double th = theta(lambda);
    const double tp = theta_deriv(lambda);
    const double norm = th / tp;
    const double step_base = lambda * std::exp(-lambda);
    double p = norm * std::exp(-lambda);  // pmf at m = 1
    double sum = 0;
    for (std::uint64_t m = 1; m <= max_terms; ++m) {
        const double term = p / std::pow(static_cast<double>(m), static_cast<double>(power));
        sum += term;
        if (m > 100 && term * static_cast<double>(m) < 1e-14 * (1.0 + sum)) break;
        if ((m & 0xfffULL) == 0) {
            const double md = static_cast<double>(m + 1);
            p = norm * std::exp(-lambda * md + (md - 1.0) * std::log(lambda * md) -
                                std::lgamma(md));
        } else {
            p *= step_base * std::exp(static_cast<double>(m) * std::log1p(1.0 / static_cast<double>(m)));
        }
    }
    return sum;
}

double PondSampler::pmf_mass(double lambda, std::uint64_t max_terms) const {
    return inv_moment(lambda, 0, max_terms);
}

std::unique_ptr<PondSampler::Bucket> PondSampler::build_bucket(double lambda_hat) {
    auto bucket = std::make_unique<Bucket>();
    bucket->lambda_hat = lambda_hat;
    const double th = theta(lambda_hat);
    const double tp = theta_deriv(lambda_hat);
    const double norm = th / tp;
    const double step_base = lambda_hat * std::exp(-lambda_hat);
    double p = norm * std::exp(-lambda_hat);
    double cum = 0;
    bucket->block_first_m = kDenseHead + 1;
    std::uint64_t m = 1;
    for (;; ++m) {
        if (m > kDenseHead && (m - kDenseHead - 1) % kBlock == 0) {
            bucket->block_cum_before.push_back(cum);
            bucket->block_start_pmf.push_back(p);
        }
        cum += p;
        if (m <= kDenseHead) bucket->dense_cdf.push_back(cum);
        if (1.0 - cum <= 1e-12 || m >= kHardCap) break;
        if ((m & 0xfffULL) == 0) {
            const double md = static_cast<double>(m + 1);
            p = norm * std::exp(-lambda_hat * md + (md - 1.0) * std::log(lambda_hat * md) -
                                std::lgamma(md));
        } else {
            p *= step_base *
                 std::exp(static_cast<double>(m) * std::log1p(1.0 / static_cast<double>(m)));
        }
    }
    bucket->max_m = m;
    bucket->total_mass = cum;
    bucket->discarded_mass = std::max(0.0, 1.0 - cum);
    return bucket;
}

const PondSampler::Bucket& PondSampler::bucket_for(double lambda) const {
    const long index = static_cast<long>(std::floor((lambda - 1.0) / kBucketWidth));
    {
        std::shared_lock lock(mutex_);
        const auto it = buckets_.find(index);
        if (it != buckets_.end()) return *it->second;
    }
    const double lambda_hat = 1.0 + (static_cast<double>(index) + 0.5) * kBucketWidth;
    auto fresh = build_bucket(lambda_hat);
    std::unique_lock lock(mutex_);
    const auto it = buckets_.try_emplace(index, std::move(fresh)).first;
    return *it->second;
}

PondSampler::Draw PondSampler::sample(double lambda, Rng& rng) const {
    if (lambda <= 1.0) throw std::invalid_argument("PondSampler::sample: lambda > 1 required");
    const Bucket& bucket = bucket_for(lambda);
    Draw draw;
    draw.discarded_mass = bucket.discarded_mass;
    double u = rng.next_double();
    if (u > bucket.total_mass) {
        // Truncated tail: log the event and resample conditioned on the table.
        draw.tail_resample = true;
        u = rng.next_double() * bucket.total_mass;
    }
    if (!bucket.dense_cdf.empty() && u <= bucket.dense_cdf.back()) {
        const auto it = std::lower_bound(bucket.dense_cdf.begin(), bucket.dense_cdf.end(), u);
        draw.z = static_cast<std::uint64_t>(it - bucket.dense_cdf.begin()) + 1;
        return draw;
    }
    if (bucket.block_cum_before.empty()) {
        draw.z = bucket.max_m;
        return draw;
    }
    // Last block whose starting cumulative lies below u.
    auto it = std::upper_bound(bucket.block_cum_before.begin(), bucket.block_cum_before.end(), u);
    std::size_t block = it == bucket.block_cum_before.begin()
                            ? 0
                            : static_cast<std::size_t>(it - bucket.block_cum_before.begin()) - 1;
    std::uint64_t m = bucket.block_first_m + static_cast<std::uint64_t>(block) * kBlock;
    double p = bucket.block_start_pmf[block];
    double cum = bucket.block_cum_before[block];
    const double step_base = bucket.lambda_hat * std::exp(-bucket.lambda_hat);
    for (;;) {
        cum += p;
        if (cum >= u || m >= bucket.max_m) {
            draw.z = m;
            return draw;
        }
        p *= step_base *
             std::exp(static_cast<double>(m) * std::log1p(1.0 / static_cast<double>(m)));
        ++m;
    }
}

PondSampler::Draw PondSampler::sample_exact(double lambda, Rng& rng) const {
    if (lambda <= 1.0)
        throw std::invalid_argument("PondSampler::sample_exact: lambda > 1 required");
    const double th = theta(lambda);
    const double tp = theta_deriv(lambda);
    const double norm = th / tp;
    const double step_base = lambda * std::exp(-lambda);
    const double u = rng.next_double();
    double p = norm * std::exp(-lambda);
    double cum = 0;
    Draw draw;
    for (std::uint64_t m = 1;; ++m) {
        cum += p;
        if (cum >= u || m >= kHardCap) {
            draw.z = m;
            draw.tail_resample = cum < u;
            draw.discarded_mass = std::max(0.0, 1.0 - cum);
            return draw;
        }
        if ((m & 0xfffULL) == 0) {
            const double md = static_cast<double>(m + 1);
            p = norm * std::exp(-lambda * md + (md - 1.0) * std::log(lambda * md) -
                                std::lgamma(md));
        } else {
            p *= step_base *
                 std::exp(static_cast<double>(m) * std::log1p(1.0 / static_cast<double>(m)));
        }
    }
}

// ---- uniform labelled trees ----------------------------------------------------

std::uint64_t root_degree_uniform_tree(std::uint64_t m, Rng& rng) {
    if (m == 0) throw std::invalid_argument("root_degree_uniform_tree: m >= 1 required");
    if (m == 1) return 0;
    return 1 + rng.next_binomial(m - 2, 1.0 / static_cast<double>(m));
}

UniformTree uniform_labelled_tree(int size, Rng& rng) {
    if (size < 1) throw std::invalid_argument("uniform_labelled_tree: size >= 1 required");
    UniformTree tree;
    tree.size = size;
    tree.root = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(size)));
    if (size == 1) return tree;
    if (size == 2) {
        tree.edges.push_back({0, 1});
        return tree;
    }
    std::vector<int> code(static_cast<std::size_t>(size - 2));
    for (int& x : code) x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(size)));
    std::vector<int> degree(static_cast<std::size_t>(size), 1);
    for (int x : code) ++degree[static_cast<std::size_t>(x)];
    int ptr = 0;
    while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
    int leaf = ptr;
    for (int x : code) {
        tree.edges.push_back({leaf, x});
        if (--degree[static_cast<std::size_t>(x)] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
            leaf = ptr;
        }
    }
    tree.edges.push_back({leaf, size - 1});
    return tree;
}

// ---- root-degree sampler -------------------------------------------------------

PwitSample RootDegreeSampler::sample(Rng& rng) const {
    PwitSample s;
    const double F = rng.next_double();
    s.lambda = theta_inv(F);
    const PondSampler::Draw pond = ponds_->sample(s.lambda, rng);
    s.z1 = pond.z;
    s.tail_resample = pond.tail_resample;
    s.discarded_mass = pond.discarded_mass;
    s.d1 = root_degree_uniform_tree(s.z1, rng);
    s.d2 = rng.next_poisson(table_->alpha(s.lambda));
    s.d3 = rng.next_double() < 1.0 / static_cast<double>(s.z1) ? 1 : 0;
    s.n = s.d1 + s.d2 + s.d3;
    return s;
}

PwitMomentReport mc_root_degree_moments(std::uint64_t n_samples, std::uint64_t seed,
                                        int threads) {
    const ThetaTable table;
    const PondSampler ponds;
    const RootDegreeSampler sampler(table, ponds);
    struct Acc {
        double s1 = 0, s2 = 0, s4 = 0;
        std::uint64_t events = 0;
        double discarded = 0;
    };
    const auto chunks = run_chunked<Acc>(
        n_samples, seed, threads, [&](std::uint64_t, std::uint64_t count, Rng& rng) {
            Acc acc;
            for (std::uint64_t i = 0; i < count; ++i) {
                const PwitSample s = sampler.sample(rng);
                const double n = static_cast<double>(s.n);
                acc.s1 += n;
                acc.s2 += n * n;
                acc.s4 += n * n * n * n;
                if (s.tail_resample) ++acc.events;
                acc.discarded += s.discarded_mass;
            }
            return acc;
        });
    double s1 = 0, s2 = 0, s4 = 0, discarded = 0;
    std::uint64_t events = 0;
    for (const Acc& a : chunks) {
        s1 += a.s1;
        s2 += a.s2;
        s4 += a.s4;
        events += a.events;
        discarded += a.discarded;
    }
    PwitMomentReport report;
    report.second_moment = EstimatorReport::from_sums(s2, s4, n_samples, seed);
    report.first_moment = EstimatorReport::from_sums(s1, s2, n_samples, seed);
    report.truncation_events = events;
    report.discarded_mass_total = discarded;
    return report;
}

// ---- moment integrals ----------------------------------------------------------

MomentIntegrals moment_integrals() {
    MomentIntegrals out;
    out.i1 = adaptive_simpson([](double x) { return theta(x) * q_of(x); }, 1.0, kLambdaMax,
                              1e-10);
    out.i2 = adaptive_simpson([](double x) { return theta(x) * beta_closed(x); }, 1.0,
                              kLambdaMax, 1e-10);
    out.combo = adaptive_simpson(
        [](double x) { return theta(x) * (2.0 * beta_closed(x) - q_of(x)); }, 1.0, kLambdaMax,
        1e-10);
    out.q_integral = adaptive_simpson(
        [](double u) {
            if (u <= 0.0) return 1.0;
            if (u >= 1.0) return 0.0;
            const double inner = 1.0 + u * std::log(u) / (1.0 - u);
            return inner * inner;
        },
        0.0, 1.0, 1e-10);
    out.zeta_2 = zeta2();
    out.zeta_3 = zeta3();
    out.series_value =
        1.0 - 2.0 * (out.zeta_2 - 1.0) + 2.0 * (out.zeta_2 + 1.0 - 2.0 * out.zeta_3);
    out.e_n2 = 5.0 + out.series_value;
    return out;
}

double conditional_moment_assembly(const ThetaTable& table, const PondSampler& ponds) {
    // Substituting u = theta(lambda) makes the outlet-weight density uniform;
    // composite Simpson over u with pond pmf sums for the 1/Z moments.
    const int panels = 400;
    const double lo = 1e-9, hi = 1.0 - 1e-9;
    const double h = (hi - lo) / panels;
    auto f = [&](double u) {
        const double lambda = theta_inv(u);
        const double alpha = table.alpha(lambda);
        const double e_inv = ponds.inv_moment(lambda, 1);
        const double e_inv_sq = ponds.inv_moment(lambda, 2);
        return 5.0 - 6.0 * e_inv + 2.0 * e_inv_sq + alpha * alpha + 5.0 * alpha -
               2.0 * alpha * e_inv;
    };
    double sum = f(lo) + f(hi);
    for (int k = 1; k < panels; ++k) sum += f(lo + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// ---- branching-process simulation ----------------------------------------------

std::optional<std::uint64_t> pgw_total_progeny(double lambda, Rng& rng, std::uint64_t cap) {
    // A live population of 512 goes extinct with probability at most
    // (1 - theta)^512, which is zero at double precision for lambda > 1, so
    // such paths are declared exploded without walking to the total cap.
    constexpr std::uint64_t kAliveExplosion = 512;
    std::uint64_t alive = 1, total = 1;
    while (alive > 0) {
        --alive;
        const std::uint64_t children = rng.next_poisson(lambda);
        alive += children;
        total += children;
        if (total > cap || alive >= kAliveExplosion) return std::nullopt;
    }
    return total;
}

PgwBetaReport pgw_beta_check(double lambda, std::uint64_t n_samples, std::uint64_t seed,
                             int threads) {
    struct Acc {
        double sum = 0, sum_sq = 0;
        std::uint64_t explosions = 0;
    };
    const auto chunks = run_chunked<Acc>(
        n_samples, seed, threads, [&](std::uint64_t, std::uint64_t count, Rng& rng) {
            Acc acc;
            for (std::uint64_t i = 0; i < count; ++i) {
                const auto progeny = pgw_total_progeny(lambda, rng);
                double value = 0;
                if (progeny)
                    value = 1.0 / static_cast<double>(*progeny);
                else
                    ++acc.explosions;
                acc.sum += value;
                acc.sum_sq += value * value;
            }
            return acc;
        });
    double sum = 0, sum_sq = 0;
    std::uint64_t explosions = 0;
    for (const Acc& a : chunks) {
        sum += a.sum;
        sum_sq += a.sum_sq;
        explosions += a.explosions;
    }
    PgwBetaReport report;
    report.inverse_size = EstimatorReport::from_sums(sum, sum_sq, n_samples, seed);
    report.closed_form = beta_closed(lambda);
    report.explosions = explosions;
    report.n_samples = n_samples;
    return report;
}

}  // namespace treelab
