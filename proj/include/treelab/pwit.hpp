#ifndef TREELAB_PWIT_HPP
#define TREELAB_PWIT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "treelab/estimator.hpp"
#include "treelab/graph.hpp"
#include "treelab/rng.hpp"

namespace treelab {

// Survival probability of a Poisson(lambda) branching process: the positive
// root of 1 - theta = exp(-lambda * theta).  Returns 0 for lambda <= 1
// (the trivial root is the only one there).
double theta(double lambda);

// Inverse of theta on (0,1): lambda = -log(1-F)/F.
double theta_inv(double F);

double q_of(double lambda);           // 1 - theta(lambda)
double theta_deriv(double lambda);    // q(1-q)/(1 - lambda q), lambda > 1
double beta_closed(double lambda);    // q - lambda q^2 / 2

// alpha(lambda) = integral over (lambda, infinity) of 1 - theta(x) dx,
// adaptive quadrature with a superexponential tail cutoff; abs error <= 1e-10.
double alpha_integral(double lambda);

// log of e^{-lambda m} (lambda m)^{m-1} / m!  (total-progeny pmf, m >= 1).
double borel_log_pmf(double lambda, std::uint64_t m);
double borel_pmf(double lambda, std::uint64_t m);

double zeta2();
double zeta3();

// theta / theta' / alpha / beta bundle with a precomputed alpha grid so that
// evaluations are cheap inside samplers.  Immutable after construction.
class ThetaTable {
  public:
    struct Point {
        double theta = 0;
        double q = 1;
        double theta_prime = 0;
        double alpha = 0;
        double beta = 0;
    };

    explicit ThetaTable(double solver_tolerance = 1e-13);

    Point eval(double lambda) const;
    double alpha(double lambda) const;  // cubic Hermite on the grid
    double solver_tolerance() const { return tolerance_; }

  private:
    double tolerance_;
    double grid_step_;
    double grid_max_;
    std::vector<double> alpha_grid_;  // alpha at 1 + k * step
    std::vector<double> q_grid_;      // q at the same nodes (exact derivatives)
};

// First-pond size law: P[Z = m | lambda] = theta/theta' * m * Borel_lambda(m).
// Sampling goes through lazily built inverse-CDF tables per lambda bucket
// (width 1e-3); tables are truncated at cumulative mass 1 - 1e-12 or at the
// hard cap of 1e7 entries, whichever comes first, with the discarded mass
// recorded instead of silently clipping.
class PondSampler {
  public:
    struct Draw {
        std::uint64_t z = 1;
        bool tail_resample = false;    // the draw fell into the truncated tail
        double discarded_mass = 0;     // per-draw truncated mass of the bucket used
    };

    PondSampler() = default;

    Draw sample(double lambda, Rng& rng) const;

    // Slow validation path: sequential inversion at the exact lambda.
    Draw sample_exact(double lambda, Rng& rng) const;

    double pmf(double lambda, std::uint64_t m) const;

    // Sum over m of m^{-power} * pmf(lambda, m), adaptively truncated.
    double inv_moment(double lambda, int power, std::uint64_t max_terms = 2000000) const;

    // Total pmf mass up to max_terms; approaches 1.
    double pmf_mass(double lambda, std::uint64_t max_terms = 2000000) const;

    static constexpr double kBucketWidth = 1e-3;
    static constexpr std::uint64_t kHardCap = 10000000;

  private:
    struct Bucket {
        double lambda_hat = 0;
        std::vector<double> dense_cdf;          // cumulative mass at m = 1..len
        std::vector<double> block_cum_before;   // cumulative mass before each block
        std::vector<double> block_start_pmf;    // pmf at the first m of each block
        std::uint64_t block_first_m = 0;        // m of the first block entry
        std::uint64_t max_m = 0;
        double total_mass = 1;
        double discarded_mass = 0;
    };

    static constexpr std::uint64_t kDenseHead = 65536;
    static constexpr std::uint64_t kBlock = 1024;

    const Bucket& bucket_for(double lambda) const;
    static std::unique_ptr<Bucket> build_bucket(double lambda_hat);

    mutable std::unordered_map<long, std::unique_ptr<Bucket>> buckets_;
    mutable std::shared_mutex mutex_;
};

// One draw of the root-degree decomposition: the outlet weight lambda, the
// first-pond size Z1, and the three degree contributions.
struct PwitSample {
    double lambda = 0;
    std::uint64_t z1 = 1;
    std::uint64_t d1 = 0;  // degree inside the first pond
    std::uint64_t d2 = 0;  // attached-tree degree, Poisson(alpha(lambda))
    std::uint64_t d3 = 0;  // Bernoulli(1/Z1)
    std::uint64_t n = 0;   // d1 + d2 + d3
    bool tail_resample = false;
    double discarded_mass = 0;
};

// Degree of a uniformly random vertex in a uniform labelled tree on m
// vertices: exactly 1 + Binomial(m-2, 1/m) for m >= 2 (0 for m = 1), the
// count of appearances in a uniform coded sequence plus one.
std::uint64_t root_degree_uniform_tree(std::uint64_t m, Rng& rng);

struct UniformTree {
    int size = 0;
    std::vector<Edge> edges;
    int root = 0;
};

// Uniform labelled tree by decoding a uniform coded sequence; the root is
// uniform among the vertices.
UniformTree uniform_labelled_tree(int size, Rng& rng);

class RootDegreeSampler {
  public:
    RootDegreeSampler(const ThetaTable& table, const PondSampler& ponds)
        : table_(&table), ponds_(&ponds) {}

    PwitSample sample(Rng& rng) const;

  private:
    const ThetaTable* table_;
    const PondSampler* ponds_;
};

struct PwitMomentReport {
    EstimatorReport second_moment;  // E[N^2]
    EstimatorReport first_moment;   // E[N], equals 2 in the limit object
    std::uint64_t truncation_events = 0;
    double discarded_mass_total = 0;
};

PwitMomentReport mc_root_degree_moments(std::uint64_t n_samples, std::uint64_t seed,
                                        int threads = 0);

struct MomentIntegrals {
    double i1 = 0;        // integral of theta q
    double i2 = 0;        // integral of theta beta
    double combo = 0;     // direct quadrature of theta (2 beta - q)
    double q_integral = 0;  // integral over (0,1) of (1 + q log q / (1-q))^2
    double series_value = 0;  // 5 - 4 zeta(3)
    double zeta_2 = 0;
    double zeta_3 = 0;
    double e_n2 = 0;      // 10 - 4 zeta(3)
};

MomentIntegrals moment_integrals();

// Integrates the conditional second moment against the outlet-weight density
// using pond pmf sums; an independent route to 10 - 4 zeta(3).
double conditional_moment_assembly(const ThetaTable& table, const PondSampler& ponds);

// Total progeny of a Poisson(lambda) branching process from one ancestor;
// nullopt when the population exceeds the cap (treated as explosion).
std::optional<std::uint64_t> pgw_total_progeny(double lambda, Rng& rng,
                                               std::uint64_t cap = 1000000);

struct PgwBetaReport {
    EstimatorReport inverse_size;  // estimate of E[1 / |tree|], zero on explosion
    double closed_form = 0;        // q - lambda q^2 / 2
    std::uint64_t explosions = 0;
    std::uint64_t n_samples = 0;
};

PgwBetaReport pgw_beta_check(double lambda, std::uint64_t n_samples, std::uint64_t seed,
                             int threads = 0);

}  // namespace treelab

#endif
