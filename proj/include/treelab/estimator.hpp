#ifndef TREELAB_ESTIMATOR_HPP
#define TREELAB_ESTIMATOR_HPP

#include <cmath>
#include <cstdint>

namespace treelab {

// Monte Carlo estimate with the plug-in variance estimator; the seed and
// sample count are carried along so runs can be reproduced exactly.
struct EstimatorReport {
    double estimate = 0;
    double sample_variance = 0;
    double standard_error = 0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;

    static EstimatorReport from_sums(double sum, double sum_sq, std::uint64_t n,
                                     std::uint64_t seed) {
        EstimatorReport r;
        r.n_samples = n;
        r.seed = seed;
        if (n == 0) return r;
        const double mean = sum / static_cast<double>(n);
        r.estimate = mean;
        const double raw = sum_sq / static_cast<double>(n) - mean * mean;
        r.sample_variance = raw > 0 ? raw : 0;
        r.standard_error = std::sqrt(r.sample_variance / static_cast<double>(n));
        return r;
    }

    double ci_halfwidth(double z) const { return z * standard_error; }

    // |estimate - target| measured in standard errors.
    double sigmas_from(double target) const {
        if (standard_error == 0) return estimate == target ? 0 : HUGE_VAL;
        return std::abs(estimate - target) / standard_error;
    }
};

}  // namespace treelab

#endif
