#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fiidlab/rng.hpp"

namespace fiidlab {

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;   // sample standard deviation
    double stderror = 0.0; // stddev / sqrt(n)
    std::uint64_t n = 0;
};

MeanStd summarize(std::span<const double> xs);

// Regularized lower incomplete gamma P(a, x); series for x < a+1, continued
// fraction otherwise.
double gamma_p(double a, double x);

double chi2_cdf(double x, double dof);
double chi2_quantile(double prob, double dof);  // bisection on the cdf

// Standard error of the mean of a correlated series via non-overlapping
// batch means.
double batch_means_stderr(std::span<const double> series, std::uint32_t batches);

// One-sample Kolmogorov-Smirnov statistic against Unif[0,1]; sorts a copy.
double ks_statistic_uniform(std::vector<double> xs);

// Poisson draw; Knuth product method for small means, rounded normal above.
std::uint64_t sample_poisson(double mean, rng::Stream64& stream);

} // namespace fiidlab
