#include "fiidlab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "fiidlab/errors.hpp"

namespace fiidlab {

MeanStd summarize(std::span<const double> xs) {
    MeanStd m;
    m.n = xs.size();
    if (m.n == 0) return m;
    double sum = 0.0;
    for (double x : xs) sum += x;
    m.mean = sum / double(m.n);
    if (m.n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        m.stddev = std::sqrt(ss / double(m.n - 1));
        m.stderror = m.stddev / std::sqrt(double(m.n));
    }
    return m;
}

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw invalid_parameter("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // series
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // continued fraction (Lentz)
    double b = x + 1.0 - a, c = 1e300, dd = 1.0 / b, h = dd;
    for (int i = 1; i < 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        dd = an * dd + b;
        if (std::fabs(dd) < 1e-300) dd = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        dd = 1.0 / dd;
        const double del = dd * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return 1.0 - std::exp(-x + a * std::log(x) - lg) * h;
}

double chi2_cdf(double x, double dof) {
    if (x <= 0.0) return 0.0;
    return gamma_p(dof / 2.0, x / 2.0);
}

double chi2_quantile(double prob, double dof) {
    if (!(prob > 0.0 && prob < 1.0)) throw invalid_parameter("chi2_quantile: prob in (0,1)");
    double lo = 0.0, hi = dof + 100.0 * std::sqrt(2.0 * dof) + 100.0;
    while (chi2_cdf(hi, dof) < prob) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (chi2_cdf(mid, dof) < prob)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-10 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double batch_means_stderr(std::span<const double> series, std::uint32_t batches) {
    if (batches < 2 || series.size() < batches)
        throw invalid_parameter("batch_means_stderr: need at least 2 batches of data");
    const std::size_t len = series.size() / batches;
    std::vector<double> means(batches, 0.0);
    for (std::uint32_t b = 0; b < batches; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < len; ++i) s += series[b * len + i];
        means[b] = s / double(len);
    }
    return summarize(means).stderror;
}

double ks_statistic_uniform(std::vector<double> xs) {
    if (xs.empty()) throw invalid_parameter("ks_statistic_uniform: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = double(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = xs[i];  // Unif[0,1]
        d = std::max(d, std::fabs(double(i + 1) / n - cdf));
        d = std::max(d, std::fabs(cdf - double(i) / n));
    }
    return d;
}

std::uint64_t sample_poisson(double mean, rng::Stream64& stream) {
    if (mean < 0.0) throw invalid_parameter("sample_poisson: negative mean");
    if (mean == 0.0) return 0;
    if (mean < 50.0) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = stream.next_unit();
        while (prod > limit) {
            ++k;
            prod *= stream.next_unit();
        }
        return k;
    }
    // rounded normal with continuity; fine for bootstrap tallies
    const double u1 = std::max(stream.next_unit(), 1e-300);
    const double u2 = stream.next_unit();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    const double v = mean + std::sqrt(mean) * z;
    return v <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(v));
}

} // namespace fiidlab
