#include "fiidlab/simd/kernels.hpp"

#include "fiidlab/rng.hpp"

namespace fiidlab::simd::detail {

// Reference kernels. These define the semantics; the AVX2 variants must
// reproduce them bit-for-bit.

void fill_uniform_scalar(std::uint64_t key, std::uint64_t start, std::size_t n,
                         double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t u = rng::at(key, start + i);
        out[i] = static_cast<double>(u >> 12) * 0x1.0p-52;
    }
}

void threshold_indicator_scalar(const double* x, std::size_t n, double p,
                                std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] <= p ? 1 : 0;
}

void band_classify_scalar(const double* x, std::size_t n, double lo, double hi,
                          std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x[i] <= lo ? 1 : (x[i] >= hi ? 2 : 0);
}

std::uint64_t count_eq_scalar(const std::uint8_t* s, std::size_t n, std::uint8_t v) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += s[i] == v;
    return c;
}

std::uint64_t count_leq_scalar(const double* x, std::size_t n, double p) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += x[i] <= p;
    return c;
}

} // namespace fiidlab::simd::detail
