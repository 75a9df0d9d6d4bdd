#include "fiidlab/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "fiidlab/errors.hpp"

namespace fiidlab::simd {

namespace detail {

void fill_uniform_scalar(std::uint64_t, std::uint64_t, std::size_t, double*);
void threshold_indicator_scalar(const double*, std::size_t, double, std::uint8_t*);
void band_classify_scalar(const double*, std::size_t, double, double, std::uint8_t*);
std::uint64_t count_eq_scalar(const std::uint8_t*, std::size_t, std::uint8_t);
std::uint64_t count_leq_scalar(const double*, std::size_t, double);

#if defined(__x86_64__) || defined(_M_X64)
void fill_uniform_avx2(std::uint64_t, std::uint64_t, std::size_t, double*);
void threshold_indicator_avx2(const double*, std::size_t, double, std::uint8_t*);
void band_classify_avx2(const double*, std::size_t, double, double, std::uint8_t*);
std::uint64_t count_eq_avx2(const std::uint8_t*, std::size_t, std::uint8_t);
std::uint64_t count_leq_avx2(const double*, std::size_t, double);
#endif

} // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

struct Table {
    Backend backend;
    void (*fill_uniform)(std::uint64_t, std::uint64_t, std::size_t, double*);
    void (*threshold_indicator)(const double*, std::size_t, double, std::uint8_t*);
    void (*band_classify)(const double*, std::size_t, double, double, std::uint8_t*);
    std::uint64_t (*count_eq)(const std::uint8_t*, std::size_t, std::uint8_t);
    std::uint64_t (*count_leq)(const double*, std::size_t, double);
};

constexpr Table kScalar{Backend::scalar,
                        detail::fill_uniform_scalar,
                        detail::threshold_indicator_scalar,
                        detail::band_classify_scalar,
                        detail::count_eq_scalar,
                        detail::count_leq_scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Table kAvx2{Backend::avx2,
                      detail::fill_uniform_avx2,
                      detail::threshold_indicator_avx2,
                      detail::band_classify_avx2,
                      detail::count_eq_avx2,
                      detail::count_leq_avx2};
#endif

Table pick_auto() {
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) return kAvx2;
#endif
    return kScalar;
}

Table g_table = pick_auto();

} // namespace

Backend active_backend() { return g_table.backend; }

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void select_backend(Backend b) {
    if (b == Backend::scalar) {
        g_table = kScalar;
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (b == Backend::avx2) {
        if (!cpu_has_avx2())
            throw invalid_parameter("avx2 backend requested but CPU lacks AVX2");
        g_table = kAvx2;
        return;
    }
#endif
    throw invalid_parameter("requested SIMD backend not available on this build");
}

void select_backend_auto() { g_table = pick_auto(); }

void init_from_env() {
    const char* v = std::getenv("FIIDLAB_SIMD");
    if (!v) return;
    if (std::strcmp(v, "scalar") == 0)
        select_backend(Backend::scalar);
    else if (std::strcmp(v, "avx2") == 0)
        select_backend(Backend::avx2);
}

void fill_uniform(std::uint64_t key, std::uint64_t start, std::size_t n, double* out) {
    g_table.fill_uniform(key, start, n, out);
}

void threshold_indicator(const double* x, std::size_t n, double p, std::uint8_t* out) {
    g_table.threshold_indicator(x, n, p, out);
}

void band_classify(const double* x, std::size_t n, double lo, double hi,
                   std::uint8_t* out) {
    g_table.band_classify(x, n, lo, hi, out);
}

std::uint64_t count_eq(const std::uint8_t* s, std::size_t n, std::uint8_t v) {
    return g_table.count_eq(s, n, v);
}

std::uint64_t count_leq(const double* x, std::size_t n, double p) {
    return g_table.count_leq(x, n, p);
}

} // namespace fiidlab::simd
