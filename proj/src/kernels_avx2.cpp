// AVX2 variants of the simulation kernels. This translation unit is the only
// one compiled with -mavx2; it is reached only after the runtime CPU check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstdint>

#include "fiidlab/rng.hpp"
#include "fiidlab/simd/kernels.hpp"

namespace fiidlab::simd::detail {

namespace {

// 64x64 -> low 64 multiply from 32-bit pieces (AVX2 has no mullo_epi64).
inline __m256i mullo64(__m256i a, __m256i b) {
    const __m256i lo = _mm256_mul_epu32(a, b);
    const __m256i a_hi = _mm256_srli_epi64(a, 32);
    const __m256i b_hi = _mm256_srli_epi64(b, 32);
    const __m256i cross =
        _mm256_add_epi64(_mm256_mul_epu32(a_hi, b), _mm256_mul_epu32(a, b_hi));
    return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64x4(__m256i z) {
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
    z = mullo64(z, _mm256_set1_epi64x(static_cast<long long>(0xBF58476D1CE4E5B9ull)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
    z = mullo64(z, _mm256_set1_epi64x(static_cast<long long>(0x94D049BB133111EBull)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
    return z;
}

// Exact u64(<2^52) -> double via the exponent-bias trick.
inline __m256d u52_to_double(__m256i x) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll); // 2^52
    const __m256d biased = _mm256_castsi256_pd(_mm256_or_si256(x, magic));
    return _mm256_sub_pd(biased, _mm256_set1_pd(0x1.0p52));
}

} // namespace

void fill_uniform_avx2(std::uint64_t key, std::uint64_t start, std::size_t n,
                       double* out) {
    const __m256i vkey = _mm256_set1_epi64x(static_cast<long long>(key));
    const __m256i vgolden = _mm256_set1_epi64x(static_cast<long long>(rng::kGolden));
    const __m256d scale = _mm256_set1_pd(0x1.0p-52);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const std::uint64_t c = start + i + 1;
        const __m256i ctr = _mm256_add_epi64(
            _mm256_set1_epi64x(static_cast<long long>(c)),
            _mm256_set_epi64x(3, 2, 1, 0));
        __m256i z = mix64x4(_mm256_add_epi64(mullo64(ctr, vgolden), vkey));
        z = _mm256_srli_epi64(z, 12);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(u52_to_double(z), scale));
    }
    for (; i < n; ++i) {
        const std::uint64_t u = rng::at(key, start + i);
        out[i] = static_cast<double>(u >> 12) * 0x1.0p-52;
    }
}

void threshold_indicator_avx2(const double* x, std::size_t n, double p,
                              std::uint8_t* out) {
    const __m256d vp = _mm256_set1_pd(p);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const int m = _mm256_movemask_pd(_mm256_cmp_pd(v, vp, _CMP_LE_OQ));
        out[i + 0] = static_cast<std::uint8_t>(m & 1);
        out[i + 1] = static_cast<std::uint8_t>((m >> 1) & 1);
        out[i + 2] = static_cast<std::uint8_t>((m >> 2) & 1);
        out[i + 3] = static_cast<std::uint8_t>((m >> 3) & 1);
    }
    for (; i < n; ++i) out[i] = x[i] <= p ? 1 : 0;
}

void band_classify_avx2(const double* x, std::size_t n, double lo, double hi,
                        std::uint8_t* out) {
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vhi = _mm256_set1_pd(hi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const int m1 = _mm256_movemask_pd(_mm256_cmp_pd(v, vlo, _CMP_LE_OQ));
        const int m2 = _mm256_movemask_pd(_mm256_cmp_pd(v, vhi, _CMP_GE_OQ));
        for (int j = 0; j < 4; ++j) {
            out[i + j] = static_cast<std::uint8_t>(
                ((m1 >> j) & 1) ? 1 : (((m2 >> j) & 1) ? 2 : 0));
        }
    }
    for (; i < n; ++i) out[i] = x[i] <= lo ? 1 : (x[i] >= hi ? 2 : 0);
}

std::uint64_t count_eq_avx2(const std::uint8_t* s, std::size_t n, std::uint8_t v) {
    const __m256i vv = _mm256_set1_epi8(static_cast<char>(v));
    std::uint64_t c = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s + i));
        const unsigned m = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(b, vv)));
        c += __builtin_popcount(m);
    }
    for (; i < n; ++i) c += s[i] == v;
    return c;
}

std::uint64_t count_leq_avx2(const double* x, std::size_t n, double p) {
    const __m256d vp = _mm256_set1_pd(p);
    std::uint64_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const int m = _mm256_movemask_pd(_mm256_cmp_pd(v, vp, _CMP_LE_OQ));
        c += __builtin_popcount(static_cast<unsigned>(m));
    }
    for (; i < n; ++i) c += x[i] <= p;
    return c;
}

} // namespace fiidlab::simd::detail

#endif // x86_64
