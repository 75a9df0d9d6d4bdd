#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace fiidlab::simd {

// Data-parallel inner loops of the simulation core. Each kernel has a scalar
// reference implementation and an AVX2 variant selected at runtime; both
// produce bit-identical output (all element-wise arithmetic is integer or
// exact, reductions are integer counts), which the equivalence tests assert.

enum class Backend { scalar, avx2 };

// Backend actually in use (after CPU detection / overrides).
Backend active_backend();
const char* backend_name(Backend b);

// Force a backend (tests, diagnostics). Throws invalid_parameter if the CPU
// cannot run it. Passing `auto_detect = true` restores detection.
void select_backend(Backend b);
void select_backend_auto();

// Honors environment variable FIIDLAB_SIMD=scalar|avx2 (checked once).
void init_from_env();

// out[i] = uniform in [0,1) drawn from counter stream `key` at index start+i.
// The value is (u >> 12) * 2^-52 of the 64-bit stream word, exactly.
void fill_uniform(std::uint64_t key, std::uint64_t start, std::size_t n, double* out);

// out[i] = (x[i] <= p) ? 1 : 0
void threshold_indicator(const double* x, std::size_t n, double p, std::uint8_t* out);

// out[i] = 1 if x[i] <= lo, 2 if x[i] >= hi, else 0.
void band_classify(const double* x, std::size_t n, double lo, double hi, std::uint8_t* out);

// Number of i with s[i] == v.
std::uint64_t count_eq(const std::uint8_t* s, std::size_t n, std::uint8_t v);

// Number of i with x[i] <= p.
std::uint64_t count_leq(const double* x, std::size_t n, double p);

} // namespace fiidlab::simd
