#include "fiidlab/labels.hpp"

#include "fiidlab/rng.hpp"
#include "fiidlab/simd/kernels.hpp"

namespace fiidlab {

LabelField sample_labels(const Graph& g, std::uint64_t seed) {
    LabelField f;
    f.seed = seed;
    f.labels.resize(g.num_vertices());
    const std::uint64_t key = rng::stream_key(seed, rng::kLabels);
    simd::fill_uniform(key, 0, f.labels.size(), f.labels.data());
    return f;
}

} // namespace fiidlab
