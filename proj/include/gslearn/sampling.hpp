#ifndef GSLEARN_SAMPLING_HPP
#define GSLEARN_SAMPLING_HPP

#include "gslearn/gaussian.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gslearn {

/// A batch of simulated heterodyne outcomes: N i.i.d. rows from the classical
/// Gaussian N(t, V + I/2). Immutable after creation; regenerating with the
/// same (state, N, seed, stream_id) reproduces the data bit-for-bit.
struct SampleBatch {
    int m = 0;
    long long N = 0;
    Mat data; // N x 2m, one sample per row
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Draw N heterodyne samples of the state. Each scalar normal draw is a pure
/// function of (seed, stream_id, row, column), so generation is reproducible
/// and parallelizable across rows and streams.
SampleBatch heterodyne_sample(const GaussianState& state, long long N,
                              std::uint64_t seed, std::uint64_t stream_id = 0,
                              const Tolerances& tols = default_tols());

/// Concatenate chunks generated with consecutive stream ids.
SampleBatch concat_batches(const std::vector<SampleBatch>& chunks);

/// CSV persistence: header X1,P1,...,Xm,Pm; 17 significant digits.
void save_batch_csv(const SampleBatch& batch, const std::string& path);
SampleBatch load_batch_csv(const std::string& path);

/// Binary container with an embedded JSON header {m, N, seed, stream_id}.
void save_batch_binary(const SampleBatch& batch, const std::string& path);
SampleBatch load_batch_binary(const std::string& path);

} // namespace gslearn

#endif
