#pragma once

// Sampling check of the mixture model: draw transmittances, average the
// per-draw moments and covariance entries, compare against the closed forms.
//
// Generator: draw i (0-based) is the SplitMix64 finalizer applied to
// seed + (i + 1) * 0x9E3779B97F4A7C15, mapped to [0, 1) through its top
// 53 bits. Being counter-based, any split of the index range across workers
// produces the same draws, and reductions run over fixed-size chunks in index
// order, so results are bit-identical for any worker count.

#include <cstdint>
#include <vector>

#include "fadingqkd/channel.hpp"
#include "fadingqkd/cma.hpp"
#include "fadingqkd/fading.hpp"

namespace fqkd {

struct SampleConfig {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 42;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;

  void validate() const;
};

/// Uniform [0, 1) variate number `index` of the stream selected by `seed`.
double uniform_draw(std::uint64_t seed, std::uint64_t index);

std::vector<double> sample_transmittance(const FadingUniform& fading, const SampleConfig& cfg);

/// Sample <sqrt T>, <T> and the plug-in Var(sqrt T) = <T> - <sqrt T>^2.
TransmittanceMoments empirical_moments(const FadingUniform& fading, const SampleConfig& cfg);

/// Entry-wise average of the per-draw fixed-channel covariance matrices.
TwoModeCovariance empirical_avg_covariance(double v, double eps, const FadingUniform& fading,
                                           const SampleConfig& cfg);

}  // namespace fqkd
