#include "fadingqkd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fadingqkd/errors.hpp"

namespace fqkd {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kChunkSize = 1ULL << 16;

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double draw_transmittance(const FadingUniform& fading, std::uint64_t seed, std::uint64_t i) {
  return fading.t_min() + fading.delta_t() * uniform_draw(seed, i);
}

// Sums shifted by the distribution's lower edge so that a point mass
// accumulates exact zeros.
struct ChunkSums {
  double sqrt_t = 0.0;
  double t = 0.0;
  double sqrt_t_sq = 0.0;
};

unsigned resolve_workers(unsigned requested, std::uint64_t chunks) {
  unsigned workers = requested == 0 ? std::thread::hardware_concurrency() : requested;
  workers = std::max(1u, workers);
  return static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
}

std::vector<ChunkSums> chunk_sums(const FadingUniform& fading, const SampleConfig& cfg) {
  const std::uint64_t chunks = (cfg.n_samples + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkSums> sums(chunks);
  const double sqrt_lo = std::sqrt(fading.t_min());
  const auto work = [&](std::uint64_t first_chunk, std::uint64_t stride) {
    for (std::uint64_t c = first_chunk; c < chunks; c += stride) {
      ChunkSums acc;
      const std::uint64_t end = std::min(cfg.n_samples, (c + 1) * kChunkSize);
      for (std::uint64_t i = c * kChunkSize; i < end; ++i) {
        const double t = draw_transmittance(fading, cfg.seed, i);
        const double ds = std::sqrt(t) - sqrt_lo;
        acc.sqrt_t += ds;
        acc.t += t - fading.t_min();
        acc.sqrt_t_sq += ds * ds;
      }
      sums[c] = acc;
    }
  };
  const unsigned workers = resolve_workers(cfg.workers, chunks);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  return sums;
}

}  // namespace

void SampleConfig::validate() const {
  if (n_samples < 1) throw DomainError("SampleConfig: n_samples must be >= 1");
}

double uniform_draw(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits = splitmix64_mix(seed + (index + 1) * kGoldenGamma);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::vector<double> sample_transmittance(const FadingUniform& fading, const SampleConfig& cfg) {
  cfg.validate();
  std::vector<double> draws(cfg.n_samples);
  for (std::uint64_t i = 0; i < cfg.n_samples; ++i) {
    draws[i] = draw_transmittance(fading, cfg.seed, i);
  }
  return draws;
}

TransmittanceMoments empirical_moments(const FadingUniform& fading, const SampleConfig& cfg) {
  cfg.validate();
  ChunkSums total;
  for (const ChunkSums& s : chunk_sums(fading, cfg)) {
    total.sqrt_t += s.sqrt_t;
    total.t += s.t;
    total.sqrt_t_sq += s.sqrt_t_sq;
  }
  const double n = static_cast<double>(cfg.n_samples);
  const double shift_mean = total.sqrt_t / n;
  const double var = std::max(0.0, total.sqrt_t_sq / n - shift_mean * shift_mean);
  return {std::sqrt(fading.t_min()) + shift_mean, fading.t_min() + total.t / n, var};
}

TwoModeCovariance empirical_avg_covariance(double v, double eps, const FadingUniform& fading,
                                           const SampleConfig& cfg) {
  if (!std::isfinite(v) || v < 1.0 || !std::isfinite(eps) || eps < 0.0) {
    throw DomainError("empirical_avg_covariance: V >= 1 and eps >= 0 required");
  }
  // Per-draw entries c_i = sqrt(T_i (V^2 - 1)) and b_i = T_i (V_A + eps) + 1 are
  // affine in sqrt(T_i) and T_i, so their sample means follow from the moments.
  const TransmittanceMoments m = empirical_moments(fading, cfg);
  return {v, m.mean_t * (v - 1.0 + eps) + 1.0, m.mean_sqrt_t * std::sqrt(v * v - 1.0)};
}

}  // namespace fqkd
