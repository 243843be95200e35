#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "kerrqnd/chain.hpp"

namespace kerrqnd {

/// PCG32 (XSH-RR 64/32). The stream id selects the LCG increment, so
/// different ids give distinct sequences; advance() jumps in O(log n).
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  Pcg32(std::uint64_t seed, std::uint64_t stream_id);

  result_type operator()();
  void advance(std::uint64_t delta);

  static constexpr result_type min() { return 0u; }
  static constexpr result_type max() { return 0xFFFFFFFFu; }

  friend bool operator==(const Pcg32&, const Pcg32&) = default;

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
};

Pcg32 seeded_stream(std::uint64_t seed, std::uint64_t stream_id);

struct McConfig {
  std::uint64_t seed = 0;
  std::size_t n_samples = 1;
  double injected_dns = 0.0;  ///< standard deviation of the injected signal fluctuation
  ChainConfig chain;
  unsigned threads = 1;  ///< does not affect the result
};

struct McReport {
  std::size_t n_samples = 0;
  double empirical_dns = 0.0;  ///< sample stdev of (estimate - injected)
  double stderr_dns = 0.0;     ///< empirical_dns / sqrt(2 n)
  /// Least-squares slope of d against the injected fluctuation; absent when injected_dns = 0.
  std::optional<double> empirical_gain;
  std::optional<double> stderr_gain;
  double analytic_gain = 0.0;
  double analytic_dns = 0.0;
};

/// Samples per generator stream; chunk k always uses stream k.
inline constexpr std::size_t kMcChunk = 1u << 16;

/// Samples the linearized chain: squeezed input quadratures, the Kerr and
/// amplifier maps, the loss port, an injected Gaussian signal fluctuation,
/// and the estimator d / G. Bit-identical for a given (seed, n_samples, chain)
/// regardless of `threads`. Throws ZeroGain like measurement_error.
McReport run_monte_carlo(const McConfig& cfg);

}  // namespace kerrqnd
