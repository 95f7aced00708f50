#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace specsense {

// Splittable counter-based 64-bit generator (SplitMix64 core with per-stream
// gamma, after Steele/Lea/Flood). A stream is fully determined by
// (seed, stream_id): identical pairs give identical draw sequences on every
// run and under any threading, which is what makes trial-indexed Monte Carlo
// substreams reproducible.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
      : seed_(seed), stream_(stream_id) {
    const std::uint64_t h =
        mix64(mix64(seed + kGolden) ^ mix64(stream_id + kStreamSalt));
    state_ = h;
    gamma_ = mix_gamma(h + kGolden);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  std::uint64_t next_u64() noexcept { return mix64(state_ += gamma_); }

  // Uniform on (0, 1]; never 0, so log() is safe.
  double next_unit() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double next_unit_open() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Circularly-symmetric complex Gaussian with E|z|^2 = 1 (real and imaginary
  // parts each N(0, 1/2)), via Box-Muller on the underlying uniform stream:
  // |z|^2 ~ Exp(1), phase uniform.
  std::complex<double> next_complex_gaussian() noexcept {
    const double radius = std::sqrt(-std::log(next_unit()));
    const double angle = 2.0 * std::numbers::pi * next_unit_open();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  // Child stream for e.g. one Monte Carlo trial. Pure function of
  // (seed, stream_id, index); does not advance this stream's state.
  RngStream substream(std::uint64_t index) const noexcept {
    return RngStream(seed_, mix64(stream_ + kGolden * (index + 1)));
  }

private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;

  static std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Odd, avalanche-checked per-stream increment (SplittableRandom's mixGamma).
  static std::uint64_t mix_gamma(std::uint64_t z) noexcept {
    z = mix64(z) | 1ULL;
    if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace specsense
