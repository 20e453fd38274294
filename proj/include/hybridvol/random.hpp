#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace hybridvol {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output block
// i of a stream is a pure function of (key, counter = i), so distinct
// stream ids give non-overlapping sequences by construction.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter encrypt(Counter counter, Key key);
};

// A reproducible random stream keyed by (master_seed, stream_id).
// Satisfies UniformRandomBitGenerator, so it can drive <random>
// distributions. Copies continue the same sequence independently.
class RngStream {
 public:
  using result_type = std::uint32_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  friend double sample_standard_normal(RngStream& rng);

  void refill();

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  Philox4x32::Key key_;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buffer_{};
  unsigned next_ = 4;
  std::normal_distribution<double> normal_;
};

double sample_standard_normal(RngStream& rng);

// One draw from the non-central chi-square law with `df` degrees of freedom
// and the given non-centrality, as a Poisson(noncentrality / 2) mixture of
// central chi-square variates. Throws ParameterError for df <= 0 or a
// negative non-centrality.
double sample_noncentral_chisq(double df, double noncentrality,
                               RngStream& rng);

}  // namespace hybridvol
