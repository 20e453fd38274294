#include "hybridvol/random.hpp"

#include <cmath>

#include "hybridvol/errors.hpp"

namespace hybridvol {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product =
      static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b);
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline Philox4x32::Counter round(const Philox4x32::Counter& c,
                                 const Philox4x32::Key& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Counter Philox4x32::encrypt(Counter counter, Key key) {
  counter = round(counter, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kWeyl0;
    key[1] += kWeyl1;
    counter = round(counter, key);
  }
  return counter;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      key_{static_cast<std::uint32_t>(master_seed),
           static_cast<std::uint32_t>(master_seed >> 32)} {}

void RngStream::refill() {
  const Philox4x32::Counter counter = {
      static_cast<std::uint32_t>(block_),
      static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_id_),
      static_cast<std::uint32_t>(stream_id_ >> 32)};
  buffer_ = Philox4x32::encrypt(counter, key_);
  ++block_;
  next_ = 0;
}

RngStream::result_type RngStream::operator()() {
  if (next_ == 4) refill();
  return buffer_[next_++];
}

double RngStream::uniform() {
  const std::uint64_t hi = (*this)() >> 5;  // 27 bits
  const std::uint64_t lo = (*this)() >> 6;  // 26 bits
  const std::uint64_t bits = (hi << 26) | lo;
  // Midpoint of the 2^-53 cell keeps the result strictly inside (0, 1).
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double sample_standard_normal(RngStream& rng) { return rng.normal_(rng); }

double sample_noncentral_chisq(double df, double noncentrality,
                               RngStream& rng) {
  detail::require(df > 0.0 && std::isfinite(df),
                  "noncentral chi-square: df must be finite and > 0");
  detail::require(noncentrality >= 0.0 && std::isfinite(noncentrality),
                  "noncentral chi-square: noncentrality must be >= 0");
  double shape = 0.5 * df;
  if (noncentrality > 0.0) {
    std::poisson_distribution<std::int64_t> poisson(0.5 * noncentrality);
    shape += static_cast<double>(poisson(rng));
  }
  // Central chi-square(2 * shape) is Gamma(shape, scale 2). libstdc++ uses
  // Marsaglia-Tsang rejection, boosted by U^(1/shape) when shape < 1.
  std::gamma_distribution<double> gamma(shape, 2.0);
  return gamma(rng);
}

}  // namespace hybridvol
