#include "qmcar/stream.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmcar {

std::string to_string(StreamKind kind) {
  switch (kind) {
    case StreamKind::pseudorandom: return "pseudorandom";
    case StreamKind::halton: return "halton";
    case StreamKind::random_start_halton: return "random_start_halton";
  }
  throw std::logic_error("unknown StreamKind");
}

StreamKind stream_kind_from_string(const std::string& name) {
  if (name == "pseudorandom" || name == "mc") return StreamKind::pseudorandom;
  if (name == "halton") return StreamKind::halton;
  if (name == "random_start_halton" || name == "qmc")
    return StreamKind::random_start_halton;
  throw std::invalid_argument("unknown stream kind: " + name);
}

double radical_inverse(std::uint64_t n, unsigned base) {
  if (base < 2) throw std::invalid_argument("radical_inverse: base must be >= 2");
  const double inv = 1.0 / base;
  double f = inv;
  double x = 0.0;
  while (n > 0) {
    x += static_cast<double>(n % base) * f;
    n /= base;
    f *= inv;
  }
  return x;
}

std::vector<unsigned> first_primes(unsigned count) {
  std::vector<unsigned> primes;
  primes.reserve(count);
  for (unsigned candidate = 2; primes.size() < count; ++candidate) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr double kLo = PointStream::kClamp;
constexpr double kHi = 1.0 - PointStream::kClamp;

double clamp01(double u) { return std::clamp(u, kLo, kHi); }

// Digits kept per base: enough that the dropped tail is below 2^-60.
unsigned digit_count(unsigned base) {
  unsigned k = 1;
  double tail = 1.0 / base;
  while (tail > 0x1p-60) {
    tail /= base;
    ++k;
  }
  return k;
}

}  // namespace

PointStream::PointStream(StreamKind kind, unsigned dims, std::uint64_t seed)
    : kind_(kind), dims_(dims), seed_(seed), rng_(seed) {
  if (dims_ < 1 || dims_ > 32)
    throw std::invalid_argument("PointStream: dims must be in [1, 32]");
  if (kind_ != StreamKind::pseudorandom) bases_ = first_primes(dims_);
  if (kind_ == StreamKind::random_start_halton) {
    digits_.resize(dims_);
    for (unsigned d = 0; d < dims_; ++d) {
      const unsigned base = bases_[d];
      digits_[d].resize(digit_count(base));
      // Expand a uniform draw into base-b digits; the reconstructed value is
      // the start point, emitted before the first odometer step.
      double r = uniform53();
      for (auto& digit : digits_[d]) {
        r *= base;
        double ip;
        r = std::modf(r, &ip);
        digit = static_cast<std::uint8_t>(
            std::min<unsigned>(static_cast<unsigned>(ip), base - 1));
      }
    }
  }
}

double PointStream::uniform53() {
  return static_cast<double>(rng_() >> 11) * 0x1p-53;
}

void PointStream::next(std::span<double> out) {
  if (out.size() < dims_) throw std::invalid_argument("PointStream::next: output too small");
  switch (kind_) {
    case StreamKind::pseudorandom:
      for (unsigned d = 0; d < dims_; ++d) out[d] = clamp01(uniform53());
      break;
    case StreamKind::halton: {
      const std::uint64_t index = next_index_ + 1;  // index 0 is skipped
      for (unsigned d = 0; d < dims_; ++d)
        out[d] = clamp01(radical_inverse(index, bases_[d]));
      break;
    }
    case StreamKind::random_start_halton: {
      for (unsigned d = 0; d < dims_; ++d) {
        const auto& digit = digits_[d];
        const double inv = 1.0 / bases_[d];
        double x = 0.0;
        for (auto it = digit.rbegin(); it != digit.rend(); ++it)
          x = (x + *it) * inv;
        out[d] = clamp01(x);
      }
      // Advance the odometer: add one at the most significant fractional
      // digit, carrying toward less significant places.
      for (unsigned d = 0; d < dims_; ++d) {
        auto& digit = digits_[d];
        const std::uint8_t top = static_cast<std::uint8_t>(bases_[d] - 1);
        for (auto& v : digit) {
          if (v == top) {
            v = 0;
          } else {
            ++v;
            break;
          }
        }
      }
      break;
    }
  }
  ++next_index_;
}

std::vector<double> PointStream::next_point() {
  std::vector<double> out(dims_);
  next(out);
  return out;
}

void PointStream::skip(std::uint64_t count) {
  std::vector<double> scratch(dims_);
  for (std::uint64_t i = 0; i < count; ++i) next(scratch);
}

std::string PointStream::generator_name() const {
  switch (kind_) {
    case StreamKind::pseudorandom: return "mt19937_64";
    case StreamKind::halton: return "halton";
    case StreamKind::random_start_halton: return "random_start_halton(mt19937_64 start)";
  }
  throw std::logic_error("unknown StreamKind");
}

}  // namespace qmcar
