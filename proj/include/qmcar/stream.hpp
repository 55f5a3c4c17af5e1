#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qmcar {

enum class StreamKind { pseudorandom, halton, random_start_halton };

std::string to_string(StreamKind kind);
StreamKind stream_kind_from_string(const std::string& name);

/// Van der Corput radical inverse of n in the given base (>= 2).
double radical_inverse(std::uint64_t n, unsigned base);

/// First `count` primes, in order.
std::vector<unsigned> first_primes(unsigned count);

/// Deterministic per-task seed derivation (splitmix64 over master + index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform point source on (0,1)^dims.
///
/// Kinds:
///  - pseudorandom: mt19937_64, 53-bit mantissa doubles.
///  - halton: Halton sequence in the first `dims` prime bases, starting at
///    index 1 (the all-zero point at index 0 is skipped).
///  - random_start_halton: per-coordinate von Neumann-Kakutani orbit (b-adic
///    add-one-with-carry odometer) started at a point drawn uniformly from
///    the seeded generator; the first emitted point is the start point.
///
/// Coordinates are clamped to [1e-15, 1 - 1e-15] so downstream transforms
/// never see an exact 0 or 1. Streams with equal (kind, dims, seed) reproduce
/// the same sequence bit-exactly; next_index() is the resume cursor.
class PointStream {
 public:
  static constexpr double kClamp = 1e-15;

  PointStream(StreamKind kind, unsigned dims, std::uint64_t seed = 0);

  StreamKind kind() const { return kind_; }
  unsigned dims() const { return dims_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_index() const { return next_index_; }

  /// Fills `out` (size >= dims) with the next point.
  void next(std::span<double> out);

  std::vector<double> next_point();

  /// Advances the cursor by `count` points.
  void skip(std::uint64_t count);

  /// Name of the underlying generator, recorded in report metadata.
  std::string generator_name() const;

 private:
  double uniform53();

  StreamKind kind_;
  unsigned dims_;
  std::uint64_t seed_;
  std::uint64_t next_index_ = 0;
  std::mt19937_64 rng_;
  std::vector<unsigned> bases_;
  // Odometer digit state, most significant digit first, one row per dim.
  std::vector<std::vector<std::uint8_t>> digits_;
};

template <typename S>
concept PointSource = requires(S s, std::span<double> out) {
  s.next(out);
  { s.dims() } -> std::convertible_to<unsigned>;
};

}  // namespace qmcar
