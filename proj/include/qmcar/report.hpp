#pragma once

#include <cstdint>
#include <string>

namespace qmcar {

inline constexpr const char* kVersion = "0.1.0";

/// What the reported wall times cover. Stated in every report because timer
/// boundaries are otherwise ambiguous.
inline constexpr const char* kTimingAttribution =
    "generation and transform loops only; excludes startup and normalizer setup";

/// Current UTC time, ISO 8601.
std::string timestamp_utc();

/// Fields attached to every emitted report row.
struct ReportMeta {
  std::uint64_t seed = 0;
  std::string stream;
  std::string generator;
  double tolerance = 0.0;
  std::string timestamp;
  std::string version = kVersion;
  std::string timing = kTimingAttribution;
};

/// Formats a double with enough digits to round-trip (shortest of %.17g).
std::string format_double(double value);

}  // namespace qmcar
