#pragma once

#include <span>
#include <string>
#include <vector>

namespace qmcar {

/// 8-byte magic prefix of the binary sample format; the payload is raw
/// little-endian IEEE-754 doubles.
inline constexpr unsigned char kSampleMagic[8] = {'Q', 'M', 'C', 'A',
                                                  'R', 0,   0,   1};

/// Writes one decimal value per line (round-trip precision).
void write_samples_text(const std::string& path, std::span<const double> values);

/// Writes the binary sample format (magic header + raw doubles).
void write_samples_binary(const std::string& path, std::span<const double> values);

/// Reads either format back, sniffing the magic header.
std::vector<double> read_samples(const std::string& path);

}  // namespace qmcar
