#include "qmcar/sample_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qmcar/report.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary sample format assumes a little-endian host");

namespace qmcar {

void write_samples_text(const std::string& path, std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (double v : values) out << format_double(v) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_samples_binary(const std::string& path, std::span<const double> values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(kSampleMagic), sizeof kSampleMagic);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<double> read_samples(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  unsigned char head[8] = {};
  in.read(reinterpret_cast<char*>(head), sizeof head);
  const auto got = in.gcount();
  if (got == 8 && std::memcmp(head, kSampleMagic, 8) == 0) {
    std::vector<double> values;
    double v;
    while (in.read(reinterpret_cast<char*>(&v), sizeof v)) values.push_back(v);
    if (in.gcount() != 0)
      throw std::runtime_error("truncated binary sample file: " + path);
    return values;
  }
  // Text fallback: reparse the whole file as whitespace-separated decimals.
  in.clear();
  in.seekg(0);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (!in.eof()) {
    std::ostringstream msg;
    msg << "malformed sample file: " << path;
    throw std::runtime_error(msg.str());
  }
  return values;
}

}  // namespace qmcar
