#pragma once

// DyadicCoordinate text format:
//
//   %%DyadicCoordinate <dim> <nnz>
//   <row> <col> <numerator> <exponent>      (1-based, value = numerator / 2^exponent)
//
// Entries are written in row-major order. Reading accepts any order but
// rejects duplicates, out-of-range indices and a wrong nonzero count.

#include "optwit/hermop.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace optwit {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kDyadicCoordinateTag = "%%DyadicCoordinate";

inline void write_dyadic_coordinate(std::ostream& os, const DyadicOp& m) {
  os << kDyadicCoordinateTag << ' ' << m.dim() << ' ' << m.nonzeros() << '\n';
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const Dyadic& v = m(i, j);
      if (v.is_zero()) continue;
      os << (i + 1) << ' ' << (j + 1) << ' ' << v.numerator() << ' ' << v.exponent() << '\n';
    }
}

inline DyadicOp read_dyadic_coordinate(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("DyadicCoordinate: missing header");
  std::istringstream header(line);
  std::string tag;
  long long dim = -1, nnz = -1;
  if (!(header >> tag >> dim >> nnz) || tag != kDyadicCoordinateTag || dim < 0 || nnz < 0 || nnz > dim * dim)
    throw FormatError("DyadicCoordinate: malformed header '" + line + "'");

  DyadicOp m(static_cast<std::size_t>(dim));
  std::vector<bool> seen(static_cast<std::size_t>(dim * dim), false);
  long long count = 0;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long row = 0, col = 0;
    std::int64_t num = 0;
    long long exp = -1;
    std::string extra;
    if (!(ls >> row >> col >> num >> exp) || (ls >> extra))
      throw FormatError("DyadicCoordinate: malformed entry '" + line + "'");
    if (row < 1 || row > dim || col < 1 || col > dim || exp < 0 || exp > 4096)
      throw FormatError("DyadicCoordinate: entry out of range '" + line + "'");
    if (num == 0) throw FormatError("DyadicCoordinate: explicit zero entry '" + line + "'");
    const auto idx = static_cast<std::size_t>((row - 1) * dim + (col - 1));
    if (seen[idx]) throw FormatError("DyadicCoordinate: duplicate entry '" + line + "'");
    seen[idx] = true;
    m(static_cast<std::size_t>(row - 1), static_cast<std::size_t>(col - 1)) =
        Dyadic::from_parts(num, static_cast<std::uint32_t>(exp));
    ++count;
  }
  if (count != nnz)
    throw FormatError("DyadicCoordinate: header declares " + std::to_string(nnz) + " entries, found " +
                      std::to_string(count));
  if (m.is_hermitian()) m.mark_hermitian();
  return m;
}

inline void save_dyadic_coordinate(const std::string& path, const DyadicOp& m) {
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  write_dyadic_coordinate(os, m);
  os.flush();
  if (!os) throw std::ios_base::failure("write to '" + path + "' failed");
}

inline DyadicOp load_dyadic_coordinate(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::ios_base::failure("cannot open '" + path + "' for reading");
  return read_dyadic_coordinate(is);
}

}  // namespace optwit
