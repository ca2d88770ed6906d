#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sparoof/matrix.hpp"

namespace sparoof {

class MatrixMarketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MmField { real, integer, pattern };
enum class MmSymmetry { general, symmetric };

struct MatrixMarketInfo {
  MmField field = MmField::real;
  MmSymmetry symmetry = MmSymmetry::general;
  std::size_t stored_entries = 0;  // the size line's count, before expansion
};

/// Reads a coordinate-format file. Indices become 0-based, pattern entries
/// get value 1.0 and symmetric storage is mirrored into both triangles.
CooEntries read_matrix_market(std::istream& in, MatrixMarketInfo* info = nullptr);
CooEntries load_matrix_market(const std::filesystem::path& path, MatrixMarketInfo* info = nullptr);

/// Writes the matrix in coordinate format. Symmetric output stores the lower
/// triangle and requires a structurally and numerically symmetric matrix.
/// Pattern output drops values.
void write_matrix_market(std::ostream& out, const CsrMatrix& a, MmField field = MmField::real,
                         MmSymmetry symmetry = MmSymmetry::general);
void save_matrix_market(const std::filesystem::path& path, const CsrMatrix& a,
                        MmField field = MmField::real, MmSymmetry symmetry = MmSymmetry::general);

/// Convenience: load, convert to CSR.
CsrMatrix load_csr(const std::filesystem::path& path, MatrixMarketInfo* info = nullptr);

}  // namespace sparoof
