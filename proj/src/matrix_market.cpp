#include "sparoof/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace sparoof {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

const char* skip_space(const char* p, const char* end) {
  while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  return p;
}

template <typename T>
const char* parse_field(const char* p, const char* end, T& value, std::size_t line_no) {
  p = skip_space(p, end);
  auto [next, ec] = std::from_chars(p, end, value);
  if (ec != std::errc()) {
    throw MatrixMarketError("line " + std::to_string(line_no) + ": malformed number");
  }
  return next;
}

void check_trailing(const char* p, const char* end, std::size_t line_no) {
  p = skip_space(p, end);
  if (p != end) throw MatrixMarketError("line " + std::to_string(line_no) + ": trailing data");
}

}  // namespace

CooEntries read_matrix_market(std::istream& in, MatrixMarketInfo* info) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw MatrixMarketError("empty Matrix Market stream");

  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") throw MatrixMarketError("missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw MatrixMarketError("unsupported object '" + object + "'");
  if (format != "coordinate") {
    throw MatrixMarketError("unsupported format '" + format + "', expected coordinate");
  }
  MatrixMarketInfo meta;
  if (field == "real") {
    meta.field = MmField::real;
  } else if (field == "integer") {
    meta.field = MmField::integer;
  } else if (field == "pattern") {
    meta.field = MmField::pattern;
  } else if (field == "complex") {
    throw MatrixMarketError("complex matrices are not supported");
  } else {
    throw MatrixMarketError("unknown field '" + field + "'");
  }
  if (symmetry == "general") {
    meta.symmetry = MmSymmetry::general;
  } else if (symmetry == "symmetric") {
    meta.symmetry = MmSymmetry::symmetric;
  } else {
    throw MatrixMarketError("unsupported symmetry '" + symmetry + "'");
  }

  // Skip comments and blank lines up to the size line.
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    have_size = true;
    break;
  }
  if (!have_size) throw MatrixMarketError("missing size line");
  std::size_t rows = 0, cols = 0, stored = 0;
  {
    const char* p = line.data();
    const char* end = p + line.size();
    p = parse_field(p, end, rows, line_no);
    p = parse_field(p, end, cols, line_no);
    p = parse_field(p, end, stored, line_no);
    check_trailing(p, end, line_no);
  }
  if (meta.symmetry == MmSymmetry::symmetric && rows != cols) {
    throw MatrixMarketError("symmetric storage requires a square matrix");
  }
  meta.stored_entries = stored;

  CooEntries coo{rows, cols, {}};
  coo.entries.reserve(meta.symmetry == MmSymmetry::symmetric ? 2 * stored : stored);
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    if (seen == stored) throw MatrixMarketError("more entries than the size line declares");
    const char* p = line.data();
    const char* end = p + line.size();
    std::size_t i = 0, j = 0;
    double v = 1.0;
    p = parse_field(p, end, i, line_no);
    p = parse_field(p, end, j, line_no);
    if (meta.field == MmField::integer) {
      long long iv = 0;
      p = parse_field(p, end, iv, line_no);
      v = static_cast<double>(iv);
    } else if (meta.field == MmField::real) {
      p = parse_field(p, end, v, line_no);
    }
    check_trailing(p, end, line_no);
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw MatrixMarketError("line " + std::to_string(line_no) + ": index (" + std::to_string(i) +
                              ", " + std::to_string(j) + ") outside declared bounds");
    }
    const auto r = static_cast<index_t>(i - 1);
    const auto c = static_cast<index_t>(j - 1);
    coo.add(r, c, v);
    if (meta.symmetry == MmSymmetry::symmetric && r != c) coo.add(c, r, v);
    ++seen;
  }
  if (seen != stored) {
    throw MatrixMarketError("expected " + std::to_string(stored) + " entries, found " +
                            std::to_string(seen));
  }
  if (info) *info = meta;
  return coo;
}

CooEntries load_matrix_market(const std::filesystem::path& path, MatrixMarketInfo* info) {
  std::ifstream in(path);
  if (!in) throw MatrixMarketError("cannot open " + path.string());
  return read_matrix_market(in, info);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a, MmField field,
                         MmSymmetry symmetry) {
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto vals = a.values();

  std::size_t count = a.nnz();
  if (symmetry == MmSymmetry::symmetric) {
    const auto coo = csr_to_coo(a);
    CooEntries transposed{a.n(), a.n(), {}};
    transposed.entries.reserve(coo.entries.size());
    for (const auto& e : coo.entries) transposed.add(e.col, e.row, e.value);
    canonicalize(transposed);
    const bool symmetric_values =
        std::equal(coo.entries.begin(), coo.entries.end(), transposed.entries.begin(),
                   transposed.entries.end(), [](const CooEntry& x, const CooEntry& y) {
                     return x.row == y.row && x.col == y.col && x.value == y.value;
                   });
    if (!symmetric_values) throw MatrixMarketError("matrix is not symmetric");
    count = 0;
    for (const auto& e : coo.entries) count += e.col <= e.row ? 1 : 0;
  }

  const char* field_name = field == MmField::real      ? "real"
                           : field == MmField::integer ? "integer"
                                                       : "pattern";
  out << "%%MatrixMarket matrix coordinate " << field_name << ' '
      << (symmetry == MmSymmetry::symmetric ? "symmetric" : "general") << '\n';
  out << a.n() << ' ' << a.n() << ' ' << count << '\n';

  char buf[64];
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (index_t k = rp[i]; k < rp[i + 1]; ++k) {
      if (symmetry == MmSymmetry::symmetric && ci[k] > i) continue;
      out << (i + 1) << ' ' << (ci[k] + 1);
      if (field == MmField::real) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), vals[k]);
        out << ' ' << std::string_view(buf, static_cast<std::size_t>(end - buf));
      } else if (field == MmField::integer) {
        const double v = vals[k];
        if (v != std::trunc(v)) throw MatrixMarketError("non-integral value in integer output");
        out << ' ' << static_cast<long long>(v);
      }
      out << '\n';
    }
  }
}

void save_matrix_market(const std::filesystem::path& path, const CsrMatrix& a, MmField field,
                        MmSymmetry symmetry) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MatrixMarketError("cannot write " + path.string());
  write_matrix_market(out, a, field, symmetry);
  out.flush();
  if (!out) throw MatrixMarketError("write failed for " + path.string());
}

CsrMatrix load_csr(const std::filesystem::path& path, MatrixMarketInfo* info) {
  return csr_from_coo(load_matrix_market(path, info));
}

}  // namespace sparoof
