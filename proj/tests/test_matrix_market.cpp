#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sparoof/matrix_market.hpp"
#include "test_util.hpp"

using namespace sparoof;

namespace {

CooEntries parse(const std::string& text, MatrixMarketInfo* info = nullptr) {
  std::istringstream in(text);
  return read_matrix_market(in, info);
}

std::vector<std::tuple<index_t, index_t, double>> sorted_entries(CooEntries coo) {
  canonicalize(coo);
  std::vector<std::tuple<index_t, index_t, double>> out;
  for (const auto& e : coo.entries) out.emplace_back(e.row, e.col, e.value);
  return out;
}

CsrMatrix round_trip(const CsrMatrix& a, MmField field, MmSymmetry sym) {
  std::stringstream buf;
  write_matrix_market(buf, a, field, sym);
  return csr_from_coo(read_matrix_market(buf));
}

CsrMatrix symmetric_random(std::size_t n, std::uint64_t seed) {
  const auto base = testing::random_csr(n, 0.2, seed);
  CooEntries coo{n, n, {}};
  for (const auto& e : csr_to_coo(base).entries) {
    if (e.row >= e.col) {
      coo.add(e.row, e.col, e.value);
      if (e.row != e.col) coo.add(e.col, e.row, e.value);
    }
  }
  return csr_from_coo(std::move(coo));
}

}  // namespace

TEST_CASE("a general real entry becomes 0-based") {
  MatrixMarketInfo info;
  const auto coo = parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 3.5\n", &info);
  CHECK(coo.n_rows == 2);
  CHECK(coo.n_cols == 2);
  REQUIRE(coo.entries.size() == 1);
  CHECK(coo.entries[0].row == 0);
  CHECK(coo.entries[0].col == 0);
  CHECK(coo.entries[0].value == 3.5);
  CHECK(info.field == MmField::real);
  CHECK(info.symmetry == MmSymmetry::general);
  CHECK(info.stored_entries == 1);
}

TEST_CASE("symmetric storage is mirrored") {
  const auto coo = parse(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% comment line\n"
      "2 2 2\n"
      "2 1 -4.25\n"
      "1 1 1\n");
  const auto got = sorted_entries(coo);
  const std::vector<std::tuple<index_t, index_t, double>> want{{0, 0, 1.0}, {0, 1, -4.25}, {1, 0, -4.25}};
  CHECK(got == want);
}

TEST_CASE("pattern entries take value one") {
  const auto coo = parse("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 2\n");
  REQUIRE(coo.entries.size() == 1);
  CHECK(coo.entries[0].row == 0);
  CHECK(coo.entries[0].col == 1);
  CHECK(coo.entries[0].value == 1.0);
}

TEST_CASE("integer fields and case-insensitive banners are accepted") {
  const auto coo = parse("%%MatrixMarket MATRIX Coordinate INTEGER General\n3 3 1\n3 2 7\n");
  REQUIRE(coo.entries.size() == 1);
  CHECK(coo.entries[0].value == 7.0);
}

TEST_CASE("malformed input is rejected") {
  const char* bad[] = {
      "",
      "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n",
      "%%MatrixMarket matrix coordinate real hermitian\n1 1 1\n1 1 1\n",
      "%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 1\n",
      "%%MatrixMarket matrix array real general\n1 1\n1\n",
      "%%NotMatrixMarket matrix coordinate real general\n1 1 1\n1 1 1\n",
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n",
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n0 1 1\n",
      "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n",
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1\n",
      "%%MatrixMarket matrix coordinate real general\n2 2\n",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse(text), MatrixMarketError);
  }
}

TEST_CASE("general round trip preserves entries bit-exactly") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = testing::random_csr(30, 0.15, seed);
    CHECK(round_trip(a, MmField::real, MmSymmetry::general) == a);
  }
  // Values that need all 17 significant digits.
  CooEntries coo{2, 2, {}};
  coo.add(0, 1, 0.1 + 0.2);
  coo.add(1, 0, 1e-300);
  coo.add(1, 1, -123456789.123456789);
  const auto a = csr_from_coo(coo);
  CHECK(round_trip(a, MmField::real, MmSymmetry::general) == a);
}

TEST_CASE("symmetric round trip stores one triangle and restores both") {
  const auto a = symmetric_random(40, 3);
  std::size_t off_diag = 0;
  for (const auto& e : csr_to_coo(a).entries) off_diag += e.row != e.col;

  std::stringstream buf;
  write_matrix_market(buf, a, MmField::real, MmSymmetry::symmetric);
  MatrixMarketInfo info;
  const auto back = csr_from_coo(read_matrix_market(buf, &info));
  CHECK(back == a);
  CHECK(info.symmetry == MmSymmetry::symmetric);
  // Expansion doubles the stored off-diagonal count.
  CHECK(info.stored_entries == a.nnz() - off_diag / 2);
  CHECK(a.nnz() - info.stored_entries == off_diag / 2);
}

TEST_CASE("symmetric writer refuses an asymmetric matrix") {
  CooEntries coo{2, 2, {}};
  coo.add(0, 1, 1.0);
  std::ostringstream out;
  CHECK_THROWS_AS(write_matrix_market(out, csr_from_coo(coo), MmField::real, MmSymmetry::symmetric),
                  MatrixMarketError);
}

TEST_CASE("pattern round trip preserves structure") {
  const auto a = testing::random_csr(25, 0.2, 9);
  const auto back = round_trip(a, MmField::pattern, MmSymmetry::general);
  CHECK(back.n() == a.n());
  CHECK(std::vector<index_t>(back.row_ptr().begin(), back.row_ptr().end()) ==
        std::vector<index_t>(a.row_ptr().begin(), a.row_ptr().end()));
  CHECK(std::vector<index_t>(back.col_idx().begin(), back.col_idx().end()) ==
        std::vector<index_t>(a.col_idx().begin(), a.col_idx().end()));
  for (double v : back.values()) CHECK(v == 1.0);
}

TEST_CASE("files on disk load through load_csr") {
  testing::TempDir dir;
  const auto a = testing::random_csr(12, 0.3, 2);
  save_matrix_market(dir / "a.mtx", a);
  CHECK(load_csr(dir / "a.mtx") == a);
  CHECK_THROWS(load_csr(dir / "missing.mtx"));
}

TEST_CASE("empty matrices survive a round trip") {
  const auto a = csr_from_coo(CooEntries{5, 5, {}});
  CHECK(round_trip(a, MmField::real, MmSymmetry::general) == a);
}
