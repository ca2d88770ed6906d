#include <doctest.h>

#include <vector>

#include "sparoof/matrix.hpp"
#include "test_util.hpp"

using namespace sparoof;

namespace {

void check_csr_invariants(const CsrMatrix& a) {
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  REQUIRE(rp.size() == a.n() + 1);
  CHECK(rp.front() == 0);
  CHECK(rp.back() == a.nnz());
  for (std::size_t i = 0; i < a.n(); ++i) {
    CHECK(rp[i] <= rp[i + 1]);
    for (auto k = rp[i] + 1; k < rp[i + 1]; ++k) CHECK(ci[k - 1] < ci[k]);
  }
}

}  // namespace

TEST_CASE("csr_from_coo lays out a diagonal") {
  CooEntries coo{2, 2, {}};
  coo.add(0, 0, 2.0);
  coo.add(1, 1, 3.0);
  const auto a = csr_from_coo(coo);
  CHECK(std::vector<index_t>(a.row_ptr().begin(), a.row_ptr().end()) == std::vector<index_t>{0, 1, 2});
  CHECK(std::vector<index_t>(a.col_idx().begin(), a.col_idx().end()) == std::vector<index_t>{0, 1});
  CHECK(std::vector<double>(a.values().begin(), a.values().end()) == std::vector<double>{2.0, 3.0});
}

TEST_CASE("csr_from_coo sums duplicates") {
  CooEntries coo{1, 1, {}};
  coo.add(0, 0, 1.0);
  coo.add(0, 0, 1.0);
  const auto a = csr_from_coo(coo);
  REQUIRE(a.nnz() == 1);
  CHECK(a.values()[0] == 2.0);
}

TEST_CASE("csr_from_coo handles an empty entry list") {
  const auto a = csr_from_coo(CooEntries{3, 3, {}});
  CHECK(a.nnz() == 0);
  CHECK(std::vector<index_t>(a.row_ptr().begin(), a.row_ptr().end()) == std::vector<index_t>{0, 0, 0, 0});
}

TEST_CASE("csr_from_coo sorts unordered input") {
  CooEntries coo{3, 3, {}};
  coo.add(2, 1, 5.0);
  coo.add(0, 2, 1.0);
  coo.add(2, 0, 4.0);
  coo.add(0, 0, 3.0);
  const auto a = csr_from_coo(coo);
  check_csr_invariants(a);
  CHECK(std::vector<index_t>(a.col_idx().begin(), a.col_idx().end()) == std::vector<index_t>{0, 2, 0, 1});
  CHECK(std::vector<double>(a.values().begin(), a.values().end()) == std::vector<double>{3, 1, 4, 5});
}

TEST_CASE("csr_from_coo rejects bad input") {
  CHECK_THROWS_AS(csr_from_coo(CooEntries{2, 3, {}}), MatrixError);
  CooEntries coo{2, 2, {}};
  coo.add(2, 0, 1.0);
  CHECK_THROWS_AS(csr_from_coo(coo), MatrixError);
}

TEST_CASE("CsrMatrix constructor validates invariants") {
  CHECK_THROWS_AS(CsrMatrix(2, {0, 1}, {0}, {1.0}), MatrixError);            // short row_ptr
  CHECK_THROWS_AS(CsrMatrix(2, {1, 1, 1}, {0}, {1.0}), MatrixError);         // row_ptr[0] != 0
  CHECK_THROWS_AS(CsrMatrix(2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), MatrixError); // unsorted row
  CHECK_THROWS_AS(CsrMatrix(2, {0, 1, 1}, {2}, {1.0}), MatrixError);         // column out of range
  CHECK_THROWS_AS(CsrMatrix(2, {0, 1, 1}, {0}, {}), MatrixError);            // length mismatch
  CHECK_NOTHROW(CsrMatrix(2, {0, 1, 2}, {1, 0}, {1.0, 1.0}));
}

TEST_CASE("csr_from_pattern dedupes and assigns ones") {
  const auto a = csr_from_pattern(3, {(2ull << 32) | 1, 0, (2ull << 32) | 1, 1});
  check_csr_invariants(a);
  CHECK(a.nnz() == 3);
  for (double v : a.values()) CHECK(v == 1.0);
}

TEST_CASE("csr_to_csb groups corner entries into two blocks") {
  CooEntries coo{4, 4, {}};
  coo.add(0, 0, 1.0);
  coo.add(3, 3, 2.0);
  const auto csb = csr_to_csb(csr_from_coo(coo), 2);
  CHECK(csb.n_blocks() == 2);
  CHECK(csb.n_block_rows() == 2);
  CHECK(csb.blocks()[0].block_row == 0);
  CHECK(csb.blocks()[0].block_col == 0);
  CHECK(csb.blocks()[1].block_row == 1);
  CHECK(csb.blocks()[1].block_col == 1);
  CHECK(csb.local_rows()[1] == 1);
  CHECK(csb.local_cols()[1] == 1);
}

TEST_CASE("csr_to_csb on the identity keeps diagonal blocks only") {
  CooEntries coo{4, 4, {}};
  for (index_t i = 0; i < 4; ++i) coo.add(i, i, 1.0);
  const auto csb = csr_to_csb(csr_from_coo(coo), 2);
  REQUIRE(csb.n_blocks() == 2);
  for (const auto& b : csb.blocks()) {
    CHECK(b.block_row == b.block_col);
    CHECK(b.count == 2);
  }
}

TEST_CASE("csr_to_csb rejects invalid block dimensions") {
  const auto a = testing::random_csr(8, 0.3, 1);
  CHECK_THROWS_AS(csr_to_csb(a, 0), MatrixError);
  CHECK_THROWS_AS(csr_to_csb(a, 3), MatrixError);
  CHECK_THROWS_AS(csr_to_csb(a, std::size_t{1} << 17), MatrixError);
  CHECK_NOTHROW(csr_to_csb(a, std::size_t{1} << 16));
}

TEST_CASE("csr_to_csb preserves structure and round-trips") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 1 + seed * 11;
    const auto a = testing::random_csr(n, 0.05 + 0.02 * static_cast<double>(seed), seed);
    for (std::size_t t : {1u, 2u, 4u, 16u, 64u}) {
      CAPTURE(seed);
      CAPTURE(t);
      const auto csb = csr_to_csb(a, t);
      std::size_t total = 0;
      for (std::size_t br = 0; br < csb.n_block_rows(); ++br) {
        std::int64_t prev_col = -1;
        for (const auto& b : csb.block_row(br)) {
          CHECK(b.block_row == br);
          CHECK(static_cast<std::int64_t>(b.block_col) > prev_col);
          CHECK(b.count >= 1);
          prev_col = b.block_col;
          total += b.count;
        }
      }
      CHECK(total == a.nnz());
      if (a.nnz() > 0) CHECK(csb.n_blocks() >= 1);
      CHECK(csb_to_csr(csb) == a);
    }
  }
}

TEST_CASE("default_block_dim clamps to [32, 2^15]") {
  CHECK(default_block_dim(1) == 32);
  CHECK(default_block_dim(1 << 20) == 1024);
  CHECK(default_block_dim((1 << 20) + 1) == 2048);
  CHECK(default_block_dim(std::size_t{1} << 40) == (std::size_t{1} << 15));
}

TEST_CASE("DenseMatrix shape checks and deterministic fill") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<double>(3)), MatrixError);
  const auto x = random_dense(5, 3, 7);
  const auto y = random_dense(5, 3, 7);
  CHECK(x == y);
  for (double v : x.data()) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  CHECK_FALSE(x == random_dense(5, 3, 8));
}
