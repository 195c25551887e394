#include <doctest.h>

#include "dcd/error.hpp"
#include "dcd/oa.hpp"
#include "oracles.hpp"

using namespace dcd;

namespace {

oracle::Rows rows_of(const IntegerMatrix& m) {
  oracle::Rows out;
  for (int r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

}  // namespace

TEST_CASE("full factorial and basis columns") {
  const auto f = full_factorial(3, 2);
  CHECK(f.matrix.rows() == 9);
  CHECK(f.matrix.column(0) == Column{0, 0, 0, 1, 1, 1, 2, 2, 2});
  CHECK(basis_column(3, 2, 2) == Column{0, 1, 2, 0, 1, 2, 0, 1, 2});
  CHECK(oracle::is_oa(rows_of(f.matrix), {3, 3}, 2));
}

TEST_CASE("linear columns") {
  GaloisField f(2);
  CHECK(linear_column(f, 3, {{1, 1, 0}}) == Column{0, 0, 1, 1, 1, 1, 0, 0});
  CHECK_THROWS_AS(linear_column(f, 3, {{0, 0, 0}}), Error);
}

TEST_CASE("Bush arrays have the claimed strength") {
  for (int s : {2, 3, 4, 5, 7, 8, 9}) {
    const auto a = bush_oa(GaloisField(s), 2);
    CHECK(a.matrix.rows() == s * s);
    CHECK(a.matrix.cols() == s + 1);
    CHECK(oracle::is_oa(rows_of(a.matrix), std::vector<int>(s + 1, s), 2));
    CHECK(is_block_form(a.matrix));
  }
  for (int s : {3, 4, 5}) {
    const auto a = bush_oa(GaloisField(s), 3);
    CHECK(oracle::is_oa(rows_of(a.matrix), std::vector<int>(s + 1, s), 3));
  }
  CHECK_THROWS_AS(bush_oa(GaloisField(2), 3), Error);
}

TEST_CASE("block form normalization") {
  auto a = bush_oa(GaloisField(3), 2);
  const auto rows = std::vector<int>{8, 0, 4, 3, 2, 7, 1, 6, 5};
  OrthogonalArray shuffled{a.matrix.select_rows(rows), a.levels, 2};
  CHECK_FALSE(is_block_form(shuffled.matrix));
  const auto fixed = normalize_block_form(shuffled);
  CHECK(is_block_form(fixed.matrix));
  CHECK(is_orthogonal_array(fixed.matrix, 3, 2));
  OrthogonalArray odd{IntegerMatrix::from_transposed({{0, 1, 0, 1, 0, 1, 0, 1}}), {2}, 1};
  CHECK_THROWS_AS(normalize_block_form(odd), Error);
}

TEST_CASE("OA text round trip and parse errors") {
  const auto a = bush_oa(GaloisField(4), 2);
  const auto text = format_oa(a);
  const auto back = parse_oa(text);
  CHECK(back.matrix == a.matrix);
  CHECK(back.strength == 2);
  CHECK(parse_oa("# comment\n2 1 2 1\n0\n1\n").matrix.rows() == 2);
  CHECK_THROWS_AS(parse_oa("2 1 2\n0\n1\n"), Error);
  CHECK_THROWS_AS(parse_oa("2 1 2 1\n0\nx\n"), Error);
  try {
    parse_oa("4 2 2 2\n0 0\n0 0\n1 1\n1 1\n");
    FAIL("strength not checked");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StrengthMismatch);
  }
  std::vector<int> levels;
  const auto m = parse_matrix_text("3 1 3 0\n2\n0\n1\n", &levels);
  CHECK(levels == std::vector<int>{3});
  CHECK(m.column(0) == Column{2, 0, 1});
}
