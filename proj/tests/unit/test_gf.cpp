#include <doctest.h>

#include <vector>

#include "dcd/error.hpp"
#include "dcd/gf.hpp"

using dcd::GaloisField;

namespace {

// Multiplies index-encoded polynomials over GF(p) and reduces by the monic
// modulus x^k + sum r_i x^i, where `low` lists r_0..r_{k-1}.
int poly_mul(int a, int b, int p, const std::vector<int>& low) {
  const int k = static_cast<int>(low.size());
  std::vector<int> x(k), y(k), prod(2 * k, 0);
  for (int i = 0; i < k; ++i, a /= p, b /= p) {
    x[i] = a % p;
    y[i] = b % p;
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (int d = 2 * k - 1; d >= k; --d) {
    const int c = prod[d];
    prod[d] = 0;
    for (int i = 0; i < k; ++i) prod[d - k + i] = ((prod[d - k + i] - c * low[i]) % p + p) % p;
  }
  int out = 0;
  for (int i = k - 1; i >= 0; --i) out = out * p + prod[i];
  return out;
}

void check_axioms(const GaloisField& f) {
  const int s = f.order();
  for (int a = 0; a < s; ++a) {
    CHECK(f.add(a, 0) == a);
    CHECK(f.mul(a, 1) == a);
    CHECK(f.add(a, f.neg(a)) == 0);
    if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    for (int b = 0; b < s; ++b) {
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      for (int c = 0; c < s; ++c) {
        REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

}  // namespace

TEST_CASE("field axioms hold for every supported order") {
  for (int s : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32}) {
    CAPTURE(s);
    check_axioms(GaloisField(s));
  }
}

TEST_CASE("extension multiplication matches polynomial arithmetic") {
  struct Case {
    int s, p;
    std::vector<int> low;
  };
  for (const auto& c : std::vector<Case>{{4, 2, {1, 1}}, {8, 2, {1, 1, 0}}, {9, 3, {1, 0}}, {27, 3, {1, 2, 0}}}) {
    GaloisField f(c.s);
    CHECK(f.modulus() == c.low);
    for (int a = 0; a < c.s; ++a)
      for (int b = 0; b < c.s; ++b) REQUIRE(f.mul(a, b) == poly_mul(a, b, c.p, c.low));
  }
}

TEST_CASE("prime fields are integers mod p") {
  GaloisField f(7);
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      CHECK(f.add(a, b) == (a + b) % 7);
      CHECK(f.mul(a, b) == (a * b) % 7);
    }
  CHECK(f.inv(3) == 5);
}

TEST_CASE("field errors") {
  CHECK_THROWS_AS(GaloisField(6), dcd::Error);
  try {
    GaloisField bad(6);
  } catch (const dcd::Error& e) {
    CHECK(e.code() == dcd::ErrorCode::NotPrimePower);
  }
  try {
    GaloisField big(64);
  } catch (const dcd::Error& e) {
    CHECK(e.code() == dcd::ErrorCode::TooLarge);
  }
  GaloisField f(4);
  try {
    (void)f.inv(0);
    FAIL("inverse of zero accepted");
  } catch (const dcd::Error& e) {
    CHECK(e.code() == dcd::ErrorCode::InverseOfZero);
  }
  CHECK(dcd::gf_arith(f, dcd::FieldOp::Inv, 2) == f.inv(2));
}

TEST_CASE("prime power factoring") {
  CHECK(dcd::factor_prime_power(8).prime == 2);
  CHECK(dcd::factor_prime_power(8).exponent == 3);
  CHECK(dcd::factor_prime_power(25).prime == 5);
  CHECK(dcd::factor_prime_power(12).prime == 0);
  CHECK_FALSE(dcd::is_prime_power(1));
  CHECK(dcd::is_prime_power(27));
}
