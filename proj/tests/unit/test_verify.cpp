#include <doctest.h>

#include <algorithm>

#include "dcd/arrays.hpp"
#include "dcd/error.hpp"
#include "dcd/verify.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace dcd;

namespace {

oracle::Rows rows_of(const IntegerMatrix& m) {
  oracle::Rows out;
  for (int r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

CoupledDesign golden8() { return make_design(golden::golden8_d1(), golden::golden8_d2(), 2); }

}  // namespace

TEST_CASE("golden 8-run design is doubly coupled") {
  const auto d = golden8();
  CHECK(check_omega_coupled(d, 2).pass());
  CHECK(check_omega_coupled(d, 1).pass());
  CHECK(check_mcd(d).pass());
  const auto t1 = check_dcd_theorem1(d);
  CHECK(*t1.condition_a);
  CHECK(*t1.condition_b);
  CHECK(check_croa_partition(d.d1, 2));
  CHECK(check_dcd(d).pass());
  CHECK(oracle::coupled(rows_of(d.d1), rows_of(d.d2), 2, 2));
}

TEST_CASE("single-condition counterexamples") {
  const auto a = make_design(golden::golden8_d1(), golden::only_a_d2(), 2);
  const auto ra = check_dcd_theorem1(a);
  CHECK(*ra.condition_a);
  CHECK_FALSE(*ra.condition_b);
  CHECK_FALSE(ra.condition_b_failures.empty());
  CHECK_FALSE(check_omega_coupled(a, 2).pass());
  CHECK(check_omega_coupled(a, 1).pass());

  const auto b = make_design(golden::golden8_d1(), golden::only_b_d2(), 2);
  const auto rb = check_dcd_theorem1(b);
  CHECK_FALSE(*rb.condition_a);
  CHECK(*rb.condition_b);
  CHECK_FALSE(rb.condition_a_failures.empty());
  CHECK_FALSE(check_omega_coupled(b, 2).pass());

  const auto wa = theorem3_witness(a);
  CHECK_FALSE(wa.pass);
  CHECK(std::any_of(wa.failures.begin(), wa.failures.end(),
                    [](const std::string& f) { return f.find("(z1, z2, b") != std::string::npos; }));
}

TEST_CASE("coupling check agrees with row slicing on random expansions") {
  Rng rng(17);
  const auto d1 = golden::golden8_d1();
  int passes = 0, fails = 0;
  for (int trial = 0; trial < 200; ++trial) {
    // Odd trials: random balanced 4-level columns. Even trials: two columns
    // of the golden collapsed matrix, which always couple.
    IntegerMatrix tilde(8, 2);
    for (int c = 0; c < 2; ++c) {
      std::vector<int> col{0, 0, 1, 1, 2, 2, 3, 3};
      if (trial % 2 == 0)
        col = golden::golden8_collapsed_once().column(static_cast<int>(rng.below(4)));
      else
        rng.shuffle(std::span<int>(col));
      tilde.set_column(c, col);
    }
    const auto d = make_design(d1, level_expand(tilde, rng), 2);
    for (int omega : {0, 1, 2}) {
      const bool expect = oracle::coupled(rows_of(d.d1), rows_of(d.d2), 2, omega);
      REQUIRE(check_omega_coupled(d, omega).pass() == expect);
      if (omega == 2) {
        REQUIRE(check_dcd_theorem1(d).pass() == expect);
        REQUIRE(theorem3_witness(d).pass == expect);
        (expect ? passes : fails)++;
        if (!expect) REQUIRE_FALSE(check_omega_coupled(d, 2).coupling_violations.empty());
      }
    }
  }
  CHECK(passes > 0);
  CHECK(fails > 0);
}

TEST_CASE("coupling preconditions") {
  const auto d = golden8();
  try {
    (void)check_omega_coupled(d, 3);
    FAIL("omega above q accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OmegaExceedsQ);
  }
  const auto bad = make_design(golden::golden8_d1(), IntegerMatrix::from_transposed({{0, 0, 1, 2, 3, 4, 5, 6}}), 2);
  CHECK_FALSE(check_omega_coupled(bad, 0).pass());
  CHECK(check_omega_coupled(d, 0).pass());
}

TEST_CASE("consecutive CROA partition") {
  const auto d1 = golden::golden8_d1();
  CHECK(check_croa_partition(d1, 2));
  CHECK(check_croa_partition(golden::stacked27_d1(), 3));
  auto swapped = d1;
  for (int c = 0; c < 2; ++c) std::swap(swapped(1, c), swapped(4, c));
  CHECK_FALSE(check_croa_partition(swapped, 2));
  CHECK(oracle::consecutive_croa(rows_of(swapped), 2, 0, 4) == false);
  CHECK(check_croa_partition_exhaustive(swapped, 2));
}

TEST_CASE("witness recovery on the golden design") {
  const auto w = theorem3_witness(golden8());
  CHECK(w.pass);
  CHECK(w.b.column(0) == Column{0, 0, 1, 1, 1, 1, 0, 0});
  CHECK(w.b == golden::regular8_b());
  for (int k = 0; k < 4; ++k) CHECK(w.c.column(k) == golden::regular8_a().column(0));
}

TEST_CASE("stratification report") {
  const auto strat = stratification_report(golden8());
  int two_by_two = 0;
  for (const auto& g : strat)
    if (g.gx == 2 && g.gy == 2) {
      CHECK(g.pass);
      ++two_by_two;
    }
  CHECK(two_by_two == 6);
  const auto single = make_design(golden::golden8_d1(), golden::golden8_d2().select_columns(std::vector<int>{0}), 2);
  CHECK(stratification_report(single).empty());
}

TEST_CASE("qualitative factor bound") {
  CHECK(max_qualitative_factors(2) == 2);
  CHECK(max_qualitative_factors(3) == 3);
  CHECK(max_qualitative_factors(5) == 5);
}

TEST_CASE("report text") {
  const auto text = describe(check_dcd(golden8()));
  CHECK(text.find("overall: PASS") != std::string::npos);
  const auto bad = describe(check_dcd(make_design(golden::golden8_d1(), golden::only_a_d2(), 2)));
  CHECK(bad.find("condition (b)           : FAIL") != std::string::npos);
}
