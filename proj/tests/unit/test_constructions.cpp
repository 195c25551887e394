#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "dcd/constructions.hpp"
#include "dcd/error.hpp"
#include "dcd/oa.hpp"
#include "dcd/verify.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace dcd;

namespace {

IntegerMatrix tilde_of(const CoupledDesign& d) {
  IntegerMatrix t(d.runs(), d.quantitative());
  for (int r = 0; r < d.runs(); ++r)
    for (int k = 0; k < d.quantitative(); ++k) t(r, k) = d.s * d.witness->b(r, k) + d.witness->c(r, k);
  return t;
}

PermutationPlan stacked_plan() {
  PermutationPlan plan;
  plan.v = golden::stacked27_v();
  plan.w = golden::stacked27_w();
  plan.seed = 1;
  return plan;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("stacked construction reproduces the golden 27-run design") {
  std::vector<OrthogonalArray> arrays;
  for (const auto& m : {golden::stacked27_a1(), golden::stacked27_a2(), golden::stacked27_a3()})
    arrays.push_back(OrthogonalArray::verified(m, 3, 2));
  const auto d = construction1(arrays, 3, stacked_plan());
  CHECK(d.d1 == golden::stacked27_d1());
  CHECK(d.witness->b == golden::stacked27_b());
  CHECK(d.witness->c == golden::stacked27_c());
  CHECK(tilde_of(d) == level_collapse(golden::stacked27_d2(), 3));
  CHECK(check_dcd(d).pass());
  CHECK(check_omega_coupled(d, 2).pass());
  CHECK(is_orthogonal_array(d.d1, 3, 3));
  CHECK(check_dcd(make_design(golden::stacked27_d1(), golden::stacked27_d2(), 3)).pass());
  CHECK(d.warnings.empty());
}

TEST_CASE("stacked construction normalizes arrays not in block form") {
  auto a = bush_oa(GaloisField(3), 2);
  const std::vector<int> rows{4, 0, 8, 3, 1, 2, 5, 7, 6};
  OrthogonalArray shuffled{a.matrix.select_rows(rows), a.levels, 2};
  Rng rng(3);
  Construction1Family fam{{shuffled, a}, 2};
  auto plan = sample_plan(fam, rng);
  const auto d = construction1(fam.arrays, 2, plan);
  CHECK(d.warnings.size() == 1);
  CHECK(check_dcd(d).pass());
}

TEST_CASE("repeated construction reproduces the golden 27-run design") {
  const auto a1 = OrthogonalArray::verified(golden::stacked27_a1(), 3, 2);
  const auto b = golden::repeated27_b();
  CHECK(check_cell_permutations(b, 3, 3));
  PermutationPlan plan;
  plan.b_cells = b_cells_from_matrix(b, 3, 3);
  for (const auto& w : golden::repeated27_w()) plan.w.push_back({w});
  const auto d = construction2(a1, 3, 3, plan);
  CHECK(d.d1 == golden::repeated27_d1());
  CHECK(d.witness->b == b);
  CHECK(d.witness->c == golden::repeated27_c());
  CHECK(tilde_of(d) == level_collapse(golden::repeated27_d2(), 3));
  CHECK(check_dcd(d).pass());
  CHECK(check_dcd(make_design(golden::repeated27_d1(), golden::repeated27_d2(), 3)).pass());

  auto broken = b;
  std::swap(broken(0, 0), broken(1, 0));
  CHECK_FALSE(check_cell_permutations(broken, 3, 3));
  PermutationPlan bad = plan;
  bad.b_cells[0][0] = {0, 0, 1};
  CHECK(code_of([&] { construction2(a1, 3, 3, bad); }) == ErrorCode::CellNotPermutation);
}

TEST_CASE("regular inputs over GF(2) with u = 3") {
  const auto in = case2_inputs(GaloisField(2), 3);
  const auto a = golden::regular8_a();
  const auto b = golden::regular8_b();
  // Documented column order: A = (a1, a3, a2), B = (b1, b3, b2, b4).
  CHECK(in.a.matrix == a.select_columns(std::vector<int>{0, 2, 1}));
  CHECK(in.b == b.select_columns(std::vector<int>{0, 2, 1, 3}));

  PermutationPlan plan;
  plan.c_perms.assign(4, {0, 1});
  plan.seed = 7;
  const auto d = construction3(in.a, in.b, {2, 1}, plan);
  CHECK(tilde_of(d).column(0) == Column{0, 0, 3, 3, 2, 2, 1, 1});
  CHECK(d.d1 == golden::golden8_d1());
  CHECK(check_dcd(d).pass());
  for (const auto& g : stratification_report(d))
    if (g.gx == 2 && g.gy == 2) CHECK(g.pass);

  // With the printed arrays directly the collapsed matrix is the golden one.
  const auto direct = construction3(OrthogonalArray::verified(a, 2, 2), b, {1, 2}, plan);
  CHECK(tilde_of(direct) == golden::golden8_collapsed_once());
}

TEST_CASE("circulant weights") {
  const auto t = circulant_weights(3, 5);
  CHECK(t.column(0) == Column{9, 3, 1});
  CHECK(t.column(1) == Column{1, 9, 3});
  CHECK(t.column(2) == Column{3, 1, 9});
  CHECK(code_of([] { case2_inputs(GaloisField(3), 2); }) == ErrorCode::UTooSmall);
}

TEST_CASE("regular inputs satisfy the triple condition") {
  for (auto [s, u] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {3, 4}, {4, 3}, {5, 3}}) {
    CAPTURE(s);
    CAPTURE(u);
    const auto in = case2_inputs(GaloisField(s), u);
    CHECK(in.a.matrix.cols() == s + 1);
    CHECK(in.b.cols() == (u - 2) * s * s);
    CHECK(is_orthogonal_array(in.a.matrix, s, 2));
    Rng rng(static_cast<std::uint64_t>(s * 10 + u));
    Construction3Family fam{in.a, in.b, case2_default_select(s, s)};
    const auto d = build(fam, sample_plan(fam, rng));
    CHECK(check_dcd(d).pass());
    CHECK(d.warnings.empty());
  }
}

TEST_CASE("split inputs from a strength-3 array") {
  const auto g = bush_oa(GaloisField(3), 3);
  const auto in = case1_inputs(g, 1);
  CHECK(in.a_columns == std::vector<int>{0, 1});
  CHECK(in.b_columns == std::vector<int>{2, 3});
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = case1_inputs(bush_oa(GaloisField(4), 3), 2, &rng);
    Construction3Family fam{r.a, r.b, {0, 1}};
    const auto d = build(fam, sample_plan(fam, rng));
    CHECK(check_dcd(d).pass());
  }
  CHECK(code_of([&] { case1_inputs(bush_oa(GaloisField(3), 2), 1); }) == ErrorCode::NotStrength3);
}

TEST_CASE("construction 3 rejects arrays failing the triple condition") {
  const auto a = OrthogonalArray::verified(golden::regular8_a(), 2, 2);
  // Balanced, but equal to a2, so (a1, a2, b) is not a full factorial.
  const auto b = IntegerMatrix::from_transposed({{0, 1, 0, 1, 0, 1, 0, 1}});
  PermutationPlan plan;
  plan.c_perms.assign(1, {0, 1});
  CHECK(code_of([&] { construction3(a, b, {1, 2}, plan); }) == ErrorCode::PreconditionFailed);
  CHECK(code_of([&] { construction3(a, golden::regular8_b(), {1}, plan); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("stacked plans for s = 2, lambda = 2 give 128 distinct quantitative columns") {
  const auto a = bush_oa(GaloisField(2), 2);
  std::vector<OrthogonalArray> arrays{a, a};
  std::set<Column> seen;
  const std::vector<Permutation> two{{0, 1}, {1, 0}};
  for (const auto& v : two)
    for (const auto& w0 : two)
      for (const auto& w1 : two)
        for (int e = 0; e < 16; ++e) {
          PermutationPlan plan;
          plan.v = {v};
          plan.w = {{w0, w1}};
          plan.expand = {{two[e & 1], two[(e >> 1) & 1], two[(e >> 2) & 1], two[(e >> 3) & 1]}};
          seen.insert(construction1(arrays, 1, plan).d2.column(0));
        }
  CHECK(seen.size() == 128);
}

TEST_CASE("sampled plans are reproducible and search moves keep validity") {
  const auto a = bush_oa(GaloisField(3), 2);
  Construction2Family fam{a, 3, 3};
  Rng r1(8), r2(8);
  const auto p1 = sample_plan(fam, r1);
  CHECK(p1 == sample_plan(fam, r2));
  auto plan = p1;
  auto slots = plan_permutations(plan);
  CHECK_FALSE(slots.empty());
  for (auto* perm : slots) std::swap((*perm)[0], (*perm)[1]);
  CHECK(check_dcd(build(fam, plan)).pass());
  CHECK(family_runs(fam) == 27);
  CHECK(family_levels(fam) == 3);
  CHECK(family_quantitative(fam) == 3);
}

TEST_CASE("row order of A is repaired into consecutive CROA blocks") {
  const auto g = bush_oa(GaloisField(3), 3);
  Rng rng(21);
  int reordered = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> rows(27);
    std::iota(rows.begin(), rows.end(), 0);
    rng.shuffle(std::span<int>(rows));
    const OrthogonalArray shuffled{g.matrix.select_rows(rows), g.levels, 3};
    const auto in = case1_inputs(shuffled, 2, &rng);
    Construction3Family fam{in.a, in.b, {0, 1}};
    const auto d = build(fam, sample_plan(fam, rng));
    CHECK(check_croa_partition(d.d1, 3));
    CHECK(check_dcd(d).pass());
    reordered += static_cast<int>(d.warnings.size());
  }
  CHECK(reordered > 0);
}
