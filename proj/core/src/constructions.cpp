#include "dcd/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "dcd/error.hpp"
#include "dcd/oa.hpp"
#include "dcd/verify.hpp"

namespace dcd {
namespace {

int ipow(int base, int e) {
  int v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

int exact_sqrt(int n) {
  int r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : 0;
}

void require_perms(const std::vector<Permutation>& perms, std::size_t count, int range, const char* what) {
  if (perms.size() != count)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected " + std::to_string(count) +
                                                  " permutations, got " + std::to_string(perms.size()));
  for (const auto& perm : perms)
    if (!is_permutation_of_range(perm, range))
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + ": not a permutation of {0.." + std::to_string(range - 1) + "}");
}

/// Validates an s^2-run strength-2 array, normalizing its row order if needed.
OrthogonalArray prepare_block_array(const OrthogonalArray& a, std::vector<std::string>& warnings, int index) {
  const int s = exact_sqrt(a.matrix.rows());
  if (s < 2) throw Error(ErrorCode::NotSquareRunSize, "input array run size is not s^2");
  if (a.matrix.cols() < 2) throw Error(ErrorCode::DimensionMismatch, "input array needs at least two columns");
  if (!is_orthogonal_array(a.matrix, s, 2))
    throw Error(ErrorCode::StrengthMismatch, "input array " + std::to_string(index + 1) + " is not an OA(s^2, q+1, s, 2)");
  if (is_block_form(a.matrix)) return a;
  warnings.push_back("input array " + std::to_string(index + 1) + " reordered so its last column is in block form");
  return normalize_block_form(a);
}

CoupledDesign assemble(IntegerMatrix d1, int s, IntegerMatrix b, IntegerMatrix c, PermutationPlan plan,
                       std::vector<std::string> warnings) {
  const int n = d1.rows();
  const int p = b.cols();
  IntegerMatrix tilde(n, p);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < p; ++k) tilde(r, k) = s * b(r, k) + c(r, k);

  if (plan.expand.empty() && p > 0) {
    Rng rng(plan.seed);
    for (int k = 0; k < p; ++k) plan.expand.push_back(sample_expansion(tilde.column(k), rng));
  }
  if (static_cast<int>(plan.expand.size()) != p)
    throw Error(ErrorCode::DimensionMismatch, "plan must hold expansion permutations for every column");
  IntegerMatrix d2(n, p);
  for (int k = 0; k < p; ++k) d2.set_column(k, expand_column(tilde.column(k), plan.expand[static_cast<std::size_t>(k)]));

  CoupledDesign design{std::move(d1), std::move(d2), s, Witness{std::move(b), std::move(c), std::move(plan)},
                       std::move(warnings)};
  const auto report = check_dcd(design);
  if (!report.pass())
    throw Error(ErrorCode::PreconditionFailed, "construction output failed verification:\n" + describe(report));
  return design;
}

}  // namespace

CoupledDesign construction1(const std::vector<OrthogonalArray>& arrays, int p, PermutationPlan plan) {
  if (arrays.empty()) throw Error(ErrorCode::DimensionMismatch, "construction 1 needs at least one array");
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "p must be nonnegative");
  std::vector<std::string> warnings;
  std::vector<IntegerMatrix> blocks;
  const int s = exact_sqrt(arrays.front().matrix.rows());
  const int cols = arrays.front().matrix.cols();
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    if (arrays[i].matrix.rows() != arrays.front().matrix.rows() || arrays[i].matrix.cols() != cols)
      throw Error(ErrorCode::DimensionMismatch, "all input arrays must share (s, q)");
    blocks.push_back(prepare_block_array(arrays[i], warnings, static_cast<int>(i)).matrix.drop_last_column());
  }
  const int lambda = static_cast<int>(arrays.size());
  const int block = s * s;
  const int n = lambda * block;

  require_perms(plan.v, static_cast<std::size_t>(p), lambda, "v");
  if (plan.w.size() != static_cast<std::size_t>(p))
    throw Error(ErrorCode::DimensionMismatch, "w must hold p rows of lambda permutations");
  for (const auto& row : plan.w) require_perms(row, static_cast<std::size_t>(lambda), s, "w");

  IntegerMatrix b(n, p);
  IntegerMatrix c(n, p);
  for (int k = 0; k < p; ++k) {
    const auto& vk = plan.v[static_cast<std::size_t>(k)];
    const auto& wk = plan.w[static_cast<std::size_t>(k)];
    for (int r = 0; r < n; ++r) {
      const int j = r / block;
      b(r, k) = vk[static_cast<std::size_t>(j)];
      c(r, k) = wk[static_cast<std::size_t>(j)][static_cast<std::size_t>((r % block) / s)];
    }
  }
  return assemble(vstack(blocks), s, std::move(b), std::move(c), std::move(plan), std::move(warnings));
}

std::vector<std::vector<Permutation>> b_cells_from_matrix(const IntegerMatrix& b, int s, int lambda) {
  const int block = s * s;
  if (b.rows() != lambda * block) throw Error(ErrorCode::DimensionMismatch, "B must have lambda s^2 rows");
  std::vector<std::vector<Permutation>> cells(static_cast<std::size_t>(b.cols()));
  for (int k = 0; k < b.cols(); ++k) {
    auto& ck = cells[static_cast<std::size_t>(k)];
    ck.resize(static_cast<std::size_t>(block));
    for (int i = 0; i < block; ++i)
      for (int l = 0; l < lambda; ++l) ck[static_cast<std::size_t>(i)].push_back(b(i + l * block, k));
  }
  return cells;
}

bool check_cell_permutations(const IntegerMatrix& b, int s, int lambda) {
  if (b.rows() != lambda * s * s) return false;
  for (const auto& column : b_cells_from_matrix(b, s, lambda))
    for (const auto& cell : column)
      if (!is_permutation_of_range(cell, lambda)) return false;
  return true;
}

CoupledDesign construction2(const OrthogonalArray& a1, int lambda, int p, PermutationPlan plan) {
  if (lambda < 1) throw Error(ErrorCode::InvalidArgument, "lambda must be at least 1");
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "p must be nonnegative");
  std::vector<std::string> warnings;
  const auto a = prepare_block_array(a1, warnings, 0);
  const int s = exact_sqrt(a.matrix.rows());
  const int block = s * s;
  const int n = lambda * block;

  if (plan.b_cells.size() != static_cast<std::size_t>(p))
    throw Error(ErrorCode::DimensionMismatch, "b_cells must hold p columns of s^2 cells");
  for (const auto& column : plan.b_cells) {
    if (column.size() != static_cast<std::size_t>(block))
      throw Error(ErrorCode::DimensionMismatch, "each b_cells column needs s^2 cells");
    for (const auto& cell : column)
      if (!is_permutation_of_range(cell, lambda))
        throw Error(ErrorCode::CellNotPermutation, "a B cell is not a permutation of {0..lambda-1}");
  }
  if (plan.w.size() != static_cast<std::size_t>(p))
    throw Error(ErrorCode::DimensionMismatch, "w must hold one permutation per column");
  for (const auto& row : plan.w) require_perms(row, 1, s, "w");

  IntegerMatrix b(n, p);
  IntegerMatrix c(n, p);
  for (int k = 0; k < p; ++k) {
    const auto& cells = plan.b_cells[static_cast<std::size_t>(k)];
    const auto& wk = plan.w[static_cast<std::size_t>(k)].front();
    for (int r = 0; r < n; ++r) {
      const int i = r % block;
      b(r, k) = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(r / block)];
      c(r, k) = wk[static_cast<std::size_t>(i / s)];
    }
  }
  const auto one = a.matrix.drop_last_column();
  return assemble(vstack(std::vector<IntegerMatrix>(static_cast<std::size_t>(lambda), one)), s, std::move(b),
                  std::move(c), std::move(plan), std::move(warnings));
}

CoupledDesign construction3(const OrthogonalArray& a, const IntegerMatrix& b, const std::vector<int>& select,
                            PermutationPlan plan) {
  const int n = a.matrix.rows();
  const int s = a.uniform_levels();
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "A must have a common level count s >= 2");
  if (n % (s * s) != 0) throw Error(ErrorCode::RunSizeNotDivisible, "run size of A is not divisible by s^2");
  if (b.cols() > 0 && b.rows() != n) throw Error(ErrorCode::DimensionMismatch, "A and B have different run counts");
  const int q = static_cast<int>(select.size());
  if (a.matrix.cols() != q + 1)
    throw Error(ErrorCode::DimensionMismatch, "A must have exactly q+1 columns for q selected columns");
  const std::set<int> chosen(select.begin(), select.end());
  if (static_cast<int>(chosen.size()) != q || (q > 0 && (*chosen.begin() < 0 || *chosen.rbegin() > q)))
    throw Error(ErrorCode::InvalidArgument, "selection must be q distinct column indices of A");
  int a_star = 0;
  while (chosen.count(a_star)) ++a_star;

  if (a.matrix.cols() >= 2 && !is_orthogonal_array(a.matrix, s, 2))
    throw Error(ErrorCode::PreconditionFailed, "A is not an OA(n, q+1, s, 2)");
  const int p = b.cols();
  const int lb = n / (s * s);
  const auto acols = a.matrix.columns();
  const auto bcols = b.columns();
  for (int k = 0; k < p; ++k) {
    const auto& bk = bcols[static_cast<std::size_t>(k)];
    if (std::any_of(bk.begin(), bk.end(), [&](int v) { return v >= lb; }) ||
        !is_balanced({std::span<const int>(bk)}, {lb}))
      throw Error(ErrorCode::PreconditionFailed,
                  "B column " + std::to_string(k + 1) + " is not an OA(n, 1, n/s^2, 1) column");
  }
  for (int i = 0; i < a.matrix.cols(); ++i)
    for (int j = i + 1; j < a.matrix.cols(); ++j)
      for (int k = 0; k < p; ++k)
        if (!is_balanced({std::span<const int>(acols[static_cast<std::size_t>(i)]),
                          std::span<const int>(acols[static_cast<std::size_t>(j)]),
                          std::span<const int>(bcols[static_cast<std::size_t>(k)])},
                         {s, s, lb}))
          throw Error(ErrorCode::PreconditionFailed, "(a" + std::to_string(i + 1) + ", a" + std::to_string(j + 1) +
                                                         ", b" + std::to_string(k + 1) +
                                                         ") is not an OA(n, 3, s^2 (n/s^2), 3)");

  require_perms(plan.c_perms, static_cast<std::size_t>(p), s, "c_perms");

  // Rows with equal (b_1, a*) carry every level of each selected column once,
  // so sorting on that pair puts D1 into consecutive CROA blocks.
  IntegerMatrix a_rows = a.matrix;
  IntegerMatrix b_rows = b.cols() == 0 ? IntegerMatrix(n, 0) : b;
  std::vector<std::string> warnings;
  if (p > 0 && !check_croa_partition(a.matrix.select_columns(select), s)) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const auto& b0 = bcols.front();
    const auto& st = acols[static_cast<std::size_t>(a_star)];
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      const auto ux = static_cast<std::size_t>(x);
      const auto uy = static_cast<std::size_t>(y);
      return std::pair(b0[ux], st[ux]) < std::pair(b0[uy], st[uy]);
    });
    a_rows = a_rows.select_rows(order);
    b_rows = b_rows.select_rows(order);
    warnings.push_back("rows reordered by (b1, a*) so D1 splits into consecutive CROA blocks");
  }

  IntegerMatrix c(n, p);
  const auto star = a_rows.column(a_star);
  for (int k = 0; k < p; ++k)
    for (int r = 0; r < n; ++r)
      c(r, k) = plan.c_perms[static_cast<std::size_t>(k)][static_cast<std::size_t>(star[static_cast<std::size_t>(r)])];

  return assemble(a_rows.select_columns(select), s, std::move(b_rows), std::move(c), std::move(plan),
                  std::move(warnings));
}

Case1Inputs case1_inputs(const OrthogonalArray& g, int q, Rng* rng) {
  const int m = g.matrix.cols();
  const int s = g.uniform_levels();
  if (s < 2 || g.matrix.rows() != s * s * s || m < 3 || !is_orthogonal_array(g.matrix, s, 3))
    throw Error(ErrorCode::NotStrength3, "G is not an OA(s^3, m, s, 3)");
  if (q < 1 || q + 1 >= m)
    throw Error(ErrorCode::InvalidArgument, "case 1 needs 1 <= q and q + 1 < m");
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  if (rng) rng->shuffle(std::span<int>(order));
  Case1Inputs out;
  out.a_columns.assign(order.begin(), order.begin() + q + 1);
  out.b_columns.assign(order.begin() + q + 1, order.end());
  if (rng) {
    std::sort(out.a_columns.begin(), out.a_columns.end());
    std::sort(out.b_columns.begin(), out.b_columns.end());
  }
  out.a = OrthogonalArray{g.matrix.select_columns(out.a_columns), std::vector<int>(static_cast<std::size_t>(q + 1), s),
                          std::min(3, q + 1)};
  out.b = g.matrix.select_columns(out.b_columns);
  return out;
}

IntegerMatrix circulant_weights(int s, int u) {
  const int w = u - 2;
  IntegerMatrix t(w, w);
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) t(i, j) = ipow(s, (u - 3) - (((i - j) % w) + w) % w);
  return t;
}

Case2Inputs case2_inputs(const GaloisField& field, int u) {
  if (u < 3) throw Error(ErrorCode::UTooSmall, "case 2 needs u >= 3");
  const int s = field.order();
  const int pos_xi1 = u - 2;  // 0-based digit positions, most significant first
  const int pos_xi2 = u - 1;
  auto column = [&](std::initializer_list<std::pair<int, int>> terms) {
    LinearColumnSpec spec{std::vector<int>(static_cast<std::size_t>(u), 0)};
    for (const auto& [pos, mu] : terms) spec.coefficients[static_cast<std::size_t>(pos)] = mu;
    return linear_column(field, u, spec);
  };

  std::vector<Column> a_cols;
  for (int mu = 0; mu < s; ++mu) a_cols.push_back(column({{pos_xi1, 1}, {pos_xi2, mu}}));
  a_cols.push_back(column({{pos_xi2, 1}}));

  // r[v][f]
  std::vector<std::vector<Column>> r(static_cast<std::size_t>(u - 2));
  for (int v = 0; v < u - 2; ++v) {
    auto& rv = r[static_cast<std::size_t>(v)];
    for (int mu2 = 0; mu2 < s; ++mu2)
      for (int mu = 1; mu < s; ++mu) rv.push_back(column({{pos_xi1, 1}, {pos_xi2, mu2}, {v, mu}}));
    for (int mu = 1; mu < s; ++mu) rv.push_back(column({{pos_xi2, 1}, {v, mu}}));
    rv.push_back(column({{v, 1}}));
  }

  const auto t = circulant_weights(s, u);
  const int n = static_cast<int>(a_cols.front().size());
  std::vector<Column> b_cols;
  for (int f = 0; f < s * s; ++f)
    for (int j = 0; j < u - 2; ++j) {
      Column col(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < u - 2; ++i) {
        const auto& rif = r[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)];
        for (int row = 0; row < n; ++row) col[static_cast<std::size_t>(row)] += rif[static_cast<std::size_t>(row)] * t(i, j);
      }
      b_cols.push_back(std::move(col));
    }

  Case2Inputs out;
  out.a = OrthogonalArray{IntegerMatrix::from_columns(a_cols), std::vector<int>(static_cast<std::size_t>(s + 1), s), 2};
  out.b = IntegerMatrix::from_columns(b_cols);
  out.u = u;
  return out;
}

std::vector<int> case2_default_select(int s, int q) {
  if (q < 1 || q > s) throw Error(ErrorCode::InfeasibleParameters, "case 2 supports 1 <= q <= s");
  std::vector<int> sel(static_cast<std::size_t>(q));
  std::iota(sel.begin(), sel.end(), 1);
  return sel;
}

int family_levels(const Family& family) {
  return std::visit(
      [](const auto& f) -> int {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Construction1Family>) {
          return exact_sqrt(f.arrays.front().matrix.rows());
        } else if constexpr (std::is_same_v<T, Construction2Family>) {
          return exact_sqrt(f.a1.matrix.rows());
        } else {
          return f.a.uniform_levels();
        }
      },
      family);
}

int family_runs(const Family& family) {
  return std::visit(
      [](const auto& f) -> int {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Construction1Family>) {
          return static_cast<int>(f.arrays.size()) * f.arrays.front().matrix.rows();
        } else if constexpr (std::is_same_v<T, Construction2Family>) {
          return f.lambda * f.a1.matrix.rows();
        } else {
          return f.a.matrix.rows();
        }
      },
      family);
}

int family_quantitative(const Family& family) {
  return std::visit(
      [](const auto& f) -> int {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Construction3Family>) {
          return f.b.cols();
        } else {
          return f.p;
        }
      },
      family);
}

PermutationPlan sample_plan(const Family& family, Rng& rng) {
  const int s = family_levels(family);
  const int n = family_runs(family);
  const int p = family_quantitative(family);
  PermutationPlan plan;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Construction1Family>) {
          const int lambda = static_cast<int>(f.arrays.size());
          for (int k = 0; k < p; ++k) plan.v.push_back(rng.permutation(lambda));
          for (int k = 0; k < p; ++k) {
            std::vector<Permutation> row;
            for (int j = 0; j < lambda; ++j) row.push_back(rng.permutation(s));
            plan.w.push_back(std::move(row));
          }
        } else if constexpr (std::is_same_v<T, Construction2Family>) {
          for (int k = 0; k < p; ++k) {
            std::vector<Permutation> cells;
            for (int i = 0; i < s * s; ++i) cells.push_back(rng.permutation(f.lambda));
            plan.b_cells.push_back(std::move(cells));
          }
          for (int k = 0; k < p; ++k) plan.w.push_back({rng.permutation(s)});
        } else {
          for (int k = 0; k < p; ++k) plan.c_perms.push_back(rng.permutation(s));
        }
      },
      family);
  for (int k = 0; k < p; ++k) {
    std::vector<Permutation> col;
    for (int level = 0; level < n / s; ++level) col.push_back(rng.permutation(s));
    plan.expand.push_back(std::move(col));
  }
  return plan;
}

CoupledDesign build(const Family& family, PermutationPlan plan) {
  return std::visit(
      [&](const auto& f) -> CoupledDesign {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Construction1Family>) {
          return construction1(f.arrays, f.p, std::move(plan));
        } else if constexpr (std::is_same_v<T, Construction2Family>) {
          return construction2(f.a1, f.lambda, f.p, std::move(plan));
        } else {
          return construction3(f.a, f.b, f.select, std::move(plan));
        }
      },
      family);
}

std::vector<Permutation*> plan_permutations(PermutationPlan& plan) {
  std::vector<Permutation*> out;
  auto take = [&](Permutation& p) {
    if (p.size() >= 2) out.push_back(&p);
  };
  for (auto& p : plan.v) take(p);
  for (auto& row : plan.w)
    for (auto& p : row) take(p);
  for (auto& col : plan.b_cells)
    for (auto& p : col) take(p);
  for (auto& p : plan.c_perms) take(p);
  for (auto& col : plan.expand)
    for (auto& p : col) take(p);
  return out;
}

}  // namespace dcd
