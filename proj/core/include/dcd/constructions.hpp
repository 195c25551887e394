#pragma once

#include <variant>
#include <vector>

#include "dcd/arrays.hpp"
#include "dcd/design.hpp"
#include "dcd/gf.hpp"

namespace dcd {

// Every construction returns a design that has already passed check_dcd;
// a failing output raises PreconditionFailed.

/// Stacks lambda OA(s^2, q+1, s, 2)'s into D1 and builds
/// b_k = v_k (x) 1_{s^2}, c_k = stack_j (w_kj (x) 1_s).
/// Arrays whose last column is balanced but not in block form are
/// normalized, with a note in `warnings`.
CoupledDesign construction1(const std::vector<OrthogonalArray>& arrays, int p, PermutationPlan plan);

/// Stacks lambda copies of one OA(s^2, q+1, s, 2). B comes from per-cell
/// permutations of {0..lambda-1}; c_k = 1_lambda (x) (w_k (x) 1_s).
CoupledDesign construction2(const OrthogonalArray& a1, int lambda, int p, PermutationPlan plan);

/// D1 = the selected q columns of A, C = level permutations of the remaining
/// column a*. Throws PreconditionFailed naming (i, j, k) unless every
/// (a_i, a_j, b_k) is a full factorial on s x s x n/s^2 levels. If the
/// selected columns are not in consecutive CROA blocks, rows of A and B are
/// stably sorted by (b_1, a*) first.
CoupledDesign construction3(const OrthogonalArray& a, const IntegerMatrix& b, const std::vector<int>& select,
                            PermutationPlan plan);

/// The b_{i,k} cells of construction 2: cells[k][i][l] = B(i + l s^2, k).
std::vector<std::vector<Permutation>> b_cells_from_matrix(const IntegerMatrix& b, int s, int lambda);

/// True iff every cell {b_{i,k}, b_{i+s^2,k}, ...} is a permutation of {0..lambda-1}.
bool check_cell_permutations(const IntegerMatrix& b, int s, int lambda);

struct Case1Inputs {
  OrthogonalArray a;  // q + 1 columns of G
  IntegerMatrix b;    // the other m - q - 1 columns
  std::vector<int> a_columns;
  std::vector<int> b_columns;
};

/// Splits the columns of an OA(s^3, m, s, 3): the first q+1 go to A unless
/// `rng` is given, in which case the split is a random shuffle.
Case1Inputs case1_inputs(const OrthogonalArray& g, int q, Rng* rng = nullptr);

struct Case2Inputs {
  OrthogonalArray a;  // OA(s^u, s+1, s, 2)
  IntegerMatrix b;    // OA(s^u, (u-2) s^2, s^{u-2}, 1), blocks B_1..B_{s^2} of u-2 columns
  int u = 0;
};

/// Regular-design inputs over GF(s), u >= 3.
///
/// The two generators of A sit on the two least significant base-s digits of
/// the run index (xi_1 on the second-last, xi_2 on the last) and the
/// generator of R_v on digit v. A = (xi_1 + mu xi_2 for mu = 0..s-1, xi_2);
/// R_v lists xi_1 + mu_2 xi_2 + mu xi_{v+2} (mu_2 outer, mu != 0 inner), then
/// xi_2 + mu xi_{v+2}, then xi_{v+2}. B_f = (r_{1,f}, ..., r_{u-2,f}) T with
/// T the circulant of powers of s, in integer arithmetic.
Case2Inputs case2_inputs(const GaloisField& field, int u);

/// Column selection used with case 2 inputs: all but a_1 = xi_1.
std::vector<int> case2_default_select(int s, int q);

/// The (u-2) x (u-2) weight matrix whose first column is (s^{u-3}, ..., s, 1)
/// and whose later columns are cyclic downward shifts.
IntegerMatrix circulant_weights(int s, int u);

// Construction families, for sampling and searching plans.

struct Construction1Family {
  std::vector<OrthogonalArray> arrays;
  int p = 0;
};

struct Construction2Family {
  OrthogonalArray a1;
  int lambda = 1;
  int p = 0;
};

struct Construction3Family {
  OrthogonalArray a;
  IntegerMatrix b;
  std::vector<int> select;
};

using Family = std::variant<Construction1Family, Construction2Family, Construction3Family>;

/// Run size and level count of the designs a family produces.
int family_runs(const Family& family);
int family_levels(const Family& family);
int family_quantitative(const Family& family);

/// Draws every permutation the family needs, expansion included.
PermutationPlan sample_plan(const Family& family, Rng& rng);

CoupledDesign build(const Family& family, PermutationPlan plan);

/// Pointers to every permutation stored in a plan (hill-climbing moves).
std::vector<Permutation*> plan_permutations(PermutationPlan& plan);

}  // namespace dcd
