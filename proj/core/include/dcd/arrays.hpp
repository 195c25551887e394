#pragma once

#include <span>
#include <vector>

#include "dcd/matrix.hpp"
#include "dcd/rng.hpp"

namespace dcd {

/// Every combination of levels over `columns` occurs equally often.
/// Entries outside [0, levels[j]) raise LevelOutOfRange. Zero columns is
/// trivially balanced.
bool is_balanced(std::span<const std::span<const int>> columns, std::span<const int> levels);
bool is_balanced(std::initializer_list<std::span<const int>> columns, std::initializer_list<int> levels);

/// True iff every t-column projection of `m` is balanced.
bool is_orthogonal_array(const IntegerMatrix& m, std::span<const int> levels, int t);
bool is_orthogonal_array(const IntegerMatrix& m, int s, int t);

/// OA with its per-column level counts and a strength that has been checked.
struct OrthogonalArray {
  IntegerMatrix matrix;
  std::vector<int> levels;
  int strength = 0;

  /// Throws StrengthMismatch unless `m` really has strength t.
  static OrthogonalArray verified(IntegerMatrix m, std::vector<int> levels, int t);
  static OrthogonalArray verified(IntegerMatrix m, int s, int t);

  int runs() const { return matrix.rows(); }
  int factors() const { return matrix.cols(); }
  /// Common level count, or 0 when the array is mixed-level.
  int uniform_levels() const;
};

bool is_latin_hypercube(const IntegerMatrix& m);

/// Floor-divides every entry by s.
IntegerMatrix level_collapse(const IntegerMatrix& m, int s);

/// Level count L of a column and its block size n/L; throws UnbalancedColumn
/// unless every level 0..L-1 occurs exactly n/L times.
struct ColumnBlocks {
  int levels = 0;
  int block = 0;
};
ColumnBlocks column_blocks(std::span<const int> column);

/// Level expansion of one column with the given per-level permutations:
/// the k-th occurrence (in row order) of level i becomes i*b + perms[i][k].
Column expand_column(std::span<const int> column, std::span<const Permutation> perms);

/// Random per-level permutations for `column`, drawn level by level.
std::vector<Permutation> sample_expansion(std::span<const int> column, Rng& rng);

/// Level expansion of every column. The result is a Latin hypercube and
/// collapsing column j by its block size returns column j of `m`.
IntegerMatrix level_expand(const IntegerMatrix& m, Rng& rng);

struct ContinuousDesign {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major, each in [0, 1)

  double operator()(int r, int c) const {
    return values[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
  }
};

/// d = (l + u) / n with u ~ U(0, 1), one draw per entry in row-major order.
ContinuousDesign to_continuous(const IntegerMatrix& lh, Rng& rng);

/// CROA(n, m, s, 2): an OA whose consecutive s-row blocks are each OA(s, m, s, 1).
bool is_croa(const IntegerMatrix& m, int s);

/// Row partition search for the CROA property without the consecutive
/// restriction. Exponential; limited to n <= 16.
bool has_croa_partition_exhaustive(const IntegerMatrix& m, int s);

/// Collapse x to gx cells and y to gy cells; true iff every cell pair holds
/// n / (gx * gy) points.
bool grid_stratification(std::span<const int> x, std::span<const int> y, int lx, int ly, int gx, int gy);

}  // namespace dcd
