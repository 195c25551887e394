#include "dcd/arrays.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>

#include "dcd/combinations.hpp"
#include "dcd/error.hpp"

namespace dcd {

bool is_balanced(std::span<const std::span<const int>> columns, std::span<const int> levels) {
  if (columns.size() != levels.size()) throw Error(ErrorCode::DimensionMismatch, "one level count per column");
  if (columns.empty()) return true;
  const std::size_t n = columns.front().size();
  std::uint64_t cells = 1;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n) throw Error(ErrorCode::DimensionMismatch, "columns of unequal length");
    if (levels[j] < 1) throw Error(ErrorCode::InvalidArgument, "level count must be positive");
    cells *= static_cast<std::uint64_t>(levels[j]);
    if (cells > n) {
      // Still range-check before giving up so bad input is reported.
      for (std::size_t c = 0; c < columns.size(); ++c)
        for (int v : columns[c])
          if (v < 0 || v >= levels[c]) throw Error(ErrorCode::LevelOutOfRange, "entry outside level range");
      return false;
    }
  }
  if (n % cells != 0) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (int v : columns[c])
        if (v < 0 || v >= levels[c]) throw Error(ErrorCode::LevelOutOfRange, "entry outside level range");
    return false;
  }
  std::vector<std::uint32_t> counts(cells, 0);
  for (std::size_t r = 0; r < n; ++r) {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const int v = columns[j][r];
      if (v < 0 || v >= levels[j]) throw Error(ErrorCode::LevelOutOfRange, "entry outside level range");
      key = key * static_cast<std::uint64_t>(levels[j]) + static_cast<std::uint64_t>(v);
    }
    ++counts[key];
  }
  const auto expected = static_cast<std::uint32_t>(n / cells);
  return std::all_of(counts.begin(), counts.end(), [&](std::uint32_t c) { return c == expected; });
}

bool is_balanced(std::initializer_list<std::span<const int>> columns, std::initializer_list<int> levels) {
  return is_balanced(std::span<const std::span<const int>>(columns.begin(), columns.size()),
                     std::span<const int>(levels.begin(), levels.size()));
}

bool is_orthogonal_array(const IntegerMatrix& m, std::span<const int> levels, int t) {
  if (static_cast<int>(levels.size()) != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "one level count per column");
  if (t < 0 || t > m.cols()) throw Error(ErrorCode::InvalidArgument, "strength must lie in [0, columns]");
  const auto cols = m.columns();
  // Range-check every column even when t is small.
  for (int c = 0; c < m.cols(); ++c)
    for (int v : cols[static_cast<std::size_t>(c)])
      if (v < 0 || v >= levels[static_cast<std::size_t>(c)])
        throw Error(ErrorCode::LevelOutOfRange,
                    "entry " + std::to_string(v) + " in column " + std::to_string(c) + " outside level range");
  bool ok = true;
  std::vector<std::span<const int>> views(static_cast<std::size_t>(t));
  std::vector<int> lv(static_cast<std::size_t>(t));
  for_each_subset(m.cols(), t, [&](const std::vector<int>& subset) {
    for (std::size_t j = 0; j < subset.size(); ++j) {
      views[j] = cols[static_cast<std::size_t>(subset[j])];
      lv[j] = levels[static_cast<std::size_t>(subset[j])];
    }
    ok = is_balanced(views, lv);
    return ok;
  });
  return ok;
}

bool is_orthogonal_array(const IntegerMatrix& m, int s, int t) {
  const std::vector<int> levels(static_cast<std::size_t>(m.cols()), s);
  return is_orthogonal_array(m, levels, t);
}

OrthogonalArray OrthogonalArray::verified(IntegerMatrix m, std::vector<int> levels, int t) {
  if (!is_orthogonal_array(m, levels, t))
    throw Error(ErrorCode::StrengthMismatch, "array does not have strength " + std::to_string(t));
  return OrthogonalArray{std::move(m), std::move(levels), t};
}

OrthogonalArray OrthogonalArray::verified(IntegerMatrix m, int s, int t) {
  std::vector<int> levels(static_cast<std::size_t>(m.cols()), s);
  return verified(std::move(m), std::move(levels), t);
}

int OrthogonalArray::uniform_levels() const {
  if (levels.empty()) return 0;
  return std::all_of(levels.begin(), levels.end(), [&](int l) { return l == levels.front(); }) ? levels.front() : 0;
}

bool is_latin_hypercube(const IntegerMatrix& m) {
  for (int c = 0; c < m.cols(); ++c) {
    const auto col = m.column(c);
    if (!is_permutation_of_range(col, m.rows())) return false;
  }
  return true;
}

IntegerMatrix level_collapse(const IntegerMatrix& m, int s) {
  if (s < 1) throw Error(ErrorCode::InvalidArgument, "collapse factor must be positive");
  IntegerMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c) / s;
  return out;
}

ColumnBlocks column_blocks(std::span<const int> column) {
  const int n = static_cast<int>(column.size());
  if (n == 0) return {0, 0};
  const int levels = *std::max_element(column.begin(), column.end()) + 1;
  if (n % levels != 0) throw Error(ErrorCode::UnbalancedColumn, "run size not divisible by level count");
  std::vector<int> counts(static_cast<std::size_t>(levels), 0);
  for (int v : column) {
    if (v < 0) throw Error(ErrorCode::LevelOutOfRange, "negative level");
    ++counts[static_cast<std::size_t>(v)];
  }
  const int block = n / levels;
  for (int c : counts)
    if (c != block) throw Error(ErrorCode::UnbalancedColumn, "levels occur unequally often");
  return {levels, block};
}

Column expand_column(std::span<const int> column, std::span<const Permutation> perms) {
  const auto [levels, block] = column_blocks(column);
  if (static_cast<int>(perms.size()) != levels)
    throw Error(ErrorCode::DimensionMismatch, "need one permutation per level");
  for (const auto& p : perms)
    if (!is_permutation_of_range(p, block))
      throw Error(ErrorCode::InvalidArgument, "expansion permutation is not a bijection on the block");
  std::vector<int> seen(static_cast<std::size_t>(levels), 0);
  Column out(column.size());
  for (std::size_t r = 0; r < column.size(); ++r) {
    const int level = column[r];
    const int k = seen[static_cast<std::size_t>(level)]++;
    out[r] = level * block + perms[static_cast<std::size_t>(level)][static_cast<std::size_t>(k)];
  }
  return out;
}

std::vector<Permutation> sample_expansion(std::span<const int> column, Rng& rng) {
  const auto [levels, block] = column_blocks(column);
  std::vector<Permutation> perms;
  perms.reserve(static_cast<std::size_t>(levels));
  for (int i = 0; i < levels; ++i) perms.push_back(rng.permutation(block));
  return perms;
}

IntegerMatrix level_expand(const IntegerMatrix& m, Rng& rng) {
  IntegerMatrix out(m.rows(), m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    const auto col = m.column(c);
    const auto perms = sample_expansion(col, rng);
    out.set_column(c, expand_column(col, perms));
  }
  return out;
}

ContinuousDesign to_continuous(const IntegerMatrix& lh, Rng& rng) {
  if (!is_latin_hypercube(lh)) throw Error(ErrorCode::InvalidArgument, "input is not a Latin hypercube");
  ContinuousDesign out{lh.rows(), lh.cols(), {}};
  out.values.reserve(static_cast<std::size_t>(lh.rows()) * static_cast<std::size_t>(lh.cols()));
  const double n = lh.rows();
  for (int r = 0; r < lh.rows(); ++r)
    for (int c = 0; c < lh.cols(); ++c) out.values.push_back((lh(r, c) + rng.open01()) / n);
  return out;
}

namespace {

bool block_is_resolved(const IntegerMatrix& m, std::span<const int> rows, int s) {
  // Every level once per column among the chosen rows.
  for (int c = 0; c < m.cols(); ++c) {
    std::uint64_t mask = 0;
    for (int r : rows) {
      const int v = m(r, c);
      if (v < 0 || v >= s) return false;
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (mask & bit) return false;
      mask |= bit;
    }
  }
  return true;
}

}  // namespace

bool is_croa(const IntegerMatrix& m, int s) {
  if (s < 1 || m.rows() % s != 0) return false;
  if (!is_orthogonal_array(m, s, std::min(2, m.cols()))) return false;
  std::vector<int> rows(static_cast<std::size_t>(s));
  for (int b = 0; b < m.rows() / s; ++b) {
    for (int i = 0; i < s; ++i) rows[static_cast<std::size_t>(i)] = b * s + i;
    if (!block_is_resolved(m, rows, s)) return false;
  }
  return true;
}

bool has_croa_partition_exhaustive(const IntegerMatrix& m, int s) {
  const int n = m.rows();
  if (n > 16) throw Error(ErrorCode::TooLarge, "exhaustive CROA search is limited to 16 rows");
  if (s < 1 || n % s != 0 || s > 64) return false;
  if (!is_orthogonal_array(m, s, std::min(2, m.cols()))) return false;

  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<int> group;
  // Groups are anchored at the smallest unused row, so each partition is visited once.
  std::function<bool(int)> fill_group;
  std::function<bool()> next_group = [&]() -> bool {
    int anchor = 0;
    while (anchor < n && used[static_cast<std::size_t>(anchor)]) ++anchor;
    if (anchor == n) return true;
    used[static_cast<std::size_t>(anchor)] = 1;
    group.assign(1, anchor);
    const bool ok = fill_group(anchor + 1);
    used[static_cast<std::size_t>(anchor)] = 0;
    return ok;
  };
  fill_group = [&](int from) -> bool {
    if (static_cast<int>(group.size()) == s) {
      if (!block_is_resolved(m, group, s)) return false;
      const auto saved = group;
      if (next_group()) return true;
      group = saved;
      return false;
    }
    for (int r = from; r < n; ++r) {
      if (used[static_cast<std::size_t>(r)]) continue;
      used[static_cast<std::size_t>(r)] = 1;
      group.push_back(r);
      if (fill_group(r + 1)) return true;
      group.pop_back();
      used[static_cast<std::size_t>(r)] = 0;
    }
    return false;
  };
  return next_group();
}

bool grid_stratification(std::span<const int> x, std::span<const int> y, int lx, int ly, int gx, int gy) {
  if (gx < 1 || gy < 1 || lx < 1 || ly < 1 || lx % gx != 0 || ly % gy != 0)
    throw Error(ErrorCode::NonDivisibleGrid, "grid " + std::to_string(gx) + "x" + std::to_string(gy) +
                                                 " does not divide levels " + std::to_string(lx) + "x" +
                                                 std::to_string(ly));
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "columns of unequal length");
  const int wx = lx / gx;
  const int wy = ly / gy;
  Column cx(x.size());
  Column cy(y.size());
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (x[r] < 0 || x[r] >= lx || y[r] < 0 || y[r] >= ly)
      throw Error(ErrorCode::LevelOutOfRange, "entry outside level range");
    cx[r] = x[r] / wx;
    cy[r] = y[r] / wy;
  }
  return is_balanced({std::span<const int>(cx), std::span<const int>(cy)}, {gx, gy});
}

}  // namespace dcd
