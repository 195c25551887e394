#include "dcd/matrix.hpp"

#include <algorithm>
#include <ostream>

#include "dcd/error.hpp"

namespace dcd {

IntegerMatrix::IntegerMatrix(int rows, int cols, int fill) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw Error(ErrorCode::InvalidArgument, "negative matrix dimension");
  if (fill < 0) throw Error(ErrorCode::InvalidArgument, "matrix entries must be nonnegative");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  const int m = n == 0 ? 0 : static_cast<int>(rows.front().size());
  IntegerMatrix out(n, m);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != m)
      throw Error(ErrorCode::DimensionMismatch, "ragged rows");
    for (int c = 0; c < m; ++c) {
      const int v = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (v < 0) throw Error(ErrorCode::LevelOutOfRange, "negative entry");
      out(r, c) = v;
    }
  }
  return out;
}

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<int>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<Column>& cols) {
  const int m = static_cast<int>(cols.size());
  const int n = m == 0 ? 0 : static_cast<int>(cols.front().size());
  IntegerMatrix out(n, m);
  for (int c = 0; c < m; ++c) {
    if (static_cast<int>(cols[static_cast<std::size_t>(c)].size()) != n)
      throw Error(ErrorCode::DimensionMismatch, "columns of unequal length");
    out.set_column(c, cols[static_cast<std::size_t>(c)]);
  }
  return out;
}

IntegerMatrix IntegerMatrix::from_transposed(std::initializer_list<std::initializer_list<int>> cols) {
  std::vector<Column> copy;
  for (const auto& c : cols) copy.emplace_back(c);
  return from_columns(copy);
}

Column IntegerMatrix::column(int c) const {
  Column out(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] = (*this)(r, c);
  return out;
}

std::vector<Column> IntegerMatrix::columns() const {
  std::vector<Column> out;
  out.reserve(static_cast<std::size_t>(cols_));
  for (int c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

void IntegerMatrix::set_column(int c, std::span<const int> values) {
  if (static_cast<int>(values.size()) != rows_)
    throw Error(ErrorCode::DimensionMismatch, "column length does not match row count");
  for (int r = 0; r < rows_; ++r) {
    const int v = values[static_cast<std::size_t>(r)];
    if (v < 0) throw Error(ErrorCode::LevelOutOfRange, "negative entry");
    (*this)(r, c) = v;
  }
}

std::vector<int> IntegerMatrix::level_counts() const {
  std::vector<int> out(static_cast<std::size_t>(cols_), 0);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      out[static_cast<std::size_t>(c)] = std::max(out[static_cast<std::size_t>(c)], (*this)(r, c) + 1);
  return out;
}

IntegerMatrix IntegerMatrix::select_columns(std::span<const int> indices) const {
  IntegerMatrix out(rows_, static_cast<int>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    const int c = indices[j];
    if (c < 0 || c >= cols_) throw Error(ErrorCode::InvalidArgument, "column index out of range");
    for (int r = 0; r < rows_; ++r) out(r, static_cast<int>(j)) = (*this)(r, c);
  }
  return out;
}

IntegerMatrix IntegerMatrix::select_rows(std::span<const int> indices) const {
  IntegerMatrix out(static_cast<int>(indices.size()), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const int r = indices[i];
    if (r < 0 || r >= rows_) throw Error(ErrorCode::InvalidArgument, "row index out of range");
    for (int c = 0; c < cols_; ++c) out(static_cast<int>(i), c) = (*this)(r, c);
  }
  return out;
}

IntegerMatrix IntegerMatrix::row_block(int first, int count) const {
  if (first < 0 || count < 0 || first + count > rows_)
    throw Error(ErrorCode::InvalidArgument, "row block out of range");
  IntegerMatrix out(count, cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(index(first, 0)),
              static_cast<std::size_t>(count) * static_cast<std::size_t>(cols_), out.data_.begin());
  return out;
}

IntegerMatrix IntegerMatrix::drop_last_column() const {
  if (cols_ == 0) throw Error(ErrorCode::InvalidArgument, "no column to drop");
  std::vector<int> keep(static_cast<std::size_t>(cols_ - 1));
  for (int c = 0; c + 1 < cols_; ++c) keep[static_cast<std::size_t>(c)] = c;
  return select_columns(keep);
}

IntegerMatrix IntegerMatrix::transposed() const {
  IntegerMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

IntegerMatrix vstack(const std::vector<IntegerMatrix>& blocks) {
  if (blocks.empty()) return {};
  const int m = blocks.front().cols();
  int n = 0;
  for (const auto& b : blocks) {
    if (b.cols() != m) throw Error(ErrorCode::DimensionMismatch, "vstack column counts differ");
    n += b.rows();
  }
  IntegerMatrix out(n, m);
  int r0 = 0;
  for (const auto& b : blocks) {
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < m; ++c) out(r0 + r, c) = b(r, c);
    r0 += b.rows();
  }
  return out;
}

IntegerMatrix hstack(const IntegerMatrix& left, const IntegerMatrix& right) {
  if (left.cols() == 0) return right;
  if (right.cols() == 0) return left;
  if (left.rows() != right.rows()) throw Error(ErrorCode::DimensionMismatch, "hstack row counts differ");
  IntegerMatrix out(left.rows(), left.cols() + right.cols());
  for (int r = 0; r < left.rows(); ++r) {
    for (int c = 0; c < left.cols(); ++c) out(r, c) = left(r, c);
    for (int c = 0; c < right.cols(); ++c) out(r, left.cols() + c) = right(r, c);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << '\n';
  }
  return os;
}

}  // namespace dcd
