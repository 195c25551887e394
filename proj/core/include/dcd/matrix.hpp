#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace dcd {

using Column = std::vector<int>;

/// Dense n x m matrix of nonnegative integer levels, stored row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols, int fill = 0);

  static IntegerMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
  static IntegerMatrix from_columns(const std::vector<Column>& cols);
  /// Builds from columns given as rows, for arrays written transposed.
  static IntegerMatrix from_transposed(std::initializer_list<std::initializer_list<int>> cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  int& operator()(int r, int c) { return data_[index(r, c)]; }
  int operator()(int r, int c) const { return data_[index(r, c)]; }

  std::span<const int> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_),
            static_cast<std::size_t>(cols_)};
  }
  Column column(int c) const;
  std::vector<Column> columns() const;
  void set_column(int c, std::span<const int> values);

  /// Largest entry plus one, per column (0 for an empty column).
  std::vector<int> level_counts() const;

  IntegerMatrix select_columns(std::span<const int> indices) const;
  IntegerMatrix select_rows(std::span<const int> indices) const;
  IntegerMatrix row_block(int first, int count) const;
  IntegerMatrix drop_last_column() const;
  IntegerMatrix transposed() const;

  const std::vector<int>& data() const noexcept { return data_; }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

IntegerMatrix vstack(const std::vector<IntegerMatrix>& blocks);
IntegerMatrix hstack(const IntegerMatrix& left, const IntegerMatrix& right);

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

}  // namespace dcd
