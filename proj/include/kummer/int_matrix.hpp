#pragma once

#include "kummer/fp_matrix.hpp"
#include "kummer/integer.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace kummer::linalg {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  /// Literal rows, e.g. IntMatrix{{0, -1}, {1, -1}}. All rows must have equal length.
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> diag);

  /// Nested arrays of integers; entries may also be decimal strings for
  /// values that do not fit a JSON number.
  static IntMatrix from_json(const nlohmann::json& j);
  static IntMatrix parse(std::string_view text);
  /// Entries that fit in int64 are emitted as numbers, larger ones as strings.
  nlohmann::json to_json() const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Integer> entries() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;

  IntMatrix transpose() const;
  IntMatrix column(std::size_t c) const;
  IntMatrix columns(std::size_t first, std::size_t count) const;
  IntMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

  /// Reduction mod p.
  FpMatrix mod(FpMatrix::Entry p) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& s, const IntMatrix& a);

IntMatrix power(const IntMatrix& m, unsigned exponent);
IntMatrix block_diagonal(std::span<const IntMatrix> blocks);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

}  // namespace kummer::linalg
