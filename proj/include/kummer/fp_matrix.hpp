#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace kummer::linalg {

/// Dense matrix over the prime field F_p, row-major, entries in [0, p).
class FpMatrix {
 public:
  using Entry = std::uint32_t;

  FpMatrix(Entry p, std::size_t rows, std::size_t cols);
  /// Entries are reduced into [0, p); negative inputs are allowed.
  FpMatrix(Entry p, std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries);

  static FpMatrix identity(Entry p, std::size_t n);

  Entry modulus() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Entry operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  /// Stores value mod p.
  void set(std::size_t r, std::size_t c, std::int64_t value);

  std::span<const Entry> entries() const { return data_; }

  bool is_zero() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  Entry p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Entry> data_;
};

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);

/// Left factor outer: block (i, j) of the result is a(i, j) * b.
FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);

FpMatrix block_diagonal(std::span<const FpMatrix> blocks);

bool is_prime(std::uint64_t n);

}  // namespace kummer::linalg
