#include "kummer/fp_matrix.hpp"

#include "kummer/error.hpp"

#include <string>

namespace kummer::linalg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FpMatrix::FpMatrix(Entry p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (!is_prime(p)) throw InvalidArgument("FpMatrix: modulus " + std::to_string(p) + " is not prime");
}

FpMatrix::FpMatrix(Entry p, std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries)
    : FpMatrix(p, rows, cols) {
  if (entries.size() != rows * cols)
    throw InvalidArgument("FpMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::int64_t r = entries[i] % static_cast<std::int64_t>(p);
    data_[i] = static_cast<Entry>(r < 0 ? r + p : r);
  }
}

FpMatrix FpMatrix::identity(Entry p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % p;
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  std::int64_t v = value % static_cast<std::int64_t>(p_);
  data_[r * cols_ + c] = static_cast<Entry>(v < 0 ? v + p_ : v);
}

bool FpMatrix::is_zero() const {
  for (Entry e : data_)
    if (e != 0) return false;
  return true;
}

namespace {

void require_same_field(const FpMatrix& a, const FpMatrix& b, const char* op) {
  if (a.modulus() != b.modulus())
    throw InvalidArgument(std::string(op) + ": matrices over different prime fields");
}

void require_same_shape(const FpMatrix& a, const FpMatrix& b, const char* op) {
  require_same_field(a, b, op);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument(std::string(op) + ": shape mismatch");
}

}  // namespace

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b, "FpMatrix product");
  if (a.cols() != b.rows()) throw InvalidArgument("FpMatrix product: inner dimensions differ");
  const std::uint64_t p = a.modulus();
  const std::size_t n = a.rows(), inner = a.cols(), m = b.cols();
  std::vector<std::uint64_t> acc(m);
  FpMatrix out(a.modulus(), n, m);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < inner; ++k) {
      const std::uint64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < m; ++j) acc[j] += aik * b(k, j);
    }
    for (std::size_t j = 0; j < m; ++j) out.set(i, j, static_cast<std::int64_t>(acc[j] % p));
  }
  return out;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  require_same_shape(a, b, "FpMatrix sum");
  FpMatrix out(a.modulus(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out.set(i, j, static_cast<std::int64_t>(a(i, j)) + b(i, j));
  return out;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
  require_same_shape(a, b, "FpMatrix difference");
  FpMatrix out(a.modulus(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out.set(i, j, static_cast<std::int64_t>(a(i, j)) - b(i, j));
  return out;
}

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b, "kronecker");
  FpMatrix out(a.modulus(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const std::int64_t aij = a(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out.set(i * b.rows() + k, j * b.cols() + l, aij * b(k, l));
    }
  return out;
}

FpMatrix block_diagonal(std::span<const FpMatrix> blocks) {
  if (blocks.empty()) throw InvalidArgument("block_diagonal: need at least one block to fix the field");
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    require_same_field(blocks.front(), b, "block_diagonal");
    rows += b.rows();
    cols += b.cols();
  }
  FpMatrix out(blocks.front().modulus(), rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out.set(r0 + i, c0 + j, b(i, j));
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

}  // namespace kummer::linalg
