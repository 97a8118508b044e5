#include "kummer/exact_linalg.hpp"

#include "kummer/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace kummer::linalg {

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime and a != 0, so a^(p-2) is the inverse.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

std::size_t rank_fp(const FpMatrix& m) {
  const std::uint64_t p = m.modulus();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint32_t> a(m.entries().begin(), m.entries().end());
  auto at = [&](std::size_t r, std::size_t c) -> std::uint32_t& { return a[r * cols + c]; };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = c; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
    const std::uint64_t inv = inverse_mod(at(rank, c), static_cast<std::uint32_t>(p));
    for (std::size_t j = c; j < cols; ++j) at(rank, j) = static_cast<std::uint32_t>(at(rank, j) * inv % p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t f = at(r, c);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        at(r, j) = static_cast<std::uint32_t>((at(r, j) + (p - f) * at(rank, j)) % p);
    }
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> jordan_profile(const FpMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("jordan_profile: matrix is not square");
  const std::size_t n = m.rows();
  const std::size_t p = m.modulus();
  const FpMatrix nil = m - FpMatrix::identity(m.modulus(), n);

  // ranks[j] = rank(nil^j), j = 0..p+1
  std::vector<std::size_t> ranks(p + 2, 0);
  ranks[0] = n;
  FpMatrix pw = nil;
  for (std::size_t j = 1; j <= p; ++j) {
    if (j > 1) pw = pw * nil;
    ranks[j] = j < p ? rank_fp(pw) : 0;
  }
  if (!pw.is_zero())
    throw NotUnipotent("jordan_profile: (m - I)^" + std::to_string(p) + " is non-zero over F_" + std::to_string(p));

  std::vector<std::size_t> counts(p, 0);
  for (std::size_t q = 1; q <= p; ++q) {
    // Second difference of the rank sequence; always non-negative for a nilpotent operator.
    counts[q - 1] = ranks[q - 1] - 2 * ranks[q] + ranks[q + 1];
  }
  return counts;
}

JordanType jordan_type_unipotent(const FpMatrix& m) {
  if (m.modulus() > 3)
    throw InvalidArgument("jordan_type_unipotent: JordanType records block sizes up to 3, got p = " +
                          std::to_string(m.modulus()));
  const auto counts = jordan_profile(m);
  JordanType t;
  t.l1 = counts.size() > 0 ? counts[0] : 0;
  t.l2 = counts.size() > 1 ? counts[1] : 0;
  t.l3 = counts.size() > 2 ? counts[2] : 0;
  return t;
}

namespace {

// Position of the entry of minimal non-zero absolute value in the trailing
// submatrix [t.., t..], or nullopt if that submatrix is zero.
std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (x == 0) continue;
      Integer ax = abs(x);
      if (!best || ax < best_abs) {
        best = {i, j};
        best_abs = std::move(ax);
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto swap_r = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
  };
  auto swap_c = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
  };
  auto add_r = [&](std::size_t dst, std::size_t src, const Integer& f) {
    a.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  };
  auto add_c = [&](std::size_t dst, std::size_t src, const Integer& f) {
    a.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
  };

  const std::size_t limit = std::min(rows, cols);
  for (std::size_t t = 0; t < limit; ++t) {
    auto pos = min_abs_entry(a, t);
    if (!pos) break;
    swap_r(t, pos->first);
    swap_c(t, pos->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        add_r(i, t, -(a(i, t) / a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        add_c(j, t, -(a(t, j) / a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Remainders are strictly smaller than the pivot: move the smallest one in.
        std::size_t bi = t, bj = t;
        Integer best = abs(a(t, t));
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < best) best = abs(a(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < best) best = abs(a(t, j)), bi = t, bj = j;
        swap_r(t, bi);
        swap_c(t, bj);
        continue;
      }
      // Row t and column t are clear; enforce divisibility on the trailing block.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < rows && !offender; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      add_r(t, *offender, Integer(1));
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

namespace {

std::size_t diagonal_rank(const IntMatrix& d) {
  std::size_t r = 0;
  const std::size_t limit = std::min(d.rows(), d.cols());
  while (r < limit && d(r, r) != 0) ++r;
  return r;
}

}  // namespace

FinAbGroup cokernel(const IntMatrix& m) {
  const auto snf = smith_normal_form(m);
  const std::size_t r = diagonal_rank(snf.d);
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < r; ++i)
    if (snf.d(i, i) > 1) torsion.push_back(snf.d(i, i));
  return FinAbGroup(m.rows() - r, std::move(torsion));
}

IntMatrix kernel_basis(const IntMatrix& m) {
  const auto snf = smith_normal_form(m);
  const std::size_t r = diagonal_rank(snf.d);
  return snf.v.columns(r, m.cols() - r);
}

std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InvalidArgument("solve_integer: row counts differ");
  const auto snf = smith_normal_form(a);
  const std::size_t r = diagonal_rank(snf.d);
  const IntMatrix ub = snf.u * b;
  IntMatrix y(a.cols(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i < r) {
        if (ub(i, c) % snf.d(i, i) != 0) return std::nullopt;
        y(i, c) = ub(i, c) / snf.d(i, i);
      } else if (ub(i, c) != 0) {
        return std::nullopt;
      }
    }
  }
  return snf.v * y;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

namespace {

// Fraction-free elimination in machine words. Only called when a Hadamard-type
// bound guarantees every intermediate (itself a minor) stays below 2^62.
std::int64_t determinant_small(std::vector<std::int64_t>& a, std::size_t n) {
  if (n == 0) return 1;
  auto at = [&](std::size_t r, std::size_t c) -> std::int64_t& { return a[r * n + c]; };
  std::int64_t prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        const __int128 num = static_cast<__int128>(at(i, j)) * at(k, k) - static_cast<__int128>(at(i, k)) * at(k, j);
        at(i, j) = static_cast<std::int64_t>(num / prev);
      }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

}  // namespace

IntMatrix exterior_power(const IntMatrix& m, std::size_t k) {
  if (!m.is_square()) throw InvalidArgument("exterior_power: matrix is not square");
  const std::size_t n = m.rows();
  if (k > n)
    throw BadDegree("exterior_power: degree " + std::to_string(k) + " exceeds dimension " + std::to_string(n));
  const auto subsets = k_subsets(n, k);
  const std::size_t dim = subsets.size();
  IntMatrix out(dim, dim);
  if (k == 0) {
    out(0, 0) = 1;
    return out;
  }

  // Machine-word fast path: every k x k minor of m (and every intermediate of
  // the fraction-free elimination, which are minors too) is bounded by the
  // product of the l1 norms of the selected rows.
  const Integer word_limit = Integer(1) << 31;
  bool small_entries = true;
  for (const auto& x : m.entries())
    if (abs(x) >= word_limit) {
      small_entries = false;
      break;
    }
  std::vector<long double> row_norm(n, 0.0L);
  std::vector<std::int64_t> small(small_entries ? n * n : 0);
  if (small_entries) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        small[i * n + j] = static_cast<std::int64_t>(m(i, j));
        row_norm[i] += std::fabs(static_cast<long double>(small[i * n + j]));
      }
  }
  constexpr long double kSafeBound = 1.0e18L;

  std::vector<std::int64_t> scratch(k * k);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& rows = subsets[r];
    long double bound = 1.0L;
    if (small_entries)
      for (std::size_t i : rows) bound *= row_norm[i];
    if (small_entries && bound == 0.0L) continue;  // a zero row kills every minor
    const bool fast = small_entries && bound < kSafeBound;
    for (std::size_t c = 0; c < dim; ++c) {
      const auto& cols = subsets[c];
      if (fast) {
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) scratch[i * k + j] = small[rows[i] * n + cols[j]];
        out(r, c) = determinant_small(scratch, k);
      } else {
        out(r, c) = determinant(m.submatrix(rows, cols));
      }
    }
  }
  return out;
}

}  // namespace kummer::linalg
