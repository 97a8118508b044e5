#pragma once

// Reference computations for the tests. Everything here is written directly
// from definitions and shares no code with the library's algorithms.

#include "kummer/fp_matrix.hpp"
#include "kummer/int_matrix.hpp"
#include "kummer/jordan_type.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using kummer::JordanType;
using kummer::linalg::FpMatrix;
using kummer::linalg::IntMatrix;
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Grid = std::vector<std::vector<std::int64_t>>;  // residues mod p

inline Grid grid_of(const FpMatrix& m) {
  Grid g(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline std::size_t rank_mod(Grid g, std::int64_t p) {
  const std::size_t rows = g.size(), cols = rows ? g[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && g[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(g[piv], g[rank]);
    const std::int64_t inv = inv_mod(g[rank][c], p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || g[r][c] == 0) continue;
      const std::int64_t f = g[r][c] * inv % p;
      for (std::size_t k = 0; k < cols; ++k) g[r][k] = ((g[r][k] - f * g[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline std::int64_t det_mod(Grid g, std::int64_t p) {
  const std::size_t n = g.size();
  std::int64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && g[piv][c] % p == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(g[piv], g[c]);
      det = (p - det) % p;
    }
    det = det * g[c][c] % p;
    const std::int64_t inv = inv_mod(g[c][c], p);
    for (std::size_t r = c + 1; r < n; ++r) {
      const std::int64_t f = g[r][c] * inv % p;
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k) g[r][k] = ((g[r][k] - f * g[c][k]) % p + p) % p;
    }
  }
  return det;
}

inline Grid mul_mod(const Grid& a, const Grid& b, std::int64_t p) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  Grid c(n, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t])
        for (std::size_t j = 0; j < m; ++j) c[i][j] = (c[i][j] + a[i][t] * b[t][j]) % p;
  return c;
}

/// Jordan type over F_3 from the ranks of (m - I)^j, j = 0..4.
inline JordanType jordan_type_mod3(const Grid& m) {
  const std::size_t n = m.size();
  Grid nil = m;
  for (std::size_t i = 0; i < n; ++i) nil[i][i] = (nil[i][i] + 2) % 3;
  std::vector<std::int64_t> r{static_cast<std::int64_t>(n)};
  Grid pw = nil;
  for (int j = 1; j <= 4; ++j) {
    r.push_back(static_cast<std::int64_t>(rank_mod(pw, 3)));
    pw = mul_mod(pw, nil, 3);
  }
  auto l = [&](int q) { return static_cast<std::uint64_t>(r[q - 1] - 2 * r[q] + r[q + 1]); };
  return {l(1), l(2), l(3)};
}

inline Grid kronecker_mod(const Grid& a, const Grid& b, std::int64_t p) {
  const std::size_t ar = a.size(), br = b.size();
  const std::size_t ac = ar ? a[0].size() : 0, bc = br ? b[0].size() : 0;
  Grid c(ar * br, std::vector<std::int64_t>(ac * bc));
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) c[i * br + k][j * bc + l] = a[i][j] * b[k][l] % p;
  return c;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// k-th compound matrix mod p from minors.
inline Grid compound_mod(const Grid& m, std::size_t k, std::int64_t p) {
  const auto subs = subsets(m.size(), k);
  Grid c(subs.size(), std::vector<std::int64_t>(subs.size()));
  Grid minor(k, std::vector<std::int64_t>(k));
  for (std::size_t s = 0; s < subs.size(); ++s)
    for (std::size_t t = 0; t < subs.size(); ++t) {
      bool zero_row = false;
      for (std::size_t i = 0; i < k; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < k; ++j) {
          minor[i][j] = m[subs[s][i]][subs[t][j]];
          any = any || minor[i][j] != 0;
        }
        zero_row = zero_row || !any;
      }
      c[s][t] = zero_row ? 0 : det_mod(minor, p);
    }
  return c;
}

/// Determinant by the Leibniz formula (n <= 8).
inline Integer leibniz(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Integer term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Determinant by Gaussian elimination over Q.
inline Integer det_rational(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return boost::multiprecision::numerator(det);
}

inline IntMatrix lift(const FpMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline Grid grid_mod(const IntMatrix& m, std::int64_t p) {
  Grid g(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer r = m(i, j) % p;
      if (r < 0) r += p;
      g[i][j] = static_cast<std::int64_t>(r);
    }
  return g;
}

/// Every (l1, l2, l3) with l1 + 2 l2 + 3 l3 <= max_dim.
inline std::vector<JordanType> all_types(std::uint64_t max_dim) {
  std::vector<JordanType> out;
  for (std::uint64_t c = 0; 3 * c <= max_dim; ++c)
    for (std::uint64_t b = 0; 3 * c + 2 * b <= max_dim; ++b)
      for (std::uint64_t a = 0; 3 * c + 2 * b + a <= max_dim; ++a) out.push_back({a, b, c});
  return out;
}

struct Unimodular {
  IntMatrix p;
  IntMatrix p_inv;
};

/// Random product of elementary matrices, with its inverse.
inline Unimodular random_unimodular(std::mt19937_64& rng, std::size_t n, std::size_t steps) {
  Unimodular u{IntMatrix::identity(n), IntMatrix::identity(n)};
  if (n < 2) {
    if (n == 1 && rng() % 2) {
      u.p.negate_row(0);
      u.p_inv.negate_col(0);
    }
    return u;
  }
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = idx(rng), j = idx(rng);
    const int c = coeff(rng);
    if (i == j) {
      u.p.negate_row(i);
      u.p_inv.negate_col(i);
    } else if (c == 0) {
      u.p.swap_rows(i, j);
      u.p_inv.swap_cols(i, j);
    } else {
      u.p.add_row_multiple(i, j, c);
      u.p_inv.add_col_multiple(j, i, -c);
    }
  }
  return u;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace oracle
