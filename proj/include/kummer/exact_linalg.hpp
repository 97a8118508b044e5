#pragma once

#include "kummer/fin_ab_group.hpp"
#include "kummer/fp_matrix.hpp"
#include "kummer/int_matrix.hpp"
#include "kummer/jordan_type.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace kummer::linalg {

/// Row rank over F_p by Gaussian elimination.
std::size_t rank_fp(const FpMatrix& m);

/// Sizes of the Jordan blocks of a unipotent matrix over F_p: entry q-1 holds
/// the number of blocks of size q, for q = 1..p. Derived from the rank
/// sequence r_j = rank((m - I)^j) as r_{q-1} - 2 r_q + r_{q+1}.
/// Throws NotUnipotent if (m - I)^p != 0.
std::vector<std::size_t> jordan_profile(const FpMatrix& m);

/// Jordan type of a unipotent matrix over F_3 (or F_2, where l3 = 0).
/// Throws InvalidArgument for p > 3, NotUnipotent if (m - I)^p != 0.
JordanType jordan_type_unipotent(const FpMatrix& m);

struct SmithDecomposition {
  IntMatrix u;  // rows x rows, unimodular
  IntMatrix d;  // rows x cols, diagonal, d(i,i) | d(i+1,i+1), d(i,i) >= 0
  IntMatrix v;  // cols x cols, unimodular
};

/// u * m * v == d.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Z^rows / column span of m.
FinAbGroup cokernel(const IntMatrix& m);

/// Columns form a Z-basis of {x : m x = 0}. Shape cols x (cols - rank).
IntMatrix kernel_basis(const IntMatrix& m);

/// Integer solution x of a * x == b (b may have several columns), if any.
std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b);

/// Exact determinant by fraction-free elimination.
Integer determinant(const IntMatrix& m);

/// k-th compound matrix on size-k index subsets in lexicographic order.
/// Throws BadDegree if k > n, InvalidArgument if m is not square.
IntMatrix exterior_power(const IntMatrix& m, std::size_t k);

/// Strictly increasing k-subsets of {0..n-1}, lexicographic.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

}  // namespace kummer::linalg
