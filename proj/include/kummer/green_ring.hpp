#pragma once

#include "kummer/fp_matrix.hpp"
#include "kummer/jordan_type.hpp"

#include <cstdint>

// Closed-form arithmetic of Jordan types of F_3[Z/3]-modules.
//
// Multiplication table for the indecomposables N_q (q = block size):
//   N_1 (x) X   = X
//   N_2 (x) N_2 = N_1 + N_3
//   N_2 (x) N_3 = 2 N_3
//   N_3 (x) N_3 = 3 N_3
// Exterior powers of single blocks:
//   L^0 N_q = N_1,  L^1 N_q = N_q,  L^2 N_2 = N_1,  L^2 N_3 = N_3,  L^3 N_3 = N_1,
//   L^k N_q = 0 for k > q.
// Both tables are certified against explicit matrices in the tests.
namespace kummer::green {

JordanType direct_sum(const JordanType& a, const JordanType& b);

/// a^(+count)
JordanType multiple(const JordanType& a, std::uint64_t count);

JordanType tensor(const JordanType& a, const JordanType& b);

/// k-th exterior power, expanded over the block multiset.
/// Throws BadDegree if k > dimension(a).
JordanType wedge(const JordanType& a, std::uint64_t k);

/// Block-diagonal matrix over F_3: l1 blocks (1), then l2 blocks [[1,1],[0,1]],
/// then l3 blocks [[1,1,0],[0,1,1],[0,0,1]].
linalg::FpMatrix realize(const JordanType& a);

}  // namespace kummer::green
