#include "kummer/green_ring.hpp"

#include "kummer/error.hpp"

#include <array>
#include <utility>
#include <string>
#include <vector>

namespace kummer::green {

JordanType direct_sum(const JordanType& a, const JordanType& b) { return {a.l1 + b.l1, a.l2 + b.l2, a.l3 + b.l3}; }

JordanType multiple(const JordanType& a, std::uint64_t count) {
  return {a.l1 * count, a.l2 * count, a.l3 * count};
}

namespace {

// Products of indecomposables, indexed by block size - 1.
JordanType block_product(int p, int q) {
  if (p > q) std::swap(p, q);
  if (p == 1) return q == 1 ? JordanType::n1() : q == 2 ? JordanType::n2() : JordanType::n3();
  if (p == 2 && q == 2) return {1, 0, 1};
  if (p == 2 && q == 3) return JordanType::n3(2);
  return JordanType::n3(3);
}

// L^j N_q; the zero module when j > q.
JordanType block_wedge(int q, int j) {
  if (j == 0) return JordanType::n1();
  if (j > q) return {};
  if (j == 1) return q == 1 ? JordanType::n1() : q == 2 ? JordanType::n2() : JordanType::n3();
  if (q == 2) return JordanType::n1();       // j == 2
  return j == 2 ? JordanType::n3() : JordanType::n1();  // q == 3
}

// Polynomial in a grading variable t with Green-ring coefficients.
using Graded = std::vector<JordanType>;

Graded graded_product(const Graded& x, const Graded& y) {
  Graded out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].dimension() == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j].dimension() != 0) out[i + j] = direct_sum(out[i + j], tensor(x[i], y[j]));
  }
  return out;
}

}  // namespace

JordanType tensor(const JordanType& a, const JordanType& b) {
  const std::array<std::uint64_t, 3> ca{a.l1, a.l2, a.l3}, cb{b.l1, b.l2, b.l3};
  JordanType out;
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      const std::uint64_t n = ca[p - 1] * cb[q - 1];
      if (n != 0) out = direct_sum(out, multiple(block_product(p, q), n));
    }
  return out;
}

JordanType wedge(const JordanType& a, std::uint64_t k) {
  if (k > a.dimension())
    throw BadDegree("wedge: degree " + std::to_string(k) + " exceeds dimension " + std::to_string(a.dimension()));
  // L(X + Y) = L(X) (x) L(Y) as graded modules; each block contributes
  // 1 + t N_q + t^2 L^2 N_q + ... and the multiset expands multinomially.
  Graded total{JordanType::n1()};
  for (int q = 1; q <= 3; ++q) {
    Graded block(q + 1);
    for (int j = 0; j <= q; ++j) block[j] = block_wedge(q, j);
    for (std::uint64_t c = 0; c < a.count(q); ++c) {
      total = graded_product(total, block);
      if (total.size() > k + 1) total.resize(k + 1);
    }
  }
  return k < total.size() ? total[k] : JordanType{};
}

linalg::FpMatrix realize(const JordanType& a) {
  const std::size_t n = a.dimension();
  linalg::FpMatrix m = linalg::FpMatrix::identity(3, n);
  std::size_t offset = a.l1;
  for (int q = 2; q <= 3; ++q)
    for (std::uint64_t c = 0; c < a.count(q); ++c) {
      for (int i = 0; i + 1 < q; ++i) m.set(offset + i, offset + i + 1, 1);
      offset += q;
    }
  return m;
}

}  // namespace kummer::green
