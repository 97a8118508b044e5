#pragma once

#include "kummer/fin_ab_group.hpp"
#include "kummer/int_matrix.hpp"
#include "kummer/jordan_type.hpp"

#include <cstdint>

namespace kummer::cohomology {

/// A lattice Z^n with an action of the cyclic group of order 3, given by the
/// matrix of a generator. The constructor checks matrix^3 == I.
class LatticeAction {
 public:
  explicit LatticeAction(linalg::IntMatrix generator);

  const linalg::IntMatrix& matrix() const { return matrix_; }
  std::size_t rank() const { return matrix_.rows(); }

  /// The other generator, sigma^2 = sigma^-1.
  LatticeAction inverse() const;
  /// sigma - I
  linalg::IntMatrix augmentation() const;
  /// I + sigma + sigma^2
  linalg::IntMatrix norm() const;
  /// Jordan type of the reduction mod 3.
  JordanType jordan_type() const;

  /// Action on the k-th exterior power of the lattice.
  LatticeAction exterior_power(std::size_t k) const;
  /// P * sigma * P^-1; p_inverse must be the inverse of p.
  LatticeAction conjugate(const linalg::IntMatrix& p, const linalg::IntMatrix& p_inverse) const;
  LatticeAction direct_sum(const LatticeAction& other) const;

  /// Z with trivial action.
  static LatticeAction trivial(std::size_t n = 1);
  /// Z[zeta_3], generator acting as multiplication by zeta_3.
  static LatticeAction rotation();
  /// Z[C_3], cyclic permutation of the basis.
  static LatticeAction permutation();

  friend bool operator==(const LatticeAction&, const LatticeAction&) = default;

 private:
  linalg::IntMatrix matrix_;
};

enum class Parity { Even, Odd };

constexpr Parity parity_of(std::uint64_t p) { return p % 2 == 0 ? Parity::Even : Parity::Odd; }

/// H^p(Z/3, T) for p >= 1 from Smith normal forms:
///   p even: ker(sigma - I) / im(N),   p odd: ker(N) / im(sigma - I),
/// with N = I + sigma + sigma^2. Throws BadDegree for p == 0.
linalg::FinAbGroup cohomology_snf(const LatticeAction& t, std::uint64_t p);

/// (Z/3)^l1 in even degree, (Z/3)^l2 in odd degree.
linalg::FinAbGroup cohomology_closed_form(const JordanType& j, Parity parity);

/// H^0 = ker(sigma - I), always free.
linalg::FinAbGroup fixed_points(const LatticeAction& t);

}  // namespace kummer::cohomology
