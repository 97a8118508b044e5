#include "kummer/cyclic_cohomology.hpp"

#include "kummer/error.hpp"
#include "kummer/exact_linalg.hpp"

#include <array>
#include <string>

namespace kummer::cohomology {

using linalg::FinAbGroup;
using linalg::IntMatrix;

LatticeAction::LatticeAction(IntMatrix generator) : matrix_(std::move(generator)) {
  if (!matrix_.is_square()) throw InvalidArgument("LatticeAction: generator matrix is not square");
  if (!linalg::power(matrix_, 3).is_identity()) throw NotOrderThree("LatticeAction: generator does not satisfy sigma^3 = I");
}

LatticeAction LatticeAction::inverse() const { return LatticeAction(matrix_ * matrix_); }

IntMatrix LatticeAction::augmentation() const { return matrix_ - IntMatrix::identity(rank()); }

IntMatrix LatticeAction::norm() const { return IntMatrix::identity(rank()) + matrix_ + matrix_ * matrix_; }

JordanType LatticeAction::jordan_type() const { return linalg::jordan_type_unipotent(matrix_.mod(3)); }

LatticeAction LatticeAction::exterior_power(std::size_t k) const {
  return LatticeAction(linalg::exterior_power(matrix_, k));
}

LatticeAction LatticeAction::conjugate(const IntMatrix& p, const IntMatrix& p_inverse) const {
  if (!(p * p_inverse).is_identity()) throw InvalidArgument("LatticeAction::conjugate: p_inverse is not the inverse of p");
  return LatticeAction(p * matrix_ * p_inverse);
}

LatticeAction LatticeAction::direct_sum(const LatticeAction& other) const {
  const std::array<IntMatrix, 2> blocks{matrix_, other.matrix_};
  return LatticeAction(linalg::block_diagonal(blocks));
}

LatticeAction LatticeAction::trivial(std::size_t n) { return LatticeAction(IntMatrix::identity(n)); }

LatticeAction LatticeAction::rotation() { return LatticeAction(IntMatrix{{0, -1}, {1, -1}}); }

LatticeAction LatticeAction::permutation() { return LatticeAction(IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}); }

namespace {

// ker(kernel_of) / im(image_of), where im(image_of) is contained in ker(kernel_of).
FinAbGroup subquotient(const IntMatrix& kernel_of, const IntMatrix& image_of) {
  const IntMatrix basis = linalg::kernel_basis(kernel_of);
  if (basis.cols() == 0) return FinAbGroup::trivial();
  const auto coords = linalg::solve_integer(basis, image_of);
  if (!coords)
    throw InternalError("cohomology_snf: image is not contained in the kernel; the action is not of order 3");
  return linalg::cokernel(*coords);
}

}  // namespace

FinAbGroup cohomology_snf(const LatticeAction& t, std::uint64_t p) {
  if (p == 0) throw BadDegree("cohomology_snf: degree 0 is the fixed lattice, use fixed_points");
  if (parity_of(p) == Parity::Even) return subquotient(t.augmentation(), t.norm());
  return subquotient(t.norm(), t.augmentation());
}

FinAbGroup cohomology_closed_form(const JordanType& j, Parity parity) {
  return FinAbGroup::elementary(3, parity == Parity::Even ? j.l1 : j.l2);
}

FinAbGroup fixed_points(const LatticeAction& t) { return FinAbGroup::free(linalg::kernel_basis(t.augmentation()).cols()); }

}  // namespace kummer::cohomology
