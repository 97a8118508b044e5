#pragma once

#include "kummer/cyclic_cohomology.hpp"
#include "kummer/fin_ab_group.hpp"
#include "kummer/jordan_type.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kummer::model {

/// Which 3-cycle of the factors of A x A x A generates the action on
/// A x A = {(x, y, -x-y)}. The two choices are inverse to each other.
enum class CycleConvention {
  Forward,   // (x, y) -> (y, -x-y)
  Backward,  // (x, y) -> (-x-y, x)
};

std::string to_string(CycleConvention c);

/// A group endomorphism (x, y) -> (c00 x + c01 y, c10 x + c11 y) of A x A.
struct TorusMap {
  std::int64_t c00, c01, c10, c11;
};

TorusMap cycle_map(CycleConvention c);

/// Pullback of f on the pair (A (x) a, a (x) A) = (pr2^* a, pr1^* a) spanned by
/// one generator a of H^1(A, Z).
linalg::IntMatrix pullback_block(const TorusMap& f);

/// The generator on H^1(A x A, Z) = Z^8: four copies of the pullback block,
/// one per generator of H^1(A, Z) = Z^4. Checks order 3 and Jordan type (0, 4, 0).
cohomology::LatticeAction build_sigma_h1(CycleConvention c = CycleConvention::Forward);

struct Expected {
  /// Jordan types of H^k(A x A) for k = 1..4 as stated for the construction.
  static const std::map<int, JordanType>& ell_table();
};

struct EllRow {
  JordanType matrix_route;  // exterior power over Z, reduced mod 3
  JordanType green_route;   // closed-form wedge of (0, 4, 0)
};

/// Both routes for k = 1..4. Throws MismatchError if they disagree.
std::map<int, JordanType> ell_table(const cohomology::LatticeAction& sigma_h1);
std::map<int, EllRow> ell_table_routes(const cohomology::LatticeAction& sigma_h1);

struct VanishingEntry {
  int p = 0;
  int q = 0;
  linalg::FinAbGroup group;
};

/// (p, q) with p >= 1, p + q in {3, 5}, q <= 4.
const std::vector<std::pair<int, int>>& vanishing_pairs();

/// H^p(A3, L^q H^1) by Smith normal form for every vanishing pair, no checks.
std::vector<VanishingEntry> compute_vanishing(const cohomology::LatticeAction& sigma_h1);

/// As compute_vanishing, but throws CertificateFailure naming the first
/// non-zero entry.
std::vector<VanishingEntry> vanishing_certificate(const cohomology::LatticeAction& sigma_h1);

/// Torus data used by the ledger: H^k(A) = L^k Z^4 and |A[3]| = |coker(3 I_4)|.
struct TorusData {
  std::map<int, linalg::FinAbGroup> cohomology;  // k = 0..4
  linalg::FinAbGroup three_torsion;              // A[3] as a group
  std::uint64_t three_torsion_points = 0;
};

TorusData torus_data();

struct KummerContext {
  CycleConvention convention = CycleConvention::Forward;
  cohomology::LatticeAction sigma_h1 = cohomology::LatticeAction::trivial(0);
  std::map<int, EllRow> ell_routes;
  std::map<int, JordanType> ell;
  std::vector<VanishingEntry> vanishing;
  /// H^0(A3, H^k(A x A)) for k = 3, 5.
  std::map<int, linalg::FinAbGroup> fixed_parts;
  TorusData torus;

  nlohmann::json to_json() const;
  /// FNV-1a 64 of the serialized context (without the hash field).
  std::string hash() const;
};

/// Runs the whole construction. Throws MismatchError / NotOrderThree on an
/// inconsistent model; the vanishing list is recorded but not checked here.
KummerContext build_context(CycleConvention c = CycleConvention::Forward);

}  // namespace kummer::model
