#pragma once

#include "kummer/integer.hpp"

#include <json.hpp>

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace kummer::linalg {

/// Finitely generated abelian group Z^rank + Z/d1 + ... + Z/dm with d1 | d2 | ... | dm, di >= 2.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  /// Throws InvalidArgument unless torsion is a divisibility chain of entries >= 2.
  FinAbGroup(std::size_t rank, std::vector<Integer> torsion);

  static FinAbGroup trivial() { return {}; }
  static FinAbGroup free(std::size_t rank) { return FinAbGroup(rank, {}); }
  /// (Z/n)^count
  static FinAbGroup elementary(const Integer& n, std::size_t count);
  /// Normalizes an arbitrary list of cyclic orders (0 meaning Z, 1 dropped)
  /// into invariant-factor form.
  static FinAbGroup from_cyclic_orders(std::span<const Integer> orders);

  std::size_t rank() const { return rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }

  bool is_zero() const { return rank_ == 0 && torsion_.empty(); }
  bool is_torsion_free() const { return torsion_.empty(); }
  /// Primes dividing the order of the torsion subgroup.
  std::set<Integer> torsion_primes() const;

  FinAbGroup direct_sum(const FinAbGroup& other) const;
  /// G^copies
  FinAbGroup power(std::size_t copies) const;

  /// "0", "Z^81", "Z/3", "Z^2 + (Z/3)^2", "Z/2 + Z/6"
  std::string to_string() const;
  /// {"rank": r, "torsion": [d1, ...]}
  nlohmann::json to_json() const;
  static FinAbGroup from_json(const nlohmann::json& j);

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Integer> torsion_;
};

}  // namespace kummer::linalg
