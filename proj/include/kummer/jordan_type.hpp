#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>

namespace kummer {

/// Multiplicities of the indecomposable F_3[Z/3]-modules N_1, N_2, N_3
/// (Jordan blocks of eigenvalue 1 and sizes 1, 2, 3).
struct JordanType {
  std::uint64_t l1 = 0;
  std::uint64_t l2 = 0;
  std::uint64_t l3 = 0;

  constexpr std::uint64_t dimension() const { return l1 + 2 * l2 + 3 * l3; }
  constexpr std::uint64_t count(int q) const { return q == 1 ? l1 : q == 2 ? l2 : q == 3 ? l3 : 0; }

  static constexpr JordanType n1(std::uint64_t c = 1) { return {c, 0, 0}; }
  static constexpr JordanType n2(std::uint64_t c = 1) { return {0, c, 0}; }
  static constexpr JordanType n3(std::uint64_t c = 1) { return {0, 0, c}; }

  friend constexpr bool operator==(const JordanType&, const JordanType&) = default;
  friend constexpr auto operator<=>(const JordanType&, const JordanType&) = default;

  /// "(l1, l2, l3)"
  std::string to_string() const;
};

void to_json(nlohmann::json& j, const JordanType& t);
void from_json(const nlohmann::json& j, JordanType& t);

}  // namespace kummer
