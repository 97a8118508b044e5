#include "kummer/jordan_type.hpp"

#include "kummer/error.hpp"

namespace kummer {

std::string JordanType::to_string() const {
  return "(" + std::to_string(l1) + ", " + std::to_string(l2) + ", " + std::to_string(l3) + ")";
}

void to_json(nlohmann::json& j, const JordanType& t) { j = {{"l1", t.l1}, {"l2", t.l2}, {"l3", t.l3}}; }

void from_json(const nlohmann::json& j, JordanType& t) {
  for (const char* key : {"l1", "l2", "l3"})
    if (!j.contains(key) || !j[key].is_number_unsigned())
      throw InvalidArgument(std::string("JordanType: missing or negative \"") + key + "\"");
  t.l1 = j["l1"].get<std::uint64_t>();
  t.l2 = j["l2"].get<std::uint64_t>();
  t.l3 = j["l3"].get<std::uint64_t>();
}

}  // namespace kummer
