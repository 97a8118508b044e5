#include "kummer/fin_ab_group.hpp"

#include "kummer/error.hpp"
#include "kummer/exact_linalg.hpp"

#include <sstream>

namespace kummer::linalg {

FinAbGroup::FinAbGroup(std::size_t rank, std::vector<Integer> torsion) : rank_(rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2)
      throw InvalidArgument("FinAbGroup: invariant factor " + torsion_[i].str() + " is not >= 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
      throw InvalidArgument("FinAbGroup: invariant factors " + torsion_[i - 1].str() + ", " + torsion_[i].str() +
                            " do not form a divisibility chain");
  }
}

FinAbGroup FinAbGroup::elementary(const Integer& n, std::size_t count) {
  if (n == 1 || count == 0) return {};
  return FinAbGroup(0, std::vector<Integer>(count, n));
}

FinAbGroup FinAbGroup::from_cyclic_orders(std::span<const Integer> orders) {
  std::vector<Integer> abs_orders;
  abs_orders.reserve(orders.size());
  for (const auto& o : orders) abs_orders.push_back(o < 0 ? Integer(-o) : o);
  return cokernel(IntMatrix::diagonal(abs_orders));
}

std::set<Integer> FinAbGroup::torsion_primes() const {
  std::set<Integer> primes;
  for (Integer n : torsion_) {
    for (Integer d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        primes.insert(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) primes.insert(n);
  }
  return primes;
}

FinAbGroup FinAbGroup::direct_sum(const FinAbGroup& other) const {
  std::vector<Integer> orders(rank_ + other.rank_, Integer(0));
  orders.insert(orders.end(), torsion_.begin(), torsion_.end());
  orders.insert(orders.end(), other.torsion_.begin(), other.torsion_.end());
  return from_cyclic_orders(orders);
}

FinAbGroup FinAbGroup::power(std::size_t copies) const {
  std::vector<Integer> orders(rank_ * copies, Integer(0));
  for (std::size_t i = 0; i < copies; ++i) orders.insert(orders.end(), torsion_.begin(), torsion_.end());
  return from_cyclic_orders(orders);
}

std::string FinAbGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  if (rank_ == 1) {
    sep();
    os << "Z";
  } else if (rank_ > 1) {
    sep();
    os << "Z^" << rank_;
  }
  for (std::size_t i = 0; i < torsion_.size();) {
    std::size_t j = i;
    while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
    sep();
    if (j - i == 1)
      os << "Z/" << torsion_[i];
    else
      os << "(Z/" << torsion_[i] << ")^" << (j - i);
    i = j;
  }
  return os.str();
}

nlohmann::json FinAbGroup::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& d : torsion_) t.push_back(d.str());
  return {{"rank", rank_}, {"torsion", t}};
}

FinAbGroup FinAbGroup::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rank") || !j["rank"].is_number_unsigned())
    throw InvalidArgument("group literal: expected {\"rank\": n, \"torsion\": [...]}");
  std::vector<Integer> torsion;
  if (j.contains("torsion")) {
    if (!j["torsion"].is_array()) throw InvalidArgument("group literal: \"torsion\" must be an array");
    for (const auto& d : j["torsion"]) {
      if (d.is_number_integer())
        torsion.emplace_back(d.get<std::int64_t>());
      else if (d.is_string())
        torsion.emplace_back(d.get<std::string>());
      else
        throw InvalidArgument("group literal: bad invariant factor " + d.dump());
    }
  }
  return FinAbGroup(j["rank"].get<std::size_t>(), std::move(torsion));
}

}  // namespace kummer::linalg
