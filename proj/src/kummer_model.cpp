#include "kummer/kummer_model.hpp"

#include "kummer/error.hpp"
#include "kummer/exact_linalg.hpp"
#include "kummer/green_ring.hpp"

#include <array>
#include <cstdio>

namespace kummer::model {

using cohomology::LatticeAction;
using linalg::FinAbGroup;
using linalg::IntMatrix;

std::string to_string(CycleConvention c) { return c == CycleConvention::Forward ? "forward" : "backward"; }

TorusMap cycle_map(CycleConvention c) {
  // (x1, x2, x3) -> (x2, x3, x1) or (x3, x1, x2), restricted to x3 = -x1 - x2.
  if (c == CycleConvention::Forward) return {0, 1, -1, -1};
  return {-1, -1, 1, 0};
}

IntMatrix pullback_block(const TorusMap& f) {
  // f^* pr_i^* a = (pr_i o f)^* a = sum_j c_ij pr_j^* a. In the ordered basis
  // (pr2^* a, pr1^* a) the column of pr2^* a is (c11, c10), of pr1^* a is (c01, c00).
  return IntMatrix{{f.c11, f.c01}, {f.c10, f.c00}};
}

LatticeAction build_sigma_h1(CycleConvention c) {
  const IntMatrix block = pullback_block(cycle_map(c));
  const std::array<IntMatrix, 4> blocks{block, block, block, block};
  LatticeAction sigma(linalg::block_diagonal(blocks));  // throws NotOrderThree
  if (sigma.jordan_type() != JordanType::n2(4))
    throw InternalError("build_sigma_h1: Jordan type " + sigma.jordan_type().to_string() + " instead of (0, 4, 0)");
  return sigma;
}

const std::map<int, JordanType>& Expected::ell_table() {
  static const std::map<int, JordanType> table{
      {1, {0, 4, 0}},
      {2, {10, 0, 6}},
      {3, {0, 16, 8}},
      {4, {19, 0, 17}},
  };
  return table;
}

std::map<int, EllRow> ell_table_routes(const LatticeAction& sigma_h1) {
  const JordanType h1 = sigma_h1.jordan_type();
  std::map<int, EllRow> rows;
  for (int k = 1; k <= 4; ++k) {
    EllRow row;
    row.matrix_route = sigma_h1.exterior_power(static_cast<std::size_t>(k)).jordan_type();
    row.green_route = green::wedge(h1, static_cast<std::uint64_t>(k));
    if (row.matrix_route != row.green_route)
      throw MismatchError("ell_table: k = " + std::to_string(k) + ": exterior power gives " +
                          row.matrix_route.to_string() + ", closed form gives " + row.green_route.to_string());
    rows.emplace(k, row);
  }
  return rows;
}

std::map<int, JordanType> ell_table(const LatticeAction& sigma_h1) {
  std::map<int, JordanType> out;
  for (const auto& [k, row] : ell_table_routes(sigma_h1)) out.emplace(k, row.matrix_route);
  return out;
}

const std::vector<std::pair<int, int>>& vanishing_pairs() {
  static const std::vector<std::pair<int, int>> pairs{{1, 2}, {2, 1}, {3, 0}, {1, 4}, {2, 3}, {3, 2}, {4, 1}, {5, 0}};
  return pairs;
}

std::vector<VanishingEntry> compute_vanishing(const LatticeAction& sigma_h1) {
  std::map<int, LatticeAction> coefficients;
  std::vector<VanishingEntry> out;
  for (const auto& [p, q] : vanishing_pairs()) {
    auto it = coefficients.find(q);
    if (it == coefficients.end())
      it = coefficients.emplace(q, sigma_h1.exterior_power(static_cast<std::size_t>(q))).first;
    out.push_back({p, q, cohomology::cohomology_snf(it->second, static_cast<std::uint64_t>(p))});
  }
  return out;
}

std::vector<VanishingEntry> vanishing_certificate(const LatticeAction& sigma_h1) {
  auto entries = compute_vanishing(sigma_h1);
  for (const auto& e : entries)
    if (!e.group.is_zero())
      throw CertificateFailure("vanishing certificate: H^" + std::to_string(e.p) + "(A3, H^" + std::to_string(e.q) +
                               ") = " + e.group.to_string());
  return entries;
}

TorusData torus_data() {
  TorusData t;
  const IntMatrix id4 = IntMatrix::identity(4);
  for (int k = 0; k <= 4; ++k)
    t.cohomology.emplace(k, FinAbGroup::free(linalg::exterior_power(id4, static_cast<std::size_t>(k)).rows()));
  t.three_torsion = linalg::cokernel(Integer(3) * id4);
  Integer order = 1;
  for (const auto& d : t.three_torsion.torsion()) order *= d;
  t.three_torsion_points = static_cast<std::uint64_t>(order);
  return t;
}

KummerContext build_context(CycleConvention c) {
  KummerContext ctx;
  ctx.convention = c;
  ctx.sigma_h1 = build_sigma_h1(c);
  ctx.ell_routes = ell_table_routes(ctx.sigma_h1);
  for (const auto& [k, row] : ctx.ell_routes) ctx.ell.emplace(k, row.matrix_route);
  ctx.vanishing = compute_vanishing(ctx.sigma_h1);
  for (int k : {3, 5}) ctx.fixed_parts.emplace(k, cohomology::fixed_points(ctx.sigma_h1.exterior_power(static_cast<std::size_t>(k))));
  ctx.torus = torus_data();
  return ctx;
}

nlohmann::json KummerContext::to_json() const {
  nlohmann::json ell_json = nlohmann::json::object();
  for (const auto& [k, row] : ell_routes)
    ell_json[std::to_string(k)] = {{"matrix_route", row.matrix_route}, {"green_route", row.green_route}};
  nlohmann::json van = nlohmann::json::array();
  for (const auto& e : vanishing)
    van.push_back({{"p", e.p}, {"q", e.q}, {"group", e.group.to_json()}, {"text", e.group.to_string()}});
  nlohmann::json fixed = nlohmann::json::object();
  for (const auto& [k, g] : fixed_parts) fixed[std::to_string(k)] = g.to_json();
  nlohmann::json torus_json = nlohmann::json::object();
  for (const auto& [k, g] : torus.cohomology) torus_json["H" + std::to_string(k)] = g.to_json();
  torus_json["three_torsion"] = torus.three_torsion.to_json();
  torus_json["three_torsion_points"] = torus.three_torsion_points;
  return {{"convention", to_string(convention)},
          {"sigma_h1", sigma_h1.matrix().to_json()},
          {"ell_table", ell_json},
          {"vanishing", van},
          {"fixed_parts", fixed},
          {"torus", torus_json}};
}

std::string KummerContext::hash() const {
  const std::string text = to_json().dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

}  // namespace kummer::model
