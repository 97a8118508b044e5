// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "oracles.hpp"

#include "kummer/cli.hpp"
#include "kummer/cyclic_cohomology.hpp"
#include "kummer/exact_linalg.hpp"
#include "kummer/green_ring.hpp"
#include "kummer/kummer_model.hpp"
#include "kummer/torsion_ledger.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace kummer;
using linalg::FinAbGroup;
using linalg::IntMatrix;
using model::CycleConvention;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

const JordanType kTable[] = {{0, 4, 0}, {10, 0, 6}, {0, 16, 8}, {19, 0, 17}};

// Jordan block of size n over F_3, built here rather than by the library.
oracle::Grid jordan_grid(const JordanType& t) {
  const std::size_t n = t.dimension();
  oracle::Grid g(n, std::vector<std::int64_t>(n, 0));
  std::size_t at = 0;
  for (std::size_t q = 1; q <= 3; ++q)
    for (std::uint64_t c = 0; c < t.count(static_cast<int>(q)); ++c) {
      for (std::size_t i = 0; i < q; ++i) {
        g[at + i][at + i] = 1;
        if (i + 1 < q) g[at + i][at + i + 1] = 1;
      }
      at += q;
    }
  return g;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// 1
Check proposition(CycleConvention c) {
  Check r;
  const auto sigma = model::build_sigma_h1(c);
  const auto routes = model::ell_table_routes(sigma);
  r.require(routes.size() == 4, "four rows");
  for (int k = 1; k <= 4; ++k) {
    const auto& row = routes.at(k);
    const auto& want = kTable[k - 1];
    r.require(row.matrix_route == want, "matrix route k=" + std::to_string(k) + " gave " + row.matrix_route.to_string());
    r.require(row.green_route == want, "green route k=" + std::to_string(k) + " gave " + row.green_route.to_string());
    // third route: minors of sigma mod 3
    const auto compound = oracle::compound_mod(oracle::grid_mod(sigma.matrix(), 3), static_cast<std::size_t>(k), 3);
    r.require(oracle::jordan_type_mod3(compound) == want, "compound oracle k=" + std::to_string(k));
  }
  return r;
}

// 2
Check vanishing(CycleConvention c) {
  Check r;
  const auto sigma = model::build_sigma_h1(c);
  const auto entries = model::compute_vanishing(sigma);
  r.require(entries.size() == 8, "eight groups");
  std::map<std::pair<int, int>, bool> seen;
  for (const auto& e : entries) {
    const int p = e.p, q = e.q;
    r.require(p >= 1 && (p + q == 3 || p + q == 5), "pair range");
    seen[{p, q}] = true;
    r.require(e.group.is_zero(), "H^" + std::to_string(p) + "(A3;H^" + std::to_string(q) + ") = " + e.group.to_string());
    // independent: Jordan type of the compound matrix and the closed form
    const auto t = oracle::jordan_type_mod3(oracle::compound_mod(oracle::grid_mod(sigma.matrix(), 3), q, 3));
    r.require((p % 2 == 0 ? t.count(1) : t.count(2)) == 0, "closed form disagrees at " + std::to_string(p) + "," +
                                                               std::to_string(q));
  }
  r.require(seen.size() == 8, "distinct pairs");
  return r;
}

// 3
Check end_to_end(CycleConvention c) {
  Check r;
  cli::RunConfig cfg;
  cfg.command = cli::Command::FullCert;
  cfg.convention = c;
  std::ostringstream out, err;
  const int code = cli::run(cfg, out, err);
  r.require(code == 0, "full-cert exit " + std::to_string(code) + ": " + err.str());
  auto text = out.str();
  while (!text.empty() && text.back() == '\n') text.pop_back();
  r.require(text.substr(text.rfind('\n') + 1) == "Tors H^k(K₂(A)) = 0 for all k", "final line");

  const auto report = ledger::check_script(ledger::shipped_script(),
                                           ledger::leaf_facts_from_computation(model::build_context(c)));
  r.require(report.pass, "ledger replay");
  std::map<int, const ledger::Fact*> by_degree;
  for (const auto& g : report.goals) {
    r.require(g.established, "goal " + g.goal.subject.id());
    for (const auto& f : report.facts)
      if (f.key() == g.fact) by_degree[g.goal.subject.degree] = &f;
  }
  r.require(by_degree.size() == 9, "degrees 0..8");
  // duality pairs tors H^k with tors H^(9-k): 4 from 5, 6 from 3, 7 from 2
  for (const auto& [k, from] : std::map<int, int>{{4, 5}, {6, 3}, {7, 2}}) {
    const auto* f = by_degree[k];
    if (!f) continue;
    r.require(f->provenance.rule == "duality_uct", "H^" + std::to_string(k) + " not via duality");
    bool uses = false;
    for (const auto& in : f->provenance.inputs) uses = uses || in.rfind("H^" + std::to_string(from) + "(K2A)", 0) == 0;
    r.require(uses, "H^" + std::to_string(k) + " not derived from H^" + std::to_string(from));
  }
  return r;
}

// 4
Check oracle_equivalence(std::size_t& count) {
  Check r;
  const auto types = oracle::all_types(9);
  for (const auto& a : types) {
    const auto ga = jordan_grid(a);
    for (const auto& b : types) {
      if (a.dimension() == 0 || b.dimension() == 0) {
        r.require(green::tensor(a, b).dimension() == 0, "empty tensor");
        continue;
      }
      const auto expect = oracle::jordan_type_mod3(oracle::kronecker_mod(ga, jordan_grid(b), 3));
      r.require(green::tensor(a, b) == expect, "tensor " + a.to_string() + " " + b.to_string());
      ++count;
    }
    for (std::uint64_t k = 0; k <= a.dimension(); ++k) {
      const JordanType expect =
          k == 0 ? JordanType{1, 0, 0} : oracle::jordan_type_mod3(oracle::compound_mod(ga, static_cast<std::size_t>(k), 3));
      r.require(green::wedge(a, k) == expect, "wedge^" + std::to_string(k) + " " + a.to_string());
      ++count;
    }
  }
  return r;
}

// 5
Check closed_form(std::size_t& count) {
  Check r;
  std::mt19937_64 rng(5);
  const cohomology::LatticeAction blocks[] = {cohomology::LatticeAction::trivial(), cohomology::LatticeAction::rotation(),
                                              cohomology::LatticeAction::permutation()};
  const std::size_t sizes[] = {1, 2, 3};
  for (int t = 0; t < 240; ++t) {
    auto a = cohomology::LatticeAction::trivial(0);
    std::size_t rank = 0;
    const std::size_t target = 1 + rng() % 12;
    while (true) {
      const auto pick = rng() % 3;
      if (rank + sizes[pick] > target) break;
      a = a.direct_sum(blocks[pick]);
      rank += sizes[pick];
    }
    if (rank == 0) a = blocks[0];
    const auto u = oracle::random_unimodular(rng, a.rank(), 4 * a.rank());
    const auto c = a.conjugate(u.p, u.p_inv);
    r.require(c.rank() <= 12, "rank bound");
    const auto jt = oracle::jordan_type_mod3(oracle::grid_mod(c.matrix(), 3));
    for (std::uint64_t p = 1; p <= 4; ++p) {
      const auto snf = cohomology::cohomology_snf(c, p);
      r.require(snf == cohomology::cohomology_closed_form(jt, cohomology::parity_of(p)),
                "lattice " + std::to_string(t) + " degree " + std::to_string(p));
      r.require(snf == cohomology::cohomology_snf(c, p + 2), "periodicity");
    }
    ++count;
  }
  return r;
}

// 6
Check dimensions() {
  Check r;
  const auto table = model::ell_table(model::build_sigma_h1());
  const std::uint64_t want[] = {8, 28, 56, 70};
  for (int k = 1; k <= 4; ++k) {
    const auto& t = table.at(k);
    const std::uint64_t sum = t.count(1) + 2 * t.count(2) + 3 * t.count(3);
    r.require(sum == want[k - 1] && sum == binomial(8, static_cast<std::uint64_t>(k)), "k=" + std::to_string(k));
  }
  return r;
}

// 7
Check smith(std::size_t& count) {
  Check r;
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const std::size_t rows = 1 + rng() % 10, cols = 1 + rng() % 10;
    const auto m = oracle::random_matrix(rng, rows, cols, -20, 20);
    const auto s = linalg::smith_normal_form(m);
    const std::string tag = "matrix " + std::to_string(t);
    r.require(s.u * m * s.v == s.d, tag + ": u m v != d");
    const auto du = oracle::det_rational(s.u), dv = oracle::det_rational(s.v);
    r.require(abs(du) == 1 && abs(dv) == 1, tag + ": not unimodular");
    oracle::Integer prev = 1;
    bool zero_seen = false;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const auto& x = s.d(i, j);
        if (i != j) {
          r.require(x == 0, tag + ": off-diagonal");
          continue;
        }
        r.require(x >= 0, tag + ": negative");
        if (x == 0) {
          zero_seen = true;
        } else {
          r.require(!zero_seen && x % prev == 0, tag + ": divisibility chain");
          prev = x;
        }
      }
    ++count;
  }
  return r;
}

// 8
Check mutations(std::size_t& count) {
  Check r;
  const auto script = ledger::shipped_script();
  const auto leaves = ledger::leaf_facts_from_computation(model::build_context());
  r.require(ledger::check_script(script, leaves).pass, "unmutated script passes");
  for (std::size_t i = 0; i < script.axioms.size(); ++i) {
    auto m = script;
    m.axioms.erase(m.axioms.begin() + static_cast<std::ptrdiff_t>(i));
    r.require(!ledger::check_script(m, leaves).pass, "axiom " + script.axioms[i].id + " is redundant");
    ++count;
  }
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    auto m = script;
    m.steps.erase(m.steps.begin() + static_cast<std::ptrdiff_t>(i));
    r.require(!ledger::check_script(m, leaves).pass, "step " + script.steps[i].id + " is redundant");
    ++count;
  }
  // sigma <-> sigma^2 leaves criteria 1-3 unchanged
  for (auto c : {CycleConvention::Forward, CycleConvention::Backward}) {
    const std::string name = model::to_string(c);
    r.require(proposition(c).ok, "criterion 1 under " + name);
    r.require(vanishing(c).ok, "criterion 2 under " + name);
    r.require(end_to_end(c).ok, "criterion 3 under " + name);
  }
  const auto f = model::build_sigma_h1(CycleConvention::Forward).matrix();
  r.require(model::build_sigma_h1(CycleConvention::Backward).matrix() == f * f, "backward is sigma^2");
  return r;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  bool all = true;
  const auto report = [&](int n, const char* name, const std::function<Check(std::string&)>& body) {
    const auto t0 = clock::now();
    std::string note;
    Check c;
    try {
      c = body(note);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    all = all && c.ok;
    std::printf("criterion %d: %s  %s%s%s (%.2fs)\n", n, c.ok ? "PASS" : "FAIL", name, note.empty() ? "" : ", ",
                note.c_str(), secs);
    if (!c.ok) std::printf("    %s\n", c.detail.c_str());
  };

  report(1, "proposition table via exterior power, Green ring and minors", [](std::string&) {
    return proposition(CycleConvention::Forward);
  });
  report(2, "eight vanishing groups are zero", [](std::string&) { return vanishing(CycleConvention::Forward); });
  report(3, "full-cert end to end with duality-derived degrees", [](std::string&) {
    return end_to_end(CycleConvention::Forward);
  });
  report(4, "Green ring vs matrix oracle, all types of dimension <= 9", [](std::string& note) {
    std::size_t n = 0;
    auto c = oracle_equivalence(n);
    note = std::to_string(oracle::all_types(9).size()) + " types, " + std::to_string(n) + " comparisons";
    return c;
  });
  report(5, "closed form vs SNF on conjugated block sums", [](std::string& note) {
    std::size_t n = 0;
    auto c = closed_form(n);
    note = std::to_string(n) + " lattices";
    return c;
  });
  report(6, "dimension bookkeeping 8, 28, 56, 70", [](std::string&) { return dimensions(); });
  report(7, "Smith normal form certificates", [](std::string& note) {
    std::size_t n = 0;
    auto c = smith(n);
    note = std::to_string(n) + " matrices";
    return c;
  });
  report(8, "mutation robustness and convention swap", [](std::string& note) {
    std::size_t n = 0;
    auto c = mutations(n);
    note = std::to_string(n) + " deletions";
    return c;
  });
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
