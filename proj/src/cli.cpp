#include "kummer/cli.hpp"

#include "kummer/cyclic_cohomology.hpp"
#include "kummer/error.hpp"
#include "kummer/green_ring.hpp"
#include "kummer/torsion_ledger.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace kummer::cli {

using nlohmann::json;
using linalg::FinAbGroup;
using linalg::IntMatrix;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"ell-table", "cohomology", "verify-proposition", "check-ledger",
                                              "full-cert"};
  return names;
}

std::string to_string(Command c) { return command_names().at(static_cast<std::size_t>(c)); }

std::optional<Command> parse_command(std::string_view name) {
  const auto& names = command_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<Command>(i);
  return std::nullopt;
}

void validate(const RunConfig& config) {
  const bool wants_script = config.command == Command::CheckLedger;
  if (wants_script && !config.script_path) throw InvalidArgument("check-ledger requires --script");
  if (!wants_script && config.script_path)
    throw InvalidArgument("--script is only accepted by check-ledger, not " + to_string(config.command));
}

namespace {

const char* kComputed = "computed";
const char* kPaperExpected = "paper-expected";

struct Outcome {
  int code = kOk;
  json report = json::object();
  std::ostringstream text;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

json group_json(const FinAbGroup& g, const char* provenance) {
  return {{"group", g.to_string()}, {"value", g.to_json()}, {"provenance", provenance}};
}

const char* roman(int k) {
  static const char* r[] = {"", "(i)", "(ii)", "(iii)", "(iv)"};
  return k >= 1 && k <= 4 ? r[k] : "";
}

std::string convention_text(model::CycleConvention c) {
  return c == model::CycleConvention::Forward ? "forward, (x,y) -> (y,-x-y)" : "backward, (x,y) -> (-x-y,x)";
}

// ---------------------------------------------------------------- ell-table

void ell_table(const model::KummerContext& ctx, Outcome& o) {
  json rows = json::array();
  auto& os = o.text;
  os << "Jordan types of H^k(AxA, F_3) = L^k H^1   [computed]\n";
  os << "generator: " << convention_text(ctx.convention) << "\n";
  os << " k  dim  (l1, l2, l3) matrix   (l1, l2, l3) green ring\n";
  bool agree = true;
  for (const auto& [k, row] : ctx.ell_routes) {
    const bool same = row.matrix_route == row.green_route;
    agree = agree && same;
    os << std::setw(2) << k << std::setw(5) << row.matrix_route.dimension() << "  " << std::left << std::setw(20)
       << row.matrix_route.to_string() << " " << row.green_route.to_string() << std::right << (same ? "" : "  MISMATCH")
       << "\n";
    rows.push_back({{"k", k},
                    {"dimension", row.matrix_route.dimension()},
                    {"matrix_route", row.matrix_route},
                    {"green_route", row.green_route},
                    {"agree", same},
                    {"provenance", kComputed}});
  }
  o.report["rows"] = rows;
  o.report["pass"] = agree;
  if (!agree) o.code = kInternalError;
}

// ---------------------------------------------------------------- verify-proposition

bool proposition_rows(const model::KummerContext& ctx, json& rows, std::ostream& os) {
  const auto& expected = model::Expected::ell_table();
  bool pass = true;
  os << "item  k  expected [paper-expected]  matrix route [computed]  green route [computed]  dim\n";
  for (const auto& [k, want] : expected) {
    const auto& row = ctx.ell_routes.at(k);
    const std::uint64_t dim = binomial(8, static_cast<std::uint64_t>(k));
    std::uint64_t weighted = 0;
    for (int q = 1; q <= 3; ++q) weighted += static_cast<std::uint64_t>(q) * row.matrix_route.count(q);
    const bool ok = row.matrix_route == want && row.green_route == want && weighted == dim;
    pass = pass && ok;
    os << std::left << std::setw(6) << roman(k) << std::right << std::setw(1) << k << "  " << std::left
       << std::setw(26) << want.to_string() << std::setw(25) << row.matrix_route.to_string() << std::setw(24)
       << row.green_route.to_string() << std::setw(7) << (std::to_string(weighted) + "/" + std::to_string(dim))
       << std::right << (ok ? " ok" : " MISMATCH") << "\n";
    rows.push_back({{"item", roman(k)},
                    {"k", k},
                    {"expected", {{"value", want}, {"provenance", kPaperExpected}}},
                    {"matrix_route", {{"value", row.matrix_route}, {"provenance", kComputed}}},
                    {"green_route", {{"value", row.green_route}, {"provenance", kComputed}}},
                    {"weighted_dimension", weighted},
                    {"binomial", dim},
                    {"ok", ok}});
  }
  return pass;
}

void verify_proposition(const model::KummerContext& ctx, Outcome& o) {
  json rows = json::array();
  const bool pass = proposition_rows(ctx, rows, o.text);
  o.text << "proposition: " << (pass ? "reproduced" : "NOT reproduced") << "\n";
  o.report["rows"] = rows;
  o.report["pass"] = pass;
  if (!pass) o.code = kVerificationFailure;
}

// ---------------------------------------------------------------- cohomology

void cohomology(const model::KummerContext& ctx, Outcome& o) {
  json entries = json::array();
  bool agree = true;
  auto& os = o.text;
  os << "H^p(A3; H^q(AxA)) by Smith normal form and by the closed form in l1, l2   [computed]\n";
  os << " p  q  Jordan type of H^q     SNF          closed form\n";
  for (int q = 0; q <= 4; ++q) {
    const auto t = ctx.sigma_h1.exterior_power(static_cast<std::size_t>(q));
    const auto jt = t.jordan_type();
    for (int p = 1; p <= 2; ++p) {
      const auto snf = cohomology::cohomology_snf(t, static_cast<std::uint64_t>(p));
      const auto closed = cohomology::cohomology_closed_form(jt, cohomology::parity_of(static_cast<std::uint64_t>(p)));
      const bool same = snf == closed;
      agree = agree && same;
      os << std::setw(2) << p << std::setw(3) << q << "  " << std::left << std::setw(21) << jt.to_string()
         << std::setw(13) << snf.to_string() << closed.to_string() << std::right << (same ? "" : "  MISMATCH") << "\n";
      entries.push_back({{"p", p},
                         {"q", q},
                         {"jordan_type", jt},
                         {"snf", group_json(snf, kComputed)},
                         {"closed_form", group_json(closed, kComputed)},
                         {"agree", same}});
    }
  }
  o.report["entries"] = entries;
  o.report["pass"] = agree;
  if (!agree) o.code = kVerificationFailure;
}

// ---------------------------------------------------------------- check-ledger

json leaf_json(const std::vector<ledger::Fact>& leaves) {
  json out = json::array();
  for (const auto& f : leaves) out.push_back(f.to_json());
  return out;
}

void check_ledger(const RunConfig& config, const model::KummerContext& ctx, Outcome& o, std::ostream& err) {
  std::ifstream in(*config.script_path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read script " + *config.script_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto script = ledger::Script::parse(buf.str());
  const auto leaves = ledger::leaf_facts_from_computation(ctx);
  const auto report = ledger::check_script(script, leaves);

  o.report["script"] = *config.script_path;
  o.report["leaf_facts"] = leaf_json(leaves);
  o.report["ledger"] = report.to_json();
  o.report["pass"] = report.pass;
  o.text << report.to_text();
  if (!report.pass) {
    o.code = kVerificationFailure;
    if (const auto* f = report.first_failed_step())
      err << "kummer-cert: first failing step " << f->id << " (" << f->rule << "): " << f->error << "\n";
    else
      err << "kummer-cert: ledger did not establish every goal\n";
  }
}

// ---------------------------------------------------------------- full-cert

// Random lattice of rank <= max_rank: a block sum of Z, Z[zeta_3], Z[C_3],
// conjugated by a random unimodular matrix.
cohomology::LatticeAction random_lattice(std::mt19937_64& rng, std::size_t max_rank) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::size_t> target_dist(1, max_rank);
  const std::size_t target = target_dist(rng);
  std::optional<cohomology::LatticeAction> t;
  while (!t || t->rank() < target) {
    const std::size_t left = target - (t ? t->rank() : 0);
    const int pick = kind(rng);
    cohomology::LatticeAction block = pick == 0 || left < 2 ? cohomology::LatticeAction::trivial()
                                      : pick == 1 || left < 3 ? cohomology::LatticeAction::rotation()
                                                              : cohomology::LatticeAction::permutation();
    t = t ? t->direct_sum(block) : block;
  }
  const std::size_t n = t->rank();
  IntMatrix p = IntMatrix::identity(n), p_inv = IntMatrix::identity(n);
  if (n > 1) {
    std::uniform_int_distribution<std::size_t> index(0, n - 1);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (std::size_t step = 0; step < 3 * n; ++step) {
      const std::size_t i = index(rng), j = index(rng);
      if (i == j) continue;
      const int c = coeff(rng);
      if (c == 0) {
        p.swap_rows(i, j);
        p_inv.swap_cols(i, j);
      } else {
        p.add_row_multiple(i, j, c);
        p_inv.add_col_multiple(j, i, -c);
      }
    }
  }
  return t->conjugate(p, p_inv);
}

struct Stage {
  std::string name;
  bool pass = false;
  std::string detail;
  json data = json::object();
};

void full_cert(const RunConfig& config, const model::KummerContext& ctx, Outcome& o) {
  std::vector<Stage> stages;

  {
    Stage s{"sigma", false, {}, {}};
    const auto& m = ctx.sigma_h1.matrix();
    const bool order3 = linalg::power(m, 3).is_identity() && !m.is_identity();
    const auto jt = ctx.sigma_h1.jordan_type();
    const auto fixed = cohomology::fixed_points(ctx.sigma_h1);
    s.pass = order3 && jt == JordanType::n2(4) && fixed.is_zero();
    s.detail = "generator on H^1(AxA) = Z^8 has order 3, Jordan type " + jt.to_string() + ", fixed lattice " +
               fixed.to_string();
    s.data = {{"matrix", m.to_json()}, {"jordan_type", jt}, {"fixed_lattice", group_json(fixed, kComputed)}};
    stages.push_back(std::move(s));
  }
  {
    Stage s{"proposition", false, {}, {}};
    json rows = json::array();
    std::ostringstream sink;
    s.pass = proposition_rows(ctx, rows, sink);
    std::string list;
    for (const auto& [k, t] : ctx.ell) list += (list.empty() ? "" : ", ") + ("k=" + std::to_string(k) + " " + t.to_string());
    s.detail = list + (s.pass ? ", both routes match the expected table" : ", does not match the expected table");
    s.data = {{"rows", rows}};
    stages.push_back(std::move(s));
  }
  {
    Stage s{"dimensions", true, {}, {}};
    std::string list;
    for (const auto& [k, t] : ctx.ell) {
      const auto dim = binomial(8, static_cast<std::uint64_t>(k));
      s.pass = s.pass && t.dimension() == dim;
      list += (list.empty() ? "" : ", ") + std::to_string(t.dimension()) + "=C(8," + std::to_string(k) + ")";
    }
    s.detail = "sum q*l_q: " + list;
    stages.push_back(std::move(s));
  }
  {
    Stage s{"vanishing", true, {}, {}};
    json entries = json::array();
    std::string nonzero;
    for (const auto& e : ctx.vanishing) {
      entries.push_back({{"p", e.p}, {"q", e.q}, {"result", group_json(e.group, kComputed)}});
      if (!e.group.is_zero() && nonzero.empty())
        nonzero = "H^" + std::to_string(e.p) + "(A3;H^" + std::to_string(e.q) + ") = " + e.group.to_string();
    }
    s.pass = nonzero.empty() && ctx.vanishing.size() == model::vanishing_pairs().size();
    s.detail = s.pass ? "all " + std::to_string(ctx.vanishing.size()) + " groups H^p(A3;H^q(AxA)), p+q in {3,5}, vanish"
                      : "non-zero: " + nonzero;
    s.data = {{"entries", entries}};
    stages.push_back(std::move(s));
  }

  std::vector<ledger::Fact> leaves;
  {
    Stage s{"leaf_facts", false, {}, {}};
    try {
      leaves = ledger::leaf_facts_from_computation(ctx);
      s.pass = true;
      s.detail = std::to_string(leaves.size()) + " computed facts tagged " + ctx.hash();
      s.data = {{"facts", leaf_json(leaves)}};
    } catch (const CertificateFailure& e) {
      s.detail = e.what();
    }
    stages.push_back(std::move(s));
  }

  std::optional<ledger::Report> report;
  {
    Stage s{"ledger", false, {}, {}};
    if (stages.back().pass) {
      report = ledger::check_script(ledger::shipped_script(), leaves);
      s.pass = report->pass;
      std::size_t ok = 0;
      for (const auto& st : report->steps) ok += st.ok ? 1 : 0;
      s.detail = "kummer.proof: " + std::to_string(report->axioms.size()) + " axioms, " + std::to_string(ok) + "/" +
                 std::to_string(report->steps.size()) + " steps valid, " +
                 (s.pass ? "all goals established" : "FAILED");
      if (const auto* f = report->first_failed_step()) s.detail += "; first failure " + f->id + ": " + f->error;
      s.data = {{"report", report->to_json()}};
    } else {
      s.detail = "skipped: no leaf facts";
    }
    stages.push_back(std::move(s));
  }
  {
    Stage s{"convention", false, {}, {}};
    const auto other = ctx.convention == model::CycleConvention::Forward ? model::CycleConvention::Backward
                                                                         : model::CycleConvention::Forward;
    const auto alt = model::build_context(other);
    bool same = alt.ell == ctx.ell && alt.vanishing.size() == ctx.vanishing.size() && alt.fixed_parts == ctx.fixed_parts;
    for (std::size_t i = 0; same && i < alt.vanishing.size(); ++i) same = alt.vanishing[i].group == ctx.vanishing[i].group;
    const bool inverse = alt.sigma_h1 == ctx.sigma_h1.inverse();
    s.pass = same && inverse;
    s.detail = std::string("other generator (") + convention_text(other) + ") is the inverse" +
               (inverse ? "" : " NOT") + " and gives " + (same ? "identical" : "DIFFERENT") +
               " Jordan types and cohomology";
    stages.push_back(std::move(s));
  }
  {
    Stage s{"cross_check", true, {}, {}};
    const std::uint64_t seed = config.seed.value_or(kDefaultSeed);
    std::mt19937_64 rng(seed);
    constexpr int kSamples = 60;
    int checked = 0;
    for (int i = 0; i < kSamples && s.pass; ++i) {
      const auto t = random_lattice(rng, 12);
      const auto jt = t.jordan_type();
      for (std::uint64_t p = 1; p <= 4 && s.pass; ++p) {
        const auto g = cohomology::cohomology_snf(t, p);
        if (g != cohomology::cohomology_closed_form(jt, cohomology::parity_of(p)) ||
            g != cohomology::cohomology_snf(t, p + 2)) {
          s.pass = false;
          s.detail = "sample " + std::to_string(i) + " degree " + std::to_string(p) + " disagrees";
        }
        ++checked;
      }
    }
    if (s.pass)
      s.detail = std::to_string(kSamples) + " random lattices of rank <= 12 (seed " + std::to_string(seed) +
                 "): SNF = closed form in degrees 1..4, periodic";
    s.data = {{"seed", seed}, {"samples", kSamples}, {"checks", checked}};
    stages.push_back(std::move(s));
  }

  bool pass = true;
  json sj = json::array();
  for (const auto& s : stages) {
    pass = pass && s.pass;
    o.text << "[" << (s.pass ? "PASS" : "FAIL") << "] " << std::left << std::setw(12) << s.name << std::right << s.detail
           << "\n";
    json entry = {{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}};
    if (!s.data.empty()) entry["data"] = s.data;
    sj.push_back(entry);
  }
  o.report["stages"] = sj;
  o.report["context_hash"] = ctx.hash();

  json degrees = json::array();
  if (report) {
    for (const auto& g : report->goals) {
      std::string source, rule;
      if (const auto idx = std::find_if(report->facts.begin(), report->facts.end(),
                                        [&](const ledger::Fact& f) { return f.key() == g.fact; });
          idx != report->facts.end()) {
        source = idx->provenance.source;
        rule = idx->provenance.kind == ledger::ProvenanceKind::Rule ? idx->provenance.rule : "axiom";
      }
      degrees.push_back({{"degree", g.goal.subject.degree},
                         {"torsion_free", g.established},
                         {"source", source},
                         {"rule", rule}});
      if (pass)
        o.text << "  Tors H^" << g.goal.subject.degree << "(K2(A)) = 0   via " << (rule.empty() ? "-" : rule) << " ["
               << source << "]\n";
    }
  }
  o.report["degrees"] = degrees;
  o.report["pass"] = pass;
  if (pass) {
    o.report["conclusion"] = "Tors H^k(K₂(A)) = 0 for all k";
    o.text << "Tors H^k(K₂(A)) = 0 for all k\n";
  } else {
    o.code = kVerificationFailure;
    o.text << "certificate: FAILED\n";
  }
}

int code_for(const std::exception& e) {
  if (dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const ledger::ScriptError*>(&e) ||
      dynamic_cast<const BadDegree*>(&e))
    return kBadInput;
  if (dynamic_cast<const CertificateFailure*>(&e)) return kVerificationFailure;
  return kInternalError;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  o.report["tool"] = "kummer-cert";
  o.report["command"] = to_string(config.command);
  o.report["convention"] = model::to_string(config.convention);
  std::string error;
  try {
    validate(config);
    const auto ctx = model::build_context(config.convention);
    switch (config.command) {
      case Command::EllTable: ell_table(ctx, o); break;
      case Command::VerifyProposition: verify_proposition(ctx, o); break;
      case Command::Cohomology: cohomology(ctx, o); break;
      case Command::CheckLedger: check_ledger(config, ctx, o, err); break;
      case Command::FullCert: full_cert(config, ctx, o); break;
    }
  } catch (const std::exception& e) {
    o.code = code_for(e);
    error = e.what();
    err << "kummer-cert: " << (o.code == kBadInput ? "bad input: " : o.code == kInternalError ? "internal error: " : "")
        << error << "\n";
  }

  if (config.format == Format::Json) {
    if (!error.empty()) {
      o.report["pass"] = false;
      o.report["error"] = error;
    }
    o.report["exit_code"] = o.code;
    out << o.report.dump(2) << "\n";
  } else {
    out << o.text.str();
  }
  return o.code;
}

}  // namespace kummer::cli
