#include "kummer/ledger_types.hpp"

#include "kummer/fp_matrix.hpp"

#include <algorithm>
#include <charconv>

namespace kummer::ledger {

std::string to_string(RuleErrorCode c) {
  switch (c) {
    case RuleErrorCode::UnknownRule: return "UnknownRule";
    case RuleErrorCode::MissingInput: return "MissingInput";
    case RuleErrorCode::ParameterMismatch: return "ParameterMismatch";
    case RuleErrorCode::InconsistentFact: return "InconsistentFact";
  }
  return "?";
}

// ---------------------------------------------------------------- GroupRef

GroupRef GroupRef::absolute(std::string space, int k) {
  GroupRef r;
  r.kind = RefKind::Absolute;
  r.degree = k;
  r.space = std::move(space);
  return r;
}

GroupRef GroupRef::relative(std::string space, std::string subspace, int k) {
  GroupRef r;
  r.kind = RefKind::Relative;
  r.degree = k;
  r.space = std::move(space);
  r.subspace = std::move(subspace);
  return r;
}

GroupRef GroupRef::group_cohomology(std::string group, int p, std::string space, int q) {
  GroupRef r;
  r.kind = RefKind::GroupCohomology;
  r.degree = p;
  r.group = std::move(group);
  r.space = std::move(space);
  r.coefficient_degree = q;
  return r;
}

namespace {

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '\'' ||
         c == '*' || c == '~' || c == '.' || c == '/' || c == '-' || c == '[' || c == ']';
}

bool is_identifier(std::string_view s) { return !s.empty() && std::all_of(s.begin(), s.end(), is_ident_char); }

// Parses "H^<n>(" and returns n; advances text past the parenthesis.
std::optional<int> parse_head(std::string_view& text) {
  if (text.substr(0, 2) != "H^") return std::nullopt;
  text.remove_prefix(2);
  int n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr == text.data() || n < 0) return std::nullopt;
  text.remove_prefix(static_cast<std::size_t>(ptr - text.data()));
  if (text.empty() || text.front() != '(') return std::nullopt;
  text.remove_prefix(1);
  return n;
}

}  // namespace

GroupRef GroupRef::parse(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> GroupRef { throw ScriptError("not a canonical group reference: \"" + original + "\""); };
  auto degree = parse_head(text);
  if (!degree || text.empty() || text.back() != ')') return fail();
  text.remove_suffix(1);

  if (auto semi = text.find(';'); semi != std::string_view::npos) {
    std::string_view group = text.substr(0, semi);
    std::string_view rest = text.substr(semi + 1);
    auto q = parse_head(rest);
    if (!q || rest.empty() || rest.back() != ')') return fail();
    rest.remove_suffix(1);
    if (!is_identifier(group) || !is_identifier(rest)) return fail();
    return group_cohomology(std::string(group), *degree, std::string(rest), *q);
  }
  if (auto comma = text.find(','); comma != std::string_view::npos) {
    std::string_view x = text.substr(0, comma), y = text.substr(comma + 1);
    if (!is_identifier(x) || !is_identifier(y)) return fail();
    return relative(std::string(x), std::string(y), *degree);
  }
  if (!is_identifier(text)) return fail();
  return absolute(std::string(text), *degree);
}

std::string GroupRef::id() const {
  const std::string head = "H^" + std::to_string(degree) + "(";
  switch (kind) {
    case RefKind::Absolute: return head + space + ")";
    case RefKind::Relative: return head + space + "," + subspace + ")";
    case RefKind::GroupCohomology:
      return head + group + ";H^" + std::to_string(coefficient_degree) + "(" + space + "))";
  }
  return head + ")";
}

std::vector<std::string> GroupRef::spaces() const {
  if (kind == RefKind::Relative) return {space, subspace};
  return {space};
}

// ---------------------------------------------------------------- Claim

Claim Claim::is_zero() { return {ClaimKind::IsZero, {}, {}, {}}; }
Claim Claim::torsion_free() { return {ClaimKind::TorsionFree, {}, {}, {}}; }

Claim Claim::only_primes(std::set<std::uint64_t> primes) {
  if (primes.empty()) return torsion_free();
  return {ClaimKind::OnlyPrimes, std::move(primes), {}, {}};
}

Claim Claim::iso_to(linalg::FinAbGroup g) { return {ClaimKind::IsoTo, {}, std::move(g), {}}; }
Claim Claim::torsion_equals(const GroupRef& other) { return {ClaimKind::TorsionEquals, {}, {}, other.id()}; }
Claim Claim::torsion_injects_into(const GroupRef& other) { return {ClaimKind::TorsionInjectsInto, {}, {}, other.id()}; }

std::set<std::uint64_t> Claim::prime_bound() const {
  switch (kind) {
    case ClaimKind::OnlyPrimes: return primes;
    case ClaimKind::IsoTo: {
      std::set<std::uint64_t> out;
      for (const auto& p : group.torsion_primes()) out.insert(static_cast<std::uint64_t>(p));
      return out;
    }
    default: return {};
  }
}

std::string Claim::to_string() const {
  switch (kind) {
    case ClaimKind::IsZero: return "IsZero";
    case ClaimKind::TorsionFree: return "TorsionFree";
    case ClaimKind::OnlyPrimes: {
      std::string s = "OnlyPrimes{";
      bool first = true;
      for (auto p : primes) {
        if (!first) s += ",";
        s += std::to_string(p);
        first = false;
      }
      return s + "}";
    }
    case ClaimKind::IsoTo: return "IsoTo(" + group.to_string() + ")";
    case ClaimKind::TorsionEquals: return "TorsionEquals(" + other + ")";
    case ClaimKind::TorsionInjectsInto: return "TorsionInjectsInto(" + other + ")";
  }
  return "?";
}

nlohmann::json Claim::to_json() const {
  switch (kind) {
    case ClaimKind::IsZero: return "IsZero";
    case ClaimKind::TorsionFree: return "TorsionFree";
    case ClaimKind::OnlyPrimes: return {{"OnlyPrimes", primes}};
    case ClaimKind::IsoTo: return {{"IsoTo", group.to_json()}};
    case ClaimKind::TorsionEquals: return {{"TorsionEquals", other}};
    case ClaimKind::TorsionInjectsInto: return {{"TorsionInjectsInto", other}};
  }
  return nullptr;
}

Claim Claim::from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "IsZero") return is_zero();
    if (s == "TorsionFree") return torsion_free();
    throw ScriptError("unknown claim \"" + s + "\"");
  }
  if (!j.is_object() || j.size() != 1) throw ScriptError("claim must be a string or a one-key object: " + j.dump());
  const auto& [key, value] = *j.items().begin();
  try {
    if (key == "OnlyPrimes") {
      std::set<std::uint64_t> primes;
      for (const auto& p : value) {
        const auto v = p.get<std::uint64_t>();
        if (!linalg::is_prime(v)) throw ScriptError("OnlyPrimes: " + std::to_string(v) + " is not prime");
        primes.insert(v);
      }
      return only_primes(std::move(primes));
    }
    if (key == "IsoTo") return iso_to(linalg::FinAbGroup::from_json(value));
    if (key == "TorsionEquals") return torsion_equals(GroupRef::parse(value.get<std::string>()));
    if (key == "TorsionInjectsInto") return torsion_injects_into(GroupRef::parse(value.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw ScriptError("claim " + key + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw ScriptError("claim " + key + ": " + e.what());
  }
  throw ScriptError("unknown claim \"" + key + "\"");
}

bool implies(const Claim& strong, const Claim& weak) {
  if (strong.is_relation() || weak.is_relation()) return strong == weak;
  switch (weak.kind) {
    case ClaimKind::IsZero:
      return strong.kind == ClaimKind::IsZero || (strong.kind == ClaimKind::IsoTo && strong.group.is_zero());
    case ClaimKind::IsoTo:
      return (strong.kind == ClaimKind::IsoTo && strong.group == weak.group) ||
             (strong.kind == ClaimKind::IsZero && weak.group.is_zero());
    case ClaimKind::TorsionFree:
    case ClaimKind::OnlyPrimes: {
      const auto allowed = weak.prime_bound();
      const auto have = strong.prime_bound();
      return std::includes(allowed.begin(), allowed.end(), have.begin(), have.end());
    }
    default: return false;
  }
}

bool contradicts(const Claim& a, const Claim& b) {
  if (a.is_relation() || b.is_relation()) return false;
  auto exact = [](const Claim& c) -> std::optional<linalg::FinAbGroup> {
    if (c.kind == ClaimKind::IsZero) return linalg::FinAbGroup::trivial();
    if (c.kind == ClaimKind::IsoTo) return c.group;
    return std::nullopt;
  };
  const auto ga = exact(a), gb = exact(b);
  if (ga && gb) return !(*ga == *gb);
  // One exact group against a torsion bound: the group's primes must fit.
  if (ga || gb) {
    const auto& g = ga ? *ga : *gb;
    const auto bound = ga ? b.prime_bound() : a.prime_bound();
    for (const auto& p : g.torsion_primes())
      if (!bound.count(static_cast<std::uint64_t>(p))) return true;
  }
  return false;
}

// ---------------------------------------------------------------- Fact

nlohmann::json Provenance::to_json() const {
  static const char* kinds[] = {"axiom", "computed", "rule"};
  nlohmann::json j = {{"kind", kinds[static_cast<int>(kind)]}, {"source", source}};
  if (!rule.empty()) j["rule"] = rule;
  if (!cite.empty()) j["cite"] = cite;
  if (!inputs.empty()) j["inputs"] = inputs;
  if (!hash.empty()) j["hash"] = hash;
  return j;
}

std::string Fact::key() const { return subject.id() + " : " + claim.to_string(); }

nlohmann::json Fact::to_json() const {
  return {{"key", key()}, {"subject", subject.id()}, {"claim", claim.to_json()}, {"provenance", provenance.to_json()}};
}

void FactSet::check_consistent(const GroupRef& subject, const Claim& claim) const {
  for (const Fact* f : about(subject))
    if (contradicts(f->claim, claim))
      throw RuleError(RuleErrorCode::InconsistentFact, "claim " + subject.id() + " : " + claim.to_string() +
                                                           " contradicts established " + f->key());
}

const Fact& FactSet::add(Fact f) {
  check_consistent(f.subject, f.claim);
  const std::string key = f.key();
  if (auto it = by_key_.find(key); it != by_key_.end()) return facts_[it->second];
  const std::size_t idx = facts_.size();
  by_subject_[f.subject.id()].push_back(idx);
  by_key_.emplace(key, idx);
  facts_.push_back(std::move(f));
  return facts_.back();
}

const Fact* FactSet::find(const GroupRef& subject, const Claim& wanted) const {
  for (const Fact* f : about(subject))
    if (implies(f->claim, wanted)) return f;
  return nullptr;
}

std::vector<const Fact*> FactSet::about(const GroupRef& subject) const {
  std::vector<const Fact*> out;
  if (auto it = by_subject_.find(subject.id()); it != by_subject_.end())
    for (std::size_t i : it->second) out.push_back(&facts_[i]);
  return out;
}

std::optional<std::size_t> FactSet::index_of(const std::string& key) const {
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  return std::nullopt;
}

// ---------------------------------------------------------------- Script

namespace {

template <class T>
T get_field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ScriptError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ScriptError(where + ": field \"" + key + "\" has the wrong type");
  }
}

template <class T>
T get_field_or(const nlohmann::json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return get_field<T>(j, key, where);
}

}  // namespace

nlohmann::json SpaceInfo::to_json() const {
  nlohmann::json j = {{"id", id}, {"name", name}};
  if (real_dim) j["real_dim"] = *real_dim;
  if (closed_oriented) j["closed_oriented"] = true;
  if (complement_of)
    j["complement_of"] = {{"ambient", complement_of->ambient},
                          {"removed", complement_of->removed},
                          {"copies", complement_of->copies},
                          {"codim", complement_of->codim},
                          {"invariant_under", complement_of->invariant_under}};
  if (blowup_of)
    j["blowup_of"] = {{"base", blowup_of->base}, {"center", blowup_of->center}, {"codim", blowup_of->codim}};
  if (covers) j["covers"] = {{"base", covers->base}, {"degree", covers->degree}};
  if (quotient_of)
    j["quotient_of"] = {{"space", quotient_of->space}, {"group", quotient_of->group}, {"free", quotient_of->free}};
  return j;
}

SpaceInfo SpaceInfo::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ScriptError("space entry must be an object");
  SpaceInfo s;
  s.id = get_field<std::string>(j, "id", "space");
  const std::string where = "space " + s.id;
  if (!is_identifier(s.id)) throw ScriptError(where + ": invalid identifier");
  s.name = get_field_or<std::string>(j, "name", s.id, where);
  if (j.contains("real_dim")) s.real_dim = get_field<int>(j, "real_dim", where);
  s.closed_oriented = get_field_or<bool>(j, "closed_oriented", false, where);
  if (s.closed_oriented && !s.real_dim) throw ScriptError(where + ": closed_oriented requires real_dim");
  if (j.contains("complement_of")) {
    const auto& c = j["complement_of"];
    s.complement_of = Complement{get_field<std::string>(c, "ambient", where), get_field<std::string>(c, "removed", where),
                                 get_field<std::uint64_t>(c, "copies", where), get_field<int>(c, "codim", where),
                                 get_field_or<std::vector<std::string>>(c, "invariant_under", {}, where)};
  }
  if (j.contains("blowup_of")) {
    const auto& b = j["blowup_of"];
    s.blowup_of = Blowup{get_field<std::string>(b, "base", where), get_field<std::string>(b, "center", where),
                         get_field<int>(b, "codim", where)};
  }
  if (j.contains("covers")) {
    const auto& c = j["covers"];
    s.covers = Cover{get_field<std::string>(c, "base", where), get_field<std::uint64_t>(c, "degree", where)};
  }
  if (j.contains("quotient_of")) {
    const auto& q = j["quotient_of"];
    s.quotient_of = Quotient{get_field<std::string>(q, "space", where), get_field<std::string>(q, "group", where),
                             get_field_or<bool>(q, "free", false, where)};
  }
  return s;
}

nlohmann::json Statement::to_json() const { return {{"subject", subject.id()}, {"claim", claim.to_json()}}; }

Statement Statement::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ScriptError("statement must be an object");
  return {GroupRef::parse(get_field<std::string>(j, "subject", "statement")),
          Claim::from_json(j.contains("claim") ? j["claim"] : throw ScriptError("statement: missing \"claim\""))};
}

SpaceTable Script::space_table() const {
  SpaceTable t;
  for (const auto& s : spaces) t.emplace(s.id, s);
  return t;
}

nlohmann::json Script::to_json() const {
  nlohmann::json j = {{"format", format}, {"title", title}};
  j["spaces"] = nlohmann::json::array();
  for (const auto& s : spaces) j["spaces"].push_back(s.to_json());
  j["axioms"] = nlohmann::json::array();
  for (const auto& a : axioms) {
    nlohmann::json aj = {{"id", a.id}, {"cite", a.cite}};
    if (a.computed) aj["computed"] = true;
    aj["facts"] = nlohmann::json::array();
    for (const auto& f : a.facts) aj["facts"].push_back(f.to_json());
    j["axioms"].push_back(aj);
  }
  j["steps"] = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json sj = {{"id", s.id}, {"rule", s.rule}, {"params", s.params}, {"inputs", s.inputs}};
    if (!s.yields.empty()) {
      sj["yields"] = nlohmann::json::array();
      for (const auto& y : s.yields) sj["yields"].push_back(y.to_json());
    }
    j["steps"].push_back(sj);
  }
  j["goals"] = nlohmann::json::array();
  for (const auto& g : goals) j["goals"].push_back(g.to_json());
  return j;
}

Script Script::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ScriptError("script must be a JSON object");
  for (const char* section : {"spaces", "axioms", "steps", "goals"})
    if (!j.contains(section) || !j[section].is_array())
      throw ScriptError(std::string("script: missing array section \"") + section + "\"");

  Script s;
  s.format = get_field_or<std::string>(j, "format", "", "script");
  s.title = get_field_or<std::string>(j, "title", "", "script");
  std::set<std::string> declared;
  for (const auto& sj : j["spaces"]) {
    s.spaces.push_back(SpaceInfo::from_json(sj));
    if (!declared.insert(s.spaces.back().id).second) throw ScriptError("space " + s.spaces.back().id + " declared twice");
  }
  auto require_space = [&](const std::string& id, const std::string& where) {
    if (!declared.count(id)) throw ScriptError(where + ": undeclared space \"" + id + "\"");
  };
  for (const auto& sp : s.spaces) {
    const std::string where = "space " + sp.id;
    if (sp.complement_of) {
      require_space(sp.complement_of->ambient, where);
      require_space(sp.complement_of->removed, where);
    }
    if (sp.blowup_of) {
      require_space(sp.blowup_of->base, where);
      require_space(sp.blowup_of->center, where);
    }
    if (sp.covers) require_space(sp.covers->base, where);
    if (sp.quotient_of) require_space(sp.quotient_of->space, where);
  }
  auto check_statement = [&](const Statement& st, const std::string& where) {
    for (const auto& sp : st.subject.spaces()) require_space(sp, where);
    if (st.claim.is_relation())
      for (const auto& sp : GroupRef::parse(st.claim.other).spaces()) require_space(sp, where);
  };

  std::set<std::string> ids;
  for (const auto& aj : j["axioms"]) {
    Axiom a;
    a.id = get_field<std::string>(aj, "id", "axiom");
    const std::string where = "axiom " + a.id;
    if (!ids.insert(a.id).second) throw ScriptError(where + ": duplicate id");
    a.cite = get_field_or<std::string>(aj, "cite", "", where);
    a.computed = get_field_or<bool>(aj, "computed", false, where);
    if (!a.computed && a.cite.empty()) throw ScriptError(where + ": external axioms need a \"cite\"");
    if (!aj.contains("facts") || !aj["facts"].is_array() || aj["facts"].empty())
      throw ScriptError(where + ": needs a non-empty \"facts\" array");
    for (const auto& fj : aj["facts"]) {
      a.facts.push_back(Statement::from_json(fj));
      check_statement(a.facts.back(), where);
    }
    s.axioms.push_back(std::move(a));
  }
  for (const auto& stj : j["steps"]) {
    RuleApplication r;
    r.id = get_field<std::string>(stj, "id", "step");
    const std::string where = "step " + r.id;
    if (!ids.insert(r.id).second) throw ScriptError(where + ": duplicate id");
    r.rule = get_field<std::string>(stj, "rule", where);
    if (stj.contains("params")) {
      if (!stj["params"].is_object()) throw ScriptError(where + ": \"params\" must be an object");
      r.params = stj["params"];
    }
    r.inputs = get_field_or<std::vector<std::string>>(stj, "inputs", {}, where);
    for (const auto& in : r.inputs)
      for (const auto& sp : GroupRef::parse(in).spaces()) require_space(sp, where);
    if (stj.contains("yields")) {
      if (!stj["yields"].is_array()) throw ScriptError(where + ": \"yields\" must be an array");
      for (const auto& yj : stj["yields"]) {
        r.yields.push_back(Statement::from_json(yj));
        check_statement(r.yields.back(), where);
      }
    }
    s.steps.push_back(std::move(r));
  }
  for (const auto& gj : j["goals"]) {
    s.goals.push_back(Statement::from_json(gj));
    check_statement(s.goals.back(), "goal");
  }
  return s;
}

Script Script::parse(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScriptError(std::string("script is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

}  // namespace kummer::ledger
