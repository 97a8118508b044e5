#include "kummer/torsion_ledger.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace kummer::ledger {

using linalg::FinAbGroup;

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names{
      "thom_iso",           "les_inject",     "les_torsion_equal", "transfer_cover", "blowup_split",
      "duality_uct",        "spectral_vanishing", "complement_iso", "combine_primes", "torsion_transport",
  };
  return names;
}

namespace {

std::set<std::uint64_t> prime_factors(std::uint64_t n) {
  std::set<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      out.insert(d);
      n /= d;
    }
  if (n > 1) out.insert(n);
  return out;
}

// Rank of a content claim: smaller is stronger.
std::size_t strength(const Claim& c) {
  switch (c.kind) {
    case ClaimKind::IsZero: return 0;
    case ClaimKind::IsoTo: return 1;
    case ClaimKind::TorsionFree: return 2;
    case ClaimKind::OnlyPrimes: return 3 + c.primes.size();
    default: return SIZE_MAX;
  }
}

class RuleContext {
 public:
  RuleContext(FactSet& state, const RuleApplication& app, const SpaceTable& spaces)
      : state_(state), app_(app), spaces_(spaces) {}

  [[noreturn]] void mismatch(const std::string& what) const {
    throw RuleError(RuleErrorCode::ParameterMismatch, app_.id + " (" + app_.rule + "): " + what);
  }
  [[noreturn]] void missing(const std::string& what) const {
    throw RuleError(RuleErrorCode::MissingInput, app_.id + " (" + app_.rule + "): " + what);
  }

  const nlohmann::json& param(const char* key) const {
    if (!app_.params.contains(key)) mismatch(std::string("missing parameter \"") + key + "\"");
    return app_.params.at(key);
  }
  std::int64_t param_int(const char* key) const {
    const auto& v = param(key);
    if (!v.is_number_integer()) mismatch(std::string("parameter \"") + key + "\" must be an integer");
    return v.get<std::int64_t>();
  }
  std::string param_str(const char* key) const {
    const auto& v = param(key);
    if (!v.is_string()) mismatch(std::string("parameter \"") + key + "\" must be a string");
    return v.get<std::string>();
  }
  std::pair<std::string, std::string> param_pair(const char* key) const {
    const auto& v = param(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string())
      mismatch(std::string("parameter \"") + key + "\" must be a pair of space ids");
    return {v[0].get<std::string>(), v[1].get<std::string>()};
  }
  GroupRef param_ref(const char* key) const {
    try {
      return GroupRef::parse(param_str(key));
    } catch (const ScriptError& e) {
      mismatch(e.what());
    }
  }

  const SpaceInfo& space(const std::string& id) const {
    auto it = spaces_.find(id);
    if (it == spaces_.end()) mismatch("undeclared space \"" + id + "\"");
    return it->second;
  }

  /// The step must list exactly these groups as inputs (order-insensitive).
  void expect_inputs(const std::vector<GroupRef>& expected) const {
    std::vector<std::string> want, have = app_.inputs;
    for (const auto& r : expected) want.push_back(r.id());
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    if (want != have) {
      std::string list;
      for (const auto& w : want) list += (list.empty() ? "" : ", ") + w;
      mismatch("inputs must be exactly [" + list + "]");
    }
  }

  const Fact& require(const GroupRef& subject, const Claim& wanted) {
    const Fact* f = state_.find(subject, wanted);
    if (!f) missing(subject.id() + " : " + wanted.to_string() + " is not established");
    use(*f);
    return *f;
  }

  /// Strongest established content fact on subject.
  const Fact& bound(const GroupRef& subject) {
    const Fact* best = nullptr;
    for (const Fact* f : state_.about(subject))
      if (!f->claim.is_relation() && (!best || strength(f->claim) < strength(best->claim))) best = f;
    if (!best) missing("nothing is established about " + subject.id());
    use(*best);
    return *best;
  }

  const Fact* find_relation(const GroupRef& subject, const Claim& relation) {
    const Fact* f = state_.find(subject, relation);
    if (f) use(*f);
    return f;
  }

  Fact derive(GroupRef subject, Claim claim) const {
    Provenance p;
    p.kind = ProvenanceKind::Rule;
    p.source = app_.id;
    p.rule = app_.rule;
    p.inputs = used_;
    return {std::move(subject), std::move(claim), std::move(p)};
  }

  const RuleApplication& app() const { return app_; }

 private:
  void use(const Fact& f) {
    const auto key = f.key();
    if (std::find(used_.begin(), used_.end(), key) == used_.end()) used_.push_back(key);
  }

  FactSet& state_;
  const RuleApplication& app_;
  const SpaceTable& spaces_;
  std::vector<std::string> used_;
};

// Claim about copies of a group: G^copies.
Claim scaled(const Claim& c, std::uint64_t copies) {
  if (copies == 0 || c.kind == ClaimKind::IsZero) return Claim::is_zero();
  if (c.kind == ClaimKind::IsoTo) return Claim::iso_to(c.group.power(copies));
  return Claim::only_primes(c.prime_bound());
}

// Claim about a direct sum of groups.
Claim summed(const std::vector<Claim>& parts) {
  bool exact = true;
  FinAbGroup total;
  std::set<std::uint64_t> primes;
  for (const auto& c : parts) {
    if (c.kind == ClaimKind::IsoTo)
      total = total.direct_sum(c.group);
    else if (c.kind != ClaimKind::IsZero)
      exact = false;
    const auto b = c.prime_bound();
    primes.insert(b.begin(), b.end());
  }
  if (exact) return total.is_zero() ? Claim::is_zero() : Claim::iso_to(total);
  return Claim::only_primes(primes);
}

const SpaceInfo::Complement& complement_pair(RuleContext& ctx, const std::string& ambient, const std::string& sub) {
  const auto& info = ctx.space(sub);
  if (!info.complement_of || info.complement_of->ambient != ambient)
    ctx.mismatch("(" + ambient + "," + sub + ") is not declared as a space and an open complement in it");
  return *info.complement_of;
}

// H^k(X,Y) = (+)_copies H^{k-c}(Z) for Y = X \ (copies of Z), Z of real codimension c.
std::vector<Fact> thom_iso(RuleContext& ctx) {
  const auto [ambient, sub] = ctx.param_pair("pair");
  const auto center = ctx.param_str("center");
  const auto copies = ctx.param_int("copies");
  const auto codim = ctx.param_int("codim");
  const auto k = ctx.param_int("k");
  const auto& c = complement_pair(ctx, ambient, sub);
  if (c.removed != center || static_cast<std::int64_t>(c.copies) != copies || c.codim != codim)
    ctx.mismatch("center data (" + center + ", copies " + std::to_string(copies) + ", codim " + std::to_string(codim) +
                 ") disagrees with the space table (" + c.removed + ", copies " + std::to_string(c.copies) +
                 ", codim " + std::to_string(c.codim) + ")");
  if (k < 0) ctx.mismatch("negative degree");
  const GroupRef out = GroupRef::relative(ambient, sub, static_cast<int>(k));
  if (k < codim) {
    ctx.expect_inputs({});
    return {ctx.derive(out, Claim::is_zero())};
  }
  const GroupRef in = GroupRef::absolute(center, static_cast<int>(k - codim));
  ctx.expect_inputs({in});
  const Claim claim = scaled(ctx.bound(in).claim, static_cast<std::uint64_t>(copies));
  return {ctx.derive(out, claim)};
}

// H^k(X,Y) -> H^k(X) -> H^k(Y) -> H^{k+1}(X,Y) with the outer terms 0 and torsion free.
std::vector<Fact> les_torsion_equal(RuleContext& ctx) {
  const auto [ambient, sub] = ctx.param_pair("pair");
  const auto k = static_cast<int>(ctx.param_int("k"));
  complement_pair(ctx, ambient, sub);
  const GroupRef left = GroupRef::relative(ambient, sub, k), right = GroupRef::relative(ambient, sub, k + 1);
  ctx.expect_inputs({left, right});
  ctx.require(left, Claim::is_zero());
  ctx.require(right, Claim::torsion_free());
  return {ctx.derive(GroupRef::absolute(ambient, k), Claim::torsion_equals(GroupRef::absolute(sub, k)))};
}

// H^k(X,Y) = 0 -> H^k(X) -> H^k(Y): the restriction is injective.
std::vector<Fact> les_inject(RuleContext& ctx) {
  const auto [ambient, sub] = ctx.param_pair("pair");
  const auto k = static_cast<int>(ctx.param_int("k"));
  complement_pair(ctx, ambient, sub);
  const GroupRef left = GroupRef::relative(ambient, sub, k);
  ctx.expect_inputs({left});
  ctx.require(left, Claim::is_zero());
  return {ctx.derive(GroupRef::absolute(ambient, k), Claim::torsion_injects_into(GroupRef::absolute(sub, k)))};
}

// Moves a torsion bound along TorsionEquals (either direction) or TorsionInjectsInto.
std::vector<Fact> torsion_transport(RuleContext& ctx) {
  const GroupRef from = ctx.param_ref("from");
  const GroupRef to = ctx.param_ref("to");
  ctx.expect_inputs({from, to});
  const bool related = ctx.find_relation(to, Claim::torsion_equals(from)) ||
                       ctx.find_relation(to, Claim::torsion_injects_into(from)) ||
                       ctx.find_relation(from, Claim::torsion_equals(to));
  if (!related) ctx.missing("no established relation carries the torsion of " + from.id() + " to " + to.id());
  const Claim bound = ctx.bound(from).claim;
  return {ctx.derive(to, Claim::only_primes(bound.prime_bound()))};
}

// Degree-d cover X -> Y: torsion of H^k(Y) prime to d injects into H^k(X).
std::vector<Fact> transfer_cover(RuleContext& ctx) {
  const auto cover = ctx.param_str("cover");
  const auto base = ctx.param_str("base");
  const auto degree = ctx.param_int("degree");
  const auto k = static_cast<int>(ctx.param_int("k"));
  const auto& info = ctx.space(cover);
  if (!info.covers || info.covers->base != base || static_cast<std::int64_t>(info.covers->degree) != degree)
    ctx.mismatch(cover + " is not declared as a degree " + std::to_string(degree) + " cover of " + base);
  if (degree < 1) ctx.mismatch("cover degree must be positive");
  const GroupRef in = GroupRef::absolute(cover, k);
  ctx.expect_inputs({in});
  auto primes = ctx.bound(in).claim.prime_bound();
  const auto dp = prime_factors(static_cast<std::uint64_t>(degree));
  primes.insert(dp.begin(), dp.end());
  return {ctx.derive(GroupRef::absolute(base, k), Claim::only_primes(primes))};
}

// H^k(Bl_Z X) = H^k(X) + sum_{j=1}^{c/2-1} H^{k-2j}(Z).
std::vector<Fact> blowup_split(RuleContext& ctx) {
  const auto blowup = ctx.param_str("blowup");
  const auto base = ctx.param_str("base");
  const auto center = ctx.param_str("center");
  const auto codim = ctx.param_int("codim");
  const auto k = static_cast<int>(ctx.param_int("k"));
  const auto& info = ctx.space(blowup);
  if (!info.blowup_of || info.blowup_of->base != base || info.blowup_of->center != center ||
      info.blowup_of->codim != codim)
    ctx.mismatch(blowup + " is not declared as the blow-up of " + base + " along " + center + " (codim " +
                 std::to_string(codim) + ")");
  if (codim < 4 || codim % 2 != 0) ctx.mismatch("blow-up center must have even real codimension >= 4");
  std::vector<GroupRef> summands{GroupRef::absolute(base, k)};
  for (int j = 1; j < codim / 2 && k - 2 * j >= 0; ++j) summands.push_back(GroupRef::absolute(center, k - 2 * j));
  ctx.expect_inputs(summands);
  std::vector<Claim> parts;
  for (const auto& s : summands) parts.push_back(ctx.bound(s).claim);
  return {ctx.derive(GroupRef::absolute(blowup, k), summed(parts))};
}

// Closed oriented n-manifold: tors H^k = tors H_{n-k} = tors H^{n+1-k}.
std::vector<Fact> duality_uct(RuleContext& ctx) {
  const auto id = ctx.param_str("space");
  const auto k = static_cast<int>(ctx.param_int("k"));
  const auto& info = ctx.space(id);
  if (!info.closed_oriented || !info.real_dim) ctx.mismatch(id + " is not declared as a closed oriented manifold");
  const int n = *info.real_dim;
  if (k < 1 || k > n) ctx.mismatch("degree must lie in 1.." + std::to_string(n));
  const GroupRef in = GroupRef::absolute(id, k);
  ctx.expect_inputs({in});
  const Claim bound = ctx.bound(in).claim;
  const GroupRef dual = GroupRef::absolute(id, n + 1 - k);
  return {ctx.derive(dual, Claim::torsion_equals(in)), ctx.derive(dual, Claim::only_primes(bound.prime_bound()))};
}

// Free G-action: if H^p(G;H^{k-p}) = 0 for p >= 1 and H^0(G;H^k) is torsion
// free, then H^k(X/G) is torsion free.
std::vector<Fact> spectral_vanishing(RuleContext& ctx) {
  const auto id = ctx.param_str("space");
  const auto group = ctx.param_str("group");
  const auto quotient = ctx.param_str("quotient");
  const auto k = static_cast<int>(ctx.param_int("k"));
  const auto& info = ctx.space(quotient);
  if (!info.quotient_of || info.quotient_of->space != id || info.quotient_of->group != group)
    ctx.mismatch(quotient + " is not declared as " + id + "/" + group);
  if (!info.quotient_of->free) ctx.mismatch("the action of " + group + " on " + id + " is not declared free");
  if (k < 0) ctx.mismatch("negative degree");
  std::vector<GroupRef> terms;
  for (int p = 1; p <= k; ++p) terms.push_back(GroupRef::group_cohomology(group, p, id, k - p));
  const GroupRef fixed = GroupRef::group_cohomology(group, 0, id, k);
  auto expected = terms;
  expected.push_back(fixed);
  ctx.expect_inputs(expected);
  for (const auto& t : terms) ctx.require(t, Claim::is_zero());
  ctx.require(fixed, Claim::torsion_free());
  return {ctx.derive(GroupRef::absolute(quotient, k), Claim::torsion_free())};
}

// Removing finitely many points from an n-manifold leaves H^k unchanged for k <= n - 2.
std::vector<Fact> complement_iso(RuleContext& ctx) {
  const auto ambient = ctx.param_str("ambient");
  const auto complement = ctx.param_str("complement");
  const auto& c = complement_pair(ctx, ambient, complement);
  const auto& amb = ctx.space(ambient);
  const auto& removed = ctx.space(c.removed);
  if (!amb.real_dim || !removed.real_dim || *removed.real_dim != 0 || c.codim != *amb.real_dim)
    ctx.mismatch("the removed set " + c.removed + " is not declared as finitely many points of " + ambient);
  const int n = *amb.real_dim;
  if (ctx.app().inputs.empty()) ctx.mismatch("needs at least one input group");

  std::vector<GroupRef> ins;
  for (const auto& text : ctx.app().inputs) {
    GroupRef r = GroupRef::parse(text);
    if (r.kind == RefKind::Relative || r.space != ambient) ctx.mismatch(text + " is not a group of " + ambient);
    const int deg = r.kind == RefKind::Absolute ? r.degree : r.coefficient_degree;
    if (deg > n - 2) ctx.mismatch(text + ": degree " + std::to_string(deg) + " exceeds " + std::to_string(n - 2));
    if (r.kind == RefKind::GroupCohomology &&
        std::find(c.invariant_under.begin(), c.invariant_under.end(), r.group) == c.invariant_under.end())
      ctx.mismatch(c.removed + " is not declared invariant under " + r.group);
    ins.push_back(std::move(r));
  }
  std::vector<std::pair<GroupRef, Claim>> mapped;
  for (const auto& r : ins) {
    const Claim claim = ctx.bound(r).claim;
    GroupRef out = r;
    out.space = complement;
    mapped.emplace_back(std::move(out), claim);
  }
  std::vector<Fact> outs;
  for (auto& [ref, claim] : mapped) outs.push_back(ctx.derive(std::move(ref), std::move(claim)));
  return outs;
}

// OnlyPrimes(S1) and OnlyPrimes(S2) on the same group give OnlyPrimes(S1 n S2).
std::vector<Fact> combine_primes(RuleContext& ctx) {
  const GroupRef subject = ctx.param_ref("subject");
  const auto& sets = ctx.param("primes");
  if (!sets.is_array() || sets.size() < 2) ctx.mismatch("\"primes\" must list at least two prime sets");
  ctx.expect_inputs({subject});
  std::optional<std::set<std::uint64_t>> meet;
  for (const auto& sj : sets) {
    std::set<std::uint64_t> s;
    try {
      s = sj.get<std::set<std::uint64_t>>();
    } catch (const nlohmann::json::exception&) {
      ctx.mismatch("prime sets must be arrays of integers");
    }
    ctx.require(subject, Claim::only_primes(s));
    if (!meet) {
      meet = s;
    } else {
      std::set<std::uint64_t> both;
      std::set_intersection(meet->begin(), meet->end(), s.begin(), s.end(), std::inserter(both, both.begin()));
      meet = std::move(both);
    }
  }
  return {ctx.derive(subject, Claim::only_primes(*meet))};
}

using RuleFn = std::vector<Fact> (*)(RuleContext&);

const std::map<std::string, RuleFn>& rule_table() {
  static const std::map<std::string, RuleFn> table{
      {"thom_iso", thom_iso},
      {"les_inject", les_inject},
      {"les_torsion_equal", les_torsion_equal},
      {"transfer_cover", transfer_cover},
      {"blowup_split", blowup_split},
      {"duality_uct", duality_uct},
      {"spectral_vanishing", spectral_vanishing},
      {"complement_iso", complement_iso},
      {"combine_primes", combine_primes},
      {"torsion_transport", torsion_transport},
  };
  return table;
}

}  // namespace

std::vector<Fact> apply_rule(FactSet& state, const RuleApplication& app, const SpaceTable& spaces) {
  const auto& table = rule_table();
  auto it = table.find(app.rule);
  if (it == table.end()) throw RuleError(RuleErrorCode::UnknownRule, app.id + ": unknown rule \"" + app.rule + "\"");

  RuleContext ctx(state, app, spaces);
  std::vector<Fact> outputs;
  try {
    outputs = it->second(ctx);
  } catch (const ScriptError& e) {
    ctx.mismatch(e.what());
  }
  for (const auto& y : app.yields) {
    const bool derived = std::any_of(outputs.begin(), outputs.end(), [&](const Fact& f) {
      return f.subject == y.subject && implies(f.claim, y.claim);
    });
    if (!derived) ctx.mismatch("declares " + y.subject.id() + " : " + y.claim.to_string() + " but does not derive it");
  }
  for (const auto& f : outputs) state.check_consistent(f.subject, f.claim);
  for (auto& f : outputs) state.add(f);
  return outputs;
}

// ---------------------------------------------------------------- check_script

namespace {

void audit(const FactSet& facts, const std::vector<GoalResult>& goals, std::vector<std::string>& problems) {
  const auto& all = facts.all();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& in : all[i].provenance.inputs) {
      const auto idx = facts.index_of(in);
      if (!idx)
        problems.push_back(all[i].key() + ": input " + in + " is not an established fact");
      else if (*idx >= i)
        problems.push_back(all[i].key() + ": input " + in + " was established after its use");
    }

  for (const auto& g : goals) {
    if (!g.established) continue;
    std::set<std::size_t> seen;
    bool rooted = false;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (!seen.insert(i).second) return;
      const auto& f = all[i];
      if (f.provenance.kind != ProvenanceKind::Rule) rooted = true;
      for (const auto& in : f.provenance.inputs)
        if (auto idx = facts.index_of(in); idx && *idx < i) walk(*idx);
    };
    if (auto idx = facts.index_of(g.fact)) walk(*idx);
    if (!rooted) problems.push_back("goal " + g.goal.subject.id() + " is not derived from any axiom");
  }
}

}  // namespace

Report check_script(const Script& script, std::span<const Fact> leaf_facts) {
  Report report;
  report.title = script.title;
  const SpaceTable spaces = script.space_table();
  FactSet state;

  for (const auto& ax : script.axioms) {
    AxiomResult res{ax.id, true, {}, {}};
    std::vector<Fact> staged;
    for (const auto& st : ax.facts) {
      Provenance p;
      p.source = ax.id;
      p.cite = ax.cite;
      if (ax.computed) {
        p.kind = ProvenanceKind::Computed;
        auto backing = std::find_if(leaf_facts.begin(), leaf_facts.end(), [&](const Fact& leaf) {
          return leaf.subject == st.subject && implies(leaf.claim, st.claim);
        });
        if (backing == leaf_facts.end()) {
          res.ok = false;
          res.error = st.subject.id() + " : " + st.claim.to_string() + " is not backed by the computation";
          break;
        }
        p.hash = backing->provenance.hash;
        if (p.cite.empty()) p.cite = backing->provenance.cite;
      } else {
        p.kind = ProvenanceKind::Axiom;
      }
      staged.push_back({st.subject, st.claim, std::move(p)});
    }
    if (res.ok) {
      try {
        for (const auto& f : staged) state.check_consistent(f.subject, f.claim);
        for (auto& f : staged) res.facts.push_back(state.add(std::move(f)).key());
      } catch (const RuleError& e) {
        res.ok = false;
        res.error = e.what();
      }
    }
    report.axioms.push_back(std::move(res));
  }

  for (const auto& step : script.steps) {
    StepResult res;
    res.id = step.id;
    res.rule = step.rule;
    try {
      for (const auto& f : apply_rule(state, step, spaces)) res.outputs.push_back(f.key());
    } catch (const RuleError& e) {
      res.ok = false;
      res.code = e.code();
      res.error = e.what();
    }
    report.steps.push_back(std::move(res));
  }

  for (const auto& g : script.goals) {
    GoalResult res{g, false, {}};
    if (const Fact* f = state.find(g.subject, g.claim)) {
      res.established = true;
      res.fact = f->key();
    }
    report.goals.push_back(std::move(res));
  }

  audit(state, report.goals, report.audit_problems);
  report.facts = state.all();

  report.pass = report.audit_problems.empty() && !report.goals.empty() &&
                std::all_of(report.axioms.begin(), report.axioms.end(), [](const auto& a) { return a.ok; }) &&
                std::all_of(report.steps.begin(), report.steps.end(), [](const auto& s) { return s.ok; }) &&
                std::all_of(report.goals.begin(), report.goals.end(), [](const auto& g) { return g.established; });
  return report;
}

const StepResult* Report::first_failed_step() const {
  for (const auto& s : steps)
    if (!s.ok) return &s;
  return nullptr;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["title"] = title;
  j["pass"] = pass;
  j["axioms"] = nlohmann::json::array();
  for (const auto& a : axioms) {
    nlohmann::json aj = {{"id", a.id}, {"ok", a.ok}, {"facts", a.facts}};
    if (!a.ok) aj["error"] = a.error;
    j["axioms"].push_back(aj);
  }
  j["steps"] = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json sj = {{"id", s.id}, {"rule", s.rule}, {"ok", s.ok}, {"outputs", s.outputs}};
    if (!s.ok) {
      sj["code"] = s.code ? to_string(*s.code) : "";
      sj["error"] = s.error;
    }
    j["steps"].push_back(sj);
  }
  if (const auto* f = first_failed_step())
    j["first_failure"] = {{"step", f->id}, {"code", f->code ? to_string(*f->code) : ""}, {"message", f->error}};
  else
    j["first_failure"] = nullptr;
  j["goals"] = nlohmann::json::array();
  for (const auto& g : goals) {
    nlohmann::json gj = g.goal.to_json();
    gj["established"] = g.established;
    gj["fact"] = g.established ? nlohmann::json(g.fact) : nlohmann::json(nullptr);
    j["goals"].push_back(gj);
  }
  j["facts"] = nlohmann::json::array();
  for (const auto& f : facts) j["facts"].push_back(f.to_json());
  j["audit"] = {{"ok", audit_problems.empty()}, {"problems", audit_problems}};
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "ledger: " << title << "\n";
  std::size_t ax_ok = std::count_if(axioms.begin(), axioms.end(), [](const auto& a) { return a.ok; });
  os << "axioms: " << ax_ok << "/" << axioms.size() << " accepted\n";
  for (const auto& a : axioms)
    if (!a.ok) os << "  [FAIL] " << a.id << ": " << a.error << "\n";
  std::size_t st_ok = std::count_if(steps.begin(), steps.end(), [](const auto& s) { return s.ok; });
  os << "steps: " << st_ok << "/" << steps.size() << " valid\n";
  for (const auto& s : steps) {
    if (s.ok) {
      os << "  [ok]   " << s.id << " " << s.rule;
      for (const auto& o : s.outputs) os << "\n           => " << o;
      os << "\n";
    } else {
      os << "  [FAIL] " << s.id << " " << s.rule << ": " << (s.code ? to_string(*s.code) : "") << ": " << s.error << "\n";
    }
  }
  if (const auto* f = first_failed_step()) os << "first failure: " << f->id << " (" << f->rule << ")\n";
  os << "goals:\n";
  for (const auto& g : goals)
    os << "  [" << (g.established ? "established" : "OPEN") << "] " << g.goal.subject.id() << " : "
       << g.goal.claim.to_string() << "\n";
  os << "audit: " << (audit_problems.empty() ? "ok" : "FAILED") << "\n";
  for (const auto& p : audit_problems) os << "  " << p << "\n";
  os << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

// ---------------------------------------------------------------- leaf facts

std::vector<Fact> leaf_facts_from_computation(const model::KummerContext& ctx) {
  for (const auto& e : ctx.vanishing)
    if (!e.group.is_zero())
      throw CertificateFailure("refusing to emit leaf facts: H^" + std::to_string(e.p) + "(A3;H^" + std::to_string(e.q) +
                               "(AxA)) = " + e.group.to_string());
  if (ctx.vanishing.size() != model::vanishing_pairs().size())
    throw CertificateFailure("refusing to emit leaf facts: vanishing list is incomplete");

  const std::string hash = ctx.hash();
  auto computed = [&](GroupRef subject, Claim claim, std::string source, std::string note) {
    Provenance p;
    p.kind = ProvenanceKind::Computed;
    p.source = std::move(source);
    p.cite = std::move(note);
    p.hash = hash;
    return Fact{std::move(subject), std::move(claim), std::move(p)};
  };

  std::vector<Fact> out;
  for (const auto& e : ctx.vanishing)
    out.push_back(computed(GroupRef::group_cohomology("A3", e.p, "AxA", e.q), Claim::is_zero(), "kummer_model.vanishing",
                           "Smith normal form of the action on L^" + std::to_string(e.q) + " H^1(AxA)"));
  for (const auto& [k, g] : ctx.fixed_parts) {
    if (!g.is_torsion_free()) throw InternalError("fixed lattice with torsion");
    out.push_back(computed(GroupRef::group_cohomology("A3", 0, "AxA", k), Claim::torsion_free(),
                           "kummer_model.fixed_points",
                           "kernel of sigma - I on L^" + std::to_string(k) + " H^1(AxA), rank " +
                               std::to_string(g.rank())));
  }

  // 0 -> H^3(A) -> H^3(A \ A[3]) -> H^4(A, A \ A[3]) with both flanks computed.
  SpaceTable spaces;
  spaces["A"] = SpaceInfo{"A", "A", 4, true, {}, {}, {}, {}};
  spaces["pt"] = SpaceInfo{"pt", "point", 0, false, {}, {}, {}, {}};
  spaces["Dbar"] = SpaceInfo{"Dbar", "A \\ A[3]", 4, false,
                             SpaceInfo::Complement{"A", "pt", ctx.torus.three_torsion_points, 4, {}}, {}, {}, {}};
  FactSet local;
  local.add(computed(GroupRef::absolute("pt", 0), Claim::iso_to(FinAbGroup::free(1)), "point", "H^0 of a point"));
  local.add(computed(GroupRef::absolute("A", 3), Claim::iso_to(ctx.torus.cohomology.at(3)), "kummer_model.torus",
                     "H^3(A) = L^3 Z^4"));
  const auto pts = static_cast<std::int64_t>(ctx.torus.three_torsion_points);
  auto run = [&](std::string id, std::string rule, nlohmann::json params, std::vector<std::string> inputs) {
    return apply_rule(local, {std::move(id), std::move(rule), std::move(params), std::move(inputs), {}}, spaces);
  };
  run("dbar.thom3", "thom_iso", {{"pair", {"A", "Dbar"}}, {"center", "pt"}, {"copies", pts}, {"codim", 4}, {"k", 3}}, {});
  const auto h4 = run("dbar.thom4", "thom_iso",
                      {{"pair", {"A", "Dbar"}}, {"center", "pt"}, {"copies", pts}, {"codim", 4}, {"k", 4}}, {"H^0(pt)"});
  run("dbar.les", "les_torsion_equal", {{"pair", {"A", "Dbar"}}, {"k", 3}}, {"H^3(A,Dbar)", "H^4(A,Dbar)"});
  const auto h3 = run("dbar.transport", "torsion_transport", {{"from", "H^3(A)"}, {"to", "H^3(Dbar)"}},
                      {"H^3(A)", "H^3(Dbar)"});

  out.push_back(computed(h4.front().subject, h4.front().claim, "kummer_model.torus",
                         "Thom isomorphism over |A[3]| = |coker(3 I_4)| = " + std::to_string(pts) + " points"));
  out.push_back(computed(h3.front().subject, h3.front().claim, "kummer_model.torus",
                         "0 -> H^3(A) -> H^3(A \\ A[3]) -> H^4(A, A \\ A[3]) = Z^" + std::to_string(pts) +
                             " with H^3(A) = Z^4 free"));
  return out;
}

Script shipped_script() { return Script::parse(shipped_script_text()); }

}  // namespace kummer::ledger
