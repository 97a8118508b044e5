#pragma once

#include "kummer/kummer_model.hpp"
#include "kummer/ledger_types.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kummer::ledger {

/// Names of the inference rules apply_rule understands.
const std::vector<std::string>& rule_names();

/// Validates app against the space table and the established facts, then adds
/// its conclusions to state and returns them. Nothing is added on error.
/// Throws RuleError (UnknownRule, MissingInput, ParameterMismatch, InconsistentFact).
std::vector<Fact> apply_rule(FactSet& state, const RuleApplication& app, const SpaceTable& spaces);

struct AxiomResult {
  std::string id;
  bool ok = true;
  std::string error;
  std::vector<std::string> facts;
};

struct StepResult {
  std::string id;
  std::string rule;
  bool ok = true;
  std::optional<RuleErrorCode> code;
  std::string error;
  std::vector<std::string> outputs;
};

struct GoalResult {
  Statement goal;
  bool established = false;
  std::string fact;  // key of the establishing fact
};

struct Report {
  std::string title;
  bool pass = false;
  std::vector<AxiomResult> axioms;
  std::vector<StepResult> steps;
  std::vector<GoalResult> goals;
  std::vector<Fact> facts;
  /// Provenance-chain problems: dangling inputs, facts used before being
  /// established, goal chains not rooted in axioms.
  std::vector<std::string> audit_problems;

  const StepResult* first_failed_step() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Replays the script. Computed axioms are accepted only when each of their
/// facts is implied by one of leaf_facts.
Report check_script(const Script& script, std::span<const Fact> leaf_facts = {});

/// Computation-backed facts: the eight vanishing groups H^p(A3;H^q(AxA)) = 0,
/// torsion-freeness of the fixed parts H^0(A3;H^k(AxA)) for k = 3, 5, the
/// relative group H^4(A,Dbar) = Z^|A[3]| and H^3(Dbar) torsion free.
/// Throws CertificateFailure if a vanishing entry is non-zero.
std::vector<Fact> leaf_facts_from_computation(const model::KummerContext& ctx);

/// The shipped script of the torsion-freeness argument (assets/kummer.proof).
std::string_view shipped_script_text();
Script shipped_script();

}  // namespace kummer::ledger
