#pragma once

#include "kummer/error.hpp"
#include "kummer/fin_ab_group.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kummer::ledger {

/// Script cannot be parsed or references undeclared spaces.
class ScriptError : public Error {
 public:
  using Error::Error;
};

enum class RuleErrorCode { UnknownRule, MissingInput, ParameterMismatch, InconsistentFact };

std::string to_string(RuleErrorCode c);

class RuleError : public Error {
 public:
  RuleError(RuleErrorCode code, const std::string& what) : Error(what), code_(code) {}
  RuleErrorCode code() const { return code_; }

 private:
  RuleErrorCode code_;
};

enum class RefKind { Absolute, Relative, GroupCohomology };

/// A named cohomology group with integer coefficients. Canonical spellings:
///   H^k(X)            absolute
///   H^k(X,Y)          relative to the open subspace Y of X
///   H^p(G;H^q(X))     cohomology of the group G with coefficients in H^q(X)
struct GroupRef {
  RefKind kind = RefKind::Absolute;
  int degree = 0;
  std::string space;
  std::string subspace;
  std::string group;
  int coefficient_degree = 0;

  static GroupRef absolute(std::string space, int k);
  static GroupRef relative(std::string space, std::string subspace, int k);
  static GroupRef group_cohomology(std::string group, int p, std::string space, int q);
  /// Throws ScriptError on anything but a canonical spelling.
  static GroupRef parse(std::string_view text);

  std::string id() const;
  /// Every space identifier mentioned.
  std::vector<std::string> spaces() const;

  friend bool operator==(const GroupRef&, const GroupRef&) = default;
};

enum class ClaimKind { IsZero, TorsionFree, OnlyPrimes, IsoTo, TorsionEquals, TorsionInjectsInto };

/// What a fact asserts about its subject group. OnlyPrimes with an empty set
/// is normalized to TorsionFree.
struct Claim {
  ClaimKind kind = ClaimKind::TorsionFree;
  std::set<std::uint64_t> primes;
  linalg::FinAbGroup group;
  std::string other;  // canonical id of the related group

  static Claim is_zero();
  static Claim torsion_free();
  static Claim only_primes(std::set<std::uint64_t> primes);
  static Claim iso_to(linalg::FinAbGroup g);
  static Claim torsion_equals(const GroupRef& other);
  static Claim torsion_injects_into(const GroupRef& other);

  bool is_relation() const { return kind == ClaimKind::TorsionEquals || kind == ClaimKind::TorsionInjectsInto; }
  /// Torsion primes allowed by a content claim (empty for IsZero / TorsionFree).
  std::set<std::uint64_t> prime_bound() const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static Claim from_json(const nlohmann::json& j);

  friend bool operator==(const Claim&, const Claim&) = default;
};

/// IsZero => IsoTo(0) => TorsionFree => OnlyPrimes(S) for every S; IsoTo(G)
/// implies the bounds its torsion satisfies. Relations imply only themselves.
bool implies(const Claim& strong, const Claim& weak);
/// Symmetric. Only content claims can conflict.
bool contradicts(const Claim& a, const Claim& b);

enum class ProvenanceKind { Axiom, Computed, Rule };

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::Axiom;
  std::string source;               // axiom id or step id
  std::string rule;                 // rule name for derived facts
  std::string cite;                 // citation or derivation note
  std::vector<std::string> inputs;  // keys of the facts consumed
  std::string hash;                 // computing-module hash for computed facts

  nlohmann::json to_json() const;
};

struct Fact {
  GroupRef subject;
  Claim claim;
  Provenance provenance;

  /// "<subject id> : <claim>"
  std::string key() const;
  nlohmann::json to_json() const;
};

/// Set of established facts, in insertion order.
class FactSet {
 public:
  /// Adds f unless the identical claim on the same subject is already present,
  /// in which case the existing fact is kept. Throws RuleError(InconsistentFact).
  const Fact& add(Fact f);
  /// Throws RuleError(InconsistentFact) if claim conflicts with a fact on subject.
  void check_consistent(const GroupRef& subject, const Claim& claim) const;

  /// First fact on subject whose claim implies wanted.
  const Fact* find(const GroupRef& subject, const Claim& wanted) const;
  std::vector<const Fact*> about(const GroupRef& subject) const;
  const std::vector<Fact>& all() const { return facts_; }
  std::optional<std::size_t> index_of(const std::string& key) const;

 private:
  std::vector<Fact> facts_;
  std::map<std::string, std::vector<std::size_t>> by_subject_;
  std::map<std::string, std::size_t> by_key_;
};

struct SpaceInfo {
  struct Complement {
    std::string ambient;
    std::string removed;
    std::uint64_t copies = 1;
    int codim = 0;
    std::vector<std::string> invariant_under;
  };
  struct Blowup {
    std::string base;
    std::string center;
    int codim = 0;
  };
  struct Cover {
    std::string base;
    std::uint64_t degree = 1;
  };
  struct Quotient {
    std::string space;
    std::string group;
    bool free = false;
  };

  std::string id;
  std::string name;
  std::optional<int> real_dim;
  bool closed_oriented = false;
  std::optional<Complement> complement_of;
  std::optional<Blowup> blowup_of;
  std::optional<Cover> covers;
  std::optional<Quotient> quotient_of;

  nlohmann::json to_json() const;
  static SpaceInfo from_json(const nlohmann::json& j);
};

using SpaceTable = std::map<std::string, SpaceInfo>;

struct Statement {
  GroupRef subject;
  Claim claim;

  nlohmann::json to_json() const;
  static Statement from_json(const nlohmann::json& j);
};

struct Axiom {
  std::string id;
  std::string cite;
  /// Must be backed by a leaf fact from the computation.
  bool computed = false;
  std::vector<Statement> facts;
};

struct RuleApplication {
  std::string id;
  std::string rule;
  nlohmann::json params = nlohmann::json::object();
  std::vector<std::string> inputs;  // canonical ids of the groups consumed
  std::vector<Statement> yields;    // optional; checked against the derived facts
};

struct Script {
  std::string format;
  std::string title;
  std::vector<SpaceInfo> spaces;
  std::vector<Axiom> axioms;
  std::vector<RuleApplication> steps;
  std::vector<Statement> goals;

  SpaceTable space_table() const;
  nlohmann::json to_json() const;
  /// Throws ScriptError on malformed input or undeclared spaces.
  static Script from_json(const nlohmann::json& j);
  static Script parse(std::string_view text);
};

}  // namespace kummer::ledger
