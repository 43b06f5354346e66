// Hilbert-style proof systems as data and a checker for explicit proof
// scripts with theorem flags, hypothesis blocks and admissible meta-rules.

#ifndef TEAMLOGIC_CALCULUS_HPP
#define TEAMLOGIC_CALCULUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/oracle.hpp"
#include "teamlogic/schema.hpp"

namespace teamlogic {

struct InferenceRule {
  std::string name;
  int arity = 1;
  // Only theorems may be premises. Every rule except E-> and E~> is.
  bool theorem_restricted = true;
  std::string comment;
};

struct ProofSystem {
  std::string name;
  std::vector<AxiomSchema> axioms;
  std::vector<InferenceRule> rules;

  const AxiomSchema* find_axiom(const std::string& n) const;
  const InferenceRule* find_rule(const std::string& n) const;
};

// H0, HBox, H, L, S, M, Q, X, U.
const std::vector<ProofSystem>& proof_systems();
// Throws std::out_of_range for unknown names.
const ProofSystem& proof_system(const std::string& name);

// The derived axioms: system "S'" (splitting) and "M'" (modal).
const std::vector<AxiomSchema>& alternative_schemas();
const AxiomSchema* find_alternative(const std::string& system, const std::string& name);

// Malformed script JSON.
class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Discharge { Ded, RaaPos, RaaNeg };

struct MacroCall {
  // taut-L, taut-classical, def, mp-⊸, mp-⊗, mp-□, mp-Δ, mp-◇, mp-∀, mp-!,
  // mp-∃, sub, thm-S′, thm-M′, lemma.
  std::string kind;
  std::vector<std::string> from;
  std::string name;       // thm-S′/M′ schema, lemma name
  std::string direction;  // thm-S′/M′: forward, backward or both
  std::string form;       // lemma: rule or implication
  std::map<std::string, Formula> leaves;  // taut-L documentation
};

struct ProofStep {
  enum class By { Axiom, Premise, Rule, Macro, Block };

  std::string id;
  Formula formula;
  By by = By::Macro;

  // Axiom
  std::string system;
  std::string name;  // axiom or rule name, premise label
  Instantiation inst;
  // Rule
  std::vector<std::string> from;
  std::optional<Term> term;  // UG∀
  // Macro
  MacroCall macro;
  // Block
  std::string hyp_id;
  Formula assume;
  std::vector<ProofStep> inner;
  Discharge discharge = Discharge::Ded;
  std::vector<std::string> contradiction;
};

struct PremiseDecl {
  std::string label;
  Formula formula;
  // A theorem hypothesis (written with a turnstile); it counts as a theorem.
  bool theorem = false;
};

struct SchemaRef {
  std::string system;
  std::string name;
  std::string direction;  // forward or backward
};

struct ProofScript {
  std::string name;
  std::vector<std::string> systems;
  MetaDecls metas;
  std::vector<PremiseDecl> premises;
  std::optional<Formula> goal;
  std::vector<ProofStep> steps;
  std::optional<SchemaRef> schema;
};

ProofScript parse_script(const nlohmann::json& j);
nlohmann::json script_to_json(const ProofScript& s);

struct StepStatus {
  std::string id;
  bool ok = false;
  bool theorem = false;
  std::string reason;
};

struct CheckReport {
  bool accepted = false;
  std::vector<StepStatus> steps;
  std::string failed_step;
  std::string reason;

  nlohmann::json to_json() const;
};

// Accepted scripts usable by the lemma macro, keyed by script name.
class LemmaRegistry {
 public:
  void add(const ProofScript& s);
  const ProofScript* find(const std::string& name) const;
  std::size_t size() const { return lemmas_.size(); }

 private:
  std::map<std::string, ProofScript> lemmas_;
};

CheckReport check_proof(const ProofScript& s, const LemmaRegistry* lemmas = nullptr);

struct StepFact {
  Formula formula;
  bool theorem = false;
};

// Empty on success, otherwise the reason. `args` are the facts named by
// call.from in order; `systems` are the systems available to the script.
std::string check_macro(const MacroCall& call, const Formula& conclusion,
                        const std::vector<StepFact>& args, const std::set<std::string>& systems,
                        const LemmaRegistry* lemmas = nullptr);

// Classical validity: truth tables, finite quantifier expansion, and the K
// decision procedure for box formulas. First-order atoms and quantifiers are
// opaque, which is sound but incomplete.
bool classically_valid(const Formula& f);

// Replaces ded blocks by chains of L1/L2 instances and E~>. Throws
// ScriptError when a step inside a block uses the hypothesis through a
// justification other than E~>, an axiom, or a tautology macro.
ProofScript expand_ded(const ProofScript& s);

// ---- corpus ----

// The embedded derivations in dependency order.
std::vector<ProofScript> load_corpus();
std::vector<nlohmann::json> corpus_json();

struct CorpusResult {
  std::string name;
  CheckReport report;
};

// Checks in order; every accepted script becomes a lemma for later ones.
std::vector<CorpusResult> check_corpus(const std::vector<ProofScript>& scripts,
                                       LemmaRegistry* registry = nullptr);

struct Mutation {
  std::string script;
  std::string kind;  // typo, swap, flag-drop
  std::string step;
  nlohmann::json mutated;
};

std::vector<Mutation> mutate_script(const nlohmann::json& script);

// Instantiates the metavariables of a script with concrete formulas.
ProofScript ground_script(const ProofScript& s, const Instantiation& inst);

// ---- soundness fuzzing ----

struct FuzzFailure {
  std::string schema;
  Instantiation inst;
  Formula instance;
  std::optional<Model> witness;
};

struct FuzzReport {
  std::string system;
  Mode mode = Mode::Lax;
  int instances = 0;
  int skipped = 0;
  std::map<std::string, int> per_schema;
  std::vector<FuzzFailure> failures;

  nlohmann::json to_json() const;
};

struct FuzzOptions {
  int samples = 100;
  int depth = 3;
  std::uint64_t seed = 1;
  // Stop a schema after its first counterexample.
  bool first_failure_only = false;
};

FuzzReport soundness_fuzz(const ProofSystem& sys, const SearchBudget& b, const FuzzOptions& o);
FuzzReport fuzz_schema(const AxiomSchema& schema, const SearchBudget& b, const FuzzOptions& o);

}  // namespace teamlogic

#endif  // TEAMLOGIC_CALCULUS_HPP
