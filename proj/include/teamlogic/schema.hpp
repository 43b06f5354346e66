// Axiom schemas over sorted metavariables and purely syntactic matching.

#ifndef TEAMLOGIC_SCHEMA_HPP
#define TEAMLOGIC_SCHEMA_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/parser.hpp"

namespace teamlogic {

struct Instantiation {
  std::map<std::string, Formula> formulas;
  // Term metavariables and variable metavariables (the latter bound to
  // Variable terms).
  std::map<std::string, Term> terms;

  bool operator==(const Instantiation& o) const {
    return formulas == o.formulas && terms == o.terms;
  }
};

enum class SideCondition { None, NotFreeIn, Sentence, IsTerm };

// A slot whose value is computed from other metavariables, e.g. alpha[x/t].
struct DerivedSlot {
  enum class Op { SubstVar, SubstProp };
  std::string slot;
  Op op = Op::SubstVar;
  std::string base;      // formula metavariable
  std::string var;       // variable metavariable
  std::string term;      // term or variable metavariable (SubstVar)
  Formula replacement;   // constant formula (SubstProp)
};

struct AxiomSchema {
  std::string system;
  std::string name;
  std::string pattern_text;
  Formula pattern;
  MetaDecls metas;
  std::set<std::string> var_metas;
  SideCondition side = SideCondition::None;
  std::string side_var;      // NotFreeIn
  std::string side_formula;  // NotFreeIn, Sentence
  std::vector<DerivedSlot> derived;
  std::string comment;

  // Metavariables a script must supply (everything but derived slots).
  std::vector<std::string> free_metas() const;
};

// Standard metavariable sorts: phi, psi, theta general; alpha, beta, gamma
// classical; x, y variables; t a term.
MetaDecls standard_metas();

// Derived slot names must be listed in `slots` so the pattern parses them as
// classical metavariables.
AxiomSchema make_schema(const std::string& system, const std::string& name,
                        const std::string& pattern, const std::string& comment = "",
                        const std::vector<std::string>& slots = {});

// Matches pattern against f, extending inst. Bindings already present must
// agree. Classical metavariables only accept classical formulas.
bool match_into(const Formula& pattern, const Formula& f, const std::set<std::string>& var_metas,
                Instantiation& inst);

std::optional<Instantiation> match_schema(const AxiomSchema& s, const Formula& f);

// Instantiates the pattern. Derived slots are computed. Throws
// std::invalid_argument when a metavariable is unbound or a sort is violated.
Formula apply_instantiation(const AxiomSchema& s, const Instantiation& inst);
Formula apply_instantiation(const Formula& pattern, const std::set<std::string>& var_metas,
                            const Instantiation& inst);

bool side_condition_holds(const AxiomSchema& s, const Instantiation& inst);

}  // namespace teamlogic

#endif  // TEAMLOGIC_SCHEMA_HPP
