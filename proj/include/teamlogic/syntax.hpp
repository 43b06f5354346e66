// Syntactic utilities: variables, substitution and fragment classification.

#ifndef TEAMLOGIC_SYNTAX_HPP
#define TEAMLOGIC_SYNTAX_HPP

#include <set>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"

namespace teamlogic {

// Proposition names occurring in f. The reserved atom inside the literal T
// pattern is skipped; quantifier-bound names count when they occur as atoms.
std::set<std::string> props_of(const Formula& f);

// props_of plus every quantified variable name. This is the variable set of a
// propositional context for PL/QBF formulas.
std::set<std::string> prop_vars_of(const Formula& f);

// Free variables. For first-order formulas these are term variables; for
// quantified propositional formulas they are the unbound propositions.
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> term_vars(const Term& t);
std::set<std::string> bound_vars(const Formula& f);

bool has_fo_atoms(const Formula& f);
bool has_quantifier(const Formula& f);
bool has_modality(const Formula& f);

// First-order vocabulary used by f. Identifiers parsed as variables never
// enter the constant set.
Signature signature_of(const Formula& f);
void merge_signature(Signature& into, const Signature& from);

// Capture-avoiding f[x/t]. Bound variables that would capture a variable of t
// get the least unused numeric suffix. In formulas without first-order atoms
// the substitution renames the proposition x and t must be a variable.
Formula substitute_var(const Formula& f, const std::string& x, const Term& t);
Term substitute_term(const Term& s, const std::string& x, const Term& t);

// Replaces free occurrences of the proposition x by g, renaming binders that
// would capture a free proposition of g.
Formula substitute_prop(const Formula& f, const std::string& x, const Formula& g);

// Replaces every occurrence of target by replacement (pointer identity).
Formula substitute_subformula(const Formula& f, const Formula& target, const Formula& replacement);

std::string fresh_name(const std::string& base, const std::set<std::string>& used);

enum class FragmentTag {
  PL,
  QBF,
  ML,
  FO,
  BPL,
  BQBF,
  BML,
  BFO,
  PTL,
  QPTL,
  MTL,
  QFO
};

enum class Base { PL, QBF, ML, FO };
enum class Level { Classical, Boolean, Full };

Base base_of(FragmentTag t);
Level level_of(FragmentTag t);
FragmentTag make_tag(Base b, Level l);
std::string to_string(FragmentTag t);

// Least fragment containing f. Throws std::invalid_argument when modal and
// quantifier operators are mixed.
FragmentTag classify(const Formula& f);

// The fragment order: PL-based fragments sit below the others of the same
// level, and levels are ordered classical < Boolean closure < full.
bool fragment_leq(FragmentTag a, FragmentTag b);

bool is_boolean_closure(FragmentTag t);

// All distinct subformulas, children before parents.
std::vector<Formula> subformulas(const Formula& f);

}  // namespace teamlogic

#endif  // TEAMLOGIC_SYNTAX_HPP
