// Syntactic elimination of -o, box, delta, forall and shriek down to the
// Boolean closure of the classical base logic, with rewrite traces.

#ifndef TEAMLOGIC_ELIMINATION_HPP
#define TEAMLOGIC_ELIMINATION_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/oracle.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

class EliminationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One clause denotes  pos_1 && ... && pos_n && E(e_1) && ... && E(e_m).
struct DnfClause {
  std::vector<Formula> pos;
  std::vector<Formula> e;

  bool operator==(const DnfClause& o) const { return pos == o.pos && e == o.e; }
};

// The strong disjunction of the clauses; no clauses means FF.
struct DnfForm {
  std::vector<DnfClause> clauses;

  Formula to_formula() const;
};

inline constexpr std::size_t kDefaultMaxNodes = 1000000;

// Leaves are the maximal classical subformulas. Negative classical literals
// become E-literals and negated E-literals become classical ones. Literals
// and clauses are sorted by rendered text and deduplicated.
DnfForm dnf_boolean_closure(const Formula& f, std::size_t max_nodes = kDefaultMaxNodes);

struct TraceStep {
  std::string rule;
  Formula before;
  Formula after;
};

struct EliminationOptions {
  // Each trace step is checked for equivalence within `budget`; spaces above
  // the ceiling are skipped.
  bool spot_check = true;
  SearchBudget budget;
  std::size_t max_nodes = kDefaultMaxNodes;
  // Replace quantified propositional leaves by quantifier-free ones.
  bool lower_qbf = true;
  Mode mode = Mode::Lax;
};

struct EliminationResult {
  Formula output;
  std::vector<TraceStep> trace;
  FragmentTag fragment = FragmentTag::PL;
};

// lhs -o rhs for lhs, rhs in a Boolean closure.
EliminationResult eliminate_limp(const Formula& lhs, const Formula& rhs,
                                 const EliminationOptions& opts = {});
// box inner, delta inner, forall x inner, shriek x inner.
EliminationResult eliminate_box(const Formula& inner, const EliminationOptions& opts = {});
EliminationResult eliminate_delta(const Formula& inner, const EliminationOptions& opts = {});
EliminationResult eliminate_forall(const std::string& x, const Formula& inner,
                                   const EliminationOptions& opts = {});
EliminationResult eliminate_shriek(const std::string& x, const Formula& inner,
                                   const EliminationOptions& opts = {});

// Innermost-first expansion forall x a  =>  a[x/T] & a[x/F].
Formula qbf_expand(const Formula& f);

// Refuses strict mode.
EliminationResult to_boolean_closure(const Formula& f, const EliminationOptions& opts = {});

// Strong disjunction of strong conjunctions over classical formulas, NE and
// T * (NE && b) in place of E(b).
Formula to_splus(const Formula& f, std::size_t max_nodes = kDefaultMaxNodes);
bool is_splus(const Formula& f);

struct FoTranslation {
  std::vector<Formula> formulas;
  // The fresh constants.
  Signature extension;
};

// Members of phi are classical first-order formulas or ~delta with delta
// classical. Throws std::invalid_argument when a formula has a variable both
// free and bound, unless auto_rename is set.
FoTranslation first_order_translation(const std::vector<Formula>& phi, bool auto_rename = false);

// Universal closure of alpha over its free variables in sorted order.
Formula sentence_interpolant(const std::vector<Formula>& delta, const Formula& alpha);

nlohmann::json trace_to_json(const std::vector<TraceStep>& trace);

}  // namespace teamlogic

#endif  // TEAMLOGIC_ELIMINATION_HPP
