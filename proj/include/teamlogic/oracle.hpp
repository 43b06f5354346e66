// Exhaustive semantic checks over bounded context spaces.

#ifndef TEAMLOGIC_ORACLE_HPP
#define TEAMLOGIC_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/semantics.hpp"

namespace teamlogic {

struct SearchBudget {
  int max_props = 2;
  int max_worlds = 2;
  int max_domain = 2;
  std::optional<int> max_team_size;
  Mode mode = Mode::Lax;
  std::uint64_t ceiling = std::uint64_t{1} << 24;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What gets enumerated for a set of formulas.
struct ContextSpace {
  ContextKind kind = ContextKind::Prop;
  // Prop: the context variables (formula variables padded with fresh names up
  // to max_props). Kripke: the propositions given valuations.
  std::vector<std::string> props;
  // Fo: vocabulary, free variables (range over the team) and bound variables
  // (present in every point, pinned to the first element).
  Signature signature;
  std::vector<std::string> free_vars;
  std::vector<std::string> bound_vars;
};

ContextSpace space_for(const std::vector<Formula>& fs, const SearchBudget& b);

// Number of (structure, team) pairs; saturates at UINT64_MAX.
std::uint64_t count_contexts(const ContextSpace& s, const SearchBudget& b);

// Calls fn once per structure with its admissible teams in ascending order.
// Stops when fn returns false. Throws BudgetError above the ceiling.
void for_each_structure(const ContextSpace& s, const SearchBudget& b,
                        const std::function<bool(const Context&, const std::vector<Team>&)>& fn);

void enumerate_contexts(const ContextSpace& s, const SearchBudget& b,
                        const std::function<bool(const Context&, Team)>& fn);

struct Verdict {
  bool holds = true;
  std::optional<Model> witness;
  std::uint64_t contexts_checked = 0;

  // {key: holds, "witness": model-or-null, "contexts_checked": n}
  nlohmann::json to_json(const std::string& key) const;
};

Verdict equiv(const Formula& f, const Formula& g, const SearchBudget& b);
Verdict valid(const Formula& f, const SearchBudget& b);
// holds = satisfiable; the witness satisfies every formula.
Verdict consistency_probe(const std::vector<Formula>& fs, const SearchBudget& b);
// holds = every context satisfying all premises satisfies the conclusion.
Verdict entails(const std::vector<Formula>& premises, const Formula& conclusion,
                const SearchBudget& b);

// Leaves are maximal subformulas not headed by ~ or ~>.
std::vector<Formula> boolean_leaves(const Formula& f);
bool taut_boolean_closure(const Formula& f);

struct MergeResult {
  bool ok = false;
  Model model;
  std::string failed;  // rendered delta without a countermodel
  std::vector<Model> parts;
};

MergeResult merge_countermodels(const std::vector<Formula>& gamma,
                                const std::vector<Formula>& delta, const SearchBudget& b);

}  // namespace teamlogic

#endif  // TEAMLOGIC_ORACLE_HPP
