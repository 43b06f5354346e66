// Team semantics over propositional, Kripke and finite first-order contexts.
//
// A context fixes a finite universe of evaluation points (assignments, worlds
// or first-order assignments) in a canonical order; a team is a bit mask over
// that universe, so universes are capped at 64 points.

#ifndef TEAMLOGIC_SEMANTICS_HPP
#define TEAMLOGIC_SEMANTICS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "teamlogic/formula.hpp"

namespace teamlogic {

enum class Mode { Lax, Strict };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

using Team = std::uint64_t;

inline int team_size(Team t) { return __builtin_popcountll(t); }
inline Team full_team(int n) { return n >= 64 ? ~Team{0} : ((Team{1} << n) - 1); }
std::vector<int> members(Team t);

// Assignments over `vars`; point i gives vars[j] the value of bit j of i.
struct PropSpace {
  std::vector<std::string> vars;

  int size() const { return 1 << vars.size(); }
  int index_of(const std::string& v) const;
};

struct Kripke {
  int worlds = 0;
  std::vector<Team> succ;
  std::map<std::string, Team> val;
  std::vector<std::string> labels;  // optional; defaults to 0..n-1

  Team global_successor(Team t) const;
};

// Relations and functions are stored as tables indexed by the mixed-radix
// code of the argument tuple (first argument least significant).
struct FoRelation {
  int arity = 0;
  std::vector<bool> holds;
};
struct FoFunction {
  int arity = 0;
  std::vector<int> table;
};

struct FoStructure {
  int domain = 1;
  std::map<std::string, FoRelation> relations;
  std::map<std::string, FoFunction> functions;
  std::map<std::string, int> constants;
  std::vector<std::string> labels;

  int tuple_code(const std::vector<int>& args) const;
};

// First-order assignments over `vars`; point i encodes vars[j] as digit j of
// i in base |A|.
struct FoSpace {
  FoStructure structure;
  std::vector<std::string> vars;

  int size() const;
  int index_of(const std::string& v) const;
  int value(int point, int var_index) const;
  int with_value(int point, int var_index, int value) const;
};

enum class ContextKind { Prop, Kripke, Fo };

struct Context {
  ContextKind kind = ContextKind::Prop;
  PropSpace prop;
  Kripke kripke;
  FoSpace fo;

  int universe() const;
  Team all() const { return full_team(universe()); }

  static Context of(PropSpace p);
  static Context of(Kripke k);
  static Context of(FoSpace f);
};

class SemanticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- enumerators ----

// Lax: all (S, U) with S ∪ U = T. Strict: partitions. Deterministic order.
std::vector<std::pair<Team, Team>> splits(Team t, Mode mode);
Team global_successor(const Kripke& k, Team t);
// Lax: subsets T' of R[T] reaching from every world of T. Strict
// (experimental): images of functions picking one successor per world.
std::vector<Team> successor_teams(const Kripke& k, Team t, Mode mode = Mode::Lax);
// Distinct teams T[f/x] over all supplementing functions f.
std::vector<Team> supplement_teams(const Context& c, Team t, const std::string& x, Mode mode);
// Calls fn once per supplementing function, before deduplication.
void for_each_raw_supplement(const Context& c, Team t, const std::string& x, Mode mode,
                             const std::function<void(Team)>& fn);
Team duplicate_team(const Context& c, Team t, const std::string& x);

// ---- evaluation ----

class Evaluator {
 public:
  Evaluator(const Context& c, Mode mode);

  bool eval(const Formula& f, Team t);
  // Points satisfying a classical formula.
  Team sat(const Formula& f);

  const Context& context() const { return ctx_; }
  Mode mode() const { return mode_; }

 private:
  struct Key {
    const void* node;
    Team team;
    bool operator==(const Key& o) const { return node == o.node && team == o.team; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>{}(k.node) * 1000003u ^ std::hash<Team>{}(k.team);
    }
  };

  bool eval_nonclassical(const Formula& f, Team t);
  int term_value(const Term& t, int point) const;
  int var_index(const std::string& x) const;

  const Context& ctx_;
  Mode mode_;
  Team all_;
  std::unordered_map<const void*, Team> sat_memo_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

bool eval_team(const Context& c, const Formula& f, Team t, Mode mode);

// Tarskian truth at one point, computed without the mask machinery.
bool eval_classical(const Context& c, int point, const Formula& f);

// Standard team semantics of a classical formula: negation normal form with
// split disjunction, successor-team diamond and supplement existential.
bool eval_usual(const Context& c, const Formula& f, Team t);

// ---- models ----

struct Model {
  Context context;
  Team team = 0;
};

nlohmann::json model_to_json(const Context& c, Team t);
Model model_from_json(const nlohmann::json& j);

// Adds variables with value 0 (first domain element) to every point.
Model extend_vars(const Model& m, const std::vector<std::string>& extra);

std::string describe_point(const Context& c, int point);

}  // namespace teamlogic

#endif  // TEAMLOGIC_SEMANTICS_HPP
