// Hash-consed formula and term representation.
//
// Every Formula and Term is interned, so equal structures share one node and
// compare by pointer. Nodes are immutable and never freed.

#ifndef TEAMLOGIC_FORMULA_HPP
#define TEAMLOGIC_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamlogic {

enum class TermKind : std::uint8_t { Variable, Constant, Function, Meta };

struct TermNode;

class Term {
 public:
  Term() = default;

  static Term variable(const std::string& name);
  static Term constant(const std::string& name);
  static Term function(const std::string& name, const std::vector<Term>& args);
  // Schema slot standing for an arbitrary term.
  static Term meta(const std::string& name);

  TermKind kind() const;
  const std::string& name() const;
  const std::vector<Term>& args() const;
  std::size_t hash() const;
  bool valid() const { return node_ != nullptr; }
  const TermNode* node() const { return node_; }

  bool operator==(const Term& o) const { return node_ == o.node_; }
  bool operator!=(const Term& o) const { return node_ != o.node_; }

 private:
  explicit Term(const TermNode* n) : node_(n) {}
  const TermNode* node_ = nullptr;
  friend struct TermInterner;
};

// The twelve primitive kinds plus Meta, which only appears in schema
// patterns and schematic proof scripts.
enum class Kind : std::uint8_t {
  PropAtom,
  FoPredicate,
  FoEquality,
  Not,       // classical negation
  Implies,   // classical implication
  StrongNeg, // ~
  MatImpl,   // ~>
  LinImpl,   // -o
  Box,
  Delta,
  ForAll,
  Shriek,
  Meta
};

enum class MetaSort : std::uint8_t { Classical, General };

struct Node;

class Formula {
 public:
  Formula() = default;

  Kind kind() const;
  // Atom, predicate or metavariable name; bound variable for quantifiers.
  const std::string& name() const;
  const std::vector<Term>& terms() const;
  Formula lhs() const;
  Formula rhs() const;
  Formula body() const { return lhs(); }
  MetaSort sort() const;

  // Number of AST nodes; terms do not count.
  std::size_t size() const;
  // No ~, ~>, -o, delta, shriek, and no general metavariable.
  bool classical() const;
  std::size_t hash() const;
  // Creation order of the interned node; stable within one process.
  std::uint64_t id() const;

  bool valid() const { return node_ != nullptr; }
  explicit operator bool() const { return node_ != nullptr; }
  const Node* node() const { return node_; }

  bool operator==(const Formula& o) const { return node_ == o.node_; }
  bool operator!=(const Formula& o) const { return node_ != o.node_; }

 private:
  explicit Formula(const Node* n) : node_(n) {}
  const Node* node_ = nullptr;
  friend struct FormulaInterner;
};

// Orders by creation id. Cheap, deterministic within a run, not textual.
struct FormulaIdLess {
  bool operator()(const Formula& a, const Formula& b) const { return a.id() < b.id(); }
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Primitive constructors. Classical connectives throw std::invalid_argument
// when handed a non-classical operand.
Formula prop(const std::string& name);
Formula pred(const std::string& name, const std::vector<Term>& args);
Formula equals(const Term& a, const Term& b);
Formula neg(const Formula& a);
Formula implies(const Formula& a, const Formula& b);
Formula sneg(const Formula& a);
Formula mimp(const Formula& a, const Formula& b);
Formula limp(const Formula& a, const Formula& b);
Formula box(const Formula& a);
Formula delta(const Formula& a);
Formula forall(const std::string& x, const Formula& a);
Formula shriek(const std::string& x, const Formula& a);
Formula meta(const std::string& name, MetaSort sort);

// Surface abbreviations, always built from the primitives above.
inline constexpr const char* kTopAtom = "p0";
Formula top();                                       // p0 -> p0
Formula bot();                                       // !T
Formula conj(const Formula& a, const Formula& b);    // !(a -> !b)
Formula disj(const Formula& a, const Formula& b);    // !a -> b
Formula tensor(const Formula& a, const Formula& b);  // ~(a -o ~b)
Formula sand(const Formula& a, const Formula& b);    // ~(a ~> ~b)
Formula sor(const Formula& a, const Formula& b);     // ~a ~> b
Formula sbicond(const Formula& a, const Formula& b); // (a ~> b) && (b ~> a)
Formula sfalsum();                                   // ~(T ~> T)
Formula nonempty();                                  // ~F
Formula E(const Formula& a);                         // ~!a
Formula dia(const Formula& a);                       // ~delta ~a
Formula exists(const std::string& x, const Formula& a); // ~shriek x ~a

// Folds; empty input gives the neutral element (T, F, FF or T).
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);
Formula sand_all(const std::vector<Formula>& fs);
Formula sor_all(const std::vector<Formula>& fs);
Formula tensor_all(const std::vector<Formula>& fs);

bool is_top(const Formula& f);

// Pattern recognisers for the abbreviations; on success the out-parameters
// receive the operands.
bool match_conj(const Formula& f, Formula& a, Formula& b);
bool match_disj(const Formula& f, Formula& a, Formula& b);
bool match_tensor(const Formula& f, Formula& a, Formula& b);
bool match_sand(const Formula& f, Formula& a, Formula& b);
bool match_sor(const Formula& f, Formula& a, Formula& b);
bool match_sbicond(const Formula& f, Formula& a, Formula& b);
bool match_E(const Formula& f, Formula& a);
bool match_dia(const Formula& f, Formula& a);
bool match_exists(const Formula& f, std::string& x, Formula& a);

// Vocabulary. `open` signatures accept any symbol and fix its arity on first
// use; closed ones reject unknown symbols.
struct Signature {
  std::map<std::string, int> relations;
  std::map<std::string, int> functions;
  std::set<std::string> constants;
  bool open = false;

  static Signature open_signature() {
    Signature s;
    s.open = true;
    return s;
  }
  // Throws std::invalid_argument on duplicate names or negative arities.
  void validate() const;
};

}  // namespace teamlogic

template <>
struct std::hash<teamlogic::Formula> {
  std::size_t operator()(const teamlogic::Formula& f) const noexcept { return f.hash(); }
};

template <>
struct std::hash<teamlogic::Term> {
  std::size_t operator()(const teamlogic::Term& t) const noexcept { return t.hash(); }
};

#endif  // TEAMLOGIC_FORMULA_HPP
