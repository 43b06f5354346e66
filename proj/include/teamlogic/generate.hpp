// Seeded random and exhaustive formula generation for fuzzing and tests.

#ifndef TEAMLOGIC_GENERATE_HPP
#define TEAMLOGIC_GENERATE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"

namespace teamlogic {

struct GenSpec {
  std::vector<std::string> props;
  // Quantifiable proposition names (QBF / QPTL). They also serve as atoms.
  std::vector<std::string> qvars;
  // Unary relation symbols and variables for first-order atoms.
  std::vector<std::string> fo_relations;
  std::vector<std::string> fo_vars;
  bool modal = false;
  // T, F, NE and FF as leaves of team formulas.
  bool team_constants = false;
  // Upper bound on quantifier nodes; negative means unbounded.
  int max_quantifiers = -1;
};

class RandomFormulas {
 public:
  explicit RandomFormulas(std::uint64_t seed) : rng_(seed) {}

  // Depth counts connective nesting; depth 0 yields a leaf.
  Formula classical(const GenSpec& s, int depth);
  // Formulas of the full team logic over the GenSpec's base: ~, ~>, -o plus
  // box/delta or forall/shriek where enabled.
  Formula team(const GenSpec& s, int depth);
  // Boolean closure: ~ and ~> over classical leaves.
  Formula boolean(const GenSpec& s, int depth, int leaf_depth = 1);

  std::mt19937_64& rng() { return rng_; }
  int below(int n);

 private:
  Formula classical_rec(const GenSpec& s, int depth, int& quants);
  Formula team_rec(const GenSpec& s, int depth, int& quants);
  Formula leaf(const GenSpec& s);

  std::mt19937_64 rng_;
};

// Every formula with at most max_size AST nodes, smaller sizes first. Team
// formulas include the classical ones. Quantifier bounds are not applied.
std::vector<Formula> enumerate_classical(const GenSpec& s, int max_size);
std::vector<Formula> enumerate_team(const GenSpec& s, int max_size);
std::vector<Formula> enumerate_boolean(const GenSpec& s, int max_size);

}  // namespace teamlogic

#endif  // TEAMLOGIC_GENERATE_HPP
