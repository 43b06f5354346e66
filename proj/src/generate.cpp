#include "teamlogic/generate.hpp"

#include <map>

namespace teamlogic {

int RandomFormulas::below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

Formula RandomFormulas::leaf(const GenSpec& s) {
  std::vector<Formula> pool;
  for (const auto& p : s.props) pool.push_back(prop(p));
  for (const auto& x : s.qvars) pool.push_back(prop(x));
  for (const auto& r : s.fo_relations)
    for (const auto& x : s.fo_vars) pool.push_back(pred(r, {Term::variable(x)}));
  if (s.fo_vars.size() >= 2)
    pool.push_back(equals(Term::variable(s.fo_vars[0]), Term::variable(s.fo_vars[1])));
  if (pool.empty()) return top();
  return pool[below(static_cast<int>(pool.size()))];
}

Formula RandomFormulas::classical_rec(const GenSpec& s, int depth, int& quants) {
  if (depth <= 0 || below(4) == 0) return leaf(s);
  std::vector<int> ops = {0, 1, 1};
  if (s.modal) ops.push_back(2);
  bool can_quant = s.max_quantifiers < 0 || quants < s.max_quantifiers;
  if (can_quant && (!s.qvars.empty() || !s.fo_vars.empty())) ops.push_back(3);
  switch (ops[below(static_cast<int>(ops.size()))]) {
    case 0:
      return neg(classical_rec(s, depth - 1, quants));
    case 1: {
      Formula a = classical_rec(s, depth - 1, quants);
      return implies(a, classical_rec(s, depth - 1, quants));
    }
    case 2:
      return box(classical_rec(s, depth - 1, quants));
    default: {
      ++quants;
      const auto& vs = s.qvars.empty() ? s.fo_vars : s.qvars;
      std::string x = vs[below(static_cast<int>(vs.size()))];
      return forall(x, classical_rec(s, depth - 1, quants));
    }
  }
}

Formula RandomFormulas::classical(const GenSpec& s, int depth) {
  int q = 0;
  return classical_rec(s, depth, q);
}

Formula RandomFormulas::team_rec(const GenSpec& s, int depth, int& quants) {
  if (depth <= 0 || below(5) == 0) {
    if (s.team_constants && below(3) == 0) {
      switch (below(4)) {
        case 0: return top();
        case 1: return bot();
        case 2: return nonempty();
        default: return sfalsum();
      }
    }
    return depth > 0 && below(2) == 0 ? classical_rec(s, 1, quants) : leaf(s);
  }
  std::vector<int> ops = {0, 1, 2, 3};
  if (s.modal) {
    ops.push_back(4);
    ops.push_back(5);
  }
  bool can_quant = s.max_quantifiers < 0 || quants < s.max_quantifiers;
  if (can_quant && (!s.qvars.empty() || !s.fo_vars.empty())) {
    ops.push_back(6);
    ops.push_back(7);
  }
  switch (ops[below(static_cast<int>(ops.size()))]) {
    case 0:
      return sneg(team_rec(s, depth - 1, quants));
    case 1: {
      Formula a = team_rec(s, depth - 1, quants);
      return mimp(a, team_rec(s, depth - 1, quants));
    }
    case 2: {
      Formula a = team_rec(s, depth - 1, quants);
      return limp(a, team_rec(s, depth - 1, quants));
    }
    case 3:
      return classical_rec(s, depth, quants);
    case 4:
      return box(team_rec(s, depth - 1, quants));
    case 5:
      return delta(team_rec(s, depth - 1, quants));
    default: {
      bool univ = below(2) == 0;
      ++quants;
      const auto& vs = s.qvars.empty() ? s.fo_vars : s.qvars;
      std::string x = vs[below(static_cast<int>(vs.size()))];
      Formula body = team_rec(s, depth - 1, quants);
      return univ ? forall(x, body) : shriek(x, body);
    }
  }
}

Formula RandomFormulas::team(const GenSpec& s, int depth) {
  int q = 0;
  return team_rec(s, depth, q);
}

Formula RandomFormulas::boolean(const GenSpec& s, int depth, int leaf_depth) {
  if (depth <= 0 || below(4) == 0) {
    if (s.team_constants && below(4) == 0) return below(2) ? nonempty() : sfalsum();
    return classical(s, leaf_depth);
  }
  if (below(3) == 0) return sneg(boolean(s, depth - 1, leaf_depth));
  Formula a = boolean(s, depth - 1, leaf_depth);
  return mimp(a, boolean(s, depth - 1, leaf_depth));
}

namespace {

using Table = std::map<int, std::vector<Formula>>;

std::vector<Formula> atoms_of(const GenSpec& s) {
  std::vector<Formula> out;
  for (const auto& p : s.props) out.push_back(prop(p));
  for (const auto& x : s.qvars) out.push_back(prop(x));
  for (const auto& r : s.fo_relations)
    for (const auto& x : s.fo_vars) out.push_back(pred(r, {Term::variable(x)}));
  return out;
}

void fill_classical(const GenSpec& s, int max_size, Table& c) {
  c[1] = atoms_of(s);
  for (int n = 2; n <= max_size; ++n) {
    auto& out = c[n];
    for (const Formula& a : c[n - 1]) {
      out.push_back(neg(a));
      if (s.modal) out.push_back(box(a));
      for (const auto& x : s.qvars) out.push_back(forall(x, a));
      for (const auto& x : s.fo_vars) out.push_back(forall(x, a));
    }
    for (int i = 1; i < n - 1; ++i)
      for (const Formula& a : c[i])
        for (const Formula& b : c[n - 1 - i]) out.push_back(implies(a, b));
  }
}

std::vector<Formula> flatten(const Table& t, int max_size) {
  std::vector<Formula> out;
  for (int n = 1; n <= max_size; ++n) {
    auto it = t.find(n);
    if (it != t.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

}  // namespace

std::vector<Formula> enumerate_classical(const GenSpec& s, int max_size) {
  Table c;
  fill_classical(s, max_size, c);
  return flatten(c, max_size);
}

std::vector<Formula> enumerate_team(const GenSpec& s, int max_size) {
  Table c, t;
  fill_classical(s, max_size, c);
  for (int n = 1; n <= max_size; ++n) {
    auto& out = t[n];
    out = c[n];
    if (n == 1) continue;
    for (const Formula& a : t[n - 1]) {
      out.push_back(sneg(a));
      if (s.modal) {
        if (!a.classical()) out.push_back(box(a));
        out.push_back(delta(a));
      }
      for (const auto& x : s.qvars) {
        if (!a.classical()) out.push_back(forall(x, a));
        out.push_back(shriek(x, a));
      }
      for (const auto& x : s.fo_vars) {
        if (!a.classical()) out.push_back(forall(x, a));
        out.push_back(shriek(x, a));
      }
    }
    for (int i = 1; i < n - 1; ++i)
      for (const Formula& a : t[i])
        for (const Formula& b : t[n - 1 - i]) {
          out.push_back(mimp(a, b));
          out.push_back(limp(a, b));
        }
  }
  return flatten(t, max_size);
}

std::vector<Formula> enumerate_boolean(const GenSpec& s, int max_size) {
  Table c, t;
  fill_classical(s, max_size, c);
  for (int n = 1; n <= max_size; ++n) {
    auto& out = t[n];
    out = c[n];
    if (n == 1) continue;
    for (const Formula& a : t[n - 1]) out.push_back(sneg(a));
    for (int i = 1; i < n - 1; ++i)
      for (const Formula& a : t[i])
        for (const Formula& b : t[n - 1 - i]) out.push_back(mimp(a, b));
  }
  return flatten(t, max_size);
}

}  // namespace teamlogic
