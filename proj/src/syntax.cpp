#include "teamlogic/syntax.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace teamlogic {

namespace {

// Same node kind with new children. Quantifier names are kept.
Formula rebuild(const Formula& f, const Formula& a, const Formula& b) {
  switch (f.kind()) {
    case Kind::Not: return neg(a);
    case Kind::Implies: return implies(a, b);
    case Kind::StrongNeg: return sneg(a);
    case Kind::MatImpl: return mimp(a, b);
    case Kind::LinImpl: return limp(a, b);
    case Kind::Box: return box(a);
    case Kind::Delta: return delta(a);
    case Kind::ForAll: return forall(f.name(), a);
    case Kind::Shriek: return shriek(f.name(), a);
    default: return f;
  }
}

bool is_binary(Kind k) { return k == Kind::Implies || k == Kind::MatImpl || k == Kind::LinImpl; }
bool is_unary(Kind k) {
  return k == Kind::Not || k == Kind::StrongNeg || k == Kind::Box || k == Kind::Delta ||
         k == Kind::ForAll || k == Kind::Shriek;
}
bool is_quant(Kind k) { return k == Kind::ForAll || k == Kind::Shriek; }

template <class Fn>
void walk(const Formula& f, Fn&& fn) {
  fn(f);
  if (is_unary(f.kind())) walk(f.body(), fn);
  else if (is_binary(f.kind())) {
    walk(f.lhs(), fn);
    walk(f.rhs(), fn);
  }
}

void collect_props(const Formula& f, std::set<std::string>& out) {
  if (is_top(f)) return;
  if (f.kind() == Kind::PropAtom) {
    out.insert(f.name());
    return;
  }
  if (is_unary(f.kind())) collect_props(f.body(), out);
  else if (is_binary(f.kind())) {
    collect_props(f.lhs(), out);
    collect_props(f.rhs(), out);
  }
}

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TermKind::Variable) out.insert(t.name());
  for (const Term& a : t.args()) collect_term_vars(a, out);
}

void free_fo(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::FoPredicate:
    case Kind::FoEquality:
      for (const Term& t : f.terms()) collect_term_vars(t, out);
      return;
    case Kind::ForAll:
    case Kind::Shriek: {
      std::set<std::string> inner;
      free_fo(f.body(), inner);
      inner.erase(f.name());
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      if (is_unary(f.kind())) free_fo(f.body(), out);
      else if (is_binary(f.kind())) {
        free_fo(f.lhs(), out);
        free_fo(f.rhs(), out);
      }
  }
}

void free_props(const Formula& f, std::set<std::string>& out) {
  if (is_top(f)) return;
  switch (f.kind()) {
    case Kind::PropAtom:
      out.insert(f.name());
      return;
    case Kind::ForAll:
    case Kind::Shriek: {
      std::set<std::string> inner;
      free_props(f.body(), inner);
      inner.erase(f.name());
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      if (is_unary(f.kind())) free_props(f.body(), out);
      else if (is_binary(f.kind())) {
        free_props(f.lhs(), out);
        free_props(f.rhs(), out);
      }
  }
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.kind() == Kind::PropAtom || is_quant(g.kind())) out.insert(g.name());
    for (const Term& t : g.terms()) collect_term_vars(t, out);
  });
  return out;
}

}  // namespace

std::set<std::string> props_of(const Formula& f) {
  std::set<std::string> out;
  collect_props(f, out);
  return out;
}

std::set<std::string> prop_vars_of(const Formula& f) {
  std::set<std::string> out = props_of(f);
  for (const auto& x : bound_vars(f)) out.insert(x);
  return out;
}

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  if (has_fo_atoms(f)) free_fo(f, out);
  else free_props(f, out);
  return out;
}

std::set<std::string> bound_vars(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (is_quant(g.kind())) out.insert(g.name());
  });
  return out;
}

bool has_fo_atoms(const Formula& f) {
  bool found = false;
  walk(f, [&](const Formula& g) {
    found = found || g.kind() == Kind::FoPredicate || g.kind() == Kind::FoEquality;
  });
  return found;
}

bool has_quantifier(const Formula& f) {
  bool found = false;
  walk(f, [&](const Formula& g) { found = found || is_quant(g.kind()); });
  return found;
}

bool has_modality(const Formula& f) {
  bool found = false;
  walk(f, [&](const Formula& g) {
    found = found || g.kind() == Kind::Box || g.kind() == Kind::Delta;
  });
  return found;
}

Signature signature_of(const Formula& f) {
  Signature s;
  std::function<void(const Term&)> term = [&](const Term& t) {
    if (t.kind() == TermKind::Constant) s.constants.insert(t.name());
    if (t.kind() == TermKind::Function) {
      s.functions[t.name()] = static_cast<int>(t.args().size());
      for (const Term& a : t.args()) term(a);
    }
  };
  walk(f, [&](const Formula& g) {
    if (g.kind() == Kind::FoPredicate) s.relations[g.name()] = static_cast<int>(g.terms().size());
    for (const Term& t : g.terms()) term(t);
  });
  return s;
}

void merge_signature(Signature& into, const Signature& from) {
  for (const auto& [k, v] : from.relations) {
    auto [it, fresh] = into.relations.emplace(k, v);
    if (!fresh && it->second != v) throw std::invalid_argument("arity clash for relation " + k);
  }
  for (const auto& [k, v] : from.functions) {
    auto [it, fresh] = into.functions.emplace(k, v);
    if (!fresh && it->second != v) throw std::invalid_argument("arity clash for function " + k);
  }
  into.constants.insert(from.constants.begin(), from.constants.end());
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  for (int i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!used.count(c)) return c;
  }
}

Term substitute_term(const Term& s, const std::string& x, const Term& t) {
  switch (s.kind()) {
    case TermKind::Variable:
      return s.name() == x ? t : s;
    case TermKind::Function: {
      std::vector<Term> args;
      args.reserve(s.args().size());
      for (const Term& a : s.args()) args.push_back(substitute_term(a, x, t));
      return Term::function(s.name(), args);
    }
    default:
      return s;
  }
}

namespace {

Formula subst_fo(const Formula& f, const std::string& x, const Term& t,
                 const std::set<std::string>& tvars) {
  switch (f.kind()) {
    case Kind::FoPredicate: {
      std::vector<Term> ts;
      for (const Term& s : f.terms()) ts.push_back(substitute_term(s, x, t));
      return pred(f.name(), ts);
    }
    case Kind::FoEquality:
      return equals(substitute_term(f.terms()[0], x, t), substitute_term(f.terms()[1], x, t));
    case Kind::ForAll:
    case Kind::Shriek: {
      const std::string& y = f.name();
      if (y == x) return f;
      std::set<std::string> fv;
      free_fo(f.body(), fv);
      if (!fv.count(x)) return f;
      Formula body = f.body();
      std::string z = y;
      if (tvars.count(y)) {
        std::set<std::string> used = all_names(body);
        used.insert(tvars.begin(), tvars.end());
        used.insert(x);
        z = fresh_name(y, used);
        body = subst_fo(body, y, Term::variable(z), {z});
      }
      Formula nb = subst_fo(body, x, t, tvars);
      return f.kind() == Kind::ForAll ? forall(z, nb) : shriek(z, nb);
    }
    default:
      if (is_unary(f.kind())) return rebuild(f, subst_fo(f.body(), x, t, tvars), Formula());
      if (is_binary(f.kind()))
        return rebuild(f, subst_fo(f.lhs(), x, t, tvars), subst_fo(f.rhs(), x, t, tvars));
      return f;
  }
}

}  // namespace

Formula substitute_var(const Formula& f, const std::string& x, const Term& t) {
  if (has_fo_atoms(f)) return subst_fo(f, x, t, term_vars(t));
  if (t.kind() != TermKind::Variable)
    throw std::invalid_argument("substitution of a first-order term into a propositional formula");
  return substitute_prop(f, x, prop(t.name()));
}

Formula substitute_prop(const Formula& f, const std::string& x, const Formula& g) {
  if (is_top(f)) return f;
  switch (f.kind()) {
    case Kind::PropAtom:
      return f.name() == x ? g : f;
    case Kind::ForAll:
    case Kind::Shriek: {
      const std::string& y = f.name();
      if (y == x) return f;
      std::set<std::string> fv;
      free_props(f.body(), fv);
      if (!fv.count(x)) return f;
      std::set<std::string> gv;
      free_props(g, gv);
      Formula body = f.body();
      std::string z = y;
      if (gv.count(y)) {
        std::set<std::string> used = all_names(body);
        std::set<std::string> gn = all_names(g);
        used.insert(gn.begin(), gn.end());
        used.insert(x);
        z = fresh_name(y, used);
        body = substitute_prop(body, y, prop(z));
      }
      Formula nb = substitute_prop(body, x, g);
      return f.kind() == Kind::ForAll ? forall(z, nb) : shriek(z, nb);
    }
    default:
      if (is_unary(f.kind())) return rebuild(f, substitute_prop(f.body(), x, g), Formula());
      if (is_binary(f.kind()))
        return rebuild(f, substitute_prop(f.lhs(), x, g), substitute_prop(f.rhs(), x, g));
      return f;
  }
}

Formula substitute_subformula(const Formula& f, const Formula& target, const Formula& replacement) {
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (g == target) return replacement;
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula r = g;
    if (is_unary(g.kind())) r = rebuild(g, go(g.body()), Formula());
    else if (is_binary(g.kind())) r = rebuild(g, go(g.lhs()), go(g.rhs()));
    memo.emplace(g, r);
    return r;
  };
  return go(f);
}

// ---- classification ----

Base base_of(FragmentTag t) {
  switch (t) {
    case FragmentTag::PL:
    case FragmentTag::BPL:
    case FragmentTag::PTL:
      return Base::PL;
    case FragmentTag::QBF:
    case FragmentTag::BQBF:
    case FragmentTag::QPTL:
      return Base::QBF;
    case FragmentTag::ML:
    case FragmentTag::BML:
    case FragmentTag::MTL:
      return Base::ML;
    default:
      return Base::FO;
  }
}

Level level_of(FragmentTag t) {
  switch (t) {
    case FragmentTag::PL:
    case FragmentTag::QBF:
    case FragmentTag::ML:
    case FragmentTag::FO:
      return Level::Classical;
    case FragmentTag::BPL:
    case FragmentTag::BQBF:
    case FragmentTag::BML:
    case FragmentTag::BFO:
      return Level::Boolean;
    default:
      return Level::Full;
  }
}

FragmentTag make_tag(Base b, Level l) {
  static const FragmentTag table[4][3] = {
      {FragmentTag::PL, FragmentTag::BPL, FragmentTag::PTL},
      {FragmentTag::QBF, FragmentTag::BQBF, FragmentTag::QPTL},
      {FragmentTag::ML, FragmentTag::BML, FragmentTag::MTL},
      {FragmentTag::FO, FragmentTag::BFO, FragmentTag::QFO}};
  return table[static_cast<int>(b)][static_cast<int>(l)];
}

std::string to_string(FragmentTag t) {
  switch (t) {
    case FragmentTag::PL: return "PL";
    case FragmentTag::QBF: return "QBF";
    case FragmentTag::ML: return "ML";
    case FragmentTag::FO: return "FO";
    case FragmentTag::BPL: return "B(PL)";
    case FragmentTag::BQBF: return "B(QBF)";
    case FragmentTag::BML: return "B(ML)";
    case FragmentTag::BFO: return "B(FO)";
    case FragmentTag::PTL: return "PTL";
    case FragmentTag::QPTL: return "QPTL";
    case FragmentTag::MTL: return "MTL";
    case FragmentTag::QFO: return "Q(FO)";
  }
  return "?";
}

namespace {

Level level_rec(const Formula& f, std::unordered_map<Formula, Level>& memo) {
  if (f.classical()) return Level::Classical;
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  Level l = Level::Full;
  switch (f.kind()) {
    case Kind::StrongNeg:
      l = std::max(Level::Boolean, level_rec(f.body(), memo));
      break;
    case Kind::MatImpl:
      l = std::max({Level::Boolean, level_rec(f.lhs(), memo), level_rec(f.rhs(), memo)});
      break;
    default:
      l = Level::Full;
  }
  memo.emplace(f, l);
  return l;
}

}  // namespace

FragmentTag classify(const Formula& f) {
  bool fo = has_fo_atoms(f), quant = has_quantifier(f), modal = has_modality(f);
  if (modal && (quant || fo))
    throw std::invalid_argument("formula mixes modal operators with quantifiers or first-order atoms");
  Base b = fo ? Base::FO : quant ? Base::QBF : modal ? Base::ML : Base::PL;
  std::unordered_map<Formula, Level> memo;
  return make_tag(b, level_rec(f, memo));
}

bool fragment_leq(FragmentTag a, FragmentTag b) {
  Base ba = base_of(a), bb = base_of(b);
  bool base_ok = ba == bb || ba == Base::PL;
  return base_ok && level_of(a) <= level_of(b);
}

bool is_boolean_closure(FragmentTag t) { return level_of(t) != Level::Full; }

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_map<Formula, bool> seen;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (seen.count(g)) return;
    seen[g] = true;
    if (is_unary(g.kind())) go(g.body());
    else if (is_binary(g.kind())) {
      go(g.lhs());
      go(g.rhs());
    }
    out.push_back(g);
  };
  go(f);
  return out;
}

}  // namespace teamlogic
