#include "teamlogic/schema.hpp"

#include <optional>
#include <stdexcept>

#include "teamlogic/syntax.hpp"

namespace teamlogic {

MetaDecls standard_metas() {
  MetaDecls m;
  for (const char* n : {"phi", "psi", "theta"}) m.formulas[n] = MetaSort::General;
  for (const char* n : {"alpha", "beta", "gamma"}) m.formulas[n] = MetaSort::Classical;
  m.terms.insert("t");
  return m;
}

std::vector<std::string> AxiomSchema::free_metas() const {
  std::set<std::string> derived_names;
  for (const auto& d : derived) derived_names.insert(d.slot);
  std::set<std::string> seen;
  for (const Formula& g : subformulas(pattern)) {
    if (g.kind() == Kind::Meta && !derived_names.count(g.name())) seen.insert(g.name());
    if ((g.kind() == Kind::ForAll || g.kind() == Kind::Shriek) && var_metas.count(g.name()))
      seen.insert(g.name());
    for (const Term& t : g.terms()) {
      std::vector<Term> stack{t};
      while (!stack.empty()) {
        Term u = stack.back();
        stack.pop_back();
        if (u.kind() == TermKind::Meta) seen.insert(u.name());
        if (u.kind() == TermKind::Variable && var_metas.count(u.name())) seen.insert(u.name());
        for (const Term& a : u.args()) stack.push_back(a);
      }
    }
  }
  // A substituted term occurs only inside a derived slot.
  for (const auto& d : derived)
    if (d.op == DerivedSlot::Op::SubstVar) seen.insert(d.term);
  return {seen.begin(), seen.end()};
}

AxiomSchema make_schema(const std::string& system, const std::string& name,
                        const std::string& pattern, const std::string& comment,
                        const std::vector<std::string>& slots) {
  AxiomSchema s;
  s.system = system;
  s.name = name;
  s.pattern_text = pattern;
  s.metas = standard_metas();
  for (const auto& n : slots) s.metas.formulas[n] = MetaSort::Classical;
  s.var_metas = {"x", "y"};
  s.comment = comment;
  s.pattern = parse(pattern, Signature::open_signature(), s.metas);
  return s;
}

namespace {

bool match_term(const Term& p, const Term& t, const std::set<std::string>& var_metas,
                Instantiation& inst) {
  if (p.kind() == TermKind::Meta ||
      (p.kind() == TermKind::Variable && var_metas.count(p.name()))) {
    if (p.kind() == TermKind::Variable && t.kind() != TermKind::Variable) return false;
    auto [it, fresh] = inst.terms.emplace(p.name(), t);
    return fresh || it->second == t;
  }
  if (p.kind() != t.kind() || p.name() != t.name() || p.args().size() != t.args().size())
    return false;
  for (std::size_t i = 0; i < p.args().size(); ++i)
    if (!match_term(p.args()[i], t.args()[i], var_metas, inst)) return false;
  return true;
}

bool bind_var(const std::string& pname, const std::string& actual,
              const std::set<std::string>& var_metas, Instantiation& inst) {
  if (!var_metas.count(pname)) return pname == actual;
  Term v = Term::variable(actual);
  auto [it, fresh] = inst.terms.emplace(pname, v);
  return fresh || it->second == v;
}

Term apply_term(const Term& p, const std::set<std::string>& var_metas, const Instantiation& inst) {
  if (p.kind() == TermKind::Meta ||
      (p.kind() == TermKind::Variable && var_metas.count(p.name()))) {
    auto it = inst.terms.find(p.name());
    if (it == inst.terms.end()) throw std::invalid_argument("unbound term metavariable " + p.name());
    return it->second;
  }
  if (p.kind() != TermKind::Function) return p;
  std::vector<Term> args;
  for (const Term& a : p.args()) args.push_back(apply_term(a, var_metas, inst));
  return Term::function(p.name(), args);
}

std::string var_name(const std::string& pname, const std::set<std::string>& var_metas,
                     const Instantiation& inst) {
  if (!var_metas.count(pname)) return pname;
  auto it = inst.terms.find(pname);
  if (it == inst.terms.end()) throw std::invalid_argument("unbound variable metavariable " + pname);
  return it->second.name();
}

Formula compute_derived(const DerivedSlot& d, const Instantiation& inst) {
  auto base = inst.formulas.find(d.base);
  auto var = inst.terms.find(d.var);
  if (base == inst.formulas.end() || var == inst.terms.end())
    throw std::invalid_argument("derived slot " + d.slot + " depends on unbound metavariables");
  if (d.op == DerivedSlot::Op::SubstProp)
    return substitute_prop(base->second, var->second.name(), d.replacement);
  auto term = inst.terms.find(d.term);
  if (term == inst.terms.end()) throw std::invalid_argument("derived slot " + d.slot + " lacks a term");
  return substitute_var(base->second, var->second.name(), term->second);
}

// The term standing at a free occurrence of x in `base` where `image` has
// base[x/t]. Binder names may differ, since substitution renames them.
std::optional<Term> infer_term(const Term& base, const Term& image, const std::string& x) {
  if (base.kind() == TermKind::Variable && base.name() == x) return image;
  if (base.kind() != TermKind::Function || image.kind() != TermKind::Function ||
      base.args().size() != image.args().size())
    return std::nullopt;
  for (std::size_t i = 0; i < base.args().size(); ++i)
    if (auto t = infer_term(base.args()[i], image.args()[i], x)) return t;
  return std::nullopt;
}

std::optional<Term> infer_term(const Formula& base, const Formula& image, const std::string& x) {
  if (base.kind() != image.kind()) return std::nullopt;
  switch (base.kind()) {
    case Kind::FoPredicate:
    case Kind::FoEquality:
      if (base.terms().size() != image.terms().size()) return std::nullopt;
      for (std::size_t i = 0; i < base.terms().size(); ++i)
        if (auto t = infer_term(base.terms()[i], image.terms()[i], x)) return t;
      return std::nullopt;
    case Kind::PropAtom:
    case Kind::Meta:
      return std::nullopt;
    case Kind::ForAll:
    case Kind::Shriek:
      if (base.name() == x) return std::nullopt;
      return infer_term(base.body(), image.body(), x);
    case Kind::Not:
    case Kind::StrongNeg:
    case Kind::Box:
    case Kind::Delta:
      return infer_term(base.body(), image.body(), x);
    default:
      if (auto t = infer_term(base.lhs(), image.lhs(), x)) return t;
      return infer_term(base.rhs(), image.rhs(), x);
  }
}

}  // namespace

bool match_into(const Formula& p, const Formula& f, const std::set<std::string>& var_metas,
                Instantiation& inst) {
  if (p.kind() == Kind::Meta) {
    if (p.sort() == MetaSort::Classical && !f.classical()) return false;
    auto [it, fresh] = inst.formulas.emplace(p.name(), f);
    return fresh || it->second == f;
  }
  if (p.kind() != f.kind()) return false;
  switch (p.kind()) {
    case Kind::PropAtom:
      return p.name() == f.name();
    case Kind::FoPredicate:
      if (p.name() != f.name() || p.terms().size() != f.terms().size()) return false;
      [[fallthrough]];
    case Kind::FoEquality:
      for (std::size_t i = 0; i < p.terms().size(); ++i)
        if (!match_term(p.terms()[i], f.terms()[i], var_metas, inst)) return false;
      return true;
    case Kind::ForAll:
    case Kind::Shriek:
      return bind_var(p.name(), f.name(), var_metas, inst) &&
             match_into(p.body(), f.body(), var_metas, inst);
    case Kind::Not:
    case Kind::StrongNeg:
    case Kind::Box:
    case Kind::Delta:
      return match_into(p.body(), f.body(), var_metas, inst);
    default:
      return match_into(p.lhs(), f.lhs(), var_metas, inst) &&
             match_into(p.rhs(), f.rhs(), var_metas, inst);
  }
}

bool side_condition_holds(const AxiomSchema& s, const Instantiation& inst) {
  switch (s.side) {
    case SideCondition::None:
    case SideCondition::IsTerm:
      return true;
    case SideCondition::NotFreeIn: {
      auto f = inst.formulas.find(s.side_formula);
      auto x = inst.terms.find(s.side_var);
      if (f == inst.formulas.end() || x == inst.terms.end()) return false;
      return !free_vars(f->second).count(x->second.name());
    }
    case SideCondition::Sentence: {
      auto f = inst.formulas.find(s.side_formula);
      if (f == inst.formulas.end()) return false;
      return free_vars(f->second).empty() && props_of(f->second).empty();
    }
  }
  return false;
}

std::optional<Instantiation> match_schema(const AxiomSchema& s, const Formula& f) {
  Instantiation inst;
  if (!match_into(s.pattern, f, s.var_metas, inst)) return std::nullopt;
  for (const DerivedSlot& d : s.derived) {
    auto it = inst.formulas.find(d.slot);
    if (it == inst.formulas.end()) return std::nullopt;
    if (d.op == DerivedSlot::Op::SubstVar && !inst.terms.count(d.term)) {
      auto base = inst.formulas.find(d.base);
      auto var = inst.terms.find(d.var);
      if (base == inst.formulas.end() || var == inst.terms.end()) return std::nullopt;
      // Without a free occurrence the term is arbitrary; x itself is the
      // canonical choice.
      auto t = infer_term(base->second, it->second, var->second.name());
      inst.terms[d.term] = t ? *t : var->second;
    }
    Formula expect;
    try {
      expect = compute_derived(d, inst);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
    if (expect != it->second) return std::nullopt;
    inst.formulas.erase(it);
  }
  if (!side_condition_holds(s, inst)) return std::nullopt;
  return inst;
}

Formula apply_instantiation(const Formula& p, const std::set<std::string>& var_metas,
                            const Instantiation& inst) {
  switch (p.kind()) {
    case Kind::Meta: {
      auto it = inst.formulas.find(p.name());
      if (it == inst.formulas.end()) throw std::invalid_argument("unbound metavariable " + p.name());
      if (p.sort() == MetaSort::Classical && !it->second.classical())
        throw std::invalid_argument("classical metavariable " + p.name() +
                                    " bound to a team-logical formula");
      return it->second;
    }
    case Kind::PropAtom:
      return p;
    case Kind::FoPredicate: {
      std::vector<Term> ts;
      for (const Term& t : p.terms()) ts.push_back(apply_term(t, var_metas, inst));
      return pred(p.name(), ts);
    }
    case Kind::FoEquality:
      return equals(apply_term(p.terms()[0], var_metas, inst),
                    apply_term(p.terms()[1], var_metas, inst));
    case Kind::Not: return neg(apply_instantiation(p.body(), var_metas, inst));
    case Kind::StrongNeg: return sneg(apply_instantiation(p.body(), var_metas, inst));
    case Kind::Box: return box(apply_instantiation(p.body(), var_metas, inst));
    case Kind::Delta: return delta(apply_instantiation(p.body(), var_metas, inst));
    case Kind::ForAll:
      return forall(var_name(p.name(), var_metas, inst),
                    apply_instantiation(p.body(), var_metas, inst));
    case Kind::Shriek:
      return shriek(var_name(p.name(), var_metas, inst),
                    apply_instantiation(p.body(), var_metas, inst));
    case Kind::Implies:
      return implies(apply_instantiation(p.lhs(), var_metas, inst),
                     apply_instantiation(p.rhs(), var_metas, inst));
    case Kind::MatImpl:
      return mimp(apply_instantiation(p.lhs(), var_metas, inst),
                  apply_instantiation(p.rhs(), var_metas, inst));
    case Kind::LinImpl:
      return limp(apply_instantiation(p.lhs(), var_metas, inst),
                  apply_instantiation(p.rhs(), var_metas, inst));
  }
  return p;
}

Formula apply_instantiation(const AxiomSchema& s, const Instantiation& inst) {
  Instantiation full = inst;
  for (const DerivedSlot& d : s.derived) full.formulas[d.slot] = compute_derived(d, inst);
  return apply_instantiation(s.pattern, s.var_metas, full);
}

}  // namespace teamlogic
