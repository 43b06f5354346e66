#include "teamlogic/elimination.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "teamlogic/parser.hpp"

namespace teamlogic {

namespace {

void check_size(const Formula& f, std::size_t max_nodes, const char* what) {
  if (f.size() > max_nodes)
    throw EliminationError(std::string(what) + " has " + std::to_string(f.size()) +
                           " nodes, above the ceiling of " + std::to_string(max_nodes));
}

// E-literal for the negation of a classical literal: ~g == E(!g), and
// ~!b == E(b) exactly.
Formula negated_literal(const Formula& g) { return g.kind() == Kind::Not ? g.body() : neg(g); }

class RenderCache {
 public:
  const std::string& operator()(const Formula& f) {
    auto it = cache_.find(f.node());
    if (it == cache_.end()) it = cache_.emplace(f.node(), render(f)).first;
    return it->second;
  }

 private:
  std::unordered_map<const Node*, std::string> cache_;
};

using Clauses = std::vector<DnfClause>;

Clauses dnf_rec(const Formula& f, bool positive, std::size_t max_nodes) {
  if (f.classical()) {
    DnfClause c;
    if (positive)
      c.pos.push_back(f);
    else
      c.e.push_back(negated_literal(f));
    return {c};
  }
  switch (f.kind()) {
    case Kind::StrongNeg:
      return dnf_rec(f.body(), !positive, max_nodes);
    case Kind::MatImpl: {
      if (positive) {
        Clauses out = dnf_rec(f.lhs(), false, max_nodes);
        Clauses r = dnf_rec(f.rhs(), true, max_nodes);
        out.insert(out.end(), r.begin(), r.end());
        return out;
      }
      Clauses a = dnf_rec(f.lhs(), true, max_nodes);
      Clauses b = dnf_rec(f.rhs(), false, max_nodes);
      if (a.size() * b.size() > max_nodes)
        throw EliminationError("normal form needs " + std::to_string(a.size() * b.size()) +
                               " clauses, above the ceiling of " + std::to_string(max_nodes));
      Clauses out;
      for (const auto& x : a)
        for (const auto& y : b) {
          DnfClause c = x;
          c.pos.insert(c.pos.end(), y.pos.begin(), y.pos.end());
          c.e.insert(c.e.end(), y.e.begin(), y.e.end());
          out.push_back(std::move(c));
        }
      return out;
    }
    default:
      throw std::invalid_argument("not in a Boolean closure: " + render(f));
  }
}

void sort_unique(std::vector<Formula>& v, RenderCache& rc) {
  std::sort(v.begin(), v.end(), [&](const Formula& a, const Formula& b) { return rc(a) < rc(b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string clause_key(const DnfClause& c, RenderCache& rc) {
  std::string k;
  for (const auto& f : c.pos) k += rc(f) + "\x01";
  k += "\x02";
  for (const auto& f : c.e) k += rc(f) + "\x01";
  return k;
}

Formula clause_formula(const DnfClause& c) {
  std::vector<Formula> parts = c.pos;
  for (const auto& b : c.e) parts.push_back(E(b));
  return sand_all(parts);
}

Formula alpha_of(const DnfClause& c) { return conj_all(c.pos); }

// alpha && b, skipping an empty alpha.
Formula with_alpha(const DnfClause& c, const Formula& b) {
  return c.pos.empty() ? b : conj(alpha_of(c), b);
}

Formula flat2(const DnfClause& c) {
  std::vector<Formula> parts;
  if (!c.pos.empty()) parts.push_back(alpha_of(c));
  for (const auto& b : c.e) parts.push_back(E(b));
  return sand_all(parts);
}

Formula distributed(const DnfClause& c) {
  if (c.e.empty()) return alpha_of(c);
  std::vector<Formula> parts;
  for (const auto& b : c.e) parts.push_back(sand(alpha_of(c), E(b)));
  return tensor_all(parts);
}

Formula isolated(const DnfClause& c) {
  if (c.e.empty()) return alpha_of(c);
  std::vector<Formula> parts;
  for (const auto& b : c.e) parts.push_back(sand(alpha_of(c), E(with_alpha(c, b))));
  return tensor_all(parts);
}

std::vector<Formula> isolated_es(const DnfClause& c) {
  std::vector<Formula> out;
  for (const auto& b : c.e) out.push_back(E(with_alpha(c, b)));
  return out;
}

std::vector<Formula> repeat(const Formula& f, std::size_t n) {
  return std::vector<Formula>(std::max<std::size_t>(n, 1), f);
}

Formula flat_disj(const std::vector<Formula>& parts) {
  std::vector<Formula> uniq;
  for (const auto& p : parts) {
    if (is_top(p)) return top();
    if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);
  }
  return disj_all(uniq);
}

// Records whole-formula steps, skipping unchanged ones.
struct Chain {
  std::vector<TraceStep> steps;
  Formula cur;
  std::size_t max_nodes;

  void step(const std::string& rule, const Formula& next) {
    check_size(next, max_nodes, "rewritten formula");
    if (next == cur) return;
    steps.push_back({rule, cur, next});
    cur = next;
  }
  // Rewrites every occurrence of `from` inside the current formula.
  void local(const std::string& rule, const Formula& from, const Formula& to) {
    if (from == to) return;
    step(rule, cur == from ? to : substitute_subformula(cur, from, to));
  }
};

void spot_check(const std::vector<TraceStep>& steps, const EliminationOptions& opts) {
  if (!opts.spot_check) return;
  for (const auto& s : steps) {
    Verdict v;
    try {
      v = equiv(s.before, s.after, opts.budget);
    } catch (const BudgetError&) {
      continue;
    }
    if (!v.holds)
      throw EliminationError("trace step " + s.rule + " is not an equivalence: " + render(s.before) +
                             "  vs  " + render(s.after));
  }
}

EliminationResult finish(Chain& ch, const EliminationOptions& opts) {
  spot_check(ch.steps, opts);
  EliminationResult r;
  r.output = ch.cur;
  r.trace = std::move(ch.steps);
  r.fragment = classify(r.output);
  return r;
}

// The diamond-like operator used by delta and shriek elimination.
struct Kit {
  std::function<Formula(const Formula&)> dia;
  std::function<Formula(const Formula&)> flat;  // classical reading of dia
  const char* d_or;
  const char* d_tensor;
  const char* isolate;
  const char* f_flat;
};

EliminationResult eliminate_dual(const Formula& input, const Formula& inner, const Kit& k,
                                 const EliminationOptions& opts) {
  Chain ch{{}, input, opts.max_nodes};
  // input == ~dia ~inner
  ch.step("deMorgan-L", sneg(k.dia(sneg(inner))));
  DnfForm d = dnf_boolean_closure(sneg(inner), opts.max_nodes);
  ch.step("literal-normalize", sneg(k.dia(d.to_formula())));

  auto stage = [&](const std::function<Formula(const DnfClause&)>& per_clause) {
    std::vector<Formula> parts;
    for (const auto& c : d.clauses) parts.push_back(per_clause(c));
    return sneg(sor_all(parts));
  };
  ch.step(k.d_or, stage([&](const DnfClause& c) { return k.dia(clause_formula(c)); }));
  ch.step("flatness-2", stage([&](const DnfClause& c) { return k.dia(flat2(c)); }));
  ch.step("distribute", stage([&](const DnfClause& c) { return k.dia(distributed(c)); }));
  ch.step(k.d_tensor, stage([&](const DnfClause& c) {
    if (c.e.empty()) return k.dia(alpha_of(c));
    std::vector<Formula> parts;
    for (const auto& b : c.e) parts.push_back(k.dia(sand(alpha_of(c), E(b))));
    return tensor_all(parts);
  }));
  auto per_witness = [&](const DnfClause& c, const std::function<Formula(const Formula&)>& head) {
    if (c.e.empty()) return head(alpha_of(c));
    std::vector<Formula> parts;
    for (const auto& b : c.e) parts.push_back(sand(head(alpha_of(c)), E(k.flat(with_alpha(c, b)))));
    return tensor_all(parts);
  };
  ch.step(k.isolate, stage([&](const DnfClause& c) { return per_witness(c, k.dia); }));
  ch.step(k.f_flat, stage([&](const DnfClause& c) { return per_witness(c, k.flat); }));
  auto pulled = [&](const DnfClause& c, bool flatten) {
    Formula a = k.flat(alpha_of(c));
    std::vector<Formula> parts{flatten ? a : tensor_all(repeat(a, c.e.size()))};
    for (const auto& b : c.e) parts.push_back(E(k.flat(with_alpha(c, b))));
    return sand_all(parts);
  };
  ch.step("isolate-E", stage([&](const DnfClause& c) { return pulled(c, false); }));
  ch.step("flatness-1", stage([&](const DnfClause& c) { return pulled(c, true); }));
  return finish(ch, opts);
}

// Pushes a linear operator (box, forall x) through ~ and ~> down to
// classical operands.
EliminationResult push_linear(const Formula& input, const std::function<Formula(const Formula&)>& op,
                              const std::function<bool(const Formula&, Formula&)>& unwrap,
                              const char* lin, const char* dist, const EliminationOptions& opts) {
  Chain ch{{}, input, opts.max_nodes};
  std::function<Formula(const Formula&)> go = [&](const Formula& f) -> Formula {
    Formula body;
    if (!unwrap(f, body) || body.classical()) return f;
    if (body.kind() == Kind::StrongNeg) {
      Formula next = sneg(op(body.body()));
      ch.local(lin, f, next);
      return sneg(go(op(body.body())));
    }
    if (body.kind() == Kind::MatImpl) {
      Formula next = mimp(op(body.lhs()), op(body.rhs()));
      ch.local(dist, f, next);
      return mimp(go(op(body.lhs())), go(op(body.rhs())));
    }
    throw std::invalid_argument("operand is not in a Boolean closure: " + render(body));
  };
  Formula out = go(input);
  if (out != ch.cur) throw EliminationError("internal: linear push trace diverged");
  return finish(ch, opts);
}

}  // namespace

Formula DnfForm::to_formula() const {
  std::vector<Formula> parts;
  for (const auto& c : clauses) parts.push_back(clause_formula(c));
  return sor_all(parts);
}

DnfForm dnf_boolean_closure(const Formula& f, std::size_t max_nodes) {
  Clauses raw = dnf_rec(f, true, max_nodes);
  RenderCache rc;
  DnfForm out;
  for (auto& c : raw) {
    // T contributes nothing; E(F) makes the clause unsatisfiable.
    c.pos.erase(std::remove_if(c.pos.begin(), c.pos.end(), [](const Formula& g) { return is_top(g); }),
                c.pos.end());
    if (std::find(c.e.begin(), c.e.end(), bot()) != c.e.end()) continue;
    sort_unique(c.pos, rc);
    sort_unique(c.e, rc);
    out.clauses.push_back(std::move(c));
  }
  std::vector<std::pair<std::string, DnfClause>> keyed;
  for (auto& c : out.clauses) keyed.emplace_back(clause_key(c, rc), std::move(c));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  out.clauses.clear();
  for (auto& [k, c] : keyed) out.clauses.push_back(std::move(c));
  return out;
}

EliminationResult eliminate_limp(const Formula& lhs, const Formula& rhs,
                                 const EliminationOptions& opts) {
  Chain ch{{}, limp(lhs, rhs), opts.max_nodes};
  ch.step("deMorgan-L", sneg(tensor(lhs, sneg(rhs))));
  DnfForm a = dnf_boolean_closure(lhs, opts.max_nodes);
  DnfForm b = dnf_boolean_closure(sneg(rhs), opts.max_nodes);
  if (a.clauses.size() * b.clauses.size() > opts.max_nodes)
    throw EliminationError("distribution needs " + std::to_string(a.clauses.size() * b.clauses.size()) +
                           " clauses, above the ceiling of " + std::to_string(opts.max_nodes));
  ch.step("literal-normalize", sneg(tensor(a.to_formula(), b.to_formula())));

  auto stage = [&](const std::function<Formula(const DnfClause&, const DnfClause&)>& pair) {
    std::vector<Formula> parts;
    for (const auto& c : a.clauses)
      for (const auto& d : b.clauses) parts.push_back(pair(c, d));
    return sneg(sor_all(parts));
  };
  ch.step("D⊻⊗", stage([](const DnfClause& c, const DnfClause& d) {
    return tensor(clause_formula(c), clause_formula(d));
  }));
  ch.step("flatness-2", stage([](const DnfClause& c, const DnfClause& d) {
    return tensor(flat2(c), flat2(d));
  }));
  ch.step("distribute", stage([](const DnfClause& c, const DnfClause& d) {
    return tensor(distributed(c), distributed(d));
  }));
  ch.step("isolate-E", stage([](const DnfClause& c, const DnfClause& d) {
    return tensor(isolated(c), isolated(d));
  }));
  auto pulled = [](const DnfClause& c, const DnfClause& d, bool flatten) {
    std::vector<Formula> cls = repeat(alpha_of(c), c.e.size());
    std::vector<Formula> dcls = repeat(alpha_of(d), d.e.size());
    cls.insert(cls.end(), dcls.begin(), dcls.end());
    std::vector<Formula> parts{flatten ? flat_disj(cls) : tensor_all(cls)};
    if (flatten && is_top(parts[0]) && !(c.e.empty() && d.e.empty())) parts.clear();
    for (const auto& e : isolated_es(c)) parts.push_back(e);
    for (const auto& e : isolated_es(d)) parts.push_back(e);
    return sand_all(parts);
  };
  ch.step("isolate-E", stage([&](const DnfClause& c, const DnfClause& d) { return pulled(c, d, false); }));
  ch.step("flatness-1", stage([&](const DnfClause& c, const DnfClause& d) { return pulled(c, d, true); }));
  return finish(ch, opts);
}

EliminationResult eliminate_box(const Formula& inner, const EliminationOptions& opts) {
  return push_linear(
      box(inner), [](const Formula& f) { return box(f); },
      [](const Formula& f, Formula& body) {
        if (f.kind() != Kind::Box) return false;
        body = f.body();
        return true;
      },
      "Lin□", "D□⤳", opts);
}

EliminationResult eliminate_forall(const std::string& x, const Formula& inner,
                                   const EliminationOptions& opts) {
  return push_linear(
      forall(x, inner), [&](const Formula& f) { return forall(x, f); },
      [&](const Formula& f, Formula& body) {
        if (f.kind() != Kind::ForAll || f.name() != x) return false;
        body = f.body();
        return true;
      },
      "Lin∀", "D∀⤳", opts);
}

EliminationResult eliminate_delta(const Formula& inner, const EliminationOptions& opts) {
  Kit k{[](const Formula& f) { return dia(f); },
        [](const Formula& f) { return neg(box(neg(f))); },
        "D◇⊻",
        "D◇⊗",
        "◇IsolateE",
        "F◇"};
  return eliminate_dual(delta(inner), inner, k, opts);
}

EliminationResult eliminate_shriek(const std::string& x, const Formula& inner,
                                   const EliminationOptions& opts) {
  Kit k{[&](const Formula& f) { return exists(x, f); },
        [&](const Formula& f) { return neg(forall(x, neg(f))); },
        "D∃⊻",
        "D∃⊗",
        "∃IsolateE",
        "F∃"};
  return eliminate_dual(shriek(x, inner), inner, k, opts);
}

Formula qbf_expand(const Formula& f) {
  switch (f.kind()) {
    case Kind::PropAtom:
      return f;
    case Kind::Not:
      return neg(qbf_expand(f.body()));
    case Kind::Implies:
      return implies(qbf_expand(f.lhs()), qbf_expand(f.rhs()));
    case Kind::ForAll: {
      Formula a = qbf_expand(f.body());
      return conj(substitute_prop(a, f.name(), top()), substitute_prop(a, f.name(), bot()));
    }
    default:
      throw std::invalid_argument("qbf_expand needs a quantified propositional formula: " + render(f));
  }
}

namespace {

using Plug = std::function<Formula(const Formula&)>;

struct Closure {
  const EliminationOptions& opts;
  bool propositional;  // quantified leaves may be expanded
  std::vector<TraceStep> steps;

  void splice(const std::vector<TraceStep>& local, const Plug& plug) {
    for (const auto& s : local) steps.push_back({s.rule, plug(s.before), plug(s.after)});
  }

  Formula lower(const Formula& f, const Plug& plug) {
    if (!opts.lower_qbf || !propositional) return f;
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
      if (g.classical()) return has_quantifier(g) ? qbf_expand(g) : g;
      if (g.kind() == Kind::StrongNeg) return sneg(go(g.body()));
      if (g.kind() == Kind::MatImpl) return mimp(go(g.lhs()), go(g.rhs()));
      return g;
    };
    Formula out = go(f);
    if (out != f) steps.push_back({"X", plug(f), plug(out)});
    return out;
  }

  Formula run(const Formula& f, const Plug& plug) {
    if (f.classical()) return lower(f, plug);
    switch (f.kind()) {
      case Kind::StrongNeg:
        return sneg(run(f.body(), [&](const Formula& x) { return plug(sneg(x)); }));
      case Kind::MatImpl: {
        Formula a = run(f.lhs(), [&](const Formula& x) { return plug(mimp(x, f.rhs())); });
        Formula b = run(f.rhs(), [&](const Formula& x) { return plug(mimp(a, x)); });
        return mimp(a, b);
      }
      case Kind::LinImpl: {
        Formula a = run(f.lhs(), [&](const Formula& x) { return plug(limp(x, f.rhs())); });
        Formula b = run(f.rhs(), [&](const Formula& x) { return plug(limp(a, x)); });
        return apply(eliminate_limp(a, b, local_opts()), plug);
      }
      case Kind::Box: {
        Formula a = run(f.body(), [&](const Formula& x) { return plug(box(x)); });
        return apply(eliminate_box(a, local_opts()), plug);
      }
      case Kind::Delta: {
        Formula a = run(f.body(), [&](const Formula& x) { return plug(delta(x)); });
        return apply(eliminate_delta(a, local_opts()), plug);
      }
      case Kind::ForAll: {
        Formula a = run(f.body(), [&](const Formula& x) { return plug(forall(f.name(), x)); });
        return apply(eliminate_forall(f.name(), a, local_opts()), plug);
      }
      case Kind::Shriek: {
        Formula a = run(f.body(), [&](const Formula& x) { return plug(shriek(f.name(), x)); });
        return apply(eliminate_shriek(f.name(), a, local_opts()), plug);
      }
      default:
        throw std::invalid_argument("cannot eliminate " + render(f));
    }
  }

  Formula apply(const EliminationResult& r, const Plug& plug) {
    splice(r.trace, plug);
    return lower(r.output, plug);
  }

  EliminationOptions local_opts() const {
    EliminationOptions o = opts;
    o.spot_check = false;
    return o;
  }
};

}  // namespace

EliminationResult to_boolean_closure(const Formula& f, const EliminationOptions& opts) {
  if (opts.mode == Mode::Strict)
    throw EliminationError(
        "strict semantics is refused: a counting argument shows that some strict formulas have no "
        "equivalent in the Boolean closure");
  FragmentTag tag = classify(f);
  Closure c{opts, base_of(tag) == Base::QBF || base_of(tag) == Base::PL, {}};
  EliminationResult r;
  r.output = c.run(f, [](const Formula& x) { return x; });
  check_size(r.output, opts.max_nodes, "output");
  r.trace = std::move(c.steps);
  spot_check(r.trace, opts);
  r.fragment = classify(r.output);
  return r;
}

Formula to_splus(const Formula& f, std::size_t max_nodes) {
  DnfForm d = dnf_boolean_closure(f, max_nodes);
  if (d.clauses.empty()) return sand(nonempty(), bot());
  std::vector<Formula> clauses;
  for (const auto& c : d.clauses) {
    std::vector<Formula> parts = c.pos;
    for (const auto& b : c.e) parts.push_back(tensor(top(), sand(nonempty(), b)));
    clauses.push_back(sand_all(parts));
  }
  Formula out = sor_all(clauses);
  check_size(out, max_nodes, "S+ form");
  return out;
}

bool is_splus(const Formula& f) {
  if (f.classical() || f == nonempty()) return true;
  Formula a, b;
  if (match_sor(f, a, b) || match_sand(f, a, b) || match_tensor(f, a, b))
    return is_splus(a) && is_splus(b);
  return false;
}

namespace {

Formula rename_bound(const Formula& f, const std::set<std::string>& avoid, std::set<std::string>& used) {
  switch (f.kind()) {
    case Kind::Not:
      return neg(rename_bound(f.body(), avoid, used));
    case Kind::Implies:
      return implies(rename_bound(f.lhs(), avoid, used), rename_bound(f.rhs(), avoid, used));
    case Kind::Box:
      return box(rename_bound(f.body(), avoid, used));
    case Kind::ForAll: {
      Formula body = rename_bound(f.body(), avoid, used);
      if (!avoid.count(f.name())) return forall(f.name(), body);
      std::string z = fresh_name(f.name(), used);
      used.insert(z);
      return forall(z, substitute_var(body, f.name(), Term::variable(z)));
    }
    default:
      return f;
  }
}

}  // namespace

FoTranslation first_order_translation(const std::vector<Formula>& phi, bool auto_rename) {
  std::vector<Formula> gammas, deltas;
  std::set<std::string> vars, used_names;
  Signature sig;
  for (Formula f : phi) {
    bool negated = f.kind() == Kind::StrongNeg && f.body().classical();
    Formula core = negated ? f.body() : f;
    if (!core.classical())
      throw std::invalid_argument("first-order translation needs FO or ~FO formulas: " + render(f));
    std::set<std::string> free = free_vars(core), bound = bound_vars(core);
    bool clash = std::any_of(free.begin(), free.end(), [&](const auto& v) { return bound.count(v); });
    if (clash) {
      if (!auto_rename)
        throw std::invalid_argument("a variable is both free and bound in " + render(f));
      std::set<std::string> used = free;
      used.insert(bound.begin(), bound.end());
      core = rename_bound(core, free, used);
    }
    merge_signature(sig, signature_of(core));
    vars.insert(free.begin(), free.end());
    (negated ? deltas : gammas).push_back(core);
  }
  for (const auto& [r, a] : sig.relations) used_names.insert(r);
  for (const auto& [fn, a] : sig.functions) used_names.insert(fn);
  used_names.insert(sig.constants.begin(), sig.constants.end());

  FoTranslation out;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    std::map<std::string, Term> consts;
    for (const auto& x : vars) {
      std::string name = "c_" + std::to_string(i) + "_" + x;
      if (used_names.count(name)) name = fresh_name(name + "_", used_names);
      used_names.insert(name);
      out.extension.constants.insert(name);
      consts.emplace(x, Term::constant(name));
    }
    auto ground = [&](Formula g) {
      for (const auto& [x, c] : consts) g = substitute_var(g, x, c);
      return g;
    };
    for (const auto& g : gammas) out.formulas.push_back(ground(g));
    out.formulas.push_back(neg(ground(deltas[i])));
  }
  return out;
}

Formula sentence_interpolant(const std::vector<Formula>&, const Formula& alpha) {
  std::set<std::string> free = free_vars(alpha);
  Formula out = alpha;
  for (auto it = free.rbegin(); it != free.rend(); ++it) out = forall(*it, out);
  return out;
}

nlohmann::json trace_to_json(const std::vector<TraceStep>& trace) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : trace)
    j.push_back({{"rule", s.rule}, {"before", render(s.before)}, {"after", render(s.after)}});
  return j;
}

}  // namespace teamlogic
