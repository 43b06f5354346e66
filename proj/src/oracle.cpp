#include "teamlogic/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "teamlogic/parser.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

namespace {

double int_pow(double b, double e) { return std::pow(b, e); }

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

double team_count(int points, const SearchBudget& b) {
  if (!b.max_team_size || *b.max_team_size >= points) return int_pow(2, points);
  double total = 0, c = 1;
  for (int i = 0; i <= *b.max_team_size; ++i) {
    total += c;
    c = c * (points - i) / (i + 1);
  }
  return total;
}

// Submasks of base in ascending order, filtered by the team size bound.
std::vector<Team> teams_of(Team base, const SearchBudget& b) {
  std::vector<Team> out;
  Team s = 0;
  do {
    if (!b.max_team_size || team_size(s) <= *b.max_team_size) out.push_back(s);
    s = (s - base) & base;
  } while (s != 0);
  return out;
}

template <class C>
void insert_all(std::set<std::string>& into, const C& from) {
  into.insert(from.begin(), from.end());
}

double fo_structures(const Signature& sig, int d) {
  double n = 1;
  for (const auto& [r, a] : sig.relations) n *= int_pow(2, ipow(d, a));
  for (const auto& [f, a] : sig.functions) n *= int_pow(d, ipow(d, a));
  n *= int_pow(d, static_cast<double>(sig.constants.size()));
  return n;
}

}  // namespace

ContextSpace space_for(const std::vector<Formula>& fs, const SearchBudget& b) {
  ContextSpace s;
  bool fo = false, modal = false;
  for (const Formula& f : fs) {
    fo = fo || has_fo_atoms(f);
    modal = modal || has_modality(f);
  }
  if (fo && modal) throw std::invalid_argument("modal and first-order formulas cannot share a context");
  if (fo) {
    s.kind = ContextKind::Fo;
    std::set<std::string> free, bound;
    for (const Formula& f : fs) {
      merge_signature(s.signature, signature_of(f));
      insert_all(free, free_vars(f));
      insert_all(bound, bound_vars(f));
    }
    for (const auto& v : free) bound.erase(v);
    s.free_vars.assign(free.begin(), free.end());
    s.bound_vars.assign(bound.begin(), bound.end());
    return s;
  }
  std::set<std::string> props;
  if (modal) {
    s.kind = ContextKind::Kripke;
    for (const Formula& f : fs) insert_all(props, props_of(f));
  } else {
    s.kind = ContextKind::Prop;
    for (const Formula& f : fs) insert_all(props, prop_vars_of(f));
    for (int i = 0; static_cast<int>(props.size()) < b.max_props; ++i)
      props.insert("pad" + std::to_string(i));
  }
  s.props.assign(props.begin(), props.end());
  return s;
}

std::uint64_t count_contexts(const ContextSpace& s, const SearchBudget& b) {
  double n = 0;
  switch (s.kind) {
    case ContextKind::Prop:
      n = team_count(1 << std::min<std::size_t>(s.props.size(), 30), b);
      break;
    case ContextKind::Kripke:
      for (int w = 1; w <= b.max_worlds; ++w)
        n += int_pow(2, w * w) * int_pow(2, w * static_cast<double>(s.props.size())) *
             team_count(w, b);
      break;
    case ContextKind::Fo:
      for (int d = 1; d <= b.max_domain; ++d)
        n += fo_structures(s.signature, d) *
             team_count(ipow(d, static_cast<int>(s.free_vars.size())), b);
      break;
  }
  if (n >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(n);
}

void for_each_structure(const ContextSpace& s, const SearchBudget& b,
                        const std::function<bool(const Context&, const std::vector<Team>&)>& fn) {
  std::uint64_t n = count_contexts(s, b);
  if (n > b.ceiling)
    throw BudgetError("search space of " + std::to_string(n) + " contexts exceeds the ceiling of " +
                      std::to_string(b.ceiling));
  switch (s.kind) {
    case ContextKind::Prop: {
      Context c = Context::of(PropSpace{s.props});
      fn(c, teams_of(c.all(), b));
      return;
    }
    case ContextKind::Kripke: {
      const int k = static_cast<int>(s.props.size());
      for (int w = 1; w <= b.max_worlds; ++w) {
        std::vector<Team> teams = teams_of(full_team(w), b);
        const std::uint64_t rels = std::uint64_t{1} << (w * w);
        const std::uint64_t vals = std::uint64_t{1} << (w * k);
        for (std::uint64_t r = 0; r < rels; ++r) {
          for (std::uint64_t v = 0; v < vals; ++v) {
            Kripke m;
            m.worlds = w;
            m.succ.assign(w, 0);
            for (int i = 0; i < w; ++i) m.succ[i] = (r >> (i * w)) & full_team(w);
            for (int j = 0; j < k; ++j) m.val[s.props[j]] = (v >> (j * w)) & full_team(w);
            if (!fn(Context::of(std::move(m)), teams)) return;
          }
        }
      }
      return;
    }
    case ContextKind::Fo: {
      std::vector<std::string> vars = s.free_vars;
      vars.insert(vars.end(), s.bound_vars.begin(), s.bound_vars.end());
      std::sort(vars.begin(), vars.end());
      for (int d = 1; d <= b.max_domain; ++d) {
        FoSpace space;
        space.vars = vars;
        space.structure.domain = d;
        // Points whose bound variables hold the first element.
        Team base = 0;
        {
          Context probe = Context::of(space);
          for (int p = 0; p < probe.universe(); ++p) {
            bool pinned = true;
            for (const auto& v : s.bound_vars)
              if (space.value(p, space.index_of(v)) != 0) pinned = false;
            if (pinned) base |= Team{1} << p;
          }
        }
        std::vector<Team> teams = teams_of(base, b);
        // Odometer over every table entry of the vocabulary.
        std::vector<int> radix;
        for (const auto& [r, a] : s.signature.relations)
          for (int i = 0; i < ipow(d, a); ++i) radix.push_back(2);
        for (const auto& [f, a] : s.signature.functions)
          for (int i = 0; i < ipow(d, a); ++i) radix.push_back(d);
        for (std::size_t i = 0; i < s.signature.constants.size(); ++i) radix.push_back(d);
        std::vector<int> digit(radix.size(), 0);
        while (true) {
          FoStructure& st = space.structure;
          st.relations.clear();
          st.functions.clear();
          st.constants.clear();
          std::size_t pos = 0;
          for (const auto& [r, a] : s.signature.relations) {
            FoRelation rel{a, std::vector<bool>(ipow(d, a))};
            for (std::size_t i = 0; i < rel.holds.size(); ++i) rel.holds[i] = digit[pos++] != 0;
            st.relations[r] = std::move(rel);
          }
          for (const auto& [f, a] : s.signature.functions) {
            FoFunction fun{a, std::vector<int>(ipow(d, a))};
            for (auto& e : fun.table) e = digit[pos++];
            st.functions[f] = std::move(fun);
          }
          for (const auto& c : s.signature.constants) st.constants[c] = digit[pos++];
          if (!fn(Context::of(space), teams)) return;
          std::size_t i = 0;
          while (i < digit.size() && ++digit[i] == radix[i]) digit[i++] = 0;
          if (i == digit.size()) break;
        }
      }
      return;
    }
  }
}

void enumerate_contexts(const ContextSpace& s, const SearchBudget& b,
                        const std::function<bool(const Context&, Team)>& fn) {
  for_each_structure(s, b, [&](const Context& c, const std::vector<Team>& teams) {
    for (Team t : teams)
      if (!fn(c, t)) return false;
    return true;
  });
}

nlohmann::json Verdict::to_json(const std::string& key) const {
  nlohmann::json j;
  j[key] = holds;
  j["witness"] = witness ? model_to_json(witness->context, witness->team) : nlohmann::json(nullptr);
  j["contexts_checked"] = contexts_checked;
  return j;
}

namespace {

// Searches for the first context where bad(...) is true.
Verdict search(const ContextSpace& s, const SearchBudget& b,
               const std::function<bool(Evaluator&, Team)>& bad) {
  Verdict v;
  for_each_structure(s, b, [&](const Context& c, const std::vector<Team>& teams) {
    Evaluator ev(c, b.mode);
    for (Team t : teams) {
      ++v.contexts_checked;
      if (bad(ev, t)) {
        v.holds = false;
        v.witness = Model{c, t};
        return false;
      }
    }
    return true;
  });
  return v;
}

Verdict search(const std::vector<Formula>& fs, const SearchBudget& b,
               const std::function<bool(Evaluator&, Team)>& bad) {
  return search(space_for(fs, b), b, bad);
}

}  // namespace

Verdict equiv(const Formula& f, const Formula& g, const SearchBudget& b) {
  return search({f, g}, b, [&](Evaluator& ev, Team t) { return ev.eval(f, t) != ev.eval(g, t); });
}

Verdict valid(const Formula& f, const SearchBudget& b) {
  return search({f}, b, [&](Evaluator& ev, Team t) { return !ev.eval(f, t); });
}

Verdict consistency_probe(const std::vector<Formula>& fs, const SearchBudget& b) {
  Verdict v = search(fs, b, [&](Evaluator& ev, Team t) {
    for (const Formula& f : fs)
      if (!ev.eval(f, t)) return false;
    return true;
  });
  v.holds = !v.holds;
  return v;
}

Verdict entails(const std::vector<Formula>& premises, const Formula& conclusion,
                const SearchBudget& b) {
  std::vector<Formula> all = premises;
  all.push_back(conclusion);
  return search(all, b, [&](Evaluator& ev, Team t) {
    for (const Formula& f : premises)
      if (!ev.eval(f, t)) return false;
    return !ev.eval(conclusion, t);
  });
}

std::vector<Formula> boolean_leaves(const Formula& f) {
  std::vector<Formula> out;
  std::set<const Node*> seen;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g.kind() == Kind::StrongNeg) {
      go(g.body());
    } else if (g.kind() == Kind::MatImpl) {
      go(g.lhs());
      go(g.rhs());
    } else if (seen.insert(g.node()).second) {
      out.push_back(g);
    }
  };
  go(f);
  return out;
}

bool taut_boolean_closure(const Formula& f) {
  std::vector<Formula> leaves = boolean_leaves(f);
  if (leaves.size() > 24) throw std::invalid_argument("too many opaque leaves for a truth table");
  std::map<const Node*, int> index;
  for (std::size_t i = 0; i < leaves.size(); ++i) index[leaves[i].node()] = static_cast<int>(i);
  std::function<bool(const Formula&, std::uint32_t)> ev = [&](const Formula& g, std::uint32_t v) {
    if (g.kind() == Kind::StrongNeg) return !ev(g.body(), v);
    if (g.kind() == Kind::MatImpl) return !ev(g.lhs(), v) || ev(g.rhs(), v);
    return (v >> index.at(g.node()) & 1) != 0;
  };
  for (std::uint32_t v = 0; v < (std::uint32_t{1} << leaves.size()); ++v)
    if (!ev(f, v)) return false;
  return true;
}

namespace {

Model disjoint_union(const std::vector<Model>& parts) {
  Kripke k;
  Team team = 0;
  for (const Model& m : parts) {
    const Kripke& p = m.context.kripke;
    int offset = k.worlds;
    if (offset + p.worlds > 64) throw BudgetError("merged structure exceeds 64 worlds");
    k.worlds += p.worlds;
    for (int w = 0; w < p.worlds; ++w) k.succ.push_back(p.succ[w] << offset);
    for (const auto& [name, mask] : p.val) k.val[name] |= mask << offset;
    team |= m.team << offset;
  }
  return Model{Context::of(std::move(k)), team};
}

}  // namespace

MergeResult merge_countermodels(const std::vector<Formula>& gamma,
                                const std::vector<Formula>& delta, const SearchBudget& b) {
  std::vector<Formula> all = gamma;
  all.insert(all.end(), delta.begin(), delta.end());
  for (const Formula& f : all) {
    if (!f.classical()) throw std::invalid_argument("merge_countermodels needs classical formulas");
    Base base = base_of(classify(f));
    if (base != Base::PL && base != Base::ML)
      throw std::invalid_argument("merge_countermodels supports PL and ML only");
  }
  MergeResult r;
  ContextSpace space = space_for(all, b);
  for (const Formula& d : delta) {
    Verdict v = search(space, b, [&](Evaluator& ev, Team t) {
      for (const Formula& g : gamma)
        if (!ev.eval(g, t)) return false;
      return !ev.eval(d, t);
    });
    if (v.holds) {
      r.failed = render(d);
      return r;
    }
    r.parts.push_back(*v.witness);
  }
  if (space.kind == ContextKind::Prop) {
    r.model.context = Context::of(PropSpace{space.props});
    for (const Model& m : r.parts) r.model.team |= m.team;
  } else {
    r.model = disjoint_union(r.parts);
  }
  r.ok = true;
  return r;
}

}  // namespace teamlogic
