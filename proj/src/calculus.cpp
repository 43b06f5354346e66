#include "teamlogic/calculus.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "teamlogic/parser.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

using nlohmann::json;

// ---- names ----

namespace {

const std::map<std::string, std::string>& rule_aliases() {
  static const std::map<std::string, std::string> m = {
      {"E->", "E→"},   {"E~>", "E⤳"},     {"Nec-o", "Nec⊸"},   {"Nec-box", "Nec□"},
      {"Nec-delta", "NecΔ"}, {"UG-forall", "UG∀"}, {"UG-shriek", "UG!"}};
  return m;
}

const std::map<std::string, std::string>& macro_aliases() {
  static const std::map<std::string, std::string> m = {
      {"mp-limp", "mp-⊸"},  {"mp-tensor", "mp-⊗"}, {"mp-box", "mp-□"},  {"mp-delta", "mp-Δ"},
      {"mp-dia", "mp-◇"},   {"mp-forall", "mp-∀"}, {"mp-shriek", "mp-!"}, {"mp-exists", "mp-∃"},
      {"thm-S'", "thm-S′"}, {"thm-M'", "thm-M′"}};
  return m;
}

std::string canonical(const std::map<std::string, std::string>& aliases, const std::string& n) {
  auto it = aliases.find(n);
  return it == aliases.end() ? n : it->second;
}

bool is_mp_macro(const std::string& k) { return k.rfind("mp-", 0) == 0; }

std::string id_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ScriptError("step ids must be strings or integers");
}

std::vector<std::string> id_list(const json& j) {
  std::vector<std::string> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw ScriptError("'from' must be an array");
  for (const auto& e : j) out.push_back(id_string(e));
  return out;
}

json id_json(const std::string& id) {
  bool numeric = !id.empty() && id.size() < 10 &&
                 std::all_of(id.begin(), id.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (numeric) return std::stoi(id);
  return id;
}

json ids_json(const std::vector<std::string>& ids) {
  json a = json::array();
  for (const auto& i : ids) a.push_back(id_json(i));
  return a;
}

struct Reader {
  MetaDecls metas;

  Formula formula(const json& j, const std::string& what) const {
    if (!j.is_string()) throw ScriptError(what + " must be a formula string");
    try {
      return parse(j.get<std::string>(), Signature::open_signature(), metas);
    } catch (const ParseError& e) {
      throw ScriptError(what + ": " + e.what());
    }
  }

  ProofStep step(const json& j) const {
    if (!j.is_object()) throw ScriptError("steps must be objects");
    ProofStep s;
    if (!j.contains("id")) throw ScriptError("step without id");
    s.id = id_string(j["id"]);
    std::string where = "step " + s.id;
    if (!j.contains("formula")) throw ScriptError(where + " has no formula");
    s.formula = formula(j["formula"], where);
    if (j.contains("block")) {
      const json& b = j["block"];
      s.by = ProofStep::By::Block;
      s.hyp_id = b.contains("hyp") ? id_string(b["hyp"]) : s.id + ".h";
      if (!b.contains("assume")) throw ScriptError(where + ": block without assumption");
      s.assume = formula(b["assume"], where + " assumption");
      std::string d = b.value("discharge", "ded");
      if (d == "ded") s.discharge = Discharge::Ded;
      else if (d == "raa-pos") s.discharge = Discharge::RaaPos;
      else if (d == "raa-neg") s.discharge = Discharge::RaaNeg;
      else throw ScriptError(where + ": unknown discharge " + d);
      if (b.contains("from")) s.contradiction = id_list(b["from"]);
      if (!b.contains("steps") || !b["steps"].is_array())
        throw ScriptError(where + ": block without steps");
      for (const auto& e : b["steps"]) s.inner.push_back(step(e));
      return s;
    }
    if (!j.contains("by") || !j["by"].is_object()) throw ScriptError(where + " lacks 'by'");
    const json& by = j["by"];
    if (by.contains("axiom")) {
      const json& a = by["axiom"];
      s.by = ProofStep::By::Axiom;
      s.system = a.value("system", "");
      s.name = a.value("name", "");
      if (a.contains("inst")) {
        for (auto& [k, v] : a["inst"].items()) {
          if (metas.terms.count(k) || k == "x" || k == "y") {
            try {
              s.inst.terms[k] = parse_term(v.get<std::string>(), Signature::open_signature(), metas);
            } catch (const ParseError& e) {
              throw ScriptError(where + ": " + e.what());
            }
          } else {
            s.inst.formulas[k] = formula(v, where + " instantiation of " + k);
          }
        }
      }
    } else if (by.contains("premise")) {
      s.by = ProofStep::By::Premise;
      s.name = id_string(by["premise"]);
    } else if (by.contains("rule")) {
      const json& r = by["rule"];
      s.by = ProofStep::By::Rule;
      s.name = canonical(rule_aliases(), r.value("name", ""));
      s.from = id_list(r.value("from", json::array()));
      if (r.contains("term")) {
        try {
          s.term = parse_term(r["term"].get<std::string>(), Signature::open_signature(), metas);
        } catch (const ParseError& e) {
          throw ScriptError(where + ": " + e.what());
        }
      }
    } else if (by.contains("macro")) {
      const json& m = by["macro"];
      s.by = ProofStep::By::Macro;
      s.macro.kind = canonical(macro_aliases(), m.value("kind", ""));
      s.macro.from = id_list(m.value("from", json::array()));
      s.macro.name = m.value("name", "");
      s.macro.direction = m.value("direction", "");
      s.macro.form = m.value("form", "");
      if (m.contains("leaves"))
        for (auto& [k, v] : m["leaves"].items()) s.macro.leaves[k] = formula(v, where + " leaf");
    } else {
      throw ScriptError(where + ": unknown justification");
    }
    return s;
  }
};

json step_json(const ProofStep& s) {
  json j;
  j["id"] = id_json(s.id);
  j["formula"] = render(s.formula);
  switch (s.by) {
    case ProofStep::By::Axiom: {
      json inst = json::object();
      for (const auto& [k, v] : s.inst.formulas) inst[k] = render(v);
      for (const auto& [k, v] : s.inst.terms) inst[k] = render(v);
      j["by"]["axiom"] = {{"system", s.system}, {"name", s.name}, {"inst", inst}};
      break;
    }
    case ProofStep::By::Premise:
      j["by"]["premise"] = id_json(s.name);
      break;
    case ProofStep::By::Rule: {
      json r = {{"name", s.name}, {"from", ids_json(s.from)}};
      if (s.term) r["term"] = render(*s.term);
      j["by"]["rule"] = r;
      break;
    }
    case ProofStep::By::Macro: {
      json m = {{"kind", s.macro.kind}};
      if (!s.macro.from.empty()) m["from"] = ids_json(s.macro.from);
      if (!s.macro.name.empty()) m["name"] = s.macro.name;
      if (!s.macro.direction.empty()) m["direction"] = s.macro.direction;
      if (!s.macro.form.empty()) m["form"] = s.macro.form;
      if (!s.macro.leaves.empty()) {
        json l = json::object();
        for (const auto& [k, v] : s.macro.leaves) l[k] = render(v);
        m["leaves"] = l;
      }
      j["by"]["macro"] = m;
      break;
    }
    case ProofStep::By::Block: {
      const char* d = s.discharge == Discharge::Ded      ? "ded"
                      : s.discharge == Discharge::RaaPos ? "raa-pos"
                                                         : "raa-neg";
      json b = {{"hyp", id_json(s.hyp_id)}, {"assume", render(s.assume)}, {"discharge", d}};
      if (!s.contradiction.empty()) b["from"] = ids_json(s.contradiction);
      json inner = json::array();
      for (const auto& t : s.inner) inner.push_back(step_json(t));
      b["steps"] = inner;
      j["block"] = b;
      break;
    }
  }
  return j;
}

}  // namespace

ProofScript parse_script(const json& j) {
  if (!j.is_object()) throw ScriptError("a proof script is a JSON object");
  ProofScript s;
  s.name = j.value("name", "");
  s.metas = standard_metas();
  if (j.contains("metavariables")) {
    for (auto& [k, v] : j["metavariables"].items()) {
      std::string sort = v.get<std::string>();
      if (sort == "general") s.metas.formulas[k] = MetaSort::General;
      else if (sort == "classical") s.metas.formulas[k] = MetaSort::Classical;
      else if (sort == "term") s.metas.terms.insert(k);
      else throw ScriptError("unknown metavariable sort " + sort);
    }
  }
  Reader rd{s.metas};
  if (!j.contains("systems") || !j["systems"].is_array()) throw ScriptError("missing systems");
  for (const auto& n : j["systems"]) {
    std::string name = n.get<std::string>();
    try {
      proof_system(name);
    } catch (const std::out_of_range&) {
      throw ScriptError("unknown proof system " + name);
    }
    s.systems.push_back(name);
  }
  int auto_label = 0;
  for (const auto& p : j.value("premises", json::array())) {
    PremiseDecl d;
    if (p.is_string()) {
      d.label = "P" + std::to_string(++auto_label);
      d.formula = rd.formula(p, "premise");
    } else {
      d.label = id_string(p.at("label"));
      d.formula = rd.formula(p.at("formula"), "premise " + d.label);
      d.theorem = p.value("theorem", false);
    }
    s.premises.push_back(d);
  }
  if (j.contains("goal")) s.goal = rd.formula(j["goal"], "goal");
  if (j.contains("schema")) {
    const json& r = j["schema"];
    s.schema = SchemaRef{r.value("system", ""), r.value("name", ""), r.value("direction", "forward")};
  }
  if (!j.contains("steps") || !j["steps"].is_array()) throw ScriptError("missing steps");
  for (const auto& e : j["steps"]) s.steps.push_back(rd.step(e));
  return s;
}

json script_to_json(const ProofScript& s) {
  json j;
  j["name"] = s.name;
  j["systems"] = s.systems;
  MetaDecls std = standard_metas();
  json metas = json::object();
  for (const auto& [k, v] : s.metas.formulas)
    if (!std.formulas.count(k)) metas[k] = v == MetaSort::General ? "general" : "classical";
  for (const auto& k : s.metas.terms)
    if (!std.terms.count(k)) metas[k] = "term";
  if (!metas.empty()) j["metavariables"] = metas;
  json prem = json::array();
  for (const auto& p : s.premises) {
    json e = {{"label", p.label}, {"formula", render(p.formula)}};
    if (p.theorem) e["theorem"] = true;
    prem.push_back(e);
  }
  j["premises"] = prem;
  if (s.goal) j["goal"] = render(*s.goal);
  if (s.schema)
    j["schema"] = {{"system", s.schema->system}, {"name", s.schema->name},
                   {"direction", s.schema->direction}};
  json steps = json::array();
  for (const auto& st : s.steps) steps.push_back(step_json(st));
  j["steps"] = steps;
  return j;
}

json CheckReport::to_json() const {
  json j;
  j["accepted"] = accepted;
  json st = json::array();
  for (const auto& s : steps) {
    json e = {{"id", s.id}, {"ok", s.ok}, {"theorem", s.theorem}};
    if (!s.reason.empty()) e["reason"] = s.reason;
    st.push_back(e);
  }
  j["steps"] = st;
  if (!accepted) {
    j["failed_step"] = failed_step;
    j["reason"] = reason;
  }
  return j;
}

void LemmaRegistry::add(const ProofScript& s) { lemmas_[s.name] = s; }

const ProofScript* LemmaRegistry::find(const std::string& name) const {
  auto it = lemmas_.find(name);
  return it == lemmas_.end() ? nullptr : &it->second;
}

// ---- classical validity ----

namespace {

bool has_meta(const Formula& f) {
  for (const Formula& g : subformulas(f))
    if (g.kind() == Kind::Meta) return true;
  return false;
}

// Expands propositional quantifiers whose body is free of metavariables and
// first-order atoms.
Formula expand_props(const Formula& f) {
  switch (f.kind()) {
    case Kind::Not:
      return neg(expand_props(f.body()));
    case Kind::Implies:
      return implies(expand_props(f.lhs()), expand_props(f.rhs()));
    case Kind::Box:
      return box(expand_props(f.body()));
    case Kind::ForAll: {
      Formula b = expand_props(f.body());
      if (has_fo_atoms(b) || has_meta(b)) return forall(f.name(), b);
      return conj(substitute_prop(b, f.name(), top()), substitute_prop(b, f.name(), bot()));
    }
    default:
      return f;
  }
}

// Leaves of the propositional skeleton: everything not headed by ! or ->.
void skeleton_leaves(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Kind::Not) return skeleton_leaves(f.body(), out);
  if (f.kind() == Kind::Implies) {
    skeleton_leaves(f.lhs(), out);
    skeleton_leaves(f.rhs(), out);
    return;
  }
  if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
}

bool eval_skeleton(const Formula& f, const std::vector<Formula>& leaves, std::uint32_t v) {
  if (f.kind() == Kind::Not) return !eval_skeleton(f.body(), leaves, v);
  if (f.kind() == Kind::Implies)
    return !eval_skeleton(f.lhs(), leaves, v) || eval_skeleton(f.rhs(), leaves, v);
  auto i = std::find(leaves.begin(), leaves.end(), f) - leaves.begin();
  return (v >> i & 1) != 0;
}

// Satisfiability in K of a conjunction: a boolean assignment to the top-level
// leaves is realisable iff, for every false box, the true boxes' bodies are
// jointly satisfiable with the negated body.
class KSat {
 public:
  bool sat(std::vector<Formula> conj) {
    std::sort(conj.begin(), conj.end(), FormulaIdLess{});
    conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
    std::vector<const Node*> key;
    for (const auto& f : conj) key.push_back(f.node());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r = compute(conj);
    memo_[key] = r;
    return r;
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<const Node*>& k) const {
      std::size_t h = 0;
      for (const Node* n : k) h = h * 1000003u ^ std::hash<const Node*>{}(n);
      return h;
    }
  };

  bool compute(const std::vector<Formula>& conj) {
    std::vector<Formula> leaves;
    for (const auto& f : conj) skeleton_leaves(f, leaves);
    if (leaves.size() > 20) throw std::invalid_argument("too many atoms for a truth table");
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << leaves.size()); ++v) {
      bool ok = true;
      for (const auto& f : conj)
        if (!eval_skeleton(f, leaves, v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      std::vector<Formula> pos, negs;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i].kind() != Kind::Box) continue;
        (v >> i & 1 ? pos : negs).push_back(leaves[i].body());
      }
      bool achievable = true;
      for (const auto& n : negs) {
        std::vector<Formula> next = pos;
        next.push_back(neg(n));
        if (!sat(next)) {
          achievable = false;
          break;
        }
      }
      if (achievable) return true;
    }
    return false;
  }

  std::unordered_map<std::vector<const Node*>, bool, KeyHash> memo_;
};

}  // namespace

bool classically_valid(const Formula& f) {
  if (!f.classical()) throw std::invalid_argument("not a classical formula: " + render(f));
  Formula g = expand_props(f);
  KSat k;
  return !k.sat({neg(g)});
}

// ---- macros ----

namespace {

bool has(const std::set<std::string>& systems, const char* n) { return systems.count(n) > 0; }

std::string need(const std::set<std::string>& systems, std::initializer_list<const char*> names,
                 const std::string& what) {
  for (const char* n : names)
    if (!systems.count(n)) return what + " needs system " + n;
  return "";
}

std::string theorem_violation(const std::string& what, std::size_t index) {
  return "theorem-flag violation: argument " + std::to_string(index + 1) + " of " + what +
         " is not a theorem";
}

// Positions where a substitution may act: the team connectives for which the
// enabled systems prove substitution.
bool sub_compare(const Formula& s, const Formula& t,
                 const std::vector<std::pair<Formula, Formula>>& eqs,
                 const std::set<std::string>& systems) {
  if (s == t) return true;
  for (const auto& [a, b] : eqs)
    if ((s == a && t == b) || (s == b && t == a)) return true;
  if (s.kind() != t.kind()) return false;
  switch (s.kind()) {
    case Kind::StrongNeg:
      return sub_compare(s.body(), t.body(), eqs, systems);
    case Kind::MatImpl:
      return sub_compare(s.lhs(), t.lhs(), eqs, systems) &&
             sub_compare(s.rhs(), t.rhs(), eqs, systems);
    case Kind::LinImpl:
      return has(systems, "S") && sub_compare(s.lhs(), t.lhs(), eqs, systems) &&
             sub_compare(s.rhs(), t.rhs(), eqs, systems);
    case Kind::Box:
    case Kind::Delta:
      return has(systems, "M") && sub_compare(s.body(), t.body(), eqs, systems);
    case Kind::ForAll:
    case Kind::Shriek:
      return has(systems, "Q") && s.name() == t.name() &&
             sub_compare(s.body(), t.body(), eqs, systems);
    default:
      return false;
  }
}

std::string check_mp(const MacroCall& call, const Formula& conclusion,
                     const std::vector<StepFact>& args, const std::set<std::string>& systems) {
  const std::string& k = call.kind;
  if (args.size() != 2) return k + " takes a theorem and a step";
  if (!args[0].theorem) return theorem_violation(k, 0);
  const Formula& imp = args[0].formula;
  if (imp.kind() != Kind::MatImpl) return k + ": first argument is not a material implication";
  Formula a = imp.lhs(), b = imp.rhs();
  const Formula& src = args[1].formula;
  Formula x, y;
  std::string q;
  if (k == "mp-⊸") {
    if (auto e = need(systems, {"L", "S"}, k); !e.empty()) return e;
    if (src.kind() != Kind::LinImpl || src.rhs() != a) return k + ": step is not theta -o phi";
    return conclusion == limp(src.lhs(), b) ? "" : k + ": conclusion is not theta -o psi";
  }
  if (k == "mp-⊗") {
    if (auto e = need(systems, {"L", "S"}, k); !e.empty()) return e;
    if (!match_tensor(src, x, y) || y != a) return k + ": step is not theta * phi";
    return conclusion == tensor(x, b) ? "" : k + ": conclusion is not theta * psi";
  }
  if (k == "mp-□" || k == "mp-Δ") {
    if (auto e = need(systems, {"L", "M"}, k); !e.empty()) return e;
    Kind op = k == "mp-□" ? Kind::Box : Kind::Delta;
    if (src.kind() != op || src.body() != a) return k + ": step does not apply the modality to phi";
    return conclusion == (op == Kind::Box ? box(b) : delta(b)) ? ""
                                                               : k + ": conclusion mismatch";
  }
  if (k == "mp-◇") {
    if (auto e = need(systems, {"L", "M"}, k); !e.empty()) return e;
    if (!match_dia(src, x) || x != a) return k + ": step is not dia phi";
    return conclusion == dia(b) ? "" : k + ": conclusion is not dia psi";
  }
  if (k == "mp-∀" || k == "mp-!") {
    if (auto e = need(systems, {"L", "Q"}, k); !e.empty()) return e;
    Kind op = k == "mp-∀" ? Kind::ForAll : Kind::Shriek;
    if (src.kind() != op || src.body() != a) return k + ": step does not quantify phi";
    Formula expect = op == Kind::ForAll ? forall(src.name(), b) : shriek(src.name(), b);
    return conclusion == expect ? "" : k + ": conclusion mismatch";
  }
  if (k == "mp-∃") {
    if (auto e = need(systems, {"L", "Q"}, k); !e.empty()) return e;
    if (!match_exists(src, q, x) || x != a) return k + ": step is not exists x phi";
    return conclusion == exists(q, b) ? "" : k + ": conclusion is not exists x psi";
  }
  return "unknown macro " + k;
}

std::string check_lemma(const MacroCall& call, const Formula& conclusion,
                        const std::vector<StepFact>& args, const std::set<std::string>& systems,
                        const LemmaRegistry* lemmas) {
  const ProofScript* lemma = lemmas ? lemmas->find(call.name) : nullptr;
  if (!lemma) return "unknown lemma " + call.name;
  if (!lemma->goal) return "lemma " + call.name + " has no goal";
  for (const auto& sys : lemma->systems)
    if (!systems.count(sys)) return "lemma " + call.name + " needs system " + sys;
  Instantiation inst;
  const std::set<std::string> no_vars;
  if (call.form.empty() || call.form == "rule") {
    if (args.size() != lemma->premises.size())
      return "lemma " + call.name + " takes " + std::to_string(lemma->premises.size()) +
             " arguments";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (lemma->premises[i].theorem && !args[i].theorem)
        return theorem_violation("lemma " + call.name, i);
      if (!match_into(lemma->premises[i].formula, args[i].formula, no_vars, inst))
        return "lemma " + call.name + ": argument " + std::to_string(i + 1) +
               " does not match premise " + lemma->premises[i].label;
    }
    if (!match_into(*lemma->goal, conclusion, no_vars, inst))
      return "lemma " + call.name + ": conclusion does not match its goal";
    return "";
  }
  if (call.form != "implication") return "unknown lemma form " + call.form;
  std::vector<Formula> hyps;
  std::size_t next = 0;
  for (const auto& p : lemma->premises) {
    if (!p.theorem) {
      hyps.push_back(p.formula);
      continue;
    }
    if (next >= args.size()) return "lemma " + call.name + ": missing theorem argument";
    if (!args[next].theorem) return theorem_violation("lemma " + call.name, next);
    if (!match_into(p.formula, args[next].formula, no_vars, inst))
      return "lemma " + call.name + ": argument does not match premise " + p.label;
    ++next;
  }
  if (next != args.size()) return "lemma " + call.name + ": too many arguments";
  Formula pattern = *lemma->goal;
  for (auto it = hyps.rbegin(); it != hyps.rend(); ++it) pattern = mimp(*it, pattern);
  if (!match_into(pattern, conclusion, no_vars, inst))
    return "lemma " + call.name + ": conclusion is not the lemma as an implication";
  return "";
}

std::string check_alternative(const MacroCall& call, const Formula& conclusion,
                              const std::set<std::string>& systems) {
  bool modal = call.kind == "thm-M′";
  auto e = modal ? need(systems, {"HBox", "L", "S", "M"}, call.kind)
                 : need(systems, {"H0", "L", "S"}, call.kind);
  if (!e.empty()) {
    // H0 is contained in HBox.
    if (modal || !has(systems, "HBox") || !has(systems, "L") || !has(systems, "S")) return e;
  }
  const AxiomSchema* s = find_alternative(modal ? "M'" : "S'", call.name);
  if (!s) return "unknown schema " + call.name;
  Formula a, b, pattern = s->pattern;
  std::string dir = call.direction.empty() ? "both" : call.direction;
  if (dir != "both") {
    if (match_sbicond(s->pattern, a, b)) {
      pattern = dir == "forward" ? mimp(a, b) : dir == "backward" ? mimp(b, a) : Formula();
    } else if (dir != "forward") {
      pattern = Formula();
    }
    if (!pattern) return call.name + " has no direction " + dir;
  }
  Instantiation inst;
  if (!match_into(pattern, conclusion, s->var_metas, inst))
    return "not an instance of " + call.name;
  return "";
}

}  // namespace

std::string check_macro(const MacroCall& call, const Formula& conclusion,
                        const std::vector<StepFact>& args, const std::set<std::string>& systems,
                        const LemmaRegistry* lemmas) {
  const std::string& k = call.kind;
  if (k == "taut-L") {
    if (!has(systems, "L")) return "taut-L needs system L";
    Formula chain = conclusion;
    for (auto it = args.rbegin(); it != args.rend(); ++it) chain = mimp(it->formula, chain);
    bool ok = false;
    try {
      ok = taut_boolean_closure(chain);
    } catch (const std::invalid_argument& e) {
      return std::string("taut-L: ") + e.what();
    }
    if (!ok) return "taut-L: not a Boolean tautology over its leaves";
    std::vector<Formula> leaves = boolean_leaves(chain);
    for (const auto& [name, leaf] : call.leaves)
      if (std::find(leaves.begin(), leaves.end(), leaf) == leaves.end())
        return "taut-L: " + name + " is not a leaf";
    return "";
  }
  if (k == "taut-classical") {
    if (!has(systems, "H0") && !has(systems, "HBox") && !has(systems, "H"))
      return "taut-classical needs a classical base system";
    Formula target = conclusion;
    Formula lifted_from;
    if (!conclusion.classical()) {
      if (conclusion.kind() != Kind::MatImpl || !conclusion.lhs().classical() ||
          !conclusion.rhs().classical())
        return "taut-classical: conclusion is neither classical nor a lifted implication";
      if (!has(systems, "L")) return "taut-classical: lifting needs system L";
      target = implies(conclusion.lhs(), conclusion.rhs());
    }
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
      if (!it->formula.classical()) return "taut-classical: argument is not classical";
      target = implies(it->formula, target);
    }
    if (has_modality(target) && !has(systems, "HBox")) return "modal tautology needs system HBox";
    if (has_fo_atoms(target) && !has(systems, "H")) return "first-order tautology needs system H";
    if (has_quantifier(target) && !has_fo_atoms(target) && !has(systems, "X"))
      return "quantified propositional tautology needs system X";
    bool ok = false;
    try {
      ok = classically_valid(target);
    } catch (const std::invalid_argument& e) {
      return std::string("taut-classical: ") + e.what();
    }
    return ok ? "" : "taut-classical: not classically valid";
  }
  if (k == "def") {
    if (args.size() != 1) return "def takes one argument";
    return args[0].formula == conclusion ? "" : "def: formulas differ after unfolding abbreviations";
  }
  if (is_mp_macro(k)) return check_mp(call, conclusion, args, systems);
  if (k == "sub") {
    if (!has(systems, "L")) return "sub needs system L";
    if (args.size() < 2) return "sub takes a step and at least one equivalence";
    std::vector<std::pair<Formula, Formula>> eqs;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (!args[i].theorem) return theorem_violation("sub", i);
      Formula a, b;
      if (!match_sbicond(args[i].formula, a, b)) return "sub: argument is not an equivalence";
      eqs.emplace_back(a, b);
    }
    return sub_compare(args[0].formula, conclusion, eqs, systems)
               ? ""
               : "sub: conclusion is not a substitution instance";
  }
  if (k == "thm-S′" || k == "thm-M′") {
    if (!args.empty()) return k + " takes no arguments";
    return check_alternative(call, conclusion, systems);
  }
  if (k == "lemma") return check_lemma(call, conclusion, args, systems, lemmas);
  return "unknown macro " + k;
}

// ---- checker ----

namespace {

struct Fact {
  Formula formula;
  // Non-theorem premises and hypotheses the fact depends on.
  std::set<std::string> sources;
};

class Checker {
 public:
  Checker(const ProofScript& s, const LemmaRegistry* lemmas)
      : script_(s), lemmas_(lemmas), systems_(s.systems.begin(), s.systems.end()) {}

  CheckReport run() {
    scopes_.emplace_back();
    for (const auto& p : script_.premises) {
      if (!ids_.insert(p.label).second) return fail(p.label, "duplicate id " + p.label);
      Fact f{p.formula, {}};
      if (!p.theorem) f.sources.insert(p.label);
      scopes_.back()[p.label] = f;
    }
    if (!steps(script_.steps)) return report_;
    if (script_.goal) {
      if (script_.steps.empty() || script_.steps.back().formula != *script_.goal)
        return fail("goal", "the last step is not the goal");
    }
    if (script_.schema) {
      std::string e = schema_check();
      if (!e.empty()) return fail("schema", e);
    }
    report_.accepted = true;
    return report_;
  }

 private:
  CheckReport fail(const std::string& id, const std::string& reason) {
    report_.accepted = false;
    report_.failed_step = id;
    report_.reason = reason;
    return report_;
  }

  const Fact* lookup(const std::string& id) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(id);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  bool steps(const std::vector<ProofStep>& list) {
    for (const auto& s : list) {
      std::string reason;
      Fact fact{s.formula, {}};
      if (!ids_.insert(s.id).second) {
        reason = "duplicate id " + s.id;
      } else {
        reason = step(s, fact);
      }
      StepStatus st{s.id, reason.empty(), reason.empty() && fact.sources.empty(), reason};
      report_.steps.push_back(st);
      if (!reason.empty()) {
        fail(s.id, reason);
        return false;
      }
      scopes_.back()[s.id] = fact;
    }
    return true;
  }

  std::string resolve(const std::vector<std::string>& ids, std::vector<const Fact*>& out) const {
    for (const auto& id : ids) {
      const Fact* f = lookup(id);
      if (!f) return "dangling reference to " + id;
      out.push_back(f);
    }
    return "";
  }

  static void merge(Fact& into, const std::vector<const Fact*>& from) {
    for (const Fact* f : from) into.sources.insert(f->sources.begin(), f->sources.end());
  }

  std::string step(const ProofStep& s, Fact& fact) {
    switch (s.by) {
      case ProofStep::By::Axiom:
        return axiom(s);
      case ProofStep::By::Premise: {
        const Fact* p = nullptr;
        for (const auto& d : script_.premises)
          if (d.label == s.name) p = lookup(d.label);
        if (!p) return "unknown premise " + s.name;
        if (p->formula != s.formula) return "formula differs from premise " + s.name;
        fact.sources = p->sources;
        return "";
      }
      case ProofStep::By::Rule:
        return rule(s, fact);
      case ProofStep::By::Macro: {
        std::vector<const Fact*> args;
        if (auto e = resolve(s.macro.from, args); !e.empty()) return e;
        std::vector<StepFact> facts;
        for (const Fact* f : args) facts.push_back({f->formula, f->sources.empty()});
        std::string e = check_macro(s.macro, s.formula, facts, systems_, lemmas_);
        if (e.empty()) merge(fact, args);
        return e;
      }
      case ProofStep::By::Block:
        return block(s, fact);
    }
    return "unknown justification";
  }

  std::string axiom(const ProofStep& s) {
    if (!systems_.count(s.system)) return "system " + s.system + " is not enabled";
    const AxiomSchema* a = proof_system(s.system).find_axiom(s.name);
    if (!a) return "unknown axiom " + s.system + "/" + s.name;
    std::vector<std::string> need = a->free_metas();
    for (const auto& m : need)
      if (!s.inst.formulas.count(m) && !s.inst.terms.count(m))
        return "missing instantiation for " + m;
    for (const auto& [k, v] : s.inst.formulas)
      if (std::find(need.begin(), need.end(), k) == need.end())
        return "unexpected instantiation for " + k;
    for (const auto& [k, v] : s.inst.terms)
      if (std::find(need.begin(), need.end(), k) == need.end())
        return "unexpected instantiation for " + k;
    Formula inst;
    try {
      inst = apply_instantiation(*a, s.inst);
    } catch (const std::invalid_argument& e) {
      return std::string("schema mismatch: ") + e.what();
    }
    if (inst != s.formula) return "schema mismatch: instance is " + render(inst);
    Instantiation full = s.inst;
    if (!side_condition_holds(*a, full)) return "side condition violated: " + a->comment;
    return "";
  }

  std::string rule(const ProofStep& s, Fact& fact) {
    const InferenceRule* r = nullptr;
    for (const auto& name : script_.systems) {
      r = proof_system(name).find_rule(s.name);
      if (r) break;
    }
    if (!r) return "unknown rule " + s.name + " in the enabled systems";
    if (static_cast<int>(s.from.size()) != r->arity)
      return s.name + " takes " + std::to_string(r->arity) + " premises";
    std::vector<const Fact*> args;
    if (auto e = resolve(s.from, args); !e.empty()) return e;
    if (r->theorem_restricted)
      for (std::size_t i = 0; i < args.size(); ++i)
        if (!args[i]->sources.empty()) return theorem_violation(s.name, i);
    const Formula& f = s.formula;
    const Formula& a = args[0]->formula;
    std::string bad = s.name + ": conclusion does not follow";
    if (s.name == "E→" || s.name == "E⤳") {
      const Formula& imp = args[1]->formula;
      Kind k = s.name == "E→" ? Kind::Implies : Kind::MatImpl;
      if (imp.kind() != k || imp.lhs() != a) return s.name + ": premises do not fit";
      if (imp.rhs() != f) return bad;
    } else if (s.name == "Nec" || s.name == "Nec□") {
      if (s.name == "Nec" && !a.classical()) return "Nec applies to classical formulas";
      if (f != box(a)) return bad;
    } else if (s.name == "NecΔ") {
      if (f != delta(a)) return bad;
    } else if (s.name == "Nec⊸") {
      if (f.kind() != Kind::LinImpl || f.rhs() != a) return bad;
    } else if (s.name == "UG∀") {
      if (f.kind() != Kind::ForAll || !f.body().classical()) return bad;
      Term t = s.term ? *s.term : Term::variable(f.name());
      if (substitute_var(f.body(), f.name(), t) != a) return bad;
    } else if (s.name == "UG!") {
      if (f.kind() != Kind::Shriek || f.body() != a) return bad;
    } else {
      return "unknown rule " + s.name;
    }
    merge(fact, args);
    return "";
  }

  std::string block(const ProofStep& s, Fact& fact) {
    if (!ids_.insert(s.hyp_id).second) return "duplicate id " + s.hyp_id;
    scopes_.emplace_back();
    scopes_.back()[s.hyp_id] = Fact{s.assume, {s.hyp_id}};
    report_.steps.push_back({s.hyp_id, true, false, ""});
    bool inner_ok = steps(s.inner);
    if (!inner_ok) {
      scopes_.pop_back();
      return "inside block: " + report_.reason;
    }
    std::string err;
    Formula expect;
    std::set<std::string> src;
    if (s.discharge == Discharge::Ded) {
      if (s.inner.empty()) err = "empty deduction block";
      else {
        const Fact* last = lookup(s.inner.back().id);
        expect = mimp(s.assume, last->formula);
        src = last->sources;
      }
    } else {
      std::vector<const Fact*> pair;
      if (s.contradiction.size() != 2) err = "RAA needs two contradicting steps";
      else if (auto e = resolve(s.contradiction, pair); !e.empty()) err = e;
      else if (pair[1]->formula != sneg(pair[0]->formula))
        err = "RAA: second step is not the strong negation of the first";
      else {
        src = pair[0]->sources;
        src.insert(pair[1]->sources.begin(), pair[1]->sources.end());
        if (s.discharge == Discharge::RaaPos) {
          expect = sneg(s.assume);
        } else if (s.assume.kind() == Kind::StrongNeg) {
          expect = s.assume.body();
        } else {
          err = "raa-neg needs an assumption of the form ~phi";
        }
      }
      if (err.empty() && !has(systems_, "L")) err = "RAA needs system L";
    }
    scopes_.pop_back();
    if (!err.empty()) return err;
    if (expect != s.formula) return "block conclusion should be " + render(expect);
    src.erase(s.hyp_id);
    fact.sources = src;
    return "";
  }

  std::string schema_check() const {
    const SchemaRef& r = *script_.schema;
    const AxiomSchema* a = find_alternative(r.system, r.name);
    if (!a) {
      try {
        a = proof_system(r.system).find_axiom(r.name);
      } catch (const std::out_of_range&) {
        a = nullptr;
      }
    }
    if (!a) return "unknown schema " + r.system + "/" + r.name;
    Formula lhs, rhs;
    if (match_sbicond(a->pattern, lhs, rhs)) {
      if (r.direction == "backward") std::swap(lhs, rhs);
      else if (r.direction != "forward") return "unknown direction " + r.direction;
    } else if (a->pattern.kind() == Kind::MatImpl && r.direction == "forward") {
      lhs = a->pattern.lhs();
      rhs = a->pattern.rhs();
    } else {
      return r.name + " has no direction " + r.direction;
    }
    std::vector<const PremiseDecl*> open;
    for (const auto& p : script_.premises)
      if (!p.theorem) open.push_back(&p);
    if (open.size() != 1 || !script_.goal) return "a schema script has one premise and a goal";
    Instantiation inst;
    if (!match_into(lhs, open[0]->formula, a->var_metas, inst) ||
        !match_into(rhs, *script_.goal, a->var_metas, inst))
      return "premise and goal do not instantiate " + r.name;
    return "";
  }

  const ProofScript& script_;
  const LemmaRegistry* lemmas_;
  std::set<std::string> systems_;
  std::vector<std::map<std::string, Fact>> scopes_;
  std::set<std::string> ids_;
  CheckReport report_;
};

}  // namespace

CheckReport check_proof(const ProofScript& s, const LemmaRegistry* lemmas) {
  return Checker(s, lemmas).run();
}

// ---- deduction lowering ----

namespace {

class Lowering {
 public:
  std::vector<ProofStep> run(const std::vector<ProofStep>& steps) {
    std::vector<ProofStep> out;
    for (const auto& s : steps) {
      if (s.by != ProofStep::By::Block) {
        out.push_back(s);
        continue;
      }
      ProofStep b = s;
      b.inner = run(s.inner);
      if (b.discharge != Discharge::Ded) {
        out.push_back(b);
        continue;
      }
      lower(b, out);
    }
    return out;
  }

 private:
  std::string fresh(const std::string& base) { return base + "/" + std::to_string(++counter_); }

  static ProofStep axiom_step(const std::string& id, const std::string& name,
                              std::map<std::string, Formula> inst) {
    ProofStep st;
    st.id = id;
    st.by = ProofStep::By::Axiom;
    st.system = "L";
    st.name = name;
    st.inst.formulas = std::move(inst);
    st.formula = apply_instantiation(*proof_system("L").find_axiom(name), st.inst);
    return st;
  }

  static ProofStep mp_step(const std::string& id, const std::string& minor,
                           const std::string& major, const Formula& f) {
    ProofStep st;
    st.id = id;
    st.by = ProofStep::By::Rule;
    st.name = "E⤳";
    st.from = {minor, major};
    st.formula = f;
    return st;
  }

  // A ~> A from L1 and L2.
  std::string identity(const Formula& a, const std::string& base, std::vector<ProofStep>& out) {
    Formula aa = mimp(a, a);
    std::string s1 = fresh(base), s2 = fresh(base), s3 = fresh(base), s4 = fresh(base),
                s5 = fresh(base);
    out.push_back(axiom_step(s1, "L2", {{"phi", a}, {"psi", aa}, {"theta", a}}));
    out.push_back(axiom_step(s2, "L1", {{"phi", a}, {"psi", aa}}));
    out.push_back(mp_step(s3, s2, s1, mimp(mimp(a, aa), aa)));
    out.push_back(axiom_step(s4, "L1", {{"phi", a}, {"psi", a}}));
    out.push_back(mp_step(s5, s4, s3, aa));
    return s5;
  }

  // A ~> s for a step s not depending on the hypothesis.
  std::string weaken(const Formula& a, const std::string& id, const Formula& f,
                     const std::string& base, std::vector<ProofStep>& out) {
    std::string s1 = fresh(base), s2 = fresh(base);
    out.push_back(axiom_step(s1, "L1", {{"phi", f}, {"psi", a}}));
    out.push_back(mp_step(s2, id, s1, mimp(a, f)));
    return s2;
  }

  static bool depends(const ProofStep& s, const std::set<std::string>& dep) {
    auto any = [&](const std::vector<std::string>& v) {
      return std::any_of(v.begin(), v.end(), [&](const std::string& i) { return dep.count(i); });
    };
    switch (s.by) {
      case ProofStep::By::Rule: return any(s.from);
      case ProofStep::By::Macro: return any(s.macro.from);
      case ProofStep::By::Block: {
        if (any(s.contradiction)) return true;
        for (const auto& t : s.inner)
          if (depends(t, dep)) return true;
        return false;
      }
      default: return false;
    }
  }

  void lower(const ProofStep& b, std::vector<ProofStep>& out) {
    const Formula& a = b.assume;
    std::set<std::string> dep = {b.hyp_id};
    std::map<std::string, std::string> lifted;  // inner id -> id of A ~> step
    std::map<std::string, Formula> formulas = {{b.hyp_id, a}};
    lifted[b.hyp_id] = identity(a, b.id, out);
    auto lift_outer = [&](const std::string& id) -> std::string {
      auto it = lifted.find(id);
      if (it != lifted.end()) return it->second;
      auto f = formulas.find(id);
      if (f == formulas.end())
        throw ScriptError("cannot lower block " + b.id + ": reference " + id +
                          " leaves the block");
      return lifted[id] = weaken(a, id, f->second, b.id, out);
    };
    for (const auto& s : b.inner) {
      formulas[s.id] = s.formula;
      if (!depends(s, dep)) {
        out.push_back(s);
        lifted[s.id] = weaken(a, s.id, s.formula, b.id, out);
        continue;
      }
      dep.insert(s.id);
      if (s.by == ProofStep::By::Rule && s.name == "E⤳") {
        const std::string& p = s.from[0];
        const std::string& q = s.from[1];
        Formula fp = formulas.count(p) ? formulas[p] : Formula();
        if (!fp) throw ScriptError("cannot lower block " + b.id + ": " + p + " is outside it");
        std::string lp = lift_outer(p), lq = lift_outer(q);
        std::string s1 = fresh(b.id), s2 = fresh(b.id), s3 = fresh(b.id);
        out.push_back(axiom_step(s1, "L2", {{"phi", a}, {"psi", fp}, {"theta", s.formula}}));
        out.push_back(mp_step(s2, lq, s1, mimp(mimp(a, fp), mimp(a, s.formula))));
        out.push_back(mp_step(s3, lp, s2, mimp(a, s.formula)));
        lifted[s.id] = s3;
        continue;
      }
      bool taut = s.by == ProofStep::By::Macro &&
                  (s.macro.kind == "taut-L" || s.macro.kind == "def");
      if (!taut)
        throw ScriptError("cannot lower block " + b.id + ": step " + s.id +
                          " uses the hypothesis through " +
                          (s.by == ProofStep::By::Macro ? s.macro.kind : s.name));
      ProofStep t;
      t.id = fresh(b.id);
      t.by = ProofStep::By::Macro;
      t.macro.kind = "taut-L";
      t.formula = mimp(a, s.formula);
      for (const auto& f : s.macro.from) {
        if (dep.count(f)) t.macro.from.push_back(lifted.at(f));
        else t.macro.from.push_back(f);
      }
      out.push_back(t);
      lifted[s.id] = t.id;
    }
    // The block's own id now names A ~> last.
    ProofStep fin;
    fin.id = b.id;
    fin.by = ProofStep::By::Macro;
    fin.macro.kind = "def";
    fin.macro.from = {lifted.at(b.inner.back().id)};
    fin.formula = b.formula;
    out.push_back(fin);
  }

  int counter_ = 0;
};

}  // namespace

ProofScript expand_ded(const ProofScript& s) {
  ProofScript out = s;
  if (std::find(out.systems.begin(), out.systems.end(), "L") == out.systems.end())
    throw ScriptError("lowering needs system L");
  out.steps = Lowering().run(s.steps);
  return out;
}

}  // namespace teamlogic
