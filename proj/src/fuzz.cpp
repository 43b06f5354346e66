#include "teamlogic/calculus.hpp"
#include "teamlogic/generate.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

using nlohmann::json;

json FuzzReport::to_json() const {
  json j;
  j["system"] = system;
  j["mode"] = to_string(mode);
  j["instances"] = instances;
  j["skipped"] = skipped;
  j["per_schema"] = per_schema;
  json f = json::array();
  for (const auto& x : failures) {
    json e = {{"schema", x.schema}, {"instance", render(x.instance)}};
    json inst = json::object();
    for (const auto& [k, v] : x.inst.formulas) inst[k] = render(v);
    for (const auto& [k, v] : x.inst.terms) inst[k] = render(v);
    e["inst"] = inst;
    e["witness"] = x.witness ? model_to_json(x.witness->context, x.witness->team) : json();
    f.push_back(e);
  }
  j["failures"] = f;
  return j;
}

namespace {

// Generator vocabulary for the base logic a system extends.
GenSpec spec_for(const std::string& system) {
  GenSpec s;
  if (system == "HBox" || system == "M" || system == "M'") {
    s.props = {"p"};
    s.modal = true;
  } else if (system == "Q" || system == "X") {
    s.props = {"p"};
    s.qvars = {"x"};
  } else if (system == "H" || system == "U") {
    s.fo_relations = {"P"};
    s.fo_vars = {"x", "y"};
  } else {
    s.props = {"p", "q"};
    s.team_constants = true;
  }
  return s;
}

Instantiation sample(const AxiomSchema& schema, const GenSpec& spec, RandomFormulas& gen,
                     int max_depth) {
  Instantiation inst;
  const std::vector<std::string>& vars = spec.fo_vars.empty() ? spec.qvars : spec.fo_vars;
  for (const auto& m : schema.free_metas()) {
    if (schema.var_metas.count(m)) {
      // x keeps its name; other variable slots pick from the vocabulary.
      std::string v = m == "x" || vars.empty() ? "x" : vars[gen.below(static_cast<int>(vars.size()))];
      inst.terms[m] = Term::variable(v);
    } else if (schema.metas.terms.count(m)) {
      std::string v = vars.empty() ? "x" : vars[gen.below(static_cast<int>(vars.size()))];
      inst.terms[m] = Term::variable(v);
    } else {
      int depth = gen.below(max_depth + 1);
      bool classical = schema.metas.formulas.at(m) == MetaSort::Classical;
      inst.formulas[m] = classical ? gen.classical(spec, depth) : gen.team(spec, depth);
    }
  }
  if (schema.side == SideCondition::Sentence) {
    Formula& f = inst.formulas[schema.side_formula];
    for (const auto& v : free_vars(f)) f = forall(v, f);
  }
  return inst;
}

void run_schema(const AxiomSchema& schema, const SearchBudget& b, const FuzzOptions& o,
                FuzzReport& r) {
  GenSpec spec = spec_for(schema.system);
  // Distinct schemas get distinct streams.
  RandomFormulas gen(o.seed ^ std::hash<std::string>{}(schema.system + "/" + schema.name));
  int& count = r.per_schema[schema.name];
  for (int i = 0; i < o.samples; ++i) {
    Instantiation inst;
    bool ok = false;
    for (int tries = 0; tries < 50 && !ok; ++tries) {
      inst = sample(schema, spec, gen, o.depth);
      ok = side_condition_holds(schema, inst);
    }
    if (!ok) {
      ++r.skipped;
      continue;
    }
    Formula instance = apply_instantiation(schema, inst);
    Verdict v;
    try {
      v = valid(instance, b);
    } catch (const BudgetError&) {
      ++r.skipped;
      continue;
    }
    ++count;
    ++r.instances;
    if (!v.holds) {
      r.failures.push_back({schema.name, inst, instance, v.witness});
      if (o.first_failure_only) return;
    }
  }
}

}  // namespace

FuzzReport fuzz_schema(const AxiomSchema& schema, const SearchBudget& b, const FuzzOptions& o) {
  FuzzReport r;
  r.system = schema.system;
  r.mode = b.mode;
  run_schema(schema, b, o, r);
  return r;
}

FuzzReport soundness_fuzz(const ProofSystem& sys, const SearchBudget& b, const FuzzOptions& o) {
  FuzzReport r;
  r.system = sys.name;
  r.mode = b.mode;
  for (const auto& a : sys.axioms) run_schema(a, b, o, r);
  return r;
}

}  // namespace teamlogic
