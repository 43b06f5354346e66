#include <algorithm>
#include <functional>

#include "teamlogic/calculus.hpp"
#include "teamlogic/parser.hpp"

namespace teamlogic {

// Generated from corpus/*.json at build time, in file name order.
const std::vector<const char*>& embedded_corpus();

using nlohmann::json;

std::vector<json> corpus_json() {
  std::vector<json> out;
  for (const char* text : embedded_corpus()) out.push_back(json::parse(text));
  return out;
}

std::vector<ProofScript> load_corpus() {
  std::vector<ProofScript> out;
  for (const auto& j : corpus_json()) out.push_back(parse_script(j));
  return out;
}

std::vector<CorpusResult> check_corpus(const std::vector<ProofScript>& scripts,
                                       LemmaRegistry* registry) {
  LemmaRegistry local;
  LemmaRegistry& reg = registry ? *registry : local;
  std::vector<CorpusResult> out;
  for (const auto& s : scripts) {
    CheckReport r = check_proof(s, &reg);
    if (r.accepted) reg.add(s);
    out.push_back({s.name, r});
  }
  return out;
}

// ---- mutations ----

namespace {

// JSON pointers of every step, blocks included, in document order.
void step_paths(const json& steps, const std::string& prefix, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string p = prefix + "/" + std::to_string(i);
    out.push_back(p);
    if (steps[i].contains("block")) step_paths(steps[i]["block"]["steps"], p + "/block/steps", out);
  }
}

std::string id_text(const json& id) {
  return id.is_string() ? id.get<std::string>() : std::to_string(id.get<long long>());
}

const std::set<std::string>& restricted_rules() {
  static const std::set<std::string> r = {"Nec",     "Nec⊸",      "Nec-o",    "Nec□",
                                          "Nec-box", "NecΔ",      "Nec-delta", "UG∀",
                                          "UG-forall", "UG!",     "UG-shriek"};
  return r;
}

// Ids cited where the checker demands a theorem.
std::vector<std::string> theorem_citations(const json& step) {
  std::vector<std::string> out;
  if (!step.contains("by")) return out;
  const json& by = step["by"];
  if (by.contains("rule")) {
    const json& r = by["rule"];
    if (restricted_rules().count(r.value("name", "")) && !r["from"].empty())
      out.push_back(id_text(r["from"][0]));
  } else if (by.contains("macro")) {
    const json& m = by["macro"];
    std::string k = m.value("kind", "");
    if (!m.contains("from")) return out;
    if (k.rfind("mp-", 0) == 0 && !m["from"].empty()) out.push_back(id_text(m["from"][0]));
    if (k == "sub")
      for (std::size_t i = 1; i < m["from"].size(); ++i) out.push_back(id_text(m["from"][i]));
  }
  return out;
}

json* swappable(json& step) {
  if (step.contains("block")) {
    json& b = step["block"];
    if (b.contains("from") && b["from"].size() == 2) return &b["from"];
    return nullptr;
  }
  json& by = step["by"];
  if (by.contains("rule")) {
    std::string n = by["rule"].value("name", "");
    if (n == "E→" || n == "E->" || n == "E⤳" || n == "E~>") return &by["rule"]["from"];
  }
  if (by.contains("macro")) {
    std::string k = by["macro"].value("kind", "");
    if ((k.rfind("mp-", 0) == 0 || k == "lemma") && by["macro"].contains("from") &&
        by["macro"]["from"].size() >= 2)
      return &by["macro"]["from"];
  }
  return nullptr;
}

}  // namespace

std::vector<Mutation> mutate_script(const json& script) {
  std::vector<Mutation> out;
  std::string name = script.value("name", "");
  std::vector<std::string> paths;
  step_paths(script["steps"], "/steps", paths);

  std::map<std::string, std::string> formula_of;
  for (const auto& p : script.value("premises", json::array()))
    if (p.is_object()) formula_of[id_text(p["label"])] = p["formula"].get<std::string>();
  for (const auto& p : paths) {
    const json& st = script.at(json::json_pointer(p));
    formula_of[id_text(st["id"])] = st["formula"].get<std::string>();
  }

  for (const auto& p : paths) {
    const json& st = script.at(json::json_pointer(p));
    std::string id = id_text(st["id"]);
    bool taut = st.contains("by") && st["by"].contains("macro") &&
                st["by"]["macro"].value("kind", "").rfind("taut-", 0) == 0;
    if (!taut) {
      json m = script;
      json& f = m[json::json_pointer(p + "/formula")];
      f = "~(" + f.get<std::string>() + ")";
      out.push_back({name, "typo", id, m});
    }
    json m = script;
    json* from = swappable(m[json::json_pointer(p)]);
    if (from && formula_of[id_text(from->front())] != formula_of[id_text(from->back())]) {
      std::reverse(from->begin(), from->end());
      out.push_back({name, "swap", id, m});
    }
  }

  // Everything a theorem-only citation depends on.
  std::map<std::string, std::vector<std::string>> deps;
  for (const auto& p : paths) {
    const json& st = script.at(json::json_pointer(p));
    auto& d = deps[id_text(st["id"])];
    if (st.contains("block")) {
      const json& b = st["block"];
      if (b.contains("from")) {
        for (const auto& e : b["from"]) d.push_back(id_text(e));
      } else if (!b["steps"].empty()) {
        d.push_back(id_text(b["steps"].back()["id"]));
      }
      continue;
    }
    const json& by = st["by"];
    if (by.contains("premise")) d.push_back(id_text(by["premise"]));
    if (by.contains("rule"))
      for (const auto& e : by["rule"].value("from", json::array())) d.push_back(id_text(e));
    if (by.contains("macro"))
      for (const auto& e : by["macro"].value("from", json::array())) d.push_back(id_text(e));
  }
  std::set<std::string> cited;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    if (!cited.insert(id).second) return;
    auto it = deps.find(id);
    if (it != deps.end())
      for (const auto& d : it->second) visit(d);
  };
  for (const auto& p : paths)
    for (const auto& c : theorem_citations(script.at(json::json_pointer(p)))) visit(c);
  const json premises = script.value("premises", json::array());
  std::string open_label;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    const json& pr = premises[i];
    if (!pr.is_object()) continue;
    std::string label = id_text(pr["label"]);
    if (!pr.value("theorem", false)) {
      if (open_label.empty()) open_label = label;
      continue;
    }
    if (!cited.count(label)) continue;
    json m = script;
    m["premises"][i]["theorem"] = false;
    out.push_back({name, "flag-drop", label, m});
  }

  // Make a tautology behind such a citation depend on an open premise.
  if (!open_label.empty()) {
    for (const auto& p : paths) {
      const json& st = script.at(json::json_pointer(p));
      std::string id = id_text(st["id"]);
      if (!cited.count(id) || !st.contains("by") || !st["by"].contains("macro")) continue;
      if (st["by"]["macro"].value("kind", "") != "taut-L") continue;
      json m = script;
      json& macro = m[json::json_pointer(p + "/by/macro")];
      if (!macro.contains("from")) macro["from"] = json::array();
      macro["from"].push_back(open_label);
      out.push_back({name, "flag-drop", id, m});
    }
  }
  return out;
}

ProofScript ground_script(const ProofScript& s, const Instantiation& inst) {
  const std::set<std::string> none;
  auto g = [&](const Formula& f) { return f ? apply_instantiation(f, none, inst) : f; };
  std::function<void(ProofStep&)> step = [&](ProofStep& st) {
    st.formula = g(st.formula);
    for (auto& [k, v] : st.inst.formulas) v = g(v);
    // Leaf annotations name schematic leaves, which grounding may split.
    st.macro.leaves.clear();
    if (st.by == ProofStep::By::Block) {
      st.assume = g(st.assume);
      for (auto& t : st.inner) step(t);
    }
  };
  ProofScript out = s;
  for (auto& p : out.premises) p.formula = g(p.formula);
  if (out.goal) out.goal = g(*out.goal);
  for (auto& st : out.steps) step(st);
  return out;
}

}  // namespace teamlogic
