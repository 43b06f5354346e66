// Command-line front end. Exit codes: 0 success/true/accepted, 1
// false/witness/rejected, 2 usage, input or budget errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "teamlogic/calculus.hpp"
#include "teamlogic/elimination.hpp"
#include "teamlogic/oracle.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/semantics.hpp"

using nlohmann::json;
using namespace teamlogic;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string mode = "lax";
  int props = 2;
  int worlds = 2;
  int domain = 2;
  int team_size = -1;
  std::uint64_t ceiling = std::uint64_t{1} << 24;
  std::string emit = "formula";
  std::size_t max_nodes = kDefaultMaxNodes;
  std::string signature_file;
  std::string model_file;
  bool as_json = false;
  std::uint64_t seed = 0;

  // Subcommand arguments.
  std::vector<std::string> formulas;
  std::string file;
  std::vector<std::string> delta;
  std::vector<std::string> systems;
  int samples = 100;
  int depth = 3;
  bool expand = false;
  bool mutations = false;
  bool auto_rename = false;
  bool no_spot_check = false;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SearchBudget budget(const Options& o) {
  SearchBudget b;
  b.max_props = o.props;
  b.max_worlds = o.worlds;
  b.max_domain = o.domain;
  if (o.team_size >= 0) b.max_team_size = o.team_size;
  b.mode = parse_mode(o.mode);
  b.ceiling = o.ceiling;
  return b;
}

Signature signature(const Options& o) {
  if (o.signature_file.empty()) return Signature::open_signature();
  return parse_signature_json(read_file(o.signature_file));
}

Formula formula(const Options& o, const std::string& text) { return parse(text, signature(o)); }

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_eval(const Options& o) {
  if (o.model_file.empty()) throw UsageError("eval needs --team or --model");
  Model m = model_from_json(json::parse(read_file(o.model_file)));
  bool holds = eval_team(m.context, formula(o, o.formulas.at(0)), m.team, parse_mode(o.mode));
  if (o.as_json) print({{"holds", holds}});
  else std::cout << (holds ? "true" : "false") << "\n";
  return holds ? 0 : 1;
}

int cmd_equiv(const Options& o) {
  if (o.formulas.size() != 2) throw UsageError("equiv takes two formulas");
  Verdict v = equiv(formula(o, o.formulas[0]), formula(o, o.formulas[1]), budget(o));
  print(v.to_json("equivalent"));
  return v.holds ? 0 : 1;
}

int cmd_valid(const Options& o) {
  Verdict v = valid(formula(o, o.formulas.at(0)), budget(o));
  print(v.to_json("valid"));
  return v.holds ? 0 : 1;
}

void emit_result(const Options& o, const Formula& out, const std::vector<TraceStep>* trace) {
  bool want_formula = o.emit != "trace";
  bool want_trace = o.emit != "formula" && trace;
  if (o.as_json || want_trace) {
    json j;
    if (want_formula) j["formula"] = render(out);
    if (want_trace) j["trace"] = trace_to_json(*trace);
    print(j);
  } else {
    std::cout << render(out) << "\n";
  }
}

int cmd_eliminate(const Options& o) {
  EliminationOptions eo;
  eo.budget = budget(o);
  eo.mode = eo.budget.mode;
  eo.max_nodes = o.max_nodes;
  eo.spot_check = !o.no_spot_check;
  EliminationResult r = to_boolean_closure(formula(o, o.formulas.at(0)), eo);
  emit_result(o, r.output, &r.trace);
  return 0;
}

int cmd_splus(const Options& o) {
  Formula out = to_splus(formula(o, o.formulas.at(0)), o.max_nodes);
  emit_result(o, out, nullptr);
  return 0;
}

LemmaRegistry corpus_registry() {
  LemmaRegistry reg;
  check_corpus(load_corpus(), &reg);
  return reg;
}

int cmd_check(const Options& o) {
  ProofScript s = parse_script(json::parse(read_file(o.file)));
  if (o.expand) s = expand_ded(s);
  LemmaRegistry reg = corpus_registry();
  CheckReport r = check_proof(s, &reg);
  if (o.as_json) {
    print(r.to_json());
  } else if (r.accepted) {
    std::cout << "accepted: " << s.name << " (" << r.steps.size() << " steps)\n";
  } else {
    std::cout << "rejected at step " << r.failed_step << ": " << r.reason << "\n";
  }
  return r.accepted ? 0 : 1;
}

int cmd_corpus(const Options& o) {
  std::vector<ProofScript> scripts = load_corpus();
  std::vector<json> sources = corpus_json();
  LemmaRegistry reg;
  std::vector<CorpusResult> results = check_corpus(scripts, &reg);
  int accepted = 0;
  json per = json::array();
  for (const auto& r : results) {
    accepted += r.report.accepted;
    json e = {{"name", r.name}, {"accepted", r.report.accepted}};
    if (!r.report.accepted) e["reason"] = r.report.failed_step + ": " + r.report.reason;
    per.push_back(e);
  }
  int mutants = 0, killed = 0;
  json survivors = json::array();
  if (o.mutations) {
    // Each mutant sees the lemmas proved before its script.
    LemmaRegistry before;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      for (const auto& m : mutate_script(sources[i])) {
        ++mutants;
        bool ok = false;
        try {
          ok = check_proof(parse_script(m.mutated), &before).accepted;
        } catch (const std::exception&) {
          ok = false;
        }
        if (ok) survivors.push_back({{"script", m.script}, {"kind", m.kind}, {"step", m.step}});
        else ++killed;
      }
      if (results[i].report.accepted) before.add(scripts[i]);
    }
  }
  bool ok = accepted == static_cast<int>(results.size()) && survivors.empty();
  if (o.as_json) {
    json j = {{"scripts", results.size()}, {"accepted", accepted}, {"results", per}};
    if (o.mutations)
      j["mutations"] = {{"total", mutants}, {"rejected", killed}, {"survivors", survivors}};
    print(j);
  } else {
    for (const auto& e : per)
      if (!e["accepted"].get<bool>())
        std::cout << "rejected: " << e["name"].get<std::string>() << " ("
                  << e["reason"].get<std::string>() << ")\n";
    std::cout << results.size() << " scripts, "
              << (accepted == static_cast<int>(results.size()) ? std::string("all")
                                                               : std::to_string(accepted))
              << " accepted\n";
    if (o.mutations) std::cout << killed << "/" << mutants << " mutations rejected\n";
  }
  return ok ? 0 : 1;
}

int cmd_soundness(const Options& o) {
  std::vector<std::string> names = o.systems;
  if (names.empty()) names = {"L", "S", "M", "Q", "X"};
  FuzzOptions fo;
  fo.samples = o.samples;
  fo.depth = o.depth;
  fo.seed = o.seed;
  SearchBudget b = budget(o);
  json reports = json::array();
  bool clean = true;
  for (const auto& n : names) {
    const ProofSystem* sys = nullptr;
    try {
      sys = &proof_system(n);
    } catch (const std::out_of_range&) {
      throw UsageError("unknown proof system " + n);
    }
    FuzzReport r = soundness_fuzz(*sys, b, fo);
    clean = clean && r.failures.empty();
    if (o.as_json) {
      reports.push_back(r.to_json());
    } else {
      std::cout << n << ": " << r.instances << " instances, " << r.failures.size()
                << " failures, " << r.skipped << " skipped\n";
      for (const auto& f : r.failures) std::cout << "  " << f.schema << ": " << render(f.instance) << "\n";
    }
  }
  if (o.as_json) print(reports);
  return clean ? 0 : 1;
}

int cmd_translate_fo(const Options& o) {
  std::vector<Formula> phi;
  for (const auto& t : o.formulas) phi.push_back(formula(o, t));
  FoTranslation tr = first_order_translation(phi, o.auto_rename);
  if (o.as_json) {
    json f = json::array();
    for (const auto& g : tr.formulas) f.push_back(render(g));
    json c = json::array();
    for (const auto& k : tr.extension.constants) c.push_back(k);
    print({{"formulas", f}, {"constants", c}});
  } else {
    for (const auto& g : tr.formulas) std::cout << render(g) << "\n";
  }
  return 0;
}

int cmd_interpolate(const Options& o) {
  std::vector<Formula> delta;
  for (const auto& t : o.delta) delta.push_back(formula(o, t));
  Formula s = sentence_interpolant(delta, formula(o, o.formulas.at(0)));
  if (o.as_json) print({{"formula", render(s)}});
  else std::cout << render(s) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Team logic toolkit: semantics, oracle, proof checking and elimination"};
  app.require_subcommand(1);
  Options o;

  auto shared = [&o](CLI::App* c) {
    c->add_option("--mode", o.mode, "lax or strict")->check(CLI::IsMember({"lax", "strict"}));
    c->add_option("--props", o.props, "propositions per context")->check(CLI::Range(0, 6));
    c->add_option("--worlds", o.worlds, "maximum Kripke worlds")->check(CLI::Range(1, 6));
    c->add_option("--domain", o.domain, "maximum first-order domain")->check(CLI::Range(1, 4));
    c->add_option("--team-size", o.team_size, "maximum team size");
    c->add_option("--ceiling", o.ceiling, "maximum number of contexts");
    c->add_option("--signature", o.signature_file, "signature JSON file");
    c->add_flag("--json", o.as_json, "JSON output");
  };

  auto* eval = app.add_subcommand("eval", "evaluate a formula on a team");
  shared(eval);
  eval->add_option("--team,--model", o.model_file, "model JSON file")->required();
  eval->add_option("formula", o.formulas)->required()->expected(1);

  auto* eq = app.add_subcommand("equiv", "decide equivalence within the budget");
  shared(eq);
  eq->add_option("formulas", o.formulas)->required()->expected(2);

  auto* val = app.add_subcommand("valid", "decide validity within the budget");
  shared(val);
  val->add_option("formula", o.formulas)->required()->expected(1);

  auto* elim = app.add_subcommand("eliminate", "rewrite into the Boolean closure");
  shared(elim);
  elim->add_option("--emit", o.emit)->check(CLI::IsMember({"trace", "formula", "both"}));
  elim->add_option("--max-nodes", o.max_nodes, "node ceiling");
  elim->add_flag("--no-spot-check", o.no_spot_check, "skip per-step equivalence checks");
  elim->add_option("formula", o.formulas)->required()->expected(1);

  auto* splus = app.add_subcommand("splus", "rewrite a Boolean closure formula into S+ form");
  shared(splus);
  splus->add_option("--emit", o.emit)->check(CLI::IsMember({"formula"}));
  splus->add_option("--max-nodes", o.max_nodes, "node ceiling");
  splus->add_option("formula", o.formulas)->required()->expected(1);

  auto* check = app.add_subcommand("check", "check a proof script");
  shared(check);
  check->add_flag("--expand", o.expand, "lower deduction blocks before checking");
  check->add_option("script", o.file, "script JSON file or -")->required();

  auto* corpus = app.add_subcommand("corpus", "check the bundled derivations");
  shared(corpus);
  corpus->add_flag("--mutations", o.mutations, "also check that mutated scripts are rejected");

  auto* sound = app.add_subcommand("soundness", "fuzz axiom schemas against the oracle");
  shared(sound);
  sound->add_option("--system", o.systems, "systems to fuzz (default L S M Q X)");
  sound->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  sound->add_option("--depth", o.depth)->check(CLI::Range(0, 6));
  sound->add_option("--seed", o.seed);

  auto* fo = app.add_subcommand("translate-fo", "translate FO and ~FO formulas into classical FO");
  shared(fo);
  fo->add_flag("--auto-rename", o.auto_rename, "rename clashing bound variables");
  fo->add_option("formulas", o.formulas)->required();

  auto* interp = app.add_subcommand("interpolate", "sentence interpolant for delta and alpha");
  shared(interp);
  interp->add_option("--delta", o.delta, "~FO premises")->required();
  interp->add_option("alpha", o.formulas)->required()->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*eq) return cmd_equiv(o);
    if (*val) return cmd_valid(o);
    if (*elim) return cmd_eliminate(o);
    if (*splus) return cmd_splus(o);
    if (*check) return cmd_check(o);
    if (*corpus) return cmd_corpus(o);
    if (*sound) return cmd_soundness(o);
    if (*fo) return cmd_translate_fo(o);
    if (*interp) return cmd_interpolate(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const ScriptError& e) {
    std::cerr << "malformed script: " << e.what() << "\n";
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
  } catch (const EliminationError& e) {
    std::cerr << "elimination failed: " << e.what() << "\n";
  } catch (const json::exception& e) {
    std::cerr << "malformed JSON: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
