#include "teamlogic/semantics.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace teamlogic {

std::string to_string(Mode m) { return m == Mode::Lax ? "lax" : "strict"; }

Mode parse_mode(const std::string& s) {
  if (s == "lax") return Mode::Lax;
  if (s == "strict") return Mode::Strict;
  throw std::invalid_argument("unknown semantics mode '" + s + "'");
}

std::vector<int> members(Team t) {
  std::vector<int> out;
  while (t) {
    out.push_back(__builtin_ctzll(t));
    t &= t - 1;
  }
  return out;
}

int PropSpace::index_of(const std::string& v) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == v) return static_cast<int>(i);
  return -1;
}

Team Kripke::global_successor(Team t) const {
  Team r = 0;
  for (int w : members(t)) r |= succ[w];
  return r;
}

int FoStructure::tuple_code(const std::vector<int>& args) const {
  int code = 0;
  for (auto it = args.rbegin(); it != args.rend(); ++it) code = code * domain + *it;
  return code;
}

int FoSpace::size() const {
  int n = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    n *= structure.domain;
    if (n > 64) return n;
  }
  return n;
}

int FoSpace::index_of(const std::string& v) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == v) return static_cast<int>(i);
  return -1;
}

int FoSpace::value(int point, int var_index) const {
  for (int i = 0; i < var_index; ++i) point /= structure.domain;
  return point % structure.domain;
}

int FoSpace::with_value(int point, int var_index, int value) const {
  int weight = 1;
  for (int i = 0; i < var_index; ++i) weight *= structure.domain;
  int old = (point / weight) % structure.domain;
  return point + (value - old) * weight;
}

int Context::universe() const {
  switch (kind) {
    case ContextKind::Prop: return prop.size();
    case ContextKind::Kripke: return kripke.worlds;
    case ContextKind::Fo: return fo.size();
  }
  return 0;
}

namespace {
void check_universe(int n) {
  if (n > 64) throw SemanticsError("context universe of " + std::to_string(n) + " points exceeds 64");
}
}  // namespace

Context Context::of(PropSpace p) {
  if (p.vars.size() > 6) throw SemanticsError("propositional context limited to 6 variables");
  Context c;
  c.kind = ContextKind::Prop;
  c.prop = std::move(p);
  return c;
}

Context Context::of(Kripke k) {
  check_universe(k.worlds);
  Context c;
  c.kind = ContextKind::Kripke;
  c.kripke = std::move(k);
  return c;
}

Context Context::of(FoSpace f) {
  if (f.structure.domain < 1) throw SemanticsError("first-order domain must be non-empty");
  check_universe(f.size());
  Context c;
  c.kind = ContextKind::Fo;
  c.fo = std::move(f);
  return c;
}

// ---- enumerators ----

std::vector<std::pair<Team, Team>> splits(Team t, Mode mode) {
  std::vector<std::pair<Team, Team>> out;
  Team s = 0;
  do {
    Team rest = t & ~s;
    if (mode == Mode::Strict) {
      out.emplace_back(s, rest);
    } else {
      Team r = 0;
      do {
        out.emplace_back(s, rest | r);
        r = (r - s) & s;
      } while (r != 0);
    }
    s = (s - t) & t;
  } while (s != 0);
  return out;
}

Team global_successor(const Kripke& k, Team t) { return k.global_successor(t); }

std::vector<Team> successor_teams(const Kripke& k, Team t, Mode mode) {
  std::vector<Team> out;
  std::vector<int> ws = members(t);
  for (int w : ws)
    if (k.succ[w] == 0) return out;
  if (mode == Mode::Lax) {
    Team r = k.global_successor(t);
    Team s = 0;
    do {
      bool ok = true;
      for (int w : ws)
        if ((k.succ[w] & s) == 0) {
          ok = false;
          break;
        }
      if (ok) out.push_back(s);
      s = (s - r) & r;
    } while (s != 0);
    return out;
  }
  std::set<Team> images;
  std::function<void(std::size_t, Team)> go = [&](std::size_t i, Team acc) {
    if (i == ws.size()) {
      images.insert(acc);
      return;
    }
    for (int v : members(k.succ[ws[i]])) go(i + 1, acc | (Team{1} << v));
  };
  go(0, 0);
  return {images.begin(), images.end()};
}

namespace {

// Candidate points for one member when x is re-assigned.
std::vector<int> candidates(const Context& c, int point, const std::string& x) {
  if (c.kind == ContextKind::Prop) {
    int i = c.prop.index_of(x);
    if (i < 0) throw SemanticsError("quantified variable " + x + " is not in the context");
    int bit = 1 << i;
    return {point & ~bit, point | bit};
  }
  if (c.kind == ContextKind::Fo) {
    int i = c.fo.index_of(x);
    if (i < 0) throw SemanticsError("quantified variable " + x + " is not in the context");
    std::vector<int> out;
    for (int e = 0; e < c.fo.structure.domain; ++e) out.push_back(c.fo.with_value(point, i, e));
    return out;
  }
  throw SemanticsError("quantifiers need a propositional or first-order context");
}

}  // namespace

void for_each_raw_supplement(const Context& c, Team t, const std::string& x, Mode mode,
                             const std::function<void(Team)>& fn) {
  std::vector<std::vector<Team>> options;
  for (int p : members(t)) {
    std::vector<int> cand = candidates(c, p, x);
    std::vector<Team> opts;
    if (mode == Mode::Strict) {
      for (int q : cand) opts.push_back(Team{1} << q);
    } else {
      int k = static_cast<int>(cand.size());
      for (int sub = 1; sub < (1 << k); ++sub) {
        Team m = 0;
        for (int j = 0; j < k; ++j)
          if (sub & (1 << j)) m |= Team{1} << cand[j];
        opts.push_back(m);
      }
    }
    options.push_back(std::move(opts));
  }
  std::function<void(std::size_t, Team)> go = [&](std::size_t i, Team acc) {
    if (i == options.size()) {
      fn(acc);
      return;
    }
    for (Team o : options[i]) go(i + 1, acc | o);
  };
  go(0, 0);
}

std::vector<Team> supplement_teams(const Context& c, Team t, const std::string& x, Mode mode) {
  std::set<Team> seen;
  for_each_raw_supplement(c, t, x, mode, [&](Team s) { seen.insert(s); });
  return {seen.begin(), seen.end()};
}

Team duplicate_team(const Context& c, Team t, const std::string& x) {
  Team out = 0;
  for (int p : members(t))
    for (int q : candidates(c, p, x)) out |= Team{1} << q;
  return out;
}

// ---- evaluator ----

Evaluator::Evaluator(const Context& c, Mode mode) : ctx_(c), mode_(mode), all_(c.all()) {}

int Evaluator::var_index(const std::string& x) const {
  int i = ctx_.kind == ContextKind::Prop ? ctx_.prop.index_of(x) : ctx_.fo.index_of(x);
  if (i < 0) throw SemanticsError("variable " + x + " is not in the context");
  return i;
}

int Evaluator::term_value(const Term& t, int point) const {
  const FoStructure& s = ctx_.fo.structure;
  switch (t.kind()) {
    case TermKind::Variable:
      return ctx_.fo.value(point, var_index(t.name()));
    case TermKind::Constant: {
      auto it = s.constants.find(t.name());
      if (it == s.constants.end()) throw SemanticsError("uninterpreted constant " + t.name());
      return it->second;
    }
    case TermKind::Function: {
      auto it = s.functions.find(t.name());
      if (it == s.functions.end()) throw SemanticsError("uninterpreted function " + t.name());
      std::vector<int> args;
      for (const Term& a : t.args()) args.push_back(term_value(a, point));
      return it->second.table[s.tuple_code(args)];
    }
    case TermKind::Meta:
      break;
  }
  throw SemanticsError("cannot evaluate a schematic term");
}

Team Evaluator::sat(const Formula& f) {
  auto it = sat_memo_.find(f.node());
  if (it != sat_memo_.end()) return it->second;
  const int n = ctx_.universe();
  Team r = 0;
  switch (f.kind()) {
    case Kind::PropAtom:
      if (ctx_.kind == ContextKind::Prop) {
        int i = ctx_.prop.index_of(f.name());
        if (i >= 0)
          for (int p = 0; p < n; ++p)
            if (p & (1 << i)) r |= Team{1} << p;
      } else if (ctx_.kind == ContextKind::Kripke) {
        auto v = ctx_.kripke.val.find(f.name());
        if (v != ctx_.kripke.val.end()) r = v->second & all_;
      }
      break;
    case Kind::FoPredicate: {
      if (ctx_.kind != ContextKind::Fo) throw SemanticsError("first-order atom outside a structure");
      const FoStructure& s = ctx_.fo.structure;
      auto rel = s.relations.find(f.name());
      if (rel == s.relations.end()) throw SemanticsError("uninterpreted relation " + f.name());
      for (int p = 0; p < n; ++p) {
        std::vector<int> args;
        for (const Term& t : f.terms()) args.push_back(term_value(t, p));
        if (rel->second.holds[s.tuple_code(args)]) r |= Team{1} << p;
      }
      break;
    }
    case Kind::FoEquality:
      if (ctx_.kind != ContextKind::Fo) throw SemanticsError("first-order atom outside a structure");
      for (int p = 0; p < n; ++p)
        if (term_value(f.terms()[0], p) == term_value(f.terms()[1], p)) r |= Team{1} << p;
      break;
    case Kind::Not:
      r = all_ & ~sat(f.body());
      break;
    case Kind::Implies:
      r = all_ & (~sat(f.lhs()) | sat(f.rhs()));
      break;
    case Kind::Box: {
      if (ctx_.kind != ContextKind::Kripke) throw SemanticsError("modality outside a Kripke structure");
      Team b = sat(f.body());
      for (int w = 0; w < n; ++w)
        if ((ctx_.kripke.succ[w] & ~b) == 0) r |= Team{1} << w;
      break;
    }
    case Kind::ForAll: {
      Team b = sat(f.body());
      for (int p = 0; p < n; ++p) {
        bool ok = true;
        for (int q : candidates(ctx_, p, f.name()))
          if (!(b >> q & 1)) {
            ok = false;
            break;
          }
        if (ok) r |= Team{1} << p;
      }
      break;
    }
    case Kind::Meta:
      throw SemanticsError("cannot evaluate metavariable " + f.name());
    default:
      throw SemanticsError("sat() called on a team-logical formula");
  }
  sat_memo_.emplace(f.node(), r);
  return r;
}

bool Evaluator::eval(const Formula& f, Team t) {
  if (f.classical()) return (t & ~sat(f)) == 0;
  Key k{f.node(), t};
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  bool r = eval_nonclassical(f, t);
  memo_.emplace(k, r);
  return r;
}

bool Evaluator::eval_nonclassical(const Formula& f, Team t) {
  switch (f.kind()) {
    case Kind::StrongNeg:
      return !eval(f.body(), t);
    case Kind::MatImpl:
      return !eval(f.lhs(), t) || eval(f.rhs(), t);
    case Kind::LinImpl: {
      Team s = 0;
      do {
        if (eval(f.lhs(), s)) {
          Team rest = t & ~s;
          if (mode_ == Mode::Strict) {
            if (!eval(f.rhs(), rest)) return false;
          } else {
            Team r = 0;
            do {
              if (!eval(f.rhs(), rest | r)) return false;
              r = (r - s) & s;
            } while (r != 0);
          }
        }
        s = (s - t) & t;
      } while (s != 0);
      return true;
    }
    case Kind::Box:
      if (ctx_.kind != ContextKind::Kripke) throw SemanticsError("modality outside a Kripke structure");
      return eval(f.body(), ctx_.kripke.global_successor(t));
    case Kind::Delta:
      if (ctx_.kind != ContextKind::Kripke) throw SemanticsError("modality outside a Kripke structure");
      for (Team s : successor_teams(ctx_.kripke, t, mode_))
        if (!eval(f.body(), s)) return false;
      return true;
    case Kind::ForAll:
      return eval(f.body(), duplicate_team(ctx_, t, f.name()));
    case Kind::Shriek: {
      for (Team s : supplement_teams(ctx_, t, f.name(), mode_))
        if (!eval(f.body(), s)) return false;
      return true;
    }
    case Kind::Meta:
      throw SemanticsError("cannot evaluate metavariable " + f.name());
    default:
      throw SemanticsError("unexpected node in team evaluation");
  }
}

bool eval_team(const Context& c, const Formula& f, Team t, Mode mode) {
  Evaluator ev(c, mode);
  return ev.eval(f, t);
}

// ---- Tarskian evaluation ----

namespace {

struct Point {
  std::map<std::string, int> env;  // Prop and Fo
  int world = 0;                   // Kripke
};

int tarski_term(const Context& c, const Term& t, const Point& p) {
  const FoStructure& s = c.fo.structure;
  switch (t.kind()) {
    case TermKind::Variable: {
      auto it = p.env.find(t.name());
      if (it == p.env.end()) throw SemanticsError("unassigned variable " + t.name());
      return it->second;
    }
    case TermKind::Constant:
      return s.constants.at(t.name());
    case TermKind::Function: {
      std::vector<int> args;
      for (const Term& a : t.args()) args.push_back(tarski_term(c, a, p));
      return s.functions.at(t.name()).table[s.tuple_code(args)];
    }
    default:
      throw SemanticsError("cannot evaluate a schematic term");
  }
}

bool tarski(const Context& c, const Formula& f, const Point& p) {
  switch (f.kind()) {
    case Kind::PropAtom:
      if (c.kind == ContextKind::Kripke) {
        auto it = c.kripke.val.find(f.name());
        return it != c.kripke.val.end() && (it->second >> p.world & 1);
      } else {
        auto it = p.env.find(f.name());
        return it != p.env.end() && it->second == 1;
      }
    case Kind::FoPredicate: {
      const FoStructure& s = c.fo.structure;
      std::vector<int> args;
      for (const Term& t : f.terms()) args.push_back(tarski_term(c, t, p));
      return s.relations.at(f.name()).holds[s.tuple_code(args)];
    }
    case Kind::FoEquality:
      return tarski_term(c, f.terms()[0], p) == tarski_term(c, f.terms()[1], p);
    case Kind::Not:
      return !tarski(c, f.body(), p);
    case Kind::Implies:
      return !tarski(c, f.lhs(), p) || tarski(c, f.rhs(), p);
    case Kind::Box:
      for (int v : members(c.kripke.succ[p.world])) {
        Point q = p;
        q.world = v;
        if (!tarski(c, f.body(), q)) return false;
      }
      return true;
    case Kind::ForAll: {
      int range = c.kind == ContextKind::Fo ? c.fo.structure.domain : 2;
      for (int v = 0; v < range; ++v) {
        Point q = p;
        q.env[f.name()] = v;
        if (!tarski(c, f.body(), q)) return false;
      }
      return true;
    }
    default:
      throw SemanticsError("eval_classical needs a classical formula");
  }
}

Point decode(const Context& c, int point) {
  Point p;
  if (c.kind == ContextKind::Kripke) {
    p.world = point;
  } else if (c.kind == ContextKind::Prop) {
    for (std::size_t i = 0; i < c.prop.vars.size(); ++i) p.env[c.prop.vars[i]] = point >> i & 1;
  } else {
    for (std::size_t i = 0; i < c.fo.vars.size(); ++i)
      p.env[c.fo.vars[i]] = c.fo.value(point, static_cast<int>(i));
  }
  return p;
}

}  // namespace

bool eval_classical(const Context& c, int point, const Formula& f) {
  if (!f.classical()) throw SemanticsError("eval_classical needs a classical formula");
  return tarski(c, f, decode(c, point));
}

// ---- usual team semantics ----

namespace {

bool usual(const Context& c, const Formula& f, bool positive, Team t) {
  switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::FoPredicate:
    case Kind::FoEquality:
      for (int p : members(t))
        if (eval_classical(c, p, f) != positive) return false;
      return true;
    case Kind::Not:
      return usual(c, f.body(), !positive, t);
    case Kind::Implies:
      if (!positive) return usual(c, f.lhs(), true, t) && usual(c, f.rhs(), false, t);
      for (const auto& [s, u] : splits(t, Mode::Strict))
        if (usual(c, f.lhs(), false, s) && usual(c, f.rhs(), true, u)) return true;
      return false;
    case Kind::Box:
      if (positive) return usual(c, f.body(), true, c.kripke.global_successor(t));
      for (Team s : successor_teams(c.kripke, t, Mode::Lax))
        if (usual(c, f.body(), false, s)) return true;
      return false;
    case Kind::ForAll:
      if (positive) return usual(c, f.body(), true, duplicate_team(c, t, f.name()));
      for (Team s : supplement_teams(c, t, f.name(), Mode::Lax))
        if (usual(c, f.body(), false, s)) return true;
      return false;
    default:
      throw SemanticsError("eval_usual needs a classical formula");
  }
}

}  // namespace

bool eval_usual(const Context& c, const Formula& f, Team t) {
  if (!f.classical()) throw SemanticsError("eval_usual needs a classical formula");
  return usual(c, f, true, t);
}

// ---- models ----

namespace {

nlohmann::json label_json(const std::vector<std::string>& labels, int i) {
  std::string s = i < static_cast<int>(labels.size()) ? labels[i] : std::to_string(i);
  if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) return std::stoll(s);
  return s;
}

std::string label_of(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw std::invalid_argument("labels must be strings or integers");
}

int lookup(const std::map<std::string, int>& idx, const nlohmann::json& j, const char* what) {
  auto it = idx.find(label_of(j));
  if (it == idx.end()) throw std::invalid_argument(std::string("unknown ") + what + " " + j.dump());
  return it->second;
}

std::vector<int> decode_tuple(int code, int arity, int d) {
  std::vector<int> out;
  for (int i = 0; i < arity; ++i) {
    out.push_back(code % d);
    code /= d;
  }
  return out;
}

int int_pow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

nlohmann::json model_to_json(const Context& c, Team t) {
  using nlohmann::json;
  json j;
  if (c.kind == ContextKind::Prop) {
    j["props"] = c.prop.vars;
    json team = json::array();
    for (int p : members(t)) {
      json m = json::object();
      for (std::size_t i = 0; i < c.prop.vars.size(); ++i) m[c.prop.vars[i]] = p >> i & 1;
      team.push_back(m);
    }
    j["team"] = team;
  } else if (c.kind == ContextKind::Kripke) {
    const Kripke& k = c.kripke;
    json worlds = json::array(), edges = json::array(), val = json::object(), team = json::array();
    for (int w = 0; w < k.worlds; ++w) worlds.push_back(label_json(k.labels, w));
    for (int w = 0; w < k.worlds; ++w)
      for (int v : members(k.succ[w])) edges.push_back({label_json(k.labels, w), label_json(k.labels, v)});
    for (const auto& [p, m] : k.val) {
      json ws = json::array();
      for (int w : members(m)) ws.push_back(label_json(k.labels, w));
      val[p] = ws;
    }
    for (int w : members(t)) team.push_back(label_json(k.labels, w));
    j["worlds"] = worlds;
    j["edges"] = edges;
    j["val"] = val;
    j["team"] = team;
  } else {
    const FoStructure& s = c.fo.structure;
    json dom = json::array(), rels = json::object(), funs = json::object(), consts = json::object();
    for (int e = 0; e < s.domain; ++e) dom.push_back(label_json(s.labels, e));
    for (const auto& [name, r] : s.relations) {
      json tuples = json::array();
      for (std::size_t code = 0; code < r.holds.size(); ++code) {
        if (!r.holds[code]) continue;
        json tup = json::array();
        for (int v : decode_tuple(static_cast<int>(code), r.arity, s.domain))
          tup.push_back(label_json(s.labels, v));
        tuples.push_back(tup);
      }
      rels[name] = tuples;
    }
    for (const auto& [name, f] : s.functions) {
      json rows = json::array();
      for (std::size_t code = 0; code < f.table.size(); ++code) {
        json row = json::array();
        for (int v : decode_tuple(static_cast<int>(code), f.arity, s.domain))
          row.push_back(label_json(s.labels, v));
        row.push_back(label_json(s.labels, f.table[code]));
        rows.push_back(row);
      }
      funs[name] = rows;
    }
    for (const auto& [name, v] : s.constants) consts[name] = label_json(s.labels, v);
    json team = json::array();
    for (int p : members(t)) {
      json m = json::object();
      for (std::size_t i = 0; i < c.fo.vars.size(); ++i)
        m[c.fo.vars[i]] = label_json(s.labels, c.fo.value(p, static_cast<int>(i)));
      team.push_back(m);
    }
    j["domain"] = dom;
    j["relations"] = rels;
    j["functions"] = funs;
    j["constants"] = consts;
    j["vars"] = c.fo.vars;
    j["team"] = team;
  }
  return j;
}

Model model_from_json(const nlohmann::json& j) {
  Model m;
  if (j.contains("props")) {
    PropSpace ps;
    for (const auto& v : j.at("props")) ps.vars.push_back(v.get<std::string>());
    std::sort(ps.vars.begin(), ps.vars.end());
    ps.vars.erase(std::unique(ps.vars.begin(), ps.vars.end()), ps.vars.end());
    m.context = Context::of(ps);
    for (const auto& mem : j.value("team", nlohmann::json::array())) {
      int point = 0;
      for (std::size_t i = 0; i < ps.vars.size(); ++i) {
        if (!mem.contains(ps.vars[i]))
          throw std::invalid_argument("team member lacks a value for " + ps.vars[i]);
        int b = mem.at(ps.vars[i]).get<int>();
        if (b != 0 && b != 1) throw std::invalid_argument("propositional values must be 0 or 1");
        point |= b << i;
      }
      for (const auto& [k, v] : mem.items())
        if (ps.index_of(k) < 0) throw std::invalid_argument("team member assigns undeclared " + k);
      m.team |= Team{1} << point;
    }
    return m;
  }
  if (j.contains("worlds")) {
    Kripke k;
    std::map<std::string, int> idx;
    for (const auto& w : j.at("worlds")) {
      std::string l = label_of(w);
      if (!idx.emplace(l, k.worlds).second) throw std::invalid_argument("duplicate world " + l);
      k.labels.push_back(l);
      ++k.worlds;
    }
    check_universe(k.worlds);
    k.succ.assign(k.worlds, 0);
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edges must be pairs");
      k.succ[lookup(idx, e[0], "world")] |= Team{1} << lookup(idx, e[1], "world");
    }
    const nlohmann::json val_j = j.value("val", nlohmann::json::object());
    for (const auto& [p, ws] : val_j.items()) {
      Team mask = 0;
      for (const auto& w : ws) mask |= Team{1} << lookup(idx, w, "world");
      k.val[p] = mask;
    }
    for (const auto& w : j.value("team", nlohmann::json::array()))
      m.team |= Team{1} << lookup(idx, w, "world");
    m.context = Context::of(k);
    return m;
  }
  if (j.contains("domain")) {
    FoSpace fs;
    FoStructure& s = fs.structure;
    std::map<std::string, int> idx;
    s.domain = 0;
    for (const auto& e : j.at("domain")) {
      std::string l = label_of(e);
      if (!idx.emplace(l, s.domain).second) throw std::invalid_argument("duplicate element " + l);
      s.labels.push_back(l);
      ++s.domain;
    }
    if (s.domain == 0) throw std::invalid_argument("domain must be non-empty");
    const nlohmann::json rel_j = j.value("relations", nlohmann::json::object());
    for (const auto& [name, tuples] : rel_j.items()) {
      FoRelation r;
      r.arity = -1;
      std::vector<std::vector<int>> rows;
      for (const auto& tup : tuples) {
        std::vector<int> row;
        for (const auto& e : tup) row.push_back(lookup(idx, e, "element"));
        if (r.arity >= 0 && r.arity != static_cast<int>(row.size()))
          throw std::invalid_argument("inconsistent arity for relation " + name);
        r.arity = static_cast<int>(row.size());
        rows.push_back(row);
      }
      if (r.arity < 0) r.arity = j.contains("arities") ? j["arities"].value(name, 1) : 1;
      r.holds.assign(int_pow(s.domain, r.arity), false);
      for (const auto& row : rows) r.holds[s.tuple_code(row)] = true;
      s.relations[name] = r;
    }
    const nlohmann::json fun_j = j.value("functions", nlohmann::json::object());
    for (const auto& [name, rows] : fun_j.items()) {
      FoFunction f;
      f.arity = rows.empty() ? 0 : static_cast<int>(rows[0].size()) - 1;
      f.table.assign(int_pow(s.domain, f.arity), -1);
      for (const auto& row : rows) {
        std::vector<int> args;
        for (std::size_t i = 0; i + 1 < row.size(); ++i) args.push_back(lookup(idx, row[i], "element"));
        if (static_cast<int>(args.size()) != f.arity)
          throw std::invalid_argument("inconsistent arity for function " + name);
        f.table[s.tuple_code(args)] = lookup(idx, row.back(), "element");
      }
      if (std::count(f.table.begin(), f.table.end(), -1))
        throw std::invalid_argument("function " + name + " is not total");
      s.functions[name] = f;
    }
    const nlohmann::json const_j = j.value("constants", nlohmann::json::object());
    for (const auto& [name, e] : const_j.items())
      s.constants[name] = lookup(idx, e, "element");
    std::set<std::string> vars;
    for (const auto& v : j.value("vars", nlohmann::json::array())) vars.insert(v.get<std::string>());
    for (const auto& mem : j.value("team", nlohmann::json::array()))
      for (const auto& [k, v] : mem.items()) vars.insert(k);
    fs.vars.assign(vars.begin(), vars.end());
    m.context = Context::of(fs);
    for (const auto& mem : j.value("team", nlohmann::json::array())) {
      int point = 0;
      for (std::size_t i = 0; i < fs.vars.size(); ++i) {
        if (!mem.contains(fs.vars[i]))
          throw std::invalid_argument("team member lacks a value for " + fs.vars[i]);
        point = m.context.fo.with_value(point, static_cast<int>(i),
                                        lookup(idx, mem.at(fs.vars[i]), "element"));
      }
      m.team |= Team{1} << point;
    }
    return m;
  }
  throw std::invalid_argument("model needs one of the keys props, worlds or domain");
}

Model extend_vars(const Model& m, const std::vector<std::string>& extra) {
  const Context& c = m.context;
  if (c.kind == ContextKind::Kripke) return m;
  std::vector<std::string> old = c.kind == ContextKind::Prop ? c.prop.vars : c.fo.vars;
  std::set<std::string> all(old.begin(), old.end());
  all.insert(extra.begin(), extra.end());
  std::vector<std::string> nv(all.begin(), all.end());
  if (nv == old) return m;
  Model out;
  if (c.kind == ContextKind::Prop) {
    PropSpace ps{nv};
    out.context = Context::of(ps);
    for (int p : members(m.team)) {
      int q = 0;
      for (std::size_t i = 0; i < old.size(); ++i)
        if (p >> i & 1) q |= 1 << ps.index_of(old[i]);
      out.team |= Team{1} << q;
    }
  } else {
    FoSpace fs{c.fo.structure, nv};
    out.context = Context::of(fs);
    for (int p : members(m.team)) {
      int q = 0;
      for (std::size_t i = 0; i < old.size(); ++i)
        q = out.context.fo.with_value(q, out.context.fo.index_of(old[i]),
                                      c.fo.value(p, static_cast<int>(i)));
      out.team |= Team{1} << q;
    }
  }
  return out;
}

std::string describe_point(const Context& c, int point) {
  if (c.kind == ContextKind::Kripke) return label_json(c.kripke.labels, point).dump();
  std::string s = "{";
  const auto& vars = c.kind == ContextKind::Prop ? c.prop.vars : c.fo.vars;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ", ";
    int v = c.kind == ContextKind::Prop ? (point >> i & 1)
                                        : c.fo.value(point, static_cast<int>(i));
    s += vars[i] + "=" + std::to_string(v);
  }
  return s + "}";
}

}  // namespace teamlogic
