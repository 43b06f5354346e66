#include "teamlogic/formula.hpp"

#include <deque>
#include <mutex>
#include <unordered_set>

namespace teamlogic {

struct TermNode {
  TermKind kind;
  std::string name;
  std::vector<Term> args;
  std::size_t hash;
};

struct Node {
  Kind kind;
  MetaSort sort;
  std::string name;
  std::vector<Term> terms;
  const Node* a;
  const Node* b;
  std::size_t hash;
  std::size_t size;
  bool classical;
  std::uint64_t id;
};

namespace {

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct TermPtrHash {
  std::size_t operator()(const TermNode* n) const { return n->hash; }
};
struct TermPtrEq {
  bool operator()(const TermNode* x, const TermNode* y) const {
    return x->kind == y->kind && x->name == y->name && x->args == y->args;
  }
};
struct NodePtrHash {
  std::size_t operator()(const Node* n) const { return n->hash; }
};
struct NodePtrEq {
  bool operator()(const Node* x, const Node* y) const {
    return x->kind == y->kind && x->sort == y->sort && x->a == y->a && x->b == y->b &&
           x->name == y->name && x->terms == y->terms;
  }
};

}  // namespace

struct TermInterner {
  std::mutex mu;
  std::deque<TermNode> store;
  std::unordered_set<const TermNode*, TermPtrHash, TermPtrEq> table;

  static TermInterner& get() {
    static TermInterner* t = new TermInterner();
    return *t;
  }

  Term intern(TermKind kind, const std::string& name, const std::vector<Term>& args) {
    std::size_t h = mix(std::hash<std::string>{}(name), static_cast<std::size_t>(kind));
    for (const Term& a : args) h = mix(h, a.hash());
    TermNode probe{kind, name, args, h};
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(&probe);
    if (it != table.end()) return Term(*it);
    store.push_back(std::move(probe));
    const TermNode* n = &store.back();
    table.insert(n);
    return Term(n);
  }
};

struct FormulaInterner {
  std::mutex mu;
  std::deque<Node> store;
  std::unordered_set<const Node*, NodePtrHash, NodePtrEq> table;

  static FormulaInterner& get() {
    static FormulaInterner* t = new FormulaInterner();
    return *t;
  }

  Formula intern(Kind kind, MetaSort sort, const std::string& name, const std::vector<Term>& terms,
                 const Node* a, const Node* b) {
    std::size_t h = mix(static_cast<std::size_t>(kind) * 31 + static_cast<std::size_t>(sort),
                        std::hash<std::string>{}(name));
    for (const Term& t : terms) h = mix(h, t.hash());
    if (a) h = mix(h, a->hash);
    if (b) h = mix(h, b->hash * 7);
    std::size_t size = 1 + (a ? a->size : 0) + (b ? b->size : 0);
    bool cl = false;
    switch (kind) {
      case Kind::PropAtom:
      case Kind::FoPredicate:
      case Kind::FoEquality:
        cl = true;
        break;
      case Kind::Meta:
        cl = sort == MetaSort::Classical;
        break;
      case Kind::Not:
      case Kind::Box:
      case Kind::ForAll:
        cl = a->classical;
        break;
      case Kind::Implies:
        cl = a->classical && b->classical;
        break;
      default:
        cl = false;
    }
    Node probe{kind, sort, name, terms, a, b, h, size, cl, 0};
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(&probe);
    if (it != table.end()) return Formula(*it);
    probe.id = store.size();
    store.push_back(std::move(probe));
    const Node* n = &store.back();
    table.insert(n);
    return Formula(n);
  }
};

// ---- Term ----

Term Term::variable(const std::string& name) {
  return TermInterner::get().intern(TermKind::Variable, name, {});
}
Term Term::constant(const std::string& name) {
  return TermInterner::get().intern(TermKind::Constant, name, {});
}
Term Term::function(const std::string& name, const std::vector<Term>& args) {
  return TermInterner::get().intern(TermKind::Function, name, args);
}
Term Term::meta(const std::string& name) {
  return TermInterner::get().intern(TermKind::Meta, name, {});
}
TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->args; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }

// ---- Formula ----

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
Formula Formula::lhs() const { return Formula(node_->a); }
Formula Formula::rhs() const { return Formula(node_->b); }
MetaSort Formula::sort() const { return node_->sort; }
std::size_t Formula::size() const { return node_->size; }
bool Formula::classical() const { return node_->classical; }
std::size_t Formula::hash() const { return node_ ? node_->hash : 0; }
std::uint64_t Formula::id() const { return node_->id; }

namespace {

Formula make(Kind k, const Formula& a = Formula(), const Formula& b = Formula(),
             const std::string& name = std::string()) {
  return FormulaInterner::get().intern(k, MetaSort::General, name, {}, a.node(), b.node());
}

void require_classical(const Formula& f, const char* op) {
  if (!f.classical())
    throw std::invalid_argument(std::string("classical connective ") + op +
                                " applied to a team-logical formula");
}

}  // namespace

Formula prop(const std::string& name) {
  return FormulaInterner::get().intern(Kind::PropAtom, MetaSort::General, name, {}, nullptr,
                                       nullptr);
}

Formula pred(const std::string& name, const std::vector<Term>& args) {
  return FormulaInterner::get().intern(Kind::FoPredicate, MetaSort::General, name, args, nullptr,
                                       nullptr);
}

Formula equals(const Term& a, const Term& b) {
  return FormulaInterner::get().intern(Kind::FoEquality, MetaSort::General, "", {a, b}, nullptr,
                                       nullptr);
}

Formula neg(const Formula& a) {
  require_classical(a, "!");
  return make(Kind::Not, a);
}

Formula implies(const Formula& a, const Formula& b) {
  require_classical(a, "->");
  require_classical(b, "->");
  return make(Kind::Implies, a, b);
}

Formula sneg(const Formula& a) { return make(Kind::StrongNeg, a); }
Formula mimp(const Formula& a, const Formula& b) { return make(Kind::MatImpl, a, b); }
Formula limp(const Formula& a, const Formula& b) { return make(Kind::LinImpl, a, b); }
Formula box(const Formula& a) { return make(Kind::Box, a); }
Formula delta(const Formula& a) { return make(Kind::Delta, a); }
Formula forall(const std::string& x, const Formula& a) { return make(Kind::ForAll, a, {}, x); }
Formula shriek(const std::string& x, const Formula& a) { return make(Kind::Shriek, a, {}, x); }

Formula meta(const std::string& name, MetaSort sort) {
  return FormulaInterner::get().intern(Kind::Meta, sort, name, {}, nullptr, nullptr);
}

Formula top() {
  static const Formula t = implies(prop(kTopAtom), prop(kTopAtom));
  return t;
}
Formula bot() { return neg(top()); }
Formula conj(const Formula& a, const Formula& b) { return neg(implies(a, neg(b))); }
Formula disj(const Formula& a, const Formula& b) { return implies(neg(a), b); }
Formula tensor(const Formula& a, const Formula& b) { return sneg(limp(a, sneg(b))); }
Formula sand(const Formula& a, const Formula& b) { return sneg(mimp(a, sneg(b))); }
Formula sor(const Formula& a, const Formula& b) { return mimp(sneg(a), b); }
Formula sbicond(const Formula& a, const Formula& b) { return sand(mimp(a, b), mimp(b, a)); }
Formula sfalsum() { return sneg(mimp(top(), top())); }
Formula nonempty() { return sneg(bot()); }
Formula E(const Formula& a) { return sneg(neg(a)); }
Formula dia(const Formula& a) { return sneg(delta(sneg(a))); }
Formula exists(const std::string& x, const Formula& a) { return sneg(shriek(x, sneg(a))); }

namespace {
Formula fold(const std::vector<Formula>& fs, Formula (*op)(const Formula&, const Formula&),
             Formula unit) {
  if (fs.empty()) return unit;
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = op(acc, fs[i]);
  return acc;
}
}  // namespace

Formula conj_all(const std::vector<Formula>& fs) { return fold(fs, conj, top()); }
Formula disj_all(const std::vector<Formula>& fs) { return fold(fs, disj, bot()); }
Formula sand_all(const std::vector<Formula>& fs) { return fold(fs, sand, top()); }
Formula sor_all(const std::vector<Formula>& fs) { return fold(fs, sor, sfalsum()); }
Formula tensor_all(const std::vector<Formula>& fs) { return fold(fs, tensor, bot()); }

bool is_top(const Formula& f) { return f == top(); }

bool match_conj(const Formula& f, Formula& a, Formula& b) {
  if (f.kind() != Kind::Not) return false;
  Formula i = f.body();
  if (i.kind() != Kind::Implies || i.rhs().kind() != Kind::Not) return false;
  a = i.lhs();
  b = i.rhs().body();
  return true;
}

bool match_disj(const Formula& f, Formula& a, Formula& b) {
  if (f.kind() != Kind::Implies || f.lhs().kind() != Kind::Not) return false;
  a = f.lhs().body();
  b = f.rhs();
  return true;
}

bool match_tensor(const Formula& f, Formula& a, Formula& b) {
  if (f.kind() != Kind::StrongNeg) return false;
  Formula i = f.body();
  if (i.kind() != Kind::LinImpl || i.rhs().kind() != Kind::StrongNeg) return false;
  a = i.lhs();
  b = i.rhs().body();
  return true;
}

bool match_sand(const Formula& f, Formula& a, Formula& b) {
  if (f.kind() != Kind::StrongNeg) return false;
  Formula i = f.body();
  if (i.kind() != Kind::MatImpl || i.rhs().kind() != Kind::StrongNeg) return false;
  a = i.lhs();
  b = i.rhs().body();
  return true;
}

bool match_sor(const Formula& f, Formula& a, Formula& b) {
  if (f.kind() != Kind::MatImpl || f.lhs().kind() != Kind::StrongNeg) return false;
  a = f.lhs().body();
  b = f.rhs();
  return true;
}

bool match_sbicond(const Formula& f, Formula& a, Formula& b) {
  Formula l, r;
  if (!match_sand(f, l, r)) return false;
  if (l.kind() != Kind::MatImpl || r.kind() != Kind::MatImpl) return false;
  if (l.lhs() != r.rhs() || l.rhs() != r.lhs()) return false;
  a = l.lhs();
  b = l.rhs();
  return true;
}

bool match_E(const Formula& f, Formula& a) {
  if (f.kind() != Kind::StrongNeg || f.body().kind() != Kind::Not) return false;
  a = f.body().body();
  return true;
}

bool match_dia(const Formula& f, Formula& a) {
  if (f.kind() != Kind::StrongNeg || f.body().kind() != Kind::Delta) return false;
  Formula d = f.body().body();
  if (d.kind() != Kind::StrongNeg) return false;
  a = d.body();
  return true;
}

bool match_exists(const Formula& f, std::string& x, Formula& a) {
  if (f.kind() != Kind::StrongNeg || f.body().kind() != Kind::Shriek) return false;
  Formula d = f.body().body();
  if (d.kind() != Kind::StrongNeg) return false;
  x = f.body().name();
  a = d.body();
  return true;
}

void Signature::validate() const {
  std::set<std::string> seen;
  auto add = [&](const std::string& n) {
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate symbol in signature: " + n);
  };
  for (const auto& [n, a] : relations) {
    if (a < 0) throw std::invalid_argument("negative arity for relation " + n);
    add(n);
  }
  for (const auto& [n, a] : functions) {
    if (a < 0) throw std::invalid_argument("negative arity for function " + n);
    add(n);
  }
  for (const auto& n : constants) add(n);
}

}  // namespace teamlogic
