#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "teamlogic/generate.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/syntax.hpp"

using namespace teamlogic;

namespace {

Formula P(const std::string& s) { return parse(s); }

Context props(std::vector<std::string> vars) { return Context::of(PropSpace{std::move(vars)}); }

// Kripke structure from an edge list and one proposition p.
Context kripke(int n, const std::vector<std::pair<int, int>>& edges, Team p = 0) {
  Kripke k;
  k.worlds = n;
  k.succ.assign(n, 0);
  for (auto [a, b] : edges) k.succ[a] |= Team{1} << b;
  k.val["p"] = p;
  return Context::of(k);
}

std::vector<Team> subsets(Team t) {
  std::vector<Team> out;
  Team s = t;
  while (true) {
    out.push_back(s);
    if (s == 0) break;
    s = (s - 1) & t;
  }
  return out;
}

// Reference semantics written straight from the clauses, by brute force over
// subsets. Shares nothing with the library beyond the Context layout.
class Reference {
 public:
  Reference(const Context& c, Mode m) : c_(c), m_(m) {}

  bool point(const Formula& f, int w) const {
    if (is_top(f)) return true;
    switch (f.kind()) {
      case Kind::PropAtom:
        if (c_.kind == ContextKind::Kripke) {
          auto it = c_.kripke.val.find(f.name());
          return it != c_.kripke.val.end() && ((it->second >> w) & 1);
        } else {
          auto& v = c_.prop.vars;
          int i = static_cast<int>(std::find(v.begin(), v.end(), f.name()) - v.begin());
          return (w >> i) & 1;
        }
      case Kind::Not:
        return !point(f.body(), w);
      case Kind::Implies:
        return !point(f.lhs(), w) || point(f.rhs(), w);
      case Kind::Box:
        for (int v = 0; v < c_.kripke.worlds; ++v)
          if (((c_.kripke.succ[w] >> v) & 1) && !point(f.body(), v)) return false;
        return true;
      case Kind::ForAll: {
        auto& v = c_.prop.vars;
        int i = static_cast<int>(std::find(v.begin(), v.end(), f.name()) - v.begin());
        return point(f.body(), w & ~(1 << i)) && point(f.body(), w | (1 << i));
      }
      default:
        throw std::logic_error("not classical");
    }
  }

  bool team(const Formula& f, Team t) const {
    if (f.classical()) {
      for (int w : members(t))
        if (!point(f, w)) return false;
      return true;
    }
    switch (f.kind()) {
      case Kind::StrongNeg:
        return !team(f.body(), t);
      case Kind::MatImpl:
        return !team(f.lhs(), t) || team(f.rhs(), t);
      case Kind::LinImpl:
        for (Team s : subsets(t))
          for (Team u : subsets(t)) {
            if ((s | u) != t) continue;
            if (m_ == Mode::Strict && (s & u)) continue;
            if (team(f.lhs(), s) && !team(f.rhs(), u)) return false;
          }
        return true;
      case Kind::Box:
        return team(f.body(), image(t));
      case Kind::Delta:
        for (Team s : successor_teams_ref(t))
          if (!team(f.body(), s)) return false;
        return true;
      case Kind::ForAll:
        return team(f.body(), duplicate(t, f.name()));
      case Kind::Shriek:
        for (Team s : supplements(t, f.name()))
          if (!team(f.body(), s)) return false;
        return true;
      default:
        throw std::logic_error("unexpected kind");
    }
  }

  Team image(Team t) const {
    Team r = 0;
    for (int w : members(t)) r |= c_.kripke.succ[w];
    return r;
  }

  std::vector<Team> successor_teams_ref(Team t) const {
    std::vector<Team> out;
    if (m_ == Mode::Lax) {
      for (Team s : subsets(image(t))) {
        bool ok = true;
        for (int w : members(t)) ok = ok && (c_.kripke.succ[w] & s);
        for (int v : members(s)) {
          bool pred = false;
          for (int w : members(t)) pred = pred || ((c_.kripke.succ[w] >> v) & 1);
          ok = ok && pred;
        }
        if (ok) out.push_back(s);
      }
      return out;
    }
    // One chosen successor per world.
    std::set<Team> seen;
    std::vector<int> ws = members(t);
    std::function<void(std::size_t, Team)> go = [&](std::size_t i, Team acc) {
      if (i == ws.size()) {
        seen.insert(acc);
        return;
      }
      for (int v : members(c_.kripke.succ[ws[i]])) go(i + 1, acc | (Team{1} << v));
    };
    go(0, 0);
    return {seen.begin(), seen.end()};
  }

  Team duplicate(Team t, const std::string& x) const {
    int i = bit(x);
    Team r = 0;
    for (int s : members(t)) r |= (Team{1} << (s & ~(1 << i))) | (Team{1} << (s | (1 << i)));
    return r;
  }

  std::set<Team> supplements(Team t, const std::string& x) const {
    int i = bit(x);
    std::vector<int> ss = members(t);
    std::vector<int> choices = m_ == Mode::Lax ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2};
    std::set<Team> out;
    std::function<void(std::size_t, Team)> go = [&](std::size_t k, Team acc) {
      if (k == ss.size()) {
        out.insert(acc);
        return;
      }
      for (int ch : choices) {
        Team add = 0;
        if (ch & 1) add |= Team{1} << (ss[k] & ~(1 << i));
        if (ch & 2) add |= Team{1} << (ss[k] | (1 << i));
        go(k + 1, acc | add);
      }
    };
    go(0, 0);
    return out;
  }

 private:
  int bit(const std::string& x) const {
    auto& v = c_.prop.vars;
    return static_cast<int>(std::find(v.begin(), v.end(), x) - v.begin());
  }

  const Context& c_;
  Mode m_;
};

// Every Kripke structure over n worlds with one proposition p.
void for_each_kripke(int n, const std::function<void(const Context&)>& fn) {
  int edges = n * n;
  for (int r = 0; r < (1 << edges); ++r)
    for (Team p = 0; p < (Team{1} << n); ++p) {
      std::vector<std::pair<int, int>> es;
      for (int e = 0; e < edges; ++e)
        if ((r >> e) & 1) es.push_back({e / n, e % n});
      fn(kripke(n, es, p));
    }
}

}  // namespace

// ---- classical evaluation ----

TEST(EvalClassical, Examples) {
  Context c = props({"a"});
  EXPECT_TRUE(eval_classical(c, 1, P("a -> a")));

  // Worlds 1, 2 are indices 0, 1.
  Context k = kripke(2, {{0, 1}}, 0b10);
  EXPECT_TRUE(eval_classical(k, 0, P("box p")));
  EXPECT_FALSE(eval_classical(k, 1, P("!box !p")));
}

TEST(EvalClassical, FirstOrderExistentialByEnumeration) {
  FoSpace sp;
  sp.structure.domain = 2;
  sp.structure.relations["R"] = FoRelation{1, {true, false}};
  sp.vars = {"x"};
  Context c = Context::of(sp);
  Formula f = P("!forall x. !R(x)");
  EXPECT_EQ(render(f), "!forall x. !R(x)");
  // Oracle: some domain element is in R.
  bool expected = false;
  for (int a = 0; a < 2; ++a) expected = expected || sp.structure.relations["R"].holds[a];
  int point = c.fo.with_value(0, 0, 1);
  EXPECT_EQ(eval_classical(c, point, f), expected);
  EXPECT_TRUE(eval_classical(c, point, f));
  EXPECT_FALSE(eval_classical(c, point, P("R(x)")));
}

// ---- team evaluation ----

TEST(EvalTeam, EmptyTeamSatisfiesContradiction) {
  EXPECT_TRUE(eval_team(props({"p"}), P("p & !p"), 0, Mode::Lax));
  EXPECT_TRUE(eval_team(props({"p"}), P("p & !p"), 0, Mode::Strict));
}

TEST(EvalTeam, StrictSingletonCounting) {
  Context c = props({"p", "q"});
  Formula f = P("NE && ~(NE * NE)");
  EXPECT_TRUE(eval_team(c, f, 0b0100, Mode::Strict));
  EXPECT_FALSE(eval_team(c, f, 0b0101, Mode::Strict));
}

TEST(EvalTeam, LinearImplicationWithClassicalOperandsMatchesConsequent) {
  Context c = props({"p", "q"});
  Formula f = P("p -o q"), q = P("q");
  Reference ref(c, Mode::Lax);
  for (Team t = 0; t < 16; ++t) {
    EXPECT_EQ(ref.team(f, t), ref.team(q, t));
    EXPECT_EQ(eval_team(c, f, t, Mode::Lax), ref.team(q, t)) << t;
  }
}

TEST(EvalTeam, Constants) {
  Context c = props({"p"});
  EXPECT_FALSE(eval_team(c, P("NE"), 0, Mode::Lax));
  EXPECT_TRUE(eval_team(c, P("NE"), 1, Mode::Lax));
  for (Team t = 0; t < 4; ++t) {
    EXPECT_FALSE(eval_team(c, P("FF"), t, Mode::Lax));
    EXPECT_TRUE(eval_team(c, P("T"), t, Mode::Lax));
    EXPECT_EQ(eval_team(c, P("F"), t, Mode::Lax), t == 0);
  }
  EXPECT_TRUE(eval_team(c, P("E(p)"), 0b10, Mode::Lax));
  EXPECT_FALSE(eval_team(c, P("E(p)"), 0b01, Mode::Lax));
}

TEST(EvalTeam, BoxUsesGlobalSuccessor) {
  // 0 -> 1, 0 -> 2; p holds at 1 only.
  Context k = kripke(3, {{0, 1}, {0, 2}}, 0b010);
  EXPECT_FALSE(eval_team(k, P("box p"), 0b001, Mode::Lax));
  EXPECT_TRUE(eval_team(k, P("dia p"), 0b001, Mode::Lax));
  EXPECT_TRUE(eval_team(k, P("box(p | !p)"), 0b001, Mode::Lax));
  // A world without successors: no successor team, so delta holds vacuously.
  EXPECT_TRUE(eval_team(k, P("delta FF"), 0b010, Mode::Lax));
  EXPECT_FALSE(eval_team(k, P("dia T"), 0b010, Mode::Lax));
}

TEST(EvalTeam, AgreesWithReferenceOnRandomFormulas) {
  GenSpec pl;
  pl.props = {"p", "q"};
  pl.team_constants = true;
  GenSpec qp;
  qp.props = {"p"};
  qp.qvars = {"x"};
  GenSpec ml;
  ml.props = {"p"};
  ml.modal = true;
  RandomFormulas gen(17);
  for (Mode m : {Mode::Lax, Mode::Strict}) {
    Context c = props({"p", "q"});
    Reference ref(c, m);
    for (int i = 0; i < 200; ++i) {
      Formula f = gen.team(pl, gen.below(5));
      for (Team t = 0; t < 16; ++t)
        ASSERT_EQ(eval_team(c, f, t, m), ref.team(f, t)) << render(f) << " T=" << t;
    }
    Context cq = props({"p", "x"});
    Reference refq(cq, m);
    for (int i = 0; i < 200; ++i) {
      Formula f = gen.team(qp, gen.below(5));
      for (Team t = 0; t < 16; ++t)
        ASSERT_EQ(eval_team(cq, f, t, m), refq.team(f, t)) << render(f) << " T=" << t;
    }
    std::vector<Formula> mf;
    for (int i = 0; i < 40; ++i) mf.push_back(gen.team(ml, gen.below(4)));
    for_each_kripke(2, [&](const Context& k) {
      Reference refk(k, m);
      for (const auto& f : mf)
        for (Team t = 0; t < 4; ++t)
          ASSERT_EQ(eval_team(k, f, t, m), refk.team(f, t)) << render(f) << " T=" << t;
    });
  }
}

// ---- enumerators ----

TEST(Splits, Examples) {
  auto one = splits(0b1, Mode::Lax);
  std::set<std::pair<Team, Team>> got(one.begin(), one.end());
  EXPECT_EQ(got, (std::set<std::pair<Team, Team>>{{0, 1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(splits(0b11, Mode::Strict).size(), 4u);
  auto none = splits(0, Mode::Lax);
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0], std::make_pair(Team{0}, Team{0}));
}

TEST(Splits, CountsAndShape) {
  for (Team t : {Team{0}, Team{0b1011}, Team{0b110110}, Team{0xff}}) {
    int n = team_size(t);
    auto lax = splits(t, Mode::Lax);
    auto strict = splits(t, Mode::Strict);
    std::size_t p3 = 1, p2 = 1;
    for (int i = 0; i < n; ++i) p3 *= 3, p2 *= 2;
    EXPECT_EQ(lax.size(), p3);
    EXPECT_EQ(strict.size(), p2);
    for (auto [s, u] : lax) EXPECT_EQ(s | u, t);
    for (auto [s, u] : strict) {
      EXPECT_EQ(s | u, t);
      EXPECT_EQ(s & u, 0u);
    }
  }
}

TEST(GlobalSuccessor, Examples) {
  Context k = kripke(3, {{0, 1}, {0, 2}});
  EXPECT_EQ(global_successor(k.kripke, 0b001), 0b110u);
  EXPECT_EQ(global_successor(k.kripke, 0), 0u);
  Context k2 = kripke(2, {{0, 1}, {1, 1}});
  EXPECT_EQ(global_successor(k2.kripke, 0b11), 0b10u);
}

TEST(SuccessorTeams, Examples) {
  Context forced = kripke(2, {{0, 1}});
  EXPECT_EQ(successor_teams(forced.kripke, 0b01), std::vector<Team>{0b10});

  Context k = kripke(3, {{0, 1}, {0, 2}});
  auto got = successor_teams(k.kripke, 0b001);
  std::set<Team> gs(got.begin(), got.end());
  // Oracle: filter every subset of R[T] by the two successor conditions.
  Reference ref(k, Mode::Lax);
  auto want = ref.successor_teams_ref(0b001);
  EXPECT_EQ(gs, std::set<Team>(want.begin(), want.end()));
  EXPECT_EQ(gs, (std::set<Team>{0b010, 0b100, 0b110}));

  Context dead = kripke(2, {});
  EXPECT_TRUE(successor_teams(dead.kripke, 0b01).empty());
}

TEST(SuccessorTeams, MatchesSubsetFilterOnSmallFrames) {
  for (int n = 1; n <= 3; ++n)
    for_each_kripke(n, [&](const Context& k) {
      if (k.kripke.val.at("p") != 0) return;
      for (Mode m : {Mode::Lax, Mode::Strict}) {
        Reference ref(k, m);
        for (Team t = 0; t < (Team{1} << n); ++t) {
          auto got = successor_teams(k.kripke, t, m);
          auto want = ref.successor_teams_ref(t);
          EXPECT_EQ(std::set<Team>(got.begin(), got.end()), std::set<Team>(want.begin(), want.end()));
        }
      }
    });
}

TEST(Supplement, PropositionalExamples) {
  Context c = props({"p", "x"});
  Team t = 0b0001;  // p=0, x=0
  auto lax = supplement_teams(c, t, "x", Mode::Lax);
  std::set<Team> ls(lax.begin(), lax.end());
  EXPECT_EQ(ls, (std::set<Team>{0b0001, 0b0100, 0b0101}));
  EXPECT_EQ(supplement_teams(c, t, "x", Mode::Strict).size(), 2u);
  EXPECT_EQ(duplicate_team(c, t, "x"), 0b0101u);
  EXPECT_EQ(duplicate_team(c, 0, "x"), 0u);
  EXPECT_TRUE(supplement_teams(c, 0, "x", Mode::Lax).size() <= 1);
}

TEST(Supplement, FirstOrderCounts) {
  FoSpace sp;
  sp.structure.domain = 2;
  sp.vars = {"x", "y"};
  Context c = Context::of(sp);
  // Two members differing in y: three choices each, no collisions.
  Team t = (Team{1} << c.fo.with_value(0, 1, 0)) | (Team{1} << c.fo.with_value(0, 1, 1));
  EXPECT_EQ(supplement_teams(c, t, "x", Mode::Lax).size(), 9u);
  int raw = 0;
  for_each_raw_supplement(c, t, "x", Mode::Lax, [&](Team) { ++raw; });
  EXPECT_EQ(raw, 9);
}

TEST(Supplement, DuplicateCollapsesEqualErasures) {
  FoSpace sp;
  sp.structure.domain = 3;
  sp.vars = {"x", "y"};
  Context c = Context::of(sp);
  int s1 = c.fo.with_value(c.fo.with_value(0, 0, 0), 1, 2);
  int s2 = c.fo.with_value(c.fo.with_value(0, 0, 1), 1, 2);
  Team t = (Team{1} << s1) | (Team{1} << s2);
  Team d = duplicate_team(c, t, "x");
  // Constructed by hand: y stays 2, x ranges over the domain.
  Team want = 0;
  for (int a = 0; a < 3; ++a) want |= Team{1} << c.fo.with_value(s1, 0, a);
  EXPECT_EQ(d, want);
  EXPECT_LE(team_size(d), 6);
  EXPECT_EQ(team_size(d), 3);
}

// ---- properties ----

TEST(Properties, FlatnessDownwardAndUnionClosure) {
  GenSpec s;
  s.props = {"p", "q"};
  Context c = props({"p", "q"});
  for (const Formula& f : enumerate_classical(s, 5)) {
    Team sat = 0;
    for (int pt = 0; pt < 4; ++pt)
      if (eval_classical(c, pt, f)) sat |= Team{1} << pt;
    for (Team t = 0; t < 16; ++t) {
      bool v = eval_team(c, f, t, Mode::Lax);
      ASSERT_EQ(v, (t & ~sat) == 0) << render(f);
      EXPECT_EQ(eval_team(c, f, t, Mode::Strict), v);
      EXPECT_EQ(eval_usual(c, f, t), v) << render(f);
      if (v)
        for (Team u : subsets(t)) EXPECT_TRUE(eval_team(c, f, u, Mode::Lax));
    }
  }
}

TEST(Properties, ModalFlatness) {
  GenSpec s;
  s.props = {"p"};
  s.modal = true;
  auto fs = enumerate_classical(s, 4);
  for (int n = 1; n <= 2; ++n)
    for_each_kripke(n, [&](const Context& k) {
      for (const auto& f : fs) {
        Team sat = 0;
        for (int w = 0; w < n; ++w)
          if (eval_classical(k, w, f)) sat |= Team{1} << w;
        for (Team t = 0; t < (Team{1} << n); ++t) {
          ASSERT_EQ(eval_team(k, f, t, Mode::Lax), (t & ~sat) == 0) << render(f);
          ASSERT_EQ(eval_usual(k, f, t), (t & ~sat) == 0) << render(f);
        }
      }
    });
}

TEST(Properties, FirstOrderFlatness) {
  GenSpec s;
  s.fo_relations = {"P"};
  s.fo_vars = {"x"};
  auto fs = enumerate_classical(s, 4);
  for (int rel = 0; rel < 4; ++rel) {
    FoSpace sp;
    sp.structure.domain = 2;
    sp.structure.relations["P"] = FoRelation{1, {bool(rel & 1), bool(rel & 2)}};
    sp.vars = {"x"};
    Context c = Context::of(sp);
    for (const auto& f : fs) {
      Team sat = 0;
      for (int pt = 0; pt < 2; ++pt)
        if (eval_classical(c, pt, f)) sat |= Team{1} << pt;
      for (Team t = 0; t < 4; ++t) {
        EXPECT_EQ(eval_team(c, f, t, Mode::Lax), (t & ~sat) == 0) << render(f);
        EXPECT_EQ(eval_usual(c, f, t), (t & ~sat) == 0) << render(f);
      }
    }
  }
}

TEST(Properties, TensorOfClassicalIsDisjunction) {
  GenSpec s;
  s.props = {"p", "q"};
  Context c = props({"p", "q"});
  auto fs = enumerate_classical(s, 3);
  for (const auto& a : fs)
    for (const auto& b : fs)
      for (Team t = 0; t < 16; ++t)
        ASSERT_EQ(eval_team(c, tensor(a, b), t, Mode::Lax), eval_team(c, disj(a, b), t, Mode::Lax));
}

TEST(Properties, DualityIsDesugaring) {
  EXPECT_EQ(P("dia (p -o q)"), sneg(delta(sneg(P("p -o q")))));
  EXPECT_EQ(P("exists x. ~x"), sneg(shriek("x", sneg(sneg(prop("x"))))));
}

TEST(Properties, ModeSeparation) {
  Context c = props({"p", "q"});
  Formula f = P("NE && ~(NE * NE)");
  for (Team t = 0; t < 16; ++t) {
    EXPECT_EQ(eval_team(c, f, t, Mode::Strict), team_size(t) == 1) << t;
    // In lax mode a singleton splits into two copies of itself.
    EXPECT_FALSE(eval_team(c, f, t, Mode::Lax)) << t;
  }
}

TEST(Properties, EmptyTeam) {
  GenSpec s;
  s.props = {"p", "q"};
  Context c = props({"p", "q"});
  auto fs = enumerate_classical(s, 4);
  for (const auto& a : fs) {
    EXPECT_TRUE(eval_team(c, a, 0, Mode::Lax));
    EXPECT_TRUE(eval_team(c, a, 0, Mode::Strict));
    EXPECT_TRUE(eval_team(c, limp(P("NE"), a), 0, Mode::Lax));
    EXPECT_TRUE(eval_team(c, limp(P("p -o q"), a), 0, Mode::Strict));
  }
}

TEST(Properties, DesugaringSoundness) {
  // Each abbreviation checked against its own team-level reading.
  Context c = props({"p", "q"});
  Formula a = P("p"), b = P("q");
  auto v = [&](const Formula& f, Team t) { return eval_team(c, f, t, Mode::Lax); };
  for (Team t = 0; t < 16; ++t) {
    bool tensor_direct = false;
    for (auto [s, u] : splits(t, Mode::Lax)) tensor_direct |= v(a, s) && v(b, u);
    EXPECT_EQ(v(P("p * q"), t), tensor_direct);
    EXPECT_EQ(v(P("p && q"), t), v(a, t) && v(b, t));
    EXPECT_EQ(v(P("p || q"), t), v(a, t) || v(b, t));
    EXPECT_EQ(v(P("p <~> q"), t), v(a, t) == v(b, t));
    EXPECT_EQ(v(P("NE"), t), t != 0);
    bool some = false;
    for (int pt : members(t)) some |= eval_classical(c, pt, a);
    EXPECT_EQ(v(P("E(p)"), t), some);
    bool all_and = true, all_or = true;
    for (int pt : members(t)) {
      all_and &= eval_classical(c, pt, a) && eval_classical(c, pt, b);
      all_or &= eval_classical(c, pt, a) || eval_classical(c, pt, b);
    }
    EXPECT_EQ(v(P("p & q"), t), all_and);
    EXPECT_EQ(v(P("p | q"), t), all_or);
  }
}

// ---- models ----

TEST(Models, JsonRoundTrip) {
  Context pc = props({"p", "q"});
  Model m = model_from_json(model_to_json(pc, 0b1010));
  EXPECT_EQ(m.team, 0b1010u);
  EXPECT_EQ(m.context.prop.vars, pc.prop.vars);

  Context k = kripke(3, {{0, 1}, {2, 2}}, 0b101);
  Model mk = model_from_json(model_to_json(k, 0b011));
  EXPECT_EQ(mk.team, 0b011u);
  EXPECT_EQ(mk.context.kripke.succ, k.kripke.succ);
  EXPECT_EQ(mk.context.kripke.val, k.kripke.val);

  FoSpace sp;
  sp.structure.domain = 2;
  sp.structure.relations["R"] = FoRelation{2, {true, false, false, true}};
  sp.structure.constants["c"] = 1;
  sp.vars = {"x"};
  Context fc = Context::of(sp);
  Model mf = model_from_json(model_to_json(fc, 0b10));
  EXPECT_EQ(mf.team, 0b10u);
  EXPECT_EQ(mf.context.fo.structure.relations.at("R").holds, sp.structure.relations["R"].holds);
  Signature sig;
  sig.relations["R"] = 2;
  sig.constants.insert("c");
  EXPECT_TRUE(eval_team(mf.context, parse("R(x, c)", sig), mf.team, Mode::Lax));
}

TEST(Models, MalformedJsonIsRejected) {
  EXPECT_ANY_THROW(model_from_json(nlohmann::json::parse(R"({"kind":"nonsense"})")));
  EXPECT_ANY_THROW(model_from_json(nlohmann::json::parse("[]")));
}

TEST(Models, ModeNames) {
  EXPECT_EQ(parse_mode("lax"), Mode::Lax);
  EXPECT_EQ(parse_mode("strict"), Mode::Strict);
  EXPECT_EQ(to_string(Mode::Strict), "strict");
  EXPECT_ANY_THROW(parse_mode("loose"));
}
