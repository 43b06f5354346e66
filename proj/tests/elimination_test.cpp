#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "teamlogic/elimination.hpp"
#include "teamlogic/generate.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/syntax.hpp"

using namespace teamlogic;

namespace {

Formula P(const std::string& s) { return parse(s); }

SearchBudget pl2() {
  SearchBudget b;
  b.max_props = 2;
  return b;
}

SearchBudget ml2() {
  SearchBudget b;
  b.max_props = 1;
  b.max_worlds = 2;
  return b;
}

bool equivalent(const Formula& f, const Formula& g, const SearchBudget& b) {
  return equiv(f, g, b).holds;
}

std::set<std::string> rendered(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(render(f));
  return out;
}

bool has_kind(const Formula& f, Kind k) {
  for (const auto& g : subformulas(f))
    if (g.kind() == k) return true;
  return false;
}

}  // namespace

// ---- DNF ----

TEST(Dnf, NegatedStrongConjunction) {
  DnfForm d = dnf_boolean_closure(P("~(p && q)"));
  ASSERT_EQ(d.clauses.size(), 2u);
  EXPECT_TRUE(d.clauses[0].pos.empty());
  EXPECT_EQ(d.clauses[0].e, std::vector<Formula>{P("!p")});
  EXPECT_TRUE(d.clauses[1].pos.empty());
  EXPECT_EQ(d.clauses[1].e, std::vector<Formula>{P("!q")});
  EXPECT_TRUE(equivalent(d.to_formula(), P("E(!p) || E(!q)"), pl2()));
}

TEST(Dnf, ClassicalFormulaIsOneClause) {
  DnfForm d = dnf_boolean_closure(P("a"));
  ASSERT_EQ(d.clauses.size(), 1u);
  EXPECT_EQ(d.clauses[0].pos, std::vector<Formula>{P("a")});
  EXPECT_TRUE(d.clauses[0].e.empty());
}

TEST(Dnf, NegatedImplicationToE) {
  // Over independent leaves {a, E b}, ~(a ~> E b) is a && ~E b, and ~E b
  // normalises to the classical literal !b.
  DnfForm d = dnf_boolean_closure(P("~(a ~> E(b))"));
  ASSERT_EQ(d.clauses.size(), 1u);
  EXPECT_EQ(rendered(d.clauses[0].pos), (std::set<std::string>{"a", "!b"}));
  EXPECT_TRUE(d.clauses[0].e.empty());
  EXPECT_TRUE(equivalent(d.to_formula(), P("~(a ~> E(b))"), pl2()));
}

TEST(Dnf, EmptyDisjunctionIsFalsum) {
  DnfForm d = dnf_boolean_closure(P("FF"));
  EXPECT_TRUE(d.clauses.empty());
  EXPECT_EQ(d.to_formula(), P("FF"));
}

TEST(Dnf, ClausesAreCanonicallyOrdered) {
  DnfForm a = dnf_boolean_closure(P("(q || p) && E(r)"));
  DnfForm b = dnf_boolean_closure(P("E(r) && (p || q)"));
  EXPECT_EQ(a.clauses, b.clauses);
}

TEST(Dnf, NodeCeilingAborts) {
  std::string f = "(a1 || b1)";
  for (int i = 2; i <= 14; ++i) f += " && (a" + std::to_string(i) + " || b" + std::to_string(i) + ")";
  EXPECT_THROW(dnf_boolean_closure(P(f), 1000), EliminationError);
}

TEST(Dnf, AgreesWithInputOnRandomBooleanFormulas) {
  GenSpec s;
  s.props = {"p", "q"};
  RandomFormulas gen(31);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.boolean(s, 4);
    ASSERT_TRUE(equivalent(dnf_boolean_closure(f).to_formula(), f, pl2())) << render(f);
  }
}

// ---- linear implication ----

TEST(EliminateLimp, AtomsGiveConsequent) {
  EliminationResult r = eliminate_limp(P("p"), P("q"));
  EXPECT_TRUE(is_boolean_closure(classify(r.output)));
  EXPECT_TRUE(equivalent(r.output, P("q"), pl2()));
}

TEST(EliminateLimp, ClassicalOperands) {
  GenSpec s;
  s.props = {"p", "q"};
  RandomFormulas gen(2);
  for (int i = 0; i < 40; ++i) {
    Formula a = gen.classical(s, 2), b = gen.classical(s, 2);
    EliminationResult r = eliminate_limp(a, b);
    EXPECT_TRUE(is_boolean_closure(classify(r.output)));
    EXPECT_TRUE(equivalent(r.output, limp(a, b), pl2())) << render(a) << " -o " << render(b);
    EXPECT_TRUE(equivalent(r.output, sneg(tensor(a, sneg(b))), pl2()));
    // Flatness: a classical consequent already follows from itself.
    EXPECT_TRUE(valid(mimp(b, r.output), pl2()).holds);
  }
}

TEST(EliminateLimp, FalsumAntecedentIsVacuous) {
  EliminationResult r = eliminate_limp(P("FF"), P("q && E(p)"));
  EXPECT_TRUE(equivalent(r.output, P("T"), pl2()));
}

TEST(EliminateLimp, TraceStepsAreEquivalences) {
  EliminationOptions o;
  EliminationResult r = eliminate_limp(P("E(p) || q"), P("~(p ~> E(q))"), o);
  ASSERT_FALSE(r.trace.empty());
  for (const auto& s : r.trace)
    EXPECT_TRUE(equivalent(s.before, s.after, pl2())) << s.rule;
  auto j = trace_to_json(r.trace);
  ASSERT_TRUE(j.is_array());
  EXPECT_TRUE(j[0].contains("rule") && j[0].contains("before") && j[0].contains("after"));
}

// ---- modalities ----

TEST(EliminateBox, LinearityAndDistribution) {
  EXPECT_EQ(eliminate_box(P("~p")).output, P("~box p"));
  EXPECT_EQ(eliminate_box(P("p ~> q")).output, P("box p ~> box q"));
  EXPECT_EQ(eliminate_box(P("p & !q")).output, P("box (p & !q)"));
}

TEST(EliminateDelta, ClassicalOperands) {
  SearchBudget b = ml2();
  EliminationResult f = eliminate_delta(P("F"));
  EXPECT_EQ(level_of(classify(f.output)), Level::Boolean);
  EXPECT_TRUE(equivalent(f.output, P("delta F"), b));
  EliminationResult n = eliminate_delta(P("~p"));
  EXPECT_TRUE(is_boolean_closure(classify(n.output)));
  EXPECT_TRUE(equivalent(n.output, P("delta ~p"), b));
  EXPECT_TRUE(equivalent(eliminate_delta(P("T")).output, P("T"), b));
}

TEST(EliminateDelta, AgreesOnThreeWorldsForRandomOperands) {
  GenSpec s;
  s.props = {"p"};
  s.modal = true;
  RandomFormulas gen(8);
  SearchBudget b = ml2();
  b.max_worlds = 3;
  for (int i = 0; i < 20; ++i) {
    Formula inner = gen.boolean(s, 2);
    EliminationResult r = eliminate_delta(inner);
    EXPECT_TRUE(equivalent(r.output, delta(inner), b)) << render(inner);
  }
}

// ---- team quantifiers ----

TEST(EliminateForall, Shapes) {
  EliminationOptions o;
  o.lower_qbf = false;
  EXPECT_EQ(eliminate_forall("x", P("~(x | p)"), o).output, P("~forall x. (x | p)"));
  EXPECT_EQ(eliminate_forall("x", P("x ~> p"), o).output, P("forall x. x ~> forall x. p"));
  EXPECT_EQ(eliminate_forall("x", P("x | p"), o).output, P("forall x. (x | p)"));
}

TEST(EliminateForall, MaterialDistributionHoldsSemantically) {
  // The rewrite of forall over ~> agrees with brute force over {x, p}.
  EXPECT_TRUE(equivalent(P("forall x. (x ~> p)"), P("forall x. x ~> forall x. p"), pl2()));
  EXPECT_TRUE(equivalent(P("forall x. (x & p ~> !x)"), P("forall x. (x & p) ~> forall x. !x"), pl2()));
}

TEST(EliminateShriek, Shapes) {
  EliminationOptions o;
  o.lower_qbf = false;
  EliminationResult c = eliminate_shriek("x", P("x | p"), o);
  EXPECT_TRUE(equivalent(c.output, P("forall x. (x | p)"), pl2()));
  EXPECT_TRUE(equivalent(c.output, P("shriek x. (x | p)"), pl2()));
  EXPECT_TRUE(equivalent(eliminate_shriek("x", P("T"), o).output, P("T"), pl2()));
  EliminationResult t = to_boolean_closure(P("exists x. (x * !x)"), o);
  EXPECT_TRUE(equivalent(t.output, P("exists x. x * exists x. !x"), pl2()));
}

TEST(QbfExpand, Examples) {
  EXPECT_EQ(qbf_expand(P("forall x. (x | y)")), P("(T | y) & (F | y)"));
  EXPECT_EQ(qbf_expand(P("p -> q")), P("p -> q"));
  Formula g = qbf_expand(P("forall x. forall y. (x -> y)"));
  EXPECT_FALSE(has_quantifier(g));
  // Truth-table oracle: false at every assignment.
  Context c = Context::of(PropSpace{{"x", "y"}});
  for (int pt = 0; pt < 4; ++pt) EXPECT_FALSE(eval_classical(c, pt, g));
  EXPECT_EQ(g.size(), P("((T -> T) & (T -> F)) & ((F -> T) & (F -> F))").size());
}

// ---- full pipeline ----

TEST(ToBooleanClosure, Examples) {
  EliminationResult a = to_boolean_closure(P("(p -o q) ~> ~q"));
  EXPECT_EQ(a.fragment, FragmentTag::BPL);
  EXPECT_TRUE(equivalent(a.output, P("(p -o q) ~> ~q"), pl2()));

  SearchBudget b;
  b.max_props = 2;
  b.max_worlds = 2;
  EliminationResult m = to_boolean_closure(P("delta(~p) && box q"));
  EXPECT_EQ(m.fragment, FragmentTag::BML);
  EXPECT_TRUE(equivalent(m.output, P("delta(~p) && box q"), b));

  EliminationResult q = to_boolean_closure(P("shriek x. (x * ~y)"));
  EXPECT_EQ(q.fragment, FragmentTag::BPL);
  EXPECT_TRUE(equivalent(q.output, P("shriek x. (x * ~y)"), pl2()));
}

TEST(ToBooleanClosure, StrictModeRefused) {
  EliminationOptions o;
  o.mode = Mode::Strict;
  EXPECT_THROW(to_boolean_closure(P("p -o q"), o), EliminationError);
}

TEST(ToBooleanClosure, RandomPtlAgreement) {
  GenSpec s;
  s.props = {"p", "q"};
  s.team_constants = true;
  RandomFormulas gen(41);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.team(s, gen.below(4));
    EliminationResult r = to_boolean_closure(f);
    ASSERT_TRUE(is_boolean_closure(classify(r.output))) << render(f);
    ASSERT_TRUE(equivalent(r.output, f, pl2())) << render(f);
    for (const auto& st : r.trace)
      ASSERT_TRUE(equivalent(st.before, st.after, pl2())) << st.rule << " in " << render(f);
  }
}

TEST(ToBooleanClosure, RandomQptlAgreement) {
  GenSpec s;
  s.qvars = {"x", "y"};
  s.max_quantifiers = 2;
  RandomFormulas gen(43);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.team(s, gen.below(4));
    EliminationResult r = to_boolean_closure(f);
    ASSERT_EQ(r.fragment, classify(r.output));
    ASSERT_FALSE(has_quantifier(r.output)) << render(f);
    ASSERT_TRUE(equivalent(r.output, f, pl2())) << render(f);
  }
}

TEST(ToBooleanClosure, RandomFirstOrderAgreement) {
  GenSpec s;
  s.fo_relations = {"P"};
  s.fo_vars = {"x"};
  s.max_quantifiers = 1;
  RandomFormulas gen(47);
  SearchBudget b;
  b.max_domain = 2;
  for (int i = 0; i < 60; ++i) {
    Formula f = gen.team(s, gen.below(3));
    EliminationResult r = to_boolean_closure(f);
    ASSERT_TRUE(is_boolean_closure(classify(r.output))) << render(f);
    ASSERT_TRUE(equivalent(r.output, f, b)) << render(f);
  }
}

TEST(ToBooleanClosure, SpotCheckCanBeDisabled) {
  EliminationOptions o;
  o.spot_check = false;
  EliminationResult r = to_boolean_closure(P("(p -o q) -o E(p)"), o);
  EXPECT_TRUE(equivalent(r.output, P("(p -o q) -o E(p)"), pl2()));
}

// ---- S+ ----

TEST(Splus, Examples) {
  EXPECT_EQ(to_splus(P("E(b)")), tensor(top(), sand(nonempty(), P("b"))));
  EXPECT_EQ(to_splus(P("a")), P("a"));
  Formula f = to_splus(P("a && E(b)"));
  EXPECT_TRUE(is_splus(f));
  EXPECT_TRUE(equivalent(f, P("a && E(b)"), pl2()));
}

TEST(Splus, NoStrongNegationOrMaterialImplication) {
  GenSpec s;
  s.props = {"p", "q"};
  RandomFormulas gen(53);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.boolean(s, 3);
    Formula g = to_splus(f);
    ASSERT_TRUE(is_splus(g)) << render(g);
    ASSERT_TRUE(equivalent(f, g, pl2())) << render(f);
    // Only the sugar patterns may contain ~ and ~>.
    std::function<void(const Formula&)> walk = [&](const Formula& h) {
      Formula a, b;
      if (h.classical() || h == nonempty()) return;
      bool sugar = match_sor(h, a, b) || match_sand(h, a, b) || match_tensor(h, a, b);
      ASSERT_TRUE(sugar) << render(h);
      walk(a);
      walk(b);
    };
    walk(g);
  }
}

TEST(Flatness, TensorChainsAndStrongAndChains) {
  GenSpec s;
  s.props = {"p", "q"};
  RandomFormulas gen(59);
  for (int i = 0; i < 100; ++i) {
    std::vector<Formula> as;
    for (int k = 0; k < 3; ++k) as.push_back(gen.classical(s, 2));
    EXPECT_TRUE(equivalent(tensor_all(as), disj_all(as), pl2()));
    EXPECT_TRUE(equivalent(sand_all(as), conj_all(as), pl2()));
    std::vector<Formula> es;
    for (const auto& a : as) es.push_back(E(a));
    EXPECT_TRUE(equivalent(sand_all(es), tensor_all(es), pl2()));
  }
}

// ---- first-order translation ----

TEST(FoTranslation, Example) {
  FoTranslation t = first_order_translation({P("R(x)"), P("~S(x)")});
  ASSERT_EQ(t.extension.constants.size(), 1u);
  std::string c = *t.extension.constants.begin();
  Signature sig;
  sig.constants.insert(c);
  sig.relations["R"] = 1;
  sig.relations["S"] = 1;
  ASSERT_EQ(t.formulas.size(), 2u);
  EXPECT_EQ(t.formulas[0], parse("R(" + c + ")", sig));
  EXPECT_EQ(t.formulas[1], parse("!S(" + c + ")", sig));
}

TEST(FoTranslation, NoStrongNegationGivesEmptySet) {
  FoTranslation t = first_order_translation({P("R(x)"), P("forall y. S(y)")});
  EXPECT_TRUE(t.formulas.empty());
  EXPECT_TRUE(t.extension.constants.empty());
}

TEST(FoTranslation, UnsatisfiabilityTransfers) {
  std::vector<Formula> phi = {P("R(x)"), P("~R(x)")};
  FoTranslation t = first_order_translation(phi);
  ASSERT_EQ(t.formulas.size(), 2u);
  SearchBudget b;
  b.max_domain = 2;
  EXPECT_FALSE(consistency_probe(phi, b).holds);
  // Classical side by brute force: no structure over domain <= 2 satisfies
  // R(c) and !R(c).
  for (int d = 1; d <= 2; ++d)
    for (int rel = 0; rel < (1 << d); ++rel)
      for (int cv = 0; cv < d; ++cv) {
        FoSpace sp;
        sp.structure.domain = d;
        FoRelation r;
        r.arity = 1;
        for (int a = 0; a < d; ++a) r.holds.push_back((rel >> a) & 1);
        sp.structure.relations["R"] = r;
        for (const auto& c : t.extension.constants) sp.structure.constants[c] = cv;
        Context ctx = Context::of(sp);
        bool all = true;
        for (const auto& f : t.formulas) all = all && eval_classical(ctx, 0, f);
        EXPECT_FALSE(all);
      }
}

TEST(FoTranslation, FreeAndBoundClash) {
  std::vector<Formula> phi = {P("R(x) & forall x. S(x)"), P("~S(x)")};
  EXPECT_THROW(first_order_translation(phi), std::invalid_argument);
  FoTranslation t = first_order_translation(phi, true);
  ASSERT_EQ(t.formulas.size(), 2u);
  EXPECT_EQ(bound_vars(t.formulas[0]), (std::set<std::string>{"x1"}));
  EXPECT_THROW(first_order_translation({P("R(x) -o S(x)")}), std::invalid_argument);
}

TEST(SentenceInterpolant, Examples) {
  EXPECT_EQ(sentence_interpolant({}, P("R(x)")), P("forall x. R(x)"));
  EXPECT_EQ(sentence_interpolant({}, P("forall x. R(x)")), P("forall x. R(x)"));
  Formula e = sentence_interpolant({P("~S(x)")}, P("R(x, y)"));
  EXPECT_EQ(e, P("forall x. forall y. R(x, y)"));
  // A sentence entailing the original formula on every team.
  SearchBudget b;
  b.max_domain = 2;
  EXPECT_TRUE(entails({e}, P("R(x, y)"), b).holds);
  EXPECT_TRUE(free_vars(e).empty());
}
