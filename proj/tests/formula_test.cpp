#include <gtest/gtest.h>

#include <set>

#include "teamlogic/calculus.hpp"
#include "teamlogic/generate.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/schema.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/syntax.hpp"

using namespace teamlogic;

namespace {

Formula P(const std::string& s) { return parse(s); }

}  // namespace

// ---- interning ----

TEST(Formula, StructurallyEqualFormulasShareANode) {
  EXPECT_EQ(prop("a"), prop("a"));
  EXPECT_EQ(limp(prop("a"), sneg(prop("b"))), limp(prop("a"), sneg(prop("b"))));
  EXPECT_NE(prop("a"), prop("b"));
  EXPECT_EQ(tensor(prop("a"), prop("b")).size(), 5u);
}

TEST(Formula, ClassicalConstructorsRejectTeamOperands) {
  EXPECT_THROW(neg(sneg(prop("a"))), std::invalid_argument);
  EXPECT_THROW(implies(prop("a"), delta(prop("b"))), std::invalid_argument);
  EXPECT_NO_THROW(box(neg(prop("a"))));
}

TEST(Formula, AbbreviationsUnfoldToPrimitives) {
  Formula a = prop("a"), b = prop("b");
  EXPECT_EQ(top(), implies(prop(kTopAtom), prop(kTopAtom)));
  EXPECT_EQ(bot(), neg(top()));
  EXPECT_EQ(conj(a, b), neg(implies(a, neg(b))));
  EXPECT_EQ(disj(a, b), implies(neg(a), b));
  EXPECT_EQ(tensor(a, b), sneg(limp(a, sneg(b))));
  EXPECT_EQ(sand(a, b), sneg(mimp(a, sneg(b))));
  EXPECT_EQ(sor(a, b), mimp(sneg(a), b));
  EXPECT_EQ(E(a), sneg(neg(a)));
  EXPECT_EQ(dia(a), sneg(delta(sneg(a))));
  EXPECT_EQ(exists("x", a), sneg(shriek("x", sneg(a))));
  EXPECT_EQ(nonempty(), sneg(bot()));
}

TEST(Formula, MatchersRecoverOperands) {
  Formula a = prop("a"), b = prop("b"), x, y;
  ASSERT_TRUE(match_tensor(tensor(a, b), x, y));
  EXPECT_EQ(x, a);
  EXPECT_EQ(y, b);
  ASSERT_TRUE(match_sbicond(sbicond(a, b), x, y));
  EXPECT_EQ(x, a);
  EXPECT_FALSE(match_dia(box(a), x));
  std::string v;
  ASSERT_TRUE(match_exists(exists("z", a), v, x));
  EXPECT_EQ(v, "z");
}

TEST(Formula, FoldsOnEmptyInputGiveNeutralElements) {
  EXPECT_EQ(conj_all({}), top());
  EXPECT_EQ(disj_all({}), bot());
  EXPECT_EQ(sor_all({}), sfalsum());
  EXPECT_EQ(sand_all({}), top());
}

TEST(Formula, SignatureValidationRejectsClashes) {
  Signature s;
  s.relations["R"] = 1;
  s.functions["R"] = 1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  Signature t;
  t.relations["R"] = -1;
  EXPECT_THROW(t.validate(), std::invalid_argument);
}

// ---- parse ----

TEST(Parse, MaterialImplicationIsRightAssociative) {
  EXPECT_EQ(P("a ~> (b ~> a)"), mimp(prop("a"), mimp(prop("b"), prop("a"))));
  EXPECT_EQ(P("a ~> b ~> a"), P("a ~> (b ~> a)"));
  EXPECT_EQ(P("a -> b -> c"), implies(prop("a"), implies(prop("b"), prop("c"))));
}

TEST(Parse, TensorDesugarsToStrongNegatedLinearImplication) {
  EXPECT_EQ(P("p * q"), sneg(limp(prop("p"), sneg(prop("q")))));
}

TEST(Parse, DiamondDesugarsThroughDelta) {
  EXPECT_EQ(P("dia p"), sneg(delta(sneg(prop("p")))));
}

TEST(Parse, PrecedenceLevels) {
  // & binds tighter than |, which binds tighter than ->.
  EXPECT_EQ(P("a & b | c -> d"),
            implies(disj(conj(prop("a"), prop("b")), prop("c")), prop("d")));
  EXPECT_EQ(P("a <~> b ~> c"), sbicond(prop("a"), mimp(prop("b"), prop("c"))));
  EXPECT_EQ(P("!a & b"), conj(neg(prop("a")), prop("b")));
  EXPECT_EQ(P("box a -> a"), implies(box(prop("a")), prop("a")));
}

TEST(Parse, Constants) {
  EXPECT_EQ(P("T"), top());
  EXPECT_EQ(P("F"), bot());
  EXPECT_EQ(P("NE"), nonempty());
  EXPECT_EQ(P("FF"), sfalsum());
  EXPECT_EQ(P("E(a & b)"), E(conj(prop("a"), prop("b"))));
}

TEST(Parse, FirstOrderSyntax) {
  // Quantifiers are prefix operators and bind tightest.
  Formula f = P("forall x. R(x, f(y)) -> x = c");
  ASSERT_EQ(f.kind(), Kind::Implies);
  ASSERT_EQ(f.lhs().kind(), Kind::ForAll);
  EXPECT_EQ(f.lhs().name(), "x");
  Signature sig;
  sig.relations["R"] = 1;
  sig.constants.insert("c");
  Formula g = parse("R(c)", sig);
  EXPECT_EQ(g.terms()[0].kind(), TermKind::Constant);
  EXPECT_EQ(parse("R(x)", sig).terms()[0].kind(), TermKind::Variable);
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    parse("a ~>\n  (b");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 0);
  }
  EXPECT_THROW(parse("a ~~> b"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(Parse, ClosedSignatureRejectsUnknownAndArityMismatch) {
  Signature sig;
  sig.relations["R"] = 1;
  EXPECT_THROW(parse("S(x)", sig), ParseError);
  EXPECT_THROW(parse("R(x, y)", sig), ParseError);
  EXPECT_THROW(parse("R(x) & R(x, y)"), ParseError);  // open: arity fixed on first use
}

TEST(Parse, MetavariablesFollowDeclarations) {
  MetaDecls m = standard_metas();
  Formula f = parse("alpha ~> phi", Signature::open_signature(), m);
  EXPECT_EQ(f.lhs().kind(), Kind::Meta);
  EXPECT_EQ(f.lhs().sort(), MetaSort::Classical);
  EXPECT_EQ(f.rhs().sort(), MetaSort::General);
  EXPECT_FALSE(f.classical());
  EXPECT_TRUE(parse("alpha -> beta", Signature::open_signature(), m).classical());
}

// ---- render ----

TEST(Render, Examples) {
  EXPECT_EQ(render(sneg(limp(prop("p"), sneg(prop("q"))))), "p * q");
  EXPECT_EQ(render(prop("a")), "a");
  EXPECT_EQ(render(forall("x", equals(Term::variable("x"), Term::variable("x")))),
            "forall x. x = x");
}

TEST(Render, ResugarsAbbreviations) {
  EXPECT_EQ(render(P("dia p")), "dia p");
  EXPECT_EQ(render(P("exists x. x")), "exists x. x");
  EXPECT_EQ(render(P("a & b | c")), "a & b | c");
  EXPECT_EQ(render(P("T")), "T");
  EXPECT_EQ(render(P("E(p)")), "E(p)");
}

TEST(Render, RoundTripOnRandomFormulas) {
  std::vector<GenSpec> specs(4);
  specs[0].props = {"p", "q"};
  specs[0].team_constants = true;
  specs[1].props = {"p"};
  specs[1].modal = true;
  specs[2].props = {"p"};
  specs[2].qvars = {"x", "y"};
  specs[3].fo_relations = {"P", "Q"};
  specs[3].fo_vars = {"x", "y"};
  RandomFormulas gen(7);
  for (const auto& s : specs) {
    for (int i = 0; i < 400; ++i) {
      Formula f = gen.team(s, gen.below(7));
      std::string text = render(f);
      EXPECT_EQ(parse(text), f) << text;
    }
  }
}

// ---- substitution ----

TEST(Substitution, NoCaptureNeeded) {
  Signature sig;
  sig.relations["R"] = 2;
  sig.constants.insert("c");
  Formula f = parse("forall y. R(x, y)", sig);
  EXPECT_EQ(substitute_var(f, "x", Term::constant("c")), parse("forall y. R(c, y)", sig));
}

TEST(Substitution, EqualityUnderConstant) {
  Signature sig;
  sig.constants.insert("c");
  Formula f = parse("x = x", sig);
  EXPECT_EQ(substitute_var(f, "x", Term::constant("c")), parse("c = c", sig));
}

TEST(Substitution, CaptureRenamesToLeastUnusedSuffix) {
  Formula f = P("forall y. R(x, y)");
  Formula g = substitute_var(f, "x", Term::variable("y"));
  EXPECT_EQ(g, P("forall y1. R(y, y1)"));

  // Oracle: g at s must equal f at s[x := s(y)], for every 2-element
  // structure and every assignment to x, y, y1.
  for (int rel = 0; rel < 16; ++rel) {
    FoSpace sp;
    sp.structure.domain = 2;
    FoRelation r;
    r.arity = 2;
    for (int k = 0; k < 4; ++k) r.holds.push_back((rel >> k) & 1);
    sp.structure.relations["R"] = r;
    sp.vars = {"x", "y", "y1"};
    Context c = Context::of(sp);
    for (int pt = 0; pt < c.universe(); ++pt) {
      int moved = c.fo.with_value(pt, 0, c.fo.value(pt, 1));
      EXPECT_EQ(eval_classical(c, pt, g), eval_classical(c, moved, f));
    }
  }
}

TEST(Substitution, Subformula) {
  Formula a = P("x & y");
  Formula fa = forall("x", a);
  Formula out = substitute_subformula(fa.body(), prop("x"), top());
  EXPECT_EQ(out, conj(top(), prop("y")));
  EXPECT_EQ(substitute_subformula(fa, a, a), fa);
  EXPECT_EQ(substitute_subformula(P("p ~> p"), prop("p"), prop("q")), P("q ~> q"));
}

TEST(Substitution, PropositionalSubstitutionAvoidsCapture) {
  Formula f = P("forall y. (x | y)");
  Formula g = substitute_prop(f, "x", prop("y"));
  EXPECT_EQ(g, P("forall y1. (y | y1)")) << render(g);
  // Quantifiers bind tightest: here the second y is free.
  EXPECT_EQ(substitute_prop(P("forall y. x | y"), "x", prop("y")), P("(forall y1. y) | y"));
}

TEST(Syntax, VariableSets) {
  Formula f = P("forall x. (R(x, y) & !forall z. !(z = y))");
  EXPECT_EQ(free_vars(f), (std::set<std::string>{"y"}));
  EXPECT_EQ(bound_vars(f), (std::set<std::string>{"x", "z"}));
  EXPECT_EQ(props_of(P("p & T -> q")), (std::set<std::string>{"p", "q"}));
  EXPECT_EQ(prop_vars_of(P("forall x. p")), (std::set<std::string>{"p", "x"}));
  EXPECT_EQ(free_vars(P("forall x. (x | y)")), (std::set<std::string>{"y"}));
}

// ---- classify ----

TEST(Classify, Examples) {
  EXPECT_EQ(classify(P("a -> b")), FragmentTag::PL);
  EXPECT_EQ(classify(P("~a ~> b")), FragmentTag::BPL);
  EXPECT_EQ(classify(P("box(~p)")), FragmentTag::MTL);
}

TEST(Classify, BoxOverStrongNegationByNodeKinds) {
  // Hand enumeration: a box whose operand contains ~ is not a classical
  // leaf, so the formula is outside B(ML) and inside the full modal logic.
  Formula f = P("box(~p)");
  std::set<Kind> kinds;
  for (const auto& s : subformulas(f)) kinds.insert(s.kind());
  EXPECT_TRUE(kinds.count(Kind::Box) && kinds.count(Kind::StrongNeg));
  EXPECT_FALSE(f.classical());
  EXPECT_FALSE(f.lhs().classical());
  EXPECT_EQ(level_of(classify(f)), Level::Full);
  EXPECT_EQ(base_of(classify(f)), Base::ML);
}

TEST(Classify, Fragments) {
  EXPECT_EQ(classify(P("forall x. x | p")), FragmentTag::QBF);
  EXPECT_EQ(classify(P("forall x. R(x)")), FragmentTag::FO);
  EXPECT_EQ(classify(P("box p")), FragmentTag::ML);
  EXPECT_EQ(classify(P("~box p ~> q")), FragmentTag::BML);
  EXPECT_EQ(classify(P("p -o q")), FragmentTag::PTL);
  EXPECT_EQ(classify(P("shriek x. x")), FragmentTag::QPTL);
  EXPECT_EQ(classify(P("shriek x. R(x)")), FragmentTag::QFO);
  EXPECT_EQ(classify(P("~forall x. x")), FragmentTag::BQBF);
  EXPECT_THROW(classify(P("box forall x. x")), std::invalid_argument);
}

TEST(Classify, MonotoneInSubformulas) {
  GenSpec modal;
  modal.props = {"p", "q"};
  modal.modal = true;
  GenSpec q;
  q.props = {"p"};
  q.qvars = {"x"};
  GenSpec fo;
  fo.fo_relations = {"P"};
  fo.fo_vars = {"x", "y"};
  RandomFormulas gen(11);
  for (const GenSpec* s : {&modal, &q, &fo}) {
    for (int i = 0; i < 300; ++i) {
      Formula f = gen.team(*s, gen.below(6));
      FragmentTag tf = classify(f);
      for (const auto& g : subformulas(f))
        EXPECT_TRUE(fragment_leq(classify(g), tf)) << render(g) << " in " << render(f);
    }
  }
}

TEST(Classify, FragmentOrder) {
  EXPECT_TRUE(fragment_leq(FragmentTag::PL, FragmentTag::ML));
  EXPECT_TRUE(fragment_leq(FragmentTag::PL, FragmentTag::BPL));
  EXPECT_TRUE(fragment_leq(FragmentTag::BML, FragmentTag::MTL));
  EXPECT_FALSE(fragment_leq(FragmentTag::ML, FragmentTag::PL));
  EXPECT_FALSE(fragment_leq(FragmentTag::ML, FragmentTag::FO));
  EXPECT_FALSE(fragment_leq(FragmentTag::PTL, FragmentTag::BML));
}

// ---- schemas ----

TEST(Schema, MatchL1) {
  const AxiomSchema* l1 = proof_system("L").find_axiom("L1");
  ASSERT_NE(l1, nullptr);
  auto inst = match_schema(*l1, P("p ~> (q ~> p)"));
  ASSERT_TRUE(inst);
  EXPECT_EQ(inst->formulas.size(), 2u);
  EXPECT_EQ(inst->formulas.at("phi"), prop("p"));
  EXPECT_EQ(inst->formulas.at("psi"), prop("q"));
  EXPECT_FALSE(match_schema(*l1, P("p ~> (q ~> q)")));
}

TEST(Schema, A5RejectsFreeVariable) {
  const AxiomSchema* a5 = proof_system("H").find_axiom("A5");
  ASSERT_NE(a5, nullptr);
  EXPECT_FALSE(match_schema(*a5, P("forall x.(R(x) -> S(y)) -> (R(x) -> forall x. S(y))")));
  EXPECT_TRUE(match_schema(*a5, P("forall x.(R(z) -> S(x)) -> (R(z) -> forall x. S(x))")));
}

TEST(Schema, ClassicalSlotRejectsTeamFormula) {
  const AxiomSchema* l4 = proof_system("L").find_axiom("L4");
  ASSERT_NE(l4, nullptr);
  EXPECT_THROW(P("(~p -> q) ~> (~p ~> q)"), ParseError);
  // Built by hand the formula still cannot match, since ~p is not classical.
  Formula lhs = mimp(sneg(prop("p")), prop("q"));
  Instantiation inst;
  EXPECT_FALSE(match_into(l4->pattern.lhs().lhs(), sneg(prop("p")), l4->var_metas, inst));
  EXPECT_FALSE(match_schema(*l4, mimp(lhs, lhs)));
  EXPECT_TRUE(match_schema(*l4, P("(p -> q) ~> (p ~> q)")));
}

TEST(Schema, DerivedSlotsAreComputed) {
  const AxiomSchema* a4 = proof_system("H").find_axiom("A4");
  ASSERT_NE(a4, nullptr);
  Instantiation inst;
  inst.formulas["alpha"] = P("R(x) -> R(y)");
  inst.terms["x"] = Term::variable("x");
  inst.terms["t"] = Term::variable("z");
  Formula f = apply_instantiation(*a4, inst);
  EXPECT_EQ(f, P("forall x. (R(x) -> R(y)) -> (R(z) -> R(y))")) << render(f);
  auto back = match_schema(*a4, f);
  ASSERT_TRUE(back);
  EXPECT_EQ(*back, inst);
  EXPECT_EQ(a4->free_metas(), (std::vector<std::string>{"alpha", "t", "x"}));
}

TEST(Schema, UnboundOrMissortedMetavariableThrows) {
  const AxiomSchema* l4 = proof_system("L").find_axiom("L4");
  Instantiation inst;
  inst.formulas["alpha"] = prop("p");
  EXPECT_THROW(apply_instantiation(*l4, inst), std::invalid_argument);
  inst.formulas["beta"] = sneg(prop("q"));
  EXPECT_THROW(apply_instantiation(*l4, inst), std::invalid_argument);
}

TEST(Schema, SideConditionMetasOccurInPattern) {
  for (const auto& sys : proof_systems()) {
    for (const auto& a : sys.axioms) {
      std::set<std::string> metas;
      for (const auto& g : subformulas(a.pattern))
        if (g.kind() == Kind::Meta) metas.insert(g.name());
      if (!a.side_formula.empty()) EXPECT_TRUE(metas.count(a.side_formula)) << a.name;
    }
  }
}

TEST(Schema, MatchingIsLeftInverseOfInstantiation) {
  GenSpec pl;
  pl.props = {"p", "q"};
  pl.team_constants = true;
  GenSpec modal;
  modal.props = {"p"};
  modal.modal = true;
  GenSpec q;
  q.props = {"p"};
  q.qvars = {"x", "y"};
  RandomFormulas gen(3);
  int checked = 0;
  auto run = [&](const AxiomSchema& s, const GenSpec& spec) {
    for (int i = 0; i < 40; ++i) {
      Instantiation inst;
      for (const auto& m : s.free_metas()) {
        if (s.var_metas.count(m) || s.metas.terms.count(m)) {
          inst.terms[m] = Term::variable(m == "x" ? "x" : "y");
          continue;
        }
        bool classical = s.metas.formulas.at(m) == MetaSort::Classical;
        int d = gen.below(4);
        inst.formulas[m] = classical ? gen.classical(spec, d) : gen.team(spec, d);
      }
      if (!side_condition_holds(s, inst)) continue;
      Formula f = apply_instantiation(s, inst);
      auto back = match_schema(s, f);
      ASSERT_TRUE(back) << s.name << ": " << render(f);
      EXPECT_EQ(*back, inst) << s.name << ": " << render(f);
      ++checked;
    }
  };
  for (const char* name : {"H0", "HBox", "L", "S"})
    for (const auto& a : proof_system(name).axioms) run(a, name == std::string("HBox") ? modal : pl);
  for (const auto& a : proof_system("M").axioms) run(a, modal);
  for (const auto& a : proof_system("Q").axioms) run(a, q);
  for (const auto& a : proof_system("X").axioms) run(a, q);
  for (const auto& a : alternative_schemas()) run(a, a.system == "M'" ? modal : pl);
  EXPECT_GT(checked, 1000);
}

// ---- generators ----

TEST(Generate, EnumerationIsDistinctAndBounded) {
  GenSpec s;
  s.props = {"p", "q"};
  for (int n = 1; n <= 5; ++n) {
    auto fs = enumerate_classical(s, n);
    std::set<Formula, FormulaIdLess> seen(fs.begin(), fs.end());
    EXPECT_EQ(seen.size(), fs.size());
    for (const auto& f : fs) {
      EXPECT_LE(f.size(), static_cast<std::size_t>(n));
      EXPECT_TRUE(f.classical());
    }
  }
  // Atoms of size 1; negations of size 2; nothing else fits.
  auto two = enumerate_classical(s, 2);
  std::size_t atoms = 0;
  for (const auto& f : two) atoms += f.kind() == Kind::PropAtom;
  EXPECT_EQ(atoms, 2u);
}

TEST(Generate, TeamEnumerationContainsClassical) {
  GenSpec s;
  s.props = {"p", "q"};
  auto c = enumerate_classical(s, 4);
  auto t = enumerate_team(s, 4);
  std::set<Formula, FormulaIdLess> ts(t.begin(), t.end());
  for (const auto& f : c) EXPECT_TRUE(ts.count(f)) << render(f);
  EXPECT_GT(t.size(), c.size());
}

TEST(Generate, SeededStreamsAreReproducible) {
  GenSpec s;
  s.props = {"p", "q"};
  s.modal = true;
  RandomFormulas a(42), b(42);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(a.team(s, 4), b.team(s, 4));
}

TEST(Generate, QuantifierBoundIsRespected) {
  GenSpec s;
  s.qvars = {"x", "y"};
  s.max_quantifiers = 2;
  RandomFormulas gen(5);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.team(s, 6);
    int q = 0;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
      if (g.kind() == Kind::ForAll || g.kind() == Kind::Shriek) ++q;
      if (g.kind() == Kind::PropAtom || g.kind() == Kind::FoPredicate ||
          g.kind() == Kind::FoEquality || g.kind() == Kind::Meta)
        return;
      if (g.lhs()) walk(g.lhs());
      if (g.rhs()) walk(g.rhs());
    };
    walk(f);
    EXPECT_LE(q, 2) << render(f);
  }
}
