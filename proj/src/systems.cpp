#include <stdexcept>

#include "teamlogic/calculus.hpp"

namespace teamlogic {

const AxiomSchema* ProofSystem::find_axiom(const std::string& n) const {
  for (const auto& a : axioms)
    if (a.name == n) return &a;
  return nullptr;
}

const InferenceRule* ProofSystem::find_rule(const std::string& n) const {
  for (const auto& r : rules)
    if (r.name == n) return &r;
  return nullptr;
}

namespace {

const InferenceRule kModusPonens{"E→", 2, false, "alpha, alpha -> beta / beta"};
const InferenceRule kMaterialMp{"E⤳", 2, false, "phi, phi ~> psi / psi"};

std::vector<AxiomSchema> hilbert_base() {
  return {
      make_schema("H0", "A1", "alpha -> beta -> alpha"),
      make_schema("H0", "A2", "(alpha -> beta -> gamma) -> (alpha -> beta) -> alpha -> gamma"),
      make_schema("H0", "A3", "(!alpha -> !beta) -> beta -> alpha"),
  };
}

std::vector<AxiomSchema> with_system(std::vector<AxiomSchema> v, const std::string& sys) {
  for (auto& a : v) a.system = sys;
  return v;
}

AxiomSchema derived_subst(AxiomSchema s, const std::string& slot, DerivedSlot::Op op,
                          const std::string& base, const std::string& var, const std::string& term,
                          Formula replacement = {}) {
  DerivedSlot d;
  d.slot = slot;
  d.op = op;
  d.base = base;
  d.var = var;
  d.term = term;
  d.replacement = replacement;
  s.derived.push_back(d);
  return s;
}

std::vector<ProofSystem> build_systems() {
  std::vector<ProofSystem> out;

  out.push_back({"H0", hilbert_base(), {kModusPonens}});

  {
    auto ax = with_system(hilbert_base(), "HBox");
    ax.push_back(make_schema("HBox", "K", "box (alpha -> beta) -> box alpha -> box beta"));
    out.push_back({"HBox", ax, {kModusPonens, {"Nec", 1, true, "alpha theorem / box alpha"}}});
  }

  {
    auto ax = with_system(hilbert_base(), "H");
    AxiomSchema a4 = make_schema("H", "A4", "forall x. alpha -> alpha_t", "t term", {"alpha_t"});
    a4 = derived_subst(a4, "alpha_t", DerivedSlot::Op::SubstVar, "alpha", "x", "t");
    a4.side = SideCondition::IsTerm;
    ax.push_back(a4);
    AxiomSchema a5 = make_schema("H", "A5", "forall x. (alpha -> beta) -> alpha -> forall x. beta",
                                 "x not free in alpha");
    a5.side = SideCondition::NotFreeIn;
    a5.side_var = "x";
    a5.side_formula = "alpha";
    ax.push_back(a5);
    ax.push_back(make_schema("H", "A6", "x = x"));
    AxiomSchema a7 = make_schema("H", "A7", "x = y -> alpha -> alpha_y", "", {"alpha_y"});
    a7 = derived_subst(a7, "alpha_y", DerivedSlot::Op::SubstVar, "alpha", "x", "y");
    ax.push_back(a7);
    out.push_back({"H", ax, {kModusPonens, {"UG∀", 1, true, "alpha theorem / forall x alpha(t/x)"}}});
  }

  out.push_back({"L",
                 {
                     make_schema("L", "L1", "phi ~> psi ~> phi"),
                     make_schema("L", "L2", "(phi ~> psi ~> theta) ~> (phi ~> psi) ~> phi ~> theta"),
                     make_schema("L", "L3", "(~phi ~> ~psi) ~> psi ~> phi"),
                     make_schema("L", "L4", "(alpha -> beta) ~> alpha ~> beta"),
                 },
                 {kMaterialMp}});

  out.push_back({"S",
                 {
                     make_schema("S", "F⊗", "alpha * beta <~> (alpha | beta)", "Flatness 1."),
                     make_schema("S", "F⊸", "alpha ~> (phi -o alpha)", "Flatness 2."),
                     make_schema("S", "Lax", "phi ~> (phi -o psi) ~> (theta -o psi)",
                                 "Splitting is lax."),
                     make_schema("S", "Ex⊸", "(phi -o psi -o theta) ~> (psi -o phi -o theta)",
                                 "Exchange of hypotheses."),
                     make_schema("S", "C⊸", "(phi -o ~psi) ~> (psi -o ~phi)", "Contraposition."),
                     make_schema("S", "Dis⊸",
                                 "(phi -o (psi ~> theta)) ~> (phi -o psi) ~> (phi -o theta)",
                                 "Distribution."),
                 },
                 {{"Nec⊸", 1, true, "phi theorem / psi -o phi"}}});

  out.push_back({"M",
                 {
                     make_schema("M", "Lin□", "box ~phi <~> ~box phi"),
                     make_schema("M", "F◇", "dia alpha <~> !box !alpha"),
                     make_schema("M", "D◇⊗", "dia (phi * psi) <~> dia phi * dia psi"),
                     make_schema("M", "E□", "box alpha ~> delta alpha"),
                     make_schema("M", "I□", "dia phi ~> delta psi ~> box psi"),
                     make_schema("M", "Dis□", "box (phi ~> psi) ~> box phi ~> box psi"),
                     make_schema("M", "DisΔ", "delta (phi ~> psi) ~> delta phi ~> delta psi"),
                 },
                 {{"Nec□", 1, true, "phi theorem / box phi"},
                  {"NecΔ", 1, true, "phi theorem / delta phi"}}});

  out.push_back(
      {"Q",
       {
           make_schema("Q", "Lin∀", "forall x. ~phi <~> ~forall x. phi"),
           make_schema("Q", "F∃", "exists x. alpha <~> !forall x. !alpha"),
           make_schema("Q", "D∃⊗", "exists x. (phi * psi) <~> exists x. phi * exists x. psi"),
           make_schema("Q", "E∀", "forall x. alpha ~> shriek x. alpha"),
           make_schema("Q", "I∀", "shriek x. psi ~> forall x. psi"),
           make_schema("Q", "Dis∀", "forall x. (phi ~> psi) ~> forall x. phi ~> forall x. psi"),
           make_schema("Q", "Dis!", "shriek x. (phi ~> psi) ~> shriek x. phi ~> shriek x. psi"),
       },
       {{"UG!", 1, true, "phi theorem / shriek x phi"}}});

  {
    AxiomSchema x = make_schema(
        "X", "X", "(forall x. alpha -> alpha_t & alpha_f) & (alpha_t & alpha_f -> forall x. alpha)",
        "Expansion of quantifier.", {"alpha_t", "alpha_f"});
    x = derived_subst(x, "alpha_t", DerivedSlot::Op::SubstProp, "alpha", "x", "", top());
    x = derived_subst(x, "alpha_f", DerivedSlot::Op::SubstProp, "alpha", "x", "", bot());
    out.push_back({"X", {x}, {}});
  }

  {
    AxiomSchema u = make_schema("U", "U", "~alpha ~> !alpha", "alpha a sentence");
    u.side = SideCondition::Sentence;
    u.side_formula = "alpha";
    out.push_back({"U", {u}, {}});
  }
  return out;
}

std::vector<AxiomSchema> build_alternatives() {
  return {
      make_schema("S'", "Com⊗", "phi * psi <~> psi * phi"),
      make_schema("S'", "Ass⊗", "(phi * psi) * theta <~> phi * (psi * theta)"),
      make_schema("S'", "D⊼⊗", "alpha && (phi * psi) <~> (alpha && phi) * (alpha && psi)"),
      make_schema("S'", "D⊻⊗", "phi * (psi || theta) <~> (phi * psi) || (phi * theta)"),
      make_schema("S'", "Aug⊗", "(phi * psi) && (phi -o theta) ~> phi * (psi && theta)"),
      make_schema("S'", "Abs⊗", "E(alpha) * phi ~> E(alpha)"),
      make_schema("S'", "JoinE", "alpha && E(beta) ~> E(alpha & beta)"),
      make_schema("S'", "IsolateE",
                  "phi * (alpha && E(beta)) <~> (phi * alpha) && E(alpha & beta)"),
      make_schema("M'", "D□⤳", "box (phi ~> psi) <~> (box phi ~> box psi)"),
      make_schema("M'", "D◇⊻", "dia (phi || psi) <~> dia phi || dia psi"),
      make_schema("M'", "◇IsolateE",
                  "dia (alpha && E(beta)) <~> dia alpha && E(!box !(alpha & beta))"),
  };
}

}  // namespace

const std::vector<ProofSystem>& proof_systems() {
  static const std::vector<ProofSystem> systems = build_systems();
  return systems;
}

const ProofSystem& proof_system(const std::string& name) {
  for (const auto& s : proof_systems())
    if (s.name == name) return s;
  throw std::out_of_range("unknown proof system " + name);
}

const std::vector<AxiomSchema>& alternative_schemas() {
  static const std::vector<AxiomSchema> schemas = build_alternatives();
  return schemas;
}

const AxiomSchema* find_alternative(const std::string& system, const std::string& name) {
  for (const auto& s : alternative_schemas())
    if (s.system == system && s.name == name) return &s;
  return nullptr;
}

}  // namespace teamlogic
