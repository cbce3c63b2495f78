#include "support/scriptgen.hpp"

#include <set>

using namespace hycoa;

namespace scriptgen {

namespace {

struct Builder {
  ProofScript s;
  int n = 0;

  int taut(FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::taut;
    s.lines.push_back({std::move(f), j});
    return ++n;
  }
  int axiom(const std::string& name, Substitution sub, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::axiom_instance;
    j.axiom_name = name;
    j.sub = std::move(sub);
    s.lines.push_back({std::move(f), j});
    return ++n;
  }
  int mp(int m, int impl, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::mp;
    j.premise_line = m;
    j.implication_line = impl;
    s.lines.push_back({std::move(f), j});
    return ++n;
  }
  int atgen(int m, const std::string& nom, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::at_gen;
    j.premise_line = m;
    j.nominal = nom;
    s.lines.push_back({std::move(f), j});
    return ++n;
  }
  int rule(int idx, Substitution sub, int m, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::rule_instance;
    j.index = idx;
    j.sub = std::move(sub);
    j.premise_line = m;
    s.lines.push_back({std::move(f), j});
    return ++n;
  }
  int name(int m, const std::string& nom, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::name;
    j.premise_line = m;
    j.nominal = nom;
    s.lines.push_back({std::move(f), j});
    return ++n;
  }
  int paste(const std::string& op, int k, int m, std::vector<std::string> js,
            FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::paste;
    j.paste_op = op;
    j.paste_k = k;
    j.premise_line = m;
    j.witnesses = std::move(js);
    s.lines.push_back({std::move(f), j});
    return ++n;
  }
  int da(const std::string& i, const std::string& jn, FormulaRef phi, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::da;
    j.da_i = i;
    j.da_j = jn;
    j.da_phi = std::move(phi);
    s.lines.push_back({std::move(f), j});
    return ++n;
  }
};

FormulaRef small_formula(testgen::Rng& rng, const Signature& sig) {
  testgen::FormulaGenOptions opt;
  opt.max_depth = 2;
  return testgen::random_formula(rng, sig, opt);
}

std::string pick_nominal(testgen::Rng& rng) { return rng.flip() ? "i" : "j"; }

void axiom_instance_family(testgen::Rng& rng, const Signature& sig, Builder* b) {
  const auto& schemes = at_axiom_schemes();
  Substitution sub;
  sub.prop["p"] = small_formula(rng, sig);
  sub.prop["q"] = small_formula(rng, sig);
  sub.nominal["i"] = pick_nominal(rng);
  sub.nominal["j"] = pick_nominal(rng);
  if (rng.pick(3) == 0) {
    const auto& ops = sig.operators();
    const OperatorDecl& op = ops[rng.pick((int)ops.size())];
    AxiomScheme mob = mob_scheme(op);
    for (int k = 1; k <= op.arity; ++k)
      sub.prop["q" + std::to_string(k)] = small_formula(rng, sig);
    b->axiom(mob.name, sub, substitute(mob.templ, sub));
  } else {
    const AxiomScheme& scheme = schemes[rng.pick((int)schemes.size())];
    b->axiom(scheme.name, sub, substitute(scheme.templ, sub));
  }
}

}  // namespace

GeneratedScript random_script(testgen::Rng& rng, bool graded,
                              const RuleSet& graded_rules) {
  GeneratedScript out;
  Signature sig = graded ? Signature::graded() : Signature::kripke();
  Builder b;
  b.s.sig = sig;
  b.s.rules = graded ? graded_rules : RuleSet::k();

  int family = rng.pick(graded ? 7 : 8);
  switch (family) {
    case 0: {  // plain axiom instance
      axiom_instance_family(rng, sig, &b);
      break;
    }
    case 1: {  // Name on a tautological theorem
      FormulaRef psi = small_formula(rng, sig);
      FormulaRef chi = Formula::implies(psi, psi);
      std::set<std::string> avoid = free_nominals(*chi);
      std::string n = fresh_nominal(avoid);
      FormulaRef nom = Formula::nominal(n);
      int l1 = b.taut(chi);
      int l2 = b.taut(Formula::implies(chi, Formula::implies(nom, chi)));
      int l3 = b.mp(l1, l2, Formula::implies(nom, chi));
      b.name(l3, n, chi);
      out.uses_name = true;
      break;
    }
    case 2: {  // Paste with a tautological consequent
      const OperatorDecl* op;
      if (graded) {
        int g = rng.pick(3);
        op = sig.find("<" + std::to_string(g) + ">");
      } else {
        op = sig.find("dia");
      }
      int k = static_cast<int>(op->bounds[0].k);
      FormulaRef phi = small_formula(rng, sig);
      FormulaRef psi =
          Formula::implies(Formula::prop("q"), Formula::prop("q"));
      std::set<std::string> avoid = free_nominals(*phi);
      avoid.insert("i");
      std::vector<std::string> js;
      std::vector<FormulaRef> conjuncts, noms;
      for (int r = 0; r < k; ++r) {
        std::string jn = fresh_nominal(avoid);
        avoid.insert(jn);
        js.push_back(jn);
        noms.push_back(Formula::nominal(jn));
        conjuncts.push_back(Formula::at(jn, phi));
      }
      conjuncts.push_back(
          Formula::at("i", Formula::modal(op->name, {Formula::disj_all(noms)})));
      FormulaRef premise = Formula::implies(Formula::conj_all(conjuncts), psi);
      int l1 = b.taut(premise);
      FormulaRef conclusion =
          Formula::implies(Formula::at("i", Formula::modal(op->name, {phi})), psi);
      b.paste(op->name, k, l1, js, conclusion);
      out.uses_paste = true;
      break;
    }
    case 3: {  // binder axiom
      testgen::FormulaGenOptions opt;
      opt.max_depth = 2;
      opt.allow_down = true;
      FormulaRef phi = testgen::random_formula(rng, sig, opt);
      std::string i = pick_nominal(rng);
      b.da(i, "x", phi, da_instance(i, "x", phi));
      out.uses_da = true;
      break;
    }
    case 4: {  // modus ponens chain: from A conclude B -> A
      FormulaRef a = small_formula(rng, sig);
      FormulaRef bb = small_formula(rng, sig);
      FormulaRef taut_a = Formula::implies(a, a);
      int l1 = b.taut(taut_a);
      int l2 = b.taut(Formula::implies(taut_a, Formula::implies(bb, taut_a)));
      b.mp(l1, l2, Formula::implies(bb, taut_a));
      break;
    }
    case 5: {  // local assumption, tainted final line
      FormulaRef psi = small_formula(rng, sig);
      FormulaRef chi = small_formula(rng, sig);
      b.s.local = {psi};
      Justification j;
      j.kind = Justification::Kind::local;
      j.index = 1;
      b.s.lines.push_back({psi, j});
      ++b.n;
      int l2 = b.taut(Formula::implies(psi, Formula::disj(psi, chi)));
      b.mp(1, l2, Formula::disj(psi, chi));
      break;
    }
    case 6: {  // rule instance with a derivable premise
      if (graded) {
        // mono<k>: ((phi & psi) -> phi) / (<k>(phi & psi) -> <k> phi)
        int g = rng.pick(4);
        FormulaRef phi = small_formula(rng, sig);
        FormulaRef psi = small_formula(rng, sig);
        FormulaRef ab = Formula::conj(phi, psi);
        Substitution sub;
        sub.prop["a"] = ab;
        sub.prop["b"] = phi;
        int l1 = b.taut(Formula::implies(ab, phi));
        std::string op = "<" + std::to_string(g) + ">";
        b.rule(1 + g, sub, l1,
               Formula::implies(Formula::modal(op, {ab}), Formula::modal(op, {phi})));
      } else {
        // nec on a tautology, then kconj
        FormulaRef phi = small_formula(rng, sig);
        FormulaRef chi = Formula::implies(phi, phi);
        Substitution nec;
        nec.prop["a"] = chi;
        int l1 = b.taut(chi);
        b.rule(1, nec, l1, Formula::modal("box", {chi}));
      }
      break;
    }
    default: {  // tbox assumption plus @-generalization
      FormulaRef assumed = Formula::at("i", Formula::prop("p"));
      b.s.tbox = {assumed};
      Justification j;
      j.kind = Justification::Kind::tbox;
      j.index = 1;
      b.s.lines.push_back({assumed, j});
      ++b.n;
      b.atgen(1, "j", Formula::at("j", assumed));
      break;
    }
  }
  out.script = std::move(b.s);
  return out;
}

}  // namespace scriptgen
