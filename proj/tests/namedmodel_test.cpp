#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <sstream>

#include "hycoa/abox.hpp"
#include "hycoa/errors.hpp"
#include "hycoa/namedmodel.hpp"
#include "hycoa/parser.hpp"
#include "hycoa/semantics.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace hycoa;

namespace {

const Signature kK = Signature::kripke();
const Signature kG = Signature::graded();

FormulaRef P(const std::string& s) { return parse_formula(s, kK); }
FormulaRef G(const std::string& s) { return parse_formula(s, kG); }

NamedModelProblem kripke_problem(std::vector<FormulaRef> goal,
                                 std::vector<FormulaRef> axioms = {},
                                 std::vector<FormulaRef> tbox = {},
                                 int max_states = 3) {
  NamedModelProblem prob;
  prob.sig = kK;
  prob.rules = RuleSet::k();
  prob.goal = std::move(goal);
  prob.pure_axioms = std::move(axioms);
  prob.tbox = std::move(tbox);
  prob.bounds.max_states = max_states;
  return prob;
}

}  // namespace

TEST_CASE("abox basics and indexing") {
  ABoxLabel k({P("@i' (dia p)"), P("@j' p")});
  CHECK(k.size() == 2);
  CHECK(k.contains(P("@j' p")));
  CHECK(!k.contains(P("@i' p")));
  CHECK(k.label_of("i").size() == 1);
  CHECK(k.nominals() == std::set<std::string>{"i", "j"});
  CHECK_THROWS_AS(ABoxLabel({P("p")}), ConfigError);
}

TEST_CASE("zero-pastedness") {
  std::vector<FormulaRef> closure = {P("p"), P("box p")};
  SUBCASE("empty abox is vacuously 0-pasted") {
    CHECK(is_zero_pasted(ABoxLabel{}, closure, kK));
  }
  SUBCASE("congruence violation is caught") {
    ABoxLabel k({P("@i' (p <-> p)")});
    CHECK(!is_zero_pasted(k, closure, kK));
    ABoxLabel fixed({P("@i' (p <-> p)"), P("@i' (box p <-> box p)"),
                     P("@i' (dia p <-> dia p)"),
                     P("@i' (box (box p) <-> box (box p))"),
                     P("@i' (dia (box p) <-> dia (box p))")});
    CHECK(is_zero_pasted(fixed, closure, kK));
  }
}

TEST_CASE("one-pastedness: the three witness shapes") {
  {
    ABoxLabel k({P("@i' (dia p)")});
    auto r = is_one_pasted(k, kK);
    CHECK(!r.pasted);
    REQUIRE(r.obligations.size() == 1);
    CHECK(alpha_equal(r.obligations[0].formula, P("@i' (dia p)")));
  }
  {
    ABoxLabel k({P("@i' (dia p)"), P("@j' p"), P("@i' (dia j')")});
    CHECK(is_one_pasted(k, kK).pasted);
  }
  {
    ABoxLabel k({G("@i' <1> p"), G("@j1' p"), G("@j2' p"),
                 G("@i' <1> ((j1' | j2'))")});
    CHECK(is_one_pasted(k, kG).pasted);
  }
  {
    ABoxLabel k({P("@i' (box p)")});
    CHECK_THROWS_AS(is_one_pasted(k, kK), ConfigError);
  }
}

TEST_CASE("saturation discharges obligations with fresh names") {
  SearchBounds b;
  b.max_states = 4;
  {
    ABoxLabel k({P("@i' (dia p)")});
    auto r = saturate(k, kK, b);
    REQUIRE(r.ok);
    CHECK(r.fresh_used == 1);
    CHECK(is_one_pasted(r.label, kK).pasted);
    CHECK(r.label.contains(P("@i0' p")));
    CHECK(r.label.contains(P("@i' (dia i0')")));
    for (const auto& f : k.formulas()) CHECK(r.label.contains(f));
    auto r2 = saturate(r.label, kK, b);
    REQUIRE(r2.ok);
    CHECK(r2.label.size() == r.label.size());
    CHECK(r2.fresh_used == 0);
    std::vector<FormulaRef> closure = {P("p"), P("dia p")};
    CHECK(is_zero_pasted(r.label, closure, kK));
  }
  {
    SearchBounds tight;
    tight.max_states = 1;
    ABoxLabel k({G("@i' <1> p")});
    auto r = saturate(k, kG, tight);
    CHECK(!r.ok);
  }
}

TEST_CASE("search finds the two-state witness for dia i and @i p") {
  auto prob = kripke_problem({P("(dia i' & @i' p)")});
  auto out = named_model_search(prob);
  REQUIRE(out.status == SearchStatus::found);
  const HybridModel& m = out.model;
  CHECK(satisfies(m, out.designated, *P("(dia i' & @i' p)")));
  int vi = m.val_noms.at("i");
  CHECK(set_member(m.val_props.at("p"), vi));
  CHECK(set_member(std::get<KripkeTx>(m.gamma[out.designated]).succ, vi));
  CHECK(oracles::brute_force_kripke_sat(P("(dia i' & @i' p)"), {}, {}));
}

TEST_CASE("transitive frames refute dia dia j & ~ dia j") {
  auto prob = kripke_problem({P("(dia (dia j') & ~ dia j')")},
                             {P("(dia (dia i') -> dia i')")});
  auto out = named_model_search(prob);
  CHECK(out.status == SearchStatus::exhausted);
  bool found = false;
  for (int n = 1; n <= 4 && !found; ++n) {
    HybridModel m;
    m.functor = FunctorKind::kripke;
    for (int s = 0; s < n; ++s) m.states.push_back("s" + std::to_string(s));
    m.gamma.assign(n, KripkeTx{0});
    std::vector<StateSet> succ(n, 0);
    for (;;) {
      for (int s = 0; s < n; ++s) m.gamma[s] = KripkeTx{succ[s]};
      bool transitive = true;
      for (int a = 0; a < n && transitive; ++a)
        for (int bb = 0; bb < n && transitive; ++bb)
          if (set_member(succ[a], bb) && (succ[bb] & ~succ[a]) != 0)
            transitive = false;
      if (transitive) {
        for (int vj = 0; vj < n && !found; ++vj) {
          m.val_noms["j"] = vj;
          if (truth_set(m, *P("(dia (dia j') & ~ dia j')")) != 0) found = true;
        }
      }
      int i = 0;
      while (i < n && succ[i] == full_set(n)) succ[i++] = 0;
      if (i == n) break;
      ++succ[i];
    }
  }
  CHECK(!found);
}

TEST_CASE("multigraph search under the 0/1 axioms yields small multiplicities") {
  NamedModelProblem prob;
  prob.sig = kG;
  prob.rules = RuleSet("none", {});
  prob.goal = {G("<0> p")};
  prob.pure_axioms = {G("~ <1> i'")};
  prob.bounds.max_states = 3;
  prob.bounds.max_multiplicity = 2;
  auto out = named_model_search(prob);
  REQUIRE(out.status == SearchStatus::found);
  for (const auto& t : out.model.gamma)
    for (std::uint64_t w : std::get<MultigraphTx>(t).weights) CHECK(w <= 1);
  auto rep = verify_named_model(out.model, out.designated, prob, &out.labels);
  CHECK(rep.ok());
}

TEST_CASE("verify flags broken frames and unnamed states") {
  auto prob = kripke_problem({P("(dia i' & @i' p)")},
                             {P("(dia (dia i') -> dia i')")});
  HybridModel m;
  m.functor = FunctorKind::kripke;
  m.states = {"s0", "s1", "s2"};
  m.gamma = {KripkeTx{0b010}, KripkeTx{0b100}, KripkeTx{0}};
  m.val_noms["i"] = 1;
  m.val_props["p"] = 0b010;
  m.validate();
  auto rep = verify_named_model(m, 0, prob);
  CHECK(!rep.frame_ok);
  CHECK(!rep.named_ok);
  CHECK(rep.goal_ok);
}

TEST_CASE("search output passes verification and stays 1-pasted") {
  testgen::Rng rng(99);
  testgen::FormulaGenOptions opt;
  opt.max_depth = 2;
  int found = 0;
  for (int iter = 0; iter < 120; ++iter) {
    FormulaRef goal = testgen::random_formula(rng, kK, opt);
    auto prob = kripke_problem({goal});
    auto out = named_model_search(prob);
    if (out.status != SearchStatus::found) continue;
    ++found;
    auto rep = verify_named_model(out.model, out.designated, prob, &out.labels);
    CAPTURE(to_string(goal));
    CHECK(rep.ok());
    std::set<int> named;
    for (const auto& [nom, s] : out.model.val_noms) named.insert(s);
    CHECK(static_cast<int>(named.size()) == out.model.num_states());
  }
  CHECK(found > 30);
}

TEST_CASE("desk-scale completeness against brute force, small corpus") {
  testgen::Rng rng(2468);
  testgen::FormulaGenOptions opt;
  opt.max_depth = 2;
  oracles::BruteForceOptions bopt;
  bopt.max_states = 3;
  std::vector<FormulaRef> corpus;
  for (int iter = 0; iter < 100; ++iter)
    corpus.push_back(testgen::random_formula(rng, kK, opt));
  // random draws are mostly satisfiable; pin some refutable shapes
  for (const char* s :
       {"(p & ~ p)", "(dia p & ~ dia p)", "@i' (p & ~ p)",
        "((dia i' & dia j') & (@i' ~ j' & (box i' & box j')))",
        "(((p & ~ q) & @i' (q & ~ p)) & i')"})
    corpus.push_back(P(s));
  int sat_n = 0, unsat_n = 0;
  for (const auto& goal : corpus) {
    bool brute = oracles::brute_force_kripke_sat(goal, {}, bopt);
    auto out = named_model_search(kripke_problem({goal}));
    CAPTURE(to_string(goal));
    if (brute) {
      REQUIRE(out.status == SearchStatus::found);
      ++sat_n;
    } else {
      CHECK(out.status == SearchStatus::exhausted);
      ++unsat_n;
    }
  }
  CHECK(sat_n > 20);
  CHECK(unsat_n >= 5);
}

TEST_CASE("multigraph-vs-kripke agreement on a small corpus") {
  testgen::Rng rng(1357);
  testgen::FormulaGenOptions opt;
  opt.max_depth = 2;
  opt.noms = {"i"};
  oracles::BruteForceOptions bopt;
  bopt.max_states = 2;
  bopt.max_multiplicity = 2;
  std::function<FormulaRef(const FormulaRef&)> graded_reading =
      [&](const FormulaRef& g) -> FormulaRef {
    std::vector<FormulaRef> args;
    for (const auto& a : g->args()) args.push_back(graded_reading(a));
    switch (g->kind()) {
      case FormulaKind::modal:
        if (g->name() == "dia") return Formula::modal("<0>", std::move(args));
        return Formula::neg(Formula::modal("<0>", {Formula::neg(args[0])}));
      case FormulaKind::negation: return Formula::neg(args[0]);
      case FormulaKind::conjunction: return Formula::conj(args[0], args[1]);
      case FormulaKind::at: return Formula::at(g->name(), args[0]);
      default: return g;
    }
  };
  for (int iter = 0; iter < 60; ++iter) {
    FormulaRef goal = testgen::random_formula(rng, kK, opt);
    FormulaRef graded_goal = graded_reading(goal);
    bool kripke_sat = oracles::brute_force_kripke_sat(goal, {}, bopt);
    std::vector<FormulaRef> axioms;
    for (const auto& nom : free_nominals(*goal))
      axioms.push_back(Formula::neg(Formula::modal("<1>", {Formula::nominal(nom)})));
    bool multi_sat =
        oracles::brute_force_multigraph_sat(graded_goal, {}, axioms, bopt);
    CAPTURE(to_string(goal));
    CHECK(kripke_sat == multi_sat);
  }
}

TEST_CASE("problem files parse into searches") {
  std::string text =
      "functor: kripke\n"
      "rules: K\n"
      "bounds: max_states=2\n"
      "axioms:\n"
      "tbox:\n"
      "goal:\n"
      "  (dia i' & @i' p)\n";
  std::istringstream in(text);
  NamedModelProblem prob = parse_named_model_problem(in);
  CHECK(prob.bounds.max_states == 2);
  REQUIRE(prob.goal.size() == 1);
  auto out = named_model_search(prob);
  CHECK(out.status == SearchStatus::found);
  std::string serialized = serialize_model(out.model);
  std::istringstream min(serialized);
  HybridModel m2 = parse_model(min);
  CHECK(satisfies(m2, out.designated, *prob.goal[0]));
}

TEST_CASE("impure axioms are rejected at problem load") {
  std::string text =
      "functor: kripke\n"
      "axioms:\n"
      "  (dia p -> p)\n"
      "goal:\n"
      "  p\n";
  std::istringstream in(text);
  CHECK_THROWS_AS(parse_named_model_problem(in), NotPureError);
}

TEST_CASE("a zero state budget reports a resource bound, not a refutation") {
  auto prob = kripke_problem({P("p")});
  prob.bounds.max_states = 0;
  auto out = named_model_search(prob);
  CHECK(out.status == SearchStatus::resource_bound);
}
