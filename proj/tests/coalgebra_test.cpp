#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <sstream>

#include "hycoa/axioms.hpp"
#include "hycoa/errors.hpp"
#include "hycoa/model.hpp"
#include "hycoa/parser.hpp"
#include "hycoa/semantics.hpp"
#include "support/generators.hpp"

using namespace hycoa;

namespace {

const Signature kK = Signature::kripke();
const Signature kG = Signature::graded();

HybridModel two_state_kripke() {
  // s0 -> {s0,s1}, s1 -> {}; p at s1; i names s0.
  HybridModel m;
  m.functor = FunctorKind::kripke;
  m.states = {"s0", "s1"};
  m.gamma = {KripkeTx{0b11}, KripkeTx{0}};
  m.val_props["p"] = 0b10;
  m.val_noms["i"] = 0;
  m.validate();
  return m;
}

Signature sig_for(FunctorKind f) {
  switch (f) {
    case FunctorKind::kripke: return Signature::kripke();
    case FunctorKind::multigraph: return Signature::graded();
    case FunctorKind::neighborhood: return Signature::neighborhood();
    case FunctorKind::monotone: return Signature::monotone();
    case FunctorKind::selection: return Signature::ck();
    case FunctorKind::game: return Signature::game();
  }
  return Signature::kripke();
}

const FunctorKind kAllFunctors[] = {
    FunctorKind::kripke,   FunctorKind::multigraph, FunctorKind::neighborhood,
    FunctorKind::monotone, FunctorKind::selection,  FunctorKind::game,
};

}  // namespace

TEST_CASE("satisfaction on the two-state kripke model") {
  HybridModel m = two_state_kripke();
  CHECK(satisfies(m, 1, *parse_formula("@i' (dia p)", kK)));
  CHECK(satisfies(m, 0, *parse_formula("@i' (dia p)", kK)));
  CHECK(truth_set(m, *parse_formula("dia p", kK)) == 0b01);
  CHECK(truth_set(m, *parse_formula("i'", kK)) == 0b01);
  CHECK(truth_set(m, *parse_formula("true", kK)) == 0b11);
}

TEST_CASE("graded satisfaction: 0/1 multigraphs validate ~ <1> i'") {
  HybridModel m;
  m.functor = FunctorKind::multigraph;
  m.states = {"s0", "s1"};
  m.gamma = {MultigraphTx{{1, 1}}, MultigraphTx{{0, 1}}};
  m.val_noms["i"] = 0;
  m.validate();
  FormulaRef f = parse_formula("~ <1> i'", kG);
  CHECK(satisfies(m, 0, *f));
  CHECK(satisfies(m, 1, *f));
  CHECK(model_satisfies_globally(m, {f}));
}

TEST_CASE("dn x. x holds everywhere, on every functor") {
  testgen::Rng rng(42);
  FormulaRef f = Formula::down("x", Formula::nominal("x"));
  for (FunctorKind fk : kAllFunctors) {
    testgen::ModelGenOptions opt;
    opt.num_states = fk == FunctorKind::game ? 2 : 3;
    HybridModel m = testgen::random_model(rng, fk, opt);
    CHECK(truth_set(m, *f) == full_set(m.num_states()));
  }
}

TEST_CASE("unbound nominal raises") {
  HybridModel m = two_state_kripke();
  CHECK_THROWS_AS(satisfies(m, 0, *parse_formula("k'", kK)), UnboundNominalError);
  CHECK_THROWS_AS(satisfies(m, 0, *parse_formula("@k' p", kK)), UnboundNominalError);
}

TEST_CASE("global satisfaction") {
  HybridModel m = two_state_kripke();
  CHECK(model_satisfies_globally(m, {parse_formula("true", kK)}));
  HybridModel total = m;
  total.gamma = {KripkeTx{0b10}, KripkeTx{0b01}};
  CHECK(model_satisfies_globally(total, {parse_formula("dia true", kK)}));
  CHECK(!model_satisfies_globally(m, {parse_formula("dia true", kK)}));

  HybridModel mg;
  mg.functor = FunctorKind::multigraph;
  mg.states = {"s0", "s1"};
  mg.gamma = {MultigraphTx{{0, 2}}, MultigraphTx{{0, 0}}};
  mg.val_noms["i"] = 1;
  mg.validate();
  CHECK(!model_satisfies_globally(mg, {parse_formula("~ <1> i'", kG)}));
}

TEST_CASE("frame check: transitivity axiom fails on the 2-cycle") {
  HybridModel frame;
  frame.functor = FunctorKind::kripke;
  frame.states = {"s0", "s1"};
  frame.gamma = {KripkeTx{0b10}, KripkeTx{0b01}};
  frame.validate();
  auto res = frame_satisfies_pure(frame, {parse_formula("(dia (dia i') -> dia i')", kK)});
  REQUIRE(!res.holds);
  CHECK(res.axiom_index == 0);
  REQUIRE(res.assignment.count("i"));
  // i |-> s0 fails at state s0 (and symmetrically for s1).
  CHECK(res.assignment.at("i") == res.state);
}

TEST_CASE("frame check: reflexive multigraph validates i -> <0> i") {
  HybridModel frame;
  frame.functor = FunctorKind::multigraph;
  frame.states = {"s0", "s1"};
  frame.gamma = {MultigraphTx{{1, 2}}, MultigraphTx{{0, 3}}};
  frame.validate();
  CHECK(frame_satisfies_pure(frame, {parse_formula("(i' -> <0> i')", kG)}).holds);
  HybridModel broken = frame;
  broken.gamma[1] = MultigraphTx{{5, 0}};
  CHECK(!frame_satisfies_pure(broken, {parse_formula("(i' -> <0> i')", kG)}).holds);
}

TEST_CASE("frame check: @i' i' is valid on every frame") {
  testgen::Rng rng(5);
  for (FunctorKind fk : kAllFunctors) {
    testgen::ModelGenOptions opt;
    opt.num_states = fk == FunctorKind::game ? 2 : 3;
    HybridModel m = testgen::random_model(rng, fk, opt);
    CHECK(frame_satisfies_pure(m, {parse_formula("@i' i'", sig_for(fk))}).holds);
  }
}

TEST_CASE("frame check rejects impure axioms") {
  HybridModel frame = two_state_kripke();
  CHECK_THROWS_AS(frame_satisfies_pure(frame, {parse_formula("@i' p", kK)}),
                  NotPureError);
}

TEST_CASE("kripke_to_multigraph is the indicator multigraph") {
  HybridModel m;
  m.functor = FunctorKind::kripke;
  m.states = {"s0", "s1"};
  m.gamma = {KripkeTx{0b10}, KripkeTx{0}};
  m.val_noms["i"] = 1;
  m.validate();
  HybridModel mg = kripke_to_multigraph(m);
  CHECK(std::get<MultigraphTx>(mg.gamma[0]).weights == std::vector<std::uint64_t>{0, 1});
  CHECK(std::get<MultigraphTx>(mg.gamma[1]).weights == std::vector<std::uint64_t>{0, 0});
  CHECK(model_satisfies_globally(mg, {parse_formula("~ <1> i'", kG)}));
}

namespace {

// dia |-> <0>, box |-> ~ <0> ~ : the graded reading of the basic language.
FormulaRef to_graded_language(const FormulaRef& f) {
  std::vector<FormulaRef> args;
  for (const auto& a : f->args()) args.push_back(to_graded_language(a));
  switch (f->kind()) {
    case FormulaKind::modal:
      if (f->name() == "dia") return Formula::modal("<0>", std::move(args));
      if (f->name() == "box")
        return Formula::neg(Formula::modal("<0>", {Formula::neg(args[0])}));
      return Formula::modal(f->name(), std::move(args));
    case FormulaKind::negation:
      return Formula::neg(args[0]);
    case FormulaKind::conjunction:
      return Formula::conj(args[0], args[1]);
    case FormulaKind::at:
      return Formula::at(f->name(), args[0]);
    case FormulaKind::down:
      return Formula::down(f->name(), args[0]);
    default:
      return f;
  }
}

}  // namespace

TEST_CASE("kripke_to_multigraph preserves the graded reading, depth <= 4") {
  testgen::Rng rng(123);
  testgen::FormulaGenOptions fopt;
  fopt.max_depth = 4;
  for (int iter = 0; iter < 300; ++iter) {
    testgen::ModelGenOptions mopt;
    mopt.num_states = 1 + rng.pick(3);
    HybridModel m = testgen::random_model(rng, FunctorKind::kripke, mopt);
    HybridModel mg = kripke_to_multigraph(m);
    FormulaRef f = testgen::random_formula(rng, kK, fopt);
    CAPTURE(to_string(f));
    CHECK(truth_set(m, *f) == truth_set(mg, *to_graded_language(f)));
  }
}

TEST_CASE("naturality of every shipped lifting, |X|,|Y| <= 3") {
  SearchBounds b;
  b.max_multiplicity = 2;
  for (FunctorKind fk : kAllFunctors) {
    if (fk == FunctorKind::selection) continue;  // factored variant below
    Signature sig = sig_for(fk);
    Functor functor(fk, sig.agents());
    for (int nx = 1; nx <= 3; ++nx)
      for (int ny = 1; ny <= 3; ++ny) {
        std::vector<int> f(nx, 0);
        for (;;) {
          for (const auto& op : sig.operators()) {
            std::vector<StateSet> args_y(op.arity, 0);
            std::function<bool(int)> loop = [&](int k) -> bool {
              if (k == op.arity) {
                std::vector<StateSet> args_x(op.arity);
                for (int a = 0; a < op.arity; ++a) {
                  StateSet pre = 0;
                  for (int x = 0; x < nx; ++x)
                    if (set_member(args_y[a], f[x])) pre |= 1ULL << x;
                  args_x[a] = pre;
                }
                bool ok = true;
                functor.enumerate_tx(nx, b, [&](const TxElement& t) {
                  bool lhs = functor.lifting_member(op.sem, t, args_x, nx);
                  TxElement tf = functor.map_tx(f, nx, ny, t);
                  bool rhs = functor.lifting_member(op.sem, tf, args_y, ny);
                  if (lhs != rhs) ok = false;
                  return ok;
                });
                if (!ok) {
                  CAPTURE(to_string(fk));
                  CAPTURE(op.name);
                  REQUIRE(ok);
                }
                return true;
              }
              for (StateSet s = 0;; ++s) {
                args_y[k] = s;
                if (!loop(k + 1)) return false;
                if (s == full_set(ny)) break;
              }
              return true;
            };
            loop(0);
          }
          int i = 0;
          while (i < nx && f[i] == ny - 1) f[i++] = 0;
          if (i == nx) break;
          ++f[i];
        }
      }
  }
}

TEST_CASE("naturality of the selection liftings (tables factored per entry)") {
  // Membership of [[=>]] and [[>]] at (A,B) depends on the table only
  // through its value at A, so quantifying over that value is exhaustive.
  Signature sig = Signature::ck();
  Functor functor(FunctorKind::selection);
  for (int nx = 1; nx <= 3; ++nx)
    for (int ny = 1; ny <= 3; ++ny) {
      std::vector<int> f(nx, 0);
      for (;;) {
        for (const auto& op : sig.operators()) {
          for (StateSet a = 0;; ++a) {
            for (StateSet bset = 0;; ++bset) {
              StateSet pre_a = 0, pre_b = 0;
              for (int x = 0; x < nx; ++x) {
                if (set_member(a, f[x])) pre_a |= 1ULL << x;
                if (set_member(bset, f[x])) pre_b |= 1ULL << x;
              }
              for (StateSet v = 0;; ++v) {
                SelectionTx t;
                t.entries.emplace_back(pre_a, v);
                std::vector<StateSet> ax = {pre_a, pre_b};
                std::vector<StateSet> ay = {a, bset};
                bool lhs = functor.lifting_member(op.sem, t, ax, nx);
                TxElement tf = functor.map_tx(f, nx, ny, t);
                bool rhs = functor.lifting_member(op.sem, tf, ay, ny);
                REQUIRE(lhs == rhs);
                if (v == full_set(nx)) break;
              }
              if (bset == full_set(ny)) break;
            }
            if (a == full_set(ny)) break;
          }
        }
        int i = 0;
        while (i < nx && f[i] == ny - 1) f[i++] = 0;
        if (i == nx) break;
        ++f[i];
      }
    }
}

TEST_CASE("monotone enumeration yields only upward-closed collections") {
  Functor m(FunctorKind::monotone);
  SearchBounds b;
  int count = 0;
  m.enumerate_tx(3, b, [&](const TxElement& t) {
    CHECK(is_upward_closed(std::get<NeighborhoodTx>(t), 3));
    ++count;
    return true;
  });
  CHECK(count == 20);  // Dedekind number M(3)
}

TEST_CASE("check_bounded: shipped boundedness facts") {
  SearchBounds b;
  Functor kripke(FunctorKind::kripke);
  Functor multi(FunctorKind::multigraph);
  Functor sel(FunctorKind::selection);

  for (int n = 1; n <= 3; ++n) {
    CHECK(check_bounded(kripke, Signature::parse_op_name("dia").value(), 1, 1, n, 0, b));
    for (std::uint32_t k = 0; k <= 3; ++k) {
      auto op = Signature::parse_op_name("<" + std::to_string(k) + ">").value();
      CHECK(check_bounded(multi, op, 1, k + 1, n, 0, b));
    }
    auto gt = Signature::parse_op_name(">").value();
    CHECK(check_bounded(sel, gt, 2, 1, n, 1, b));
  }
  // box is not 1-bounded: t = {x,y} is below A = {x,y} but below no singleton.
  CHECK(!check_bounded(kripke, Signature::parse_op_name("box").value(), 1, 1, 2, 0, b));
  // <1> is not 1-bounded.
  CHECK(!check_bounded(multi, Signature::parse_op_name("<1>").value(), 1, 1, 2, 0, b));
}

TEST_CASE("check_bounded: no monotone reading of dia or box is 1-bounded") {
  // S = {{x},{y},{x,y}} is upward closed, lies in [[dia]]({x,y}) under the
  // dual reading, but in no singleton slice; box fails on up({x,y}).
  Functor mono(FunctorKind::monotone);
  SearchBounds b;
  CHECK(!check_bounded(mono, Signature::parse_op_name("dia").value(), 1, 1, 2, 0, b));
  CHECK(!check_bounded(mono, Signature::parse_op_name("box").value(), 1, 1, 2, 0, b));
}

TEST_CASE("presburger threshold boundedness") {
  Functor multi(FunctorKind::multigraph);
  SearchBounds b;
  auto op = Signature::parse_op_name("sum{3*#,1*#}>=4").value();
  for (int n = 1; n <= 3; ++n) {
    CHECK(check_bounded(multi, op, 2, 4, n, 0, b));
    CHECK(check_bounded(multi, op, 2, 4, n, 1, b));
  }
  CHECK(!check_bounded(multi, op, 2, 1, 2, 1, b));
}

TEST_CASE("axiom schemes and mob and DA are valid on random models") {
  testgen::Rng rng(2026);
  for (FunctorKind fk : kAllFunctors) {
    Signature sig = sig_for(fk);
    testgen::FormulaGenOptions fopt;
    fopt.max_depth = 2;
    for (int iter = 0; iter < 60; ++iter) {
      testgen::ModelGenOptions mopt;
      mopt.num_states = 1 + rng.pick(fk == FunctorKind::game ? 2 : 3);
      HybridModel m = testgen::random_model(rng, fk, mopt);
      const StateSet full = full_set(m.num_states());

      Substitution inst;
      inst.prop["p"] = testgen::random_formula(rng, sig, fopt);
      inst.prop["q"] = testgen::random_formula(rng, sig, fopt);
      inst.nominal["i"] = rng.flip() ? "i" : "j";
      inst.nominal["j"] = rng.flip() ? "i" : "j";
      for (const auto& scheme : at_axiom_schemes()) {
        FormulaRef f = substitute(scheme.templ, inst);
        CAPTURE(scheme.name);
        CAPTURE(to_string(f));
        CHECK(truth_set(m, *f) == full);
      }
      for (const auto& op : sig.operators()) {
        Substitution mi = inst;
        for (int k = 1; k <= op.arity; ++k)
          mi.prop["q" + std::to_string(k)] = testgen::random_formula(rng, sig, fopt);
        FormulaRef f = substitute(mob_scheme(op).templ, mi);
        CAPTURE(to_string(f));
        CHECK(truth_set(m, *f) == full);
      }
      testgen::FormulaGenOptions dopt = fopt;
      dopt.allow_down = true;
      FormulaRef phi = testgen::random_formula(rng, sig, dopt);
      FormulaRef da = da_instance("i", "j", phi);
      CAPTURE(to_string(da));
      CHECK(truth_set(m, *da) == full);
    }
  }
}

TEST_CASE("mob on kripke implies the back axiom") {
  testgen::Rng rng(31337);
  testgen::FormulaGenOptions fopt;
  fopt.max_depth = 2;
  for (int iter = 0; iter < 200; ++iter) {
    testgen::ModelGenOptions mopt;
    mopt.num_states = 1 + rng.pick(3);
    HybridModel m = testgen::random_model(rng, FunctorKind::kripke, mopt);
    FormulaRef phi = testgen::random_formula(rng, kK, fopt);
    FormulaRef back = Formula::implies(
        Formula::at("i", phi), Formula::modal("box", {Formula::at("i", phi)}));
    CHECK(truth_set(m, *back) == full_set(m.num_states()));
  }
}

TEST_CASE("satisfaction is invariant under renaming of dn-bound nominals") {
  testgen::Rng rng(888);
  testgen::FormulaGenOptions fopt;
  fopt.max_depth = 4;
  fopt.allow_down = true;
  std::function<FormulaRef(const FormulaRef&, int&)> alpha =
      [&](const FormulaRef& h, int& ctr) -> FormulaRef {
    if (h->kind() == FormulaKind::down) {
      std::string b = "z" + std::to_string(ctr++);
      FormulaRef body = substitute_nominal(h->arg(0), h->name(), b);
      return Formula::down(b, alpha(body, ctr));
    }
    std::vector<FormulaRef> args;
    for (const auto& a : h->args()) args.push_back(alpha(a, ctr));
    switch (h->kind()) {
      case FormulaKind::negation: return Formula::neg(args[0]);
      case FormulaKind::conjunction: return Formula::conj(args[0], args[1]);
      case FormulaKind::modal: return Formula::modal(h->name(), std::move(args));
      case FormulaKind::at: return Formula::at(h->name(), args[0]);
      default: return h;
    }
  };
  for (int iter = 0; iter < 200; ++iter) {
    testgen::ModelGenOptions mopt;
    mopt.num_states = 1 + rng.pick(3);
    HybridModel m = testgen::random_model(rng, FunctorKind::kripke, mopt);
    FormulaRef f = testgen::random_formula(rng, kK, fopt);
    int ctr = 0;
    FormulaRef renamed = alpha(f, ctr);
    CAPTURE(to_string(f));
    CHECK(alpha_equal(f, renamed));
    CHECK(truth_set(m, *f) == truth_set(m, *renamed));
  }
}

TEST_CASE("model file round trip") {
  std::string text =
      "functor: game\n"
      "states: s0 s1\n"
      "agents: a b\n"
      "strat s0 a: 2\n"
      "strat s0 b: 1\n"
      "out s0: (1,1)->s1 (2,1)->s0\n"
      "strat s1 a: 1\n"
      "strat s1 b: 1\n"
      "out s1: (1,1)->s1\n"
      "val p: s1\n"
      "name i': s0\n";
  std::istringstream in(text);
  HybridModel m = parse_model(in);
  CHECK(m.num_states() == 2);
  std::string out = serialize_model(m);
  std::istringstream in2(out);
  HybridModel m2 = parse_model(in2);
  CHECK(serialize_model(m2) == out);
  CHECK(truth_set(m, *parse_formula("[a] p", Signature::game())) == 0b11);
  CHECK(truth_set(m, *parse_formula("[] p", Signature::game())) == 0b10);
}

TEST_CASE("monotone model files reject non-upward-closed collections") {
  std::string text =
      "functor: monotone\n"
      "states: s0 s1\n"
      "nbhd s0: {s0}\n"
      "nbhd s1: {s0} {s0 s1}\n";
  std::istringstream in(text);
  CHECK_THROWS_AS(parse_model(in), ConfigError);
}
