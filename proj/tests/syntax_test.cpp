#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hycoa/formula.hpp"
#include "hycoa/parser.hpp"
#include "hycoa/signature.hpp"
#include "hycoa/substitution.hpp"
#include "support/generators.hpp"

using namespace hycoa;

namespace {
const Signature kSig = Signature::kripke();
const Signature kGraded = Signature::graded();
const Signature kCk = Signature::ck();

FormulaRef P(const std::string& s, const Signature& sig = kSig) {
  return parse_formula(s, sig);
}
}  // namespace

TEST_CASE("parse basic shapes") {
  FormulaRef f = P("@i' (dia p)");
  REQUIRE(f->kind() == FormulaKind::at);
  CHECK(f->name() == "i");
  CHECK(f->arg(0)->kind() == FormulaKind::modal);
  CHECK(f->arg(0)->name() == "dia");
  CHECK(f->arg(0)->arg(0)->kind() == FormulaKind::prop_var);

  FormulaRef g = parse_formula("~ <1> i'", kGraded);
  REQUIRE(g->kind() == FormulaKind::negation);
  CHECK(g->arg(0)->name() == "<1>");
  CHECK(g->arg(0)->arg(0)->kind() == FormulaKind::nominal);
  CHECK(g->arg(0)->arg(0)->name() == "i");

  FormulaRef d = P("dn x'. @x' (dia x')");
  REQUIRE(d->kind() == FormulaKind::down);
  CHECK(d->name() == "x");
  CHECK(d->arg(0)->kind() == FormulaKind::at);
  CHECK(d->arg(0)->arg(0)->kind() == FormulaKind::modal);
}

TEST_CASE("parse sugar desugars to negation and conjunction") {
  CHECK(equal(P("(p -> q)"),
              Formula::implies(Formula::prop("p"), Formula::prop("q"))));
  CHECK(equal(P("(p | q)"),
              Formula::disj(Formula::prop("p"), Formula::prop("q"))));
  CHECK(equal(P("(p <-> q)"),
              Formula::iff(Formula::prop("p"), Formula::prop("q"))));
  CHECK(equal(P("true"), Formula::truth()));
  CHECK(equal(P("false"), Formula::falsum()));
}

TEST_CASE("parse conditional and coalition and presburger operators") {
  FormulaRef c = parse_formula("(p => q)", kCk);
  REQUIRE(c->kind() == FormulaKind::modal);
  CHECK(c->name() == "=>");
  CHECK(c->args().size() == 2);

  FormulaRef gt = parse_formula("(p > q)", kCk);
  CHECK(gt->name() == ">");

  FormulaRef co = parse_formula("[a,b] p", Signature::game());
  CHECK(co->name() == "[a,b]");

  FormulaRef pr = parse_formula("sum{1*#,1*#}>=2(p, q)", Signature::presburger());
  CHECK(pr->name() == "sum{1*#,1*#}>=2");
  CHECK(pr->args().size() == 2);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(P("(p &"), ParseError);
  CHECK_THROWS_AS(P("frob(p)") /* arity */, ParseError);
  CHECK_THROWS_AS(parse_formula("<1> p", kSig), ParseError);  // not declared
  CHECK_THROWS_AS(P("box(p, q)"), ParseError);                // arity mismatch
  CHECK_THROWS_AS(P("@p"), ParseError);                       // @ needs a nominal
}

TEST_CASE("print atomic and grammar-inverse examples") {
  CHECK(to_string(Formula::nominal("i")) == "i'");
  CHECK(to_string(Formula::at("i", Formula::neg(Formula::prop("p")))) == "@i' (~ p)");
  CHECK(to_string(Formula::down("x", Formula::modal("dia", {Formula::nominal("x")}))) ==
        "dn x'. (dia x')");
  CHECK(to_string(P("true")) == "true");
  CHECK(to_string(P("(p -> q)")) == "(p -> q)");
  CHECK(to_string(P("(p <-> q)")) == "(p <-> q)");
  CHECK(to_string(P("@i' (dia p)")) == "@i' (dia p)");
}

TEST_CASE("round trip: parse(print(f)) is alpha-equivalent to f") {
  testgen::Rng rng(20260809);
  testgen::FormulaGenOptions opt;
  opt.max_depth = 6;
  opt.allow_down = true;
  opt.allow_at = true;
  for (int iter = 0; iter < 400; ++iter) {
    const Signature& sig = (iter % 3 == 0) ? kGraded : (iter % 3 == 1 ? kSig : kCk);
    FormulaRef f = testgen::random_formula(rng, sig, opt);
    FormulaRef g = parse_formula(to_string(f), sig);
    CAPTURE(to_string(f));
    CHECK(alpha_equal(f, g));
  }
}

TEST_CASE("print is idempotent through reparsing") {
  testgen::Rng rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    FormulaRef f = testgen::random_formula(rng, kSig, {});
    std::string once = to_string(f);
    std::string twice = to_string(parse_formula(once, kSig));
    CHECK(once == twice);
  }
}

TEST_CASE("substitute: bound occurrences are untouched") {
  // (dn j. dia j)[i/j] keeps the bound j.
  FormulaRef f = Formula::down("j", Formula::modal("dia", {Formula::nominal("j")}));
  FormulaRef g = substitute_nominal(f, "j", "i");
  CHECK(alpha_equal(f, g));
}

TEST_CASE("substitute: free occurrences, both parts simultaneously") {
  Substitution s;
  s.prop["p"] = Formula::nominal("k");
  s.nominal["j"] = "i";
  FormulaRef f = Formula::at("j", Formula::prop("p"));
  FormulaRef expect = Formula::at("i", Formula::nominal("k"));
  CHECK(equal(substitute(f, s), expect));
}

TEST_CASE("substitute: capture is avoided by renaming the binder") {
  // (dn i. (j & dia i))[i/j] must not capture the incoming i.
  FormulaRef body = Formula::conj(Formula::nominal("j"),
                                  Formula::modal("dia", {Formula::nominal("i")}));
  FormulaRef f = Formula::down("i", body);
  FormulaRef g = substitute_nominal(f, "j", "i");
  REQUIRE(g->kind() == FormulaKind::down);
  CHECK(g->name() != "i");
  auto parts = g->arg(0);
  CHECK(parts->arg(0)->name() == "i");             // the substituted nominal
  CHECK(parts->arg(1)->arg(0)->name() == g->name());  // still bound
  CHECK(free_nominals(*g) == std::set<std::string>{"i"});
}

TEST_CASE("substitute builds the binder axiom instance shape") {
  // @i'((dn j. dia j') <-> dia i')
  FormulaRef phi = Formula::modal("dia", {Formula::nominal("j")});
  FormulaRef inst = Formula::at(
      "i", Formula::iff(Formula::down("j", phi), substitute_nominal(phi, "j", "i")));
  CHECK(to_string(inst) == "@i' ((dn j'. (dia j')) <-> (dia i'))");
}

TEST_CASE("substitution composition on disjoint propositional domains") {
  testgen::Rng rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    testgen::FormulaGenOptions opt;
    opt.vars = {"p", "q", "r"};
    FormulaRef f = testgen::random_formula(rng, kSig, opt);
    Substitution s1, s2;
    s1.prop["p"] = testgen::random_formula(rng, kSig, opt);
    s2.prop["q"] = testgen::random_formula(rng, kSig, opt);
    // (f s1) s2 == f (s1;s2) when dom(s1) and dom(s2) are disjoint and
    // s2 is applied to s1's replacements.
    Substitution combined;
    combined.prop["p"] = substitute(s1.prop["p"], s2);
    combined.prop["q"] = s2.prop["q"];
    CHECK(equal(substitute(substitute(f, s1), s2), substitute(f, combined)));
  }
}

TEST_CASE("free_nominals") {
  CHECK(free_nominals(*P("dia (dia i')")) == std::set<std::string>{"i"});
  CHECK(free_nominals(*P("dn i'. @i' p")).empty());
  FormulaRef sym = parse_formula("((i' & <1> j') -> @j' (<1> i'))", kGraded);
  CHECK(free_nominals(*sym) == std::set<std::string>{"i", "j"});
}

TEST_CASE("free_nominals after substitution shrinks correctly") {
  testgen::Rng rng(3);
  testgen::FormulaGenOptions opt;
  opt.noms = {"i", "j"};
  opt.allow_down = true;
  for (int iter = 0; iter < 300; ++iter) {
    FormulaRef f = testgen::random_formula(rng, kSig, opt);
    auto fn = free_nominals(*f);
    if (!fn.count("j")) continue;
    auto after = free_nominals(*substitute_nominal(f, "j", "i"));
    std::set<std::string> allowed = fn;
    allowed.erase("j");
    allowed.insert("i");
    for (const auto& n : after) CHECK(allowed.count(n));
    CHECK(!after.count("j"));
  }
}

TEST_CASE("is_pure") {
  CHECK(is_pure(*P("(dia (dia i') -> dia i')")));
  CHECK(!is_pure(*P("@i' p")));
  FormulaRef cond = parse_formula("((p > (p > i')) -> (p > i'))", kCk);
  CHECK(!is_pure(*cond));
  FormulaRef cond_pure = parse_formula("((j' > (j' > i')) -> (j' > i'))", kCk);
  CHECK(is_pure(*cond_pure));
}

TEST_CASE("fresh_nominal takes the lowest unused index") {
  CHECK(fresh_nominal({}) == "i0");
  CHECK(fresh_nominal({"i0"}) == "i1");
  CHECK(fresh_nominal({"i0", "i1", "i2"}) == "i3");
  CHECK(fresh_nominal({"i1"}) == "i0");
}

TEST_CASE("signature file round trip") {
  std::string path = std::string(HYCOA_FIXTURE_DIR) + "/presburger.sig";
  Signature sig = Signature::load_file(path, FunctorKind::multigraph);
  const OperatorDecl* op = sig.find("sum{3*#,1*#}>=4");
  REQUIRE(op != nullptr);
  CHECK(op->arity == 2);
  CHECK(op->bounds[0].bounded);
  CHECK(op->bounds[0].k == 4);
  CHECK(op->sem.kind == OpKind::presburger);
  CHECK(op->sem.coefficients == std::vector<std::uint64_t>{3, 1});
  CHECK(op->sem.threshold == 4);
}

TEST_CASE("negative coefficients are rejected at signature load") {
  CHECK(!Signature::parse_op_name("sum{0*#}>=3").has_value());
  CHECK(!Signature::parse_op_name("sum{-2*#}>=3").has_value());
  CHECK(!Signature::parse_op_name("sum{1*#}>=0").has_value());
}
