#include "hycoa/proof.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hycoa/errors.hpp"
#include "hycoa/parser.hpp"

namespace hycoa {

bool is_tautology(const Formula& f) {
  // Maximal non-~/& subformulas are the atoms, compared structurally.
  std::vector<const Formula*> atoms;
  std::function<void(const Formula&)> collect = [&](const Formula& g) {
    if (g.kind() == FormulaKind::negation || g.kind() == FormulaKind::conjunction) {
      for (const auto& a : g.args()) collect(*a);
      return;
    }
    for (const Formula* a : atoms)
      if (compare(*a, g) == 0) return;
    atoms.push_back(&g);
  };
  collect(f);
  if (atoms.size() > 20) throw ResourceBoundError("tautology check: too many atoms");

  std::function<bool(const Formula&, std::uint64_t)> eval =
      [&](const Formula& g, std::uint64_t v) -> bool {
    if (g.kind() == FormulaKind::negation) return !eval(*g.arg(0), v);
    if (g.kind() == FormulaKind::conjunction)
      return eval(*g.arg(0), v) && eval(*g.arg(1), v);
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (compare(*atoms[i], g) == 0) return (v >> i) & 1;
    return false;
  };
  const std::uint64_t num = 1ULL << atoms.size();
  for (std::uint64_t v = 0; v < num; ++v)
    if (!eval(f, v)) return false;
  return true;
}

namespace {

struct Checker {
  const ProofScript& script;
  std::vector<bool> tainted;
  int failed_line = 0;
  std::string reason;

  bool fail(int line, const std::string& code) {
    failed_line = line;
    reason = code;
    return false;
  }

  std::set<std::string> context_nominals() const {
    std::set<std::string> out;
    for (const auto& f : script.tbox) collect_free_nominals(*f, &out);
    for (const auto& f : script.local) collect_free_nominals(*f, &out);
    for (const auto& f : script.pure_axioms) collect_free_nominals(*f, &out);
    return out;
  }

  bool ref_ok(int target, int current) const { return target >= 1 && target < current; }

  bool check_line(int no) {
    const ProofLine& ln = script.lines[no - 1];
    const Justification& j = ln.just;
    const FormulaRef& cur = ln.formula;
    using K = Justification::Kind;
    switch (j.kind) {
      case K::taut: {
        try {
          if (!is_tautology(*cur)) return fail(no, "taut-not-tautology");
        } catch (const ResourceBoundError&) {
          return fail(no, "taut-too-large");
        }
        return true;
      }
      case K::axiom_instance: {
        auto scheme = find_axiom_scheme(j.axiom_name, script.sig);
        if (!scheme) return fail(no, "unknown-axiom");
        if (!alpha_equal(substitute(scheme->templ, j.sub), cur))
          return fail(no, "axiom-mismatch");
        return true;
      }
      case K::pure_axiom: {
        if (j.index < 1 || j.index > static_cast<int>(script.pure_axioms.size()))
          return fail(no, "bad-index");
        FormulaRef inst = substitute(script.pure_axioms[j.index - 1], j.sub);
        if (!alpha_equal(inst, cur)) return fail(no, "pure-mismatch");
        return true;
      }
      case K::tbox: {
        if (j.index < 1 || j.index > static_cast<int>(script.tbox.size()))
          return fail(no, "bad-index");
        if (!alpha_equal(script.tbox[j.index - 1], cur)) return fail(no, "tbox-mismatch");
        return true;
      }
      case K::local: {
        if (j.index < 1 || j.index > static_cast<int>(script.local.size()))
          return fail(no, "bad-index");
        if (!alpha_equal(script.local[j.index - 1], cur))
          return fail(no, "local-mismatch");
        tainted[no - 1] = true;
        return true;
      }
      case K::mp: {
        if (!ref_ok(j.premise_line, no) || !ref_ok(j.implication_line, no))
          return fail(no, "bad-line-ref");
        FormulaRef expect =
            Formula::implies(script.lines[j.premise_line - 1].formula, cur);
        if (!alpha_equal(script.lines[j.implication_line - 1].formula, expect))
          return fail(no, "mp-mismatch");
        tainted[no - 1] =
            tainted[j.premise_line - 1] || tainted[j.implication_line - 1];
        return true;
      }
      case K::at_gen: {
        if (!ref_ok(j.premise_line, no)) return fail(no, "bad-line-ref");
        if (tainted[j.premise_line - 1]) return fail(no, "global-rule-on-local-line");
        FormulaRef expect =
            Formula::at(j.nominal, script.lines[j.premise_line - 1].formula);
        if (!alpha_equal(expect, cur)) return fail(no, "atgen-mismatch");
        return true;
      }
      case K::rule_instance: {
        if (j.index < 1 || j.index > static_cast<int>(script.rules.rules().size()))
          return fail(no, "bad-index");
        if (!ref_ok(j.premise_line, no)) return fail(no, "bad-line-ref");
        if (tainted[j.premise_line - 1]) return fail(no, "global-rule-on-local-line");
        const OneStepRule& rule = script.rules.rules()[j.index - 1];
        if (!alpha_equal(substitute(rule.premise, j.sub),
                         script.lines[j.premise_line - 1].formula))
          return fail(no, "rule-premise-mismatch");
        if (!alpha_equal(substitute(rule.conclusion, j.sub), cur))
          return fail(no, "rule-conclusion-mismatch");
        return true;
      }
      case K::name: {
        if (!ref_ok(j.premise_line, no)) return fail(no, "bad-line-ref");
        if (tainted[j.premise_line - 1]) return fail(no, "global-rule-on-local-line");
        FormulaRef expect = Formula::implies(Formula::nominal(j.nominal), cur);
        if (!alpha_equal(script.lines[j.premise_line - 1].formula, expect))
          return fail(no, "name-shape");
        std::set<std::string> avoid = free_nominals(*cur);
        std::set<std::string> ctx = context_nominals();
        avoid.insert(ctx.begin(), ctx.end());
        if (avoid.count(j.nominal)) return fail(no, "name-side-condition");
        return true;
      }
      case K::paste: {
        if (!ref_ok(j.premise_line, no)) return fail(no, "bad-line-ref");
        if (tainted[j.premise_line - 1]) return fail(no, "global-rule-on-local-line");
        const OperatorDecl* op = script.sig.find(j.paste_op);
        if (!op) return fail(no, "paste-unknown-op");
        int designated = -1;
        for (int a = 0; a < op->arity; ++a)
          if (op->bounds[a].bounded &&
              op->bounds[a].k == static_cast<std::uint32_t>(j.paste_k)) {
            designated = a;
            break;
          }
        if (designated < 0) return fail(no, "paste-unbounded-op");
        if (static_cast<int>(j.witnesses.size()) != j.paste_k)
          return fail(no, "paste-arity");

        // current line: @_i op(..phi..) -> psi
        FormulaRef ante, psi;
        if (!match_implies(*cur, &ante, &psi)) return fail(no, "paste-shape");
        if (ante->kind() != FormulaKind::at ||
            ante->arg(0)->kind() != FormulaKind::modal ||
            ante->arg(0)->name() != op->name)
          return fail(no, "paste-shape");
        const std::string at_nominal = ante->name();
        const FormulaRef modal = ante->arg(0);
        FormulaRef phi = modal->arg(designated);

        std::set<std::string> seen;
        std::set<std::string> forbidden = free_nominals(*phi);
        std::set<std::string> psi_noms = free_nominals(*psi);
        forbidden.insert(psi_noms.begin(), psi_noms.end());
        forbidden.insert(at_nominal);
        std::set<std::string> ctx = context_nominals();
        forbidden.insert(ctx.begin(), ctx.end());
        for (const auto& w : j.witnesses) {
          if (!seen.insert(w).second) return fail(no, "paste-freshness");
          if (forbidden.count(w)) return fail(no, "paste-freshness");
        }

        std::vector<FormulaRef> nom_refs;
        for (const auto& w : j.witnesses) nom_refs.push_back(Formula::nominal(w));
        std::vector<FormulaRef> conjuncts;
        for (const auto& w : j.witnesses) conjuncts.push_back(Formula::at(w, phi));
        std::vector<FormulaRef> args = modal->args();
        args[designated] = Formula::disj_all(nom_refs);
        conjuncts.push_back(Formula::at(at_nominal, Formula::modal(op->name, args)));
        FormulaRef expect = Formula::implies(Formula::conj_all(conjuncts), psi);
        if (!alpha_equal(script.lines[j.premise_line - 1].formula, expect))
          return fail(no, "paste-premise-mismatch");
        return true;
      }
      case K::da: {
        if (!j.da_phi) return fail(no, "da-mismatch");
        if (!alpha_equal(da_instance(j.da_i, j.da_j, j.da_phi), cur))
          return fail(no, "da-mismatch");
        return true;
      }
    }
    return fail(no, "unknown-justification");
  }
};

}  // namespace

ProofVerdict check_proof(const ProofScript& script) {
  ProofVerdict v;
  if (script.lines.empty()) {
    v.reason = "empty-script";
    return v;
  }
  for (const auto& a : script.pure_axioms)
    if (!is_pure(*a)) {
      v.reason = "axiom-not-pure";
      return v;
    }
  Checker c{script, std::vector<bool>(script.lines.size(), false)};
  for (int no = 1; no <= static_cast<int>(script.lines.size()); ++no) {
    if (!c.check_line(no)) {
      v.line = c.failed_line;
      v.reason = c.reason;
      return v;
    }
  }
  v.accepted = true;
  v.final_formula = script.lines.back().formula;
  v.final_uses_local = c.tainted.back();
  return v;
}

bool check_derives(const std::vector<FormulaRef>& tbox,
                   const std::vector<FormulaRef>& local, const FormulaRef& goal,
                   const ProofScript& script) {
  ProofScript s = script;
  s.tbox = tbox;
  s.local = local;
  ProofVerdict v = check_proof(s);
  if (!v.accepted) return false;
  if (!v.final_uses_local && alpha_equal(v.final_formula, goal)) return true;
  FormulaRef ante, cons;
  if (!match_implies(*v.final_formula, &ante, &cons)) return false;
  if (!alpha_equal(cons, goal)) return false;
  for (const auto& c : flatten_conj(ante)) {
    bool found = false;
    for (const auto& psi : local)
      if (alpha_equal(c, psi)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

namespace {

struct ScriptBuilder {
  ProofScript s;
  int n = 0;

  explicit ScriptBuilder(Signature sig, RuleSet rules) {
    s.sig = std::move(sig);
    s.rules = std::move(rules);
  }

  int add(FormulaRef f, Justification j) {
    s.lines.push_back({std::move(f), std::move(j)});
    return ++n;
  }
  int taut(FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::taut;
    return add(std::move(f), j);
  }
  int axiom(const std::string& name, Substitution sub, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::axiom_instance;
    j.axiom_name = name;
    j.sub = std::move(sub);
    return add(std::move(f), j);
  }
  int mp(int antecedent, int implication, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::mp;
    j.premise_line = antecedent;
    j.implication_line = implication;
    return add(std::move(f), j);
  }
  int atgen(int from, const std::string& nom, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::at_gen;
    j.premise_line = from;
    j.nominal = nom;
    return add(std::move(f), j);
  }
  int rule(int idx, Substitution sub, int from, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::rule_instance;
    j.index = idx;
    j.sub = std::move(sub);
    j.premise_line = from;
    return add(std::move(f), j);
  }
  int name(int from, const std::string& nom, FormulaRef f) {
    Justification j;
    j.kind = Justification::Kind::name;
    j.premise_line = from;
    j.nominal = nom;
    return add(std::move(f), j);
  }
};

// @_n chi |- chi for fresh n, via intro/selfdual and Name; chi must have
// been derived before `at_line`. Returns the line carrying chi.
int eliminate_at(ScriptBuilder& b, const std::string& n, const FormulaRef& chi,
                 int at_line) {
  FormulaRef at_chi = Formula::at(n, chi);
  FormulaRef not_chi = Formula::neg(chi);
  FormulaRef at_not_chi = Formula::at(n, not_chi);
  FormulaRef nom = Formula::nominal(n);

  Substitution sd;
  sd.prop["p"] = chi;
  sd.nominal["i"] = n;
  FormulaRef selfdual = Formula::iff(Formula::neg(at_chi), at_not_chi);
  int l_sd = b.axiom("at_selfdual", sd, selfdual);

  Substitution in;
  in.prop["p"] = not_chi;
  in.nominal["i"] = n;
  FormulaRef intro = Formula::implies(Formula::conj(nom, not_chi), at_not_chi);
  int l_in = b.axiom("at_intro", in, intro);

  FormulaRef bridge = Formula::implies(at_chi, Formula::implies(nom, chi));
  int l_t = b.taut(Formula::implies(
      selfdual, Formula::implies(intro, bridge)));
  int l_m1 = b.mp(l_sd, l_t, Formula::implies(intro, bridge));
  int l_m2 = b.mp(l_in, l_m1, bridge);
  int l_m3 = b.mp(at_line, l_m2, Formula::implies(nom, chi));
  return b.name(l_m3, n, chi);
}

ProofScript name_prime_fixture() {
  ScriptBuilder b(Signature::kripke(), RuleSet::k());
  FormulaRef p = Formula::prop("p");
  FormulaRef chi = Formula::implies(p, p);
  int l1 = b.taut(chi);
  int l2 = b.atgen(l1, "i0", Formula::at("i0", chi));
  eliminate_at(b, "i0", chi, l2);
  return b.s;
}

// box p <-> box ~~p from @_j(p <-> ~~p), j fresh.
ProofScript name_cong_fixture() {
  ScriptBuilder b(Signature::kripke(), RuleSet::k());
  FormulaRef p = Formula::prop("p");
  FormulaRef nnp = Formula::neg(Formula::neg(p));
  FormulaRef chi = Formula::iff(p, nnp);
  int l1 = b.taut(chi);
  int l2 = b.atgen(l1, "j0", Formula::at("j0", chi));
  int l_chi = eliminate_at(b, "j0", chi, l2);

  auto half = [&](const FormulaRef& from, const FormulaRef& to) {
    FormulaRef prem = Formula::implies(Formula::conj(from, from), to);
    int lt = b.taut(Formula::implies(chi, prem));
    int lp = b.mp(l_chi, lt, prem);
    Substitution sub;
    sub.prop["a"] = from;
    sub.prop["b"] = from;
    sub.prop["c"] = to;
    FormulaRef boxed = Formula::implies(
        Formula::conj(Formula::modal("box", {from}), Formula::modal("box", {from})),
        Formula::modal("box", {to}));
    int lr = b.rule(2, sub, lp, boxed);
    FormulaRef out =
        Formula::implies(Formula::modal("box", {from}), Formula::modal("box", {to}));
    int lg = b.taut(Formula::implies(boxed, out));
    return b.mp(lr, lg, out);
  };
  int fwd = half(p, nnp);
  int bwd = half(nnp, p);
  FormulaRef fwd_f = Formula::implies(Formula::modal("box", {p}),
                                      Formula::modal("box", {nnp}));
  FormulaRef bwd_f = Formula::implies(Formula::modal("box", {nnp}),
                                      Formula::modal("box", {p}));
  FormulaRef conclusion =
      Formula::iff(Formula::modal("box", {p}), Formula::modal("box", {nnp}));
  int lt = b.taut(Formula::implies(fwd_f, Formula::implies(bwd_f, conclusion)));
  int lm = b.mp(fwd, lt, Formula::implies(bwd_f, conclusion));
  b.mp(bwd, lm, conclusion);
  return b.s;
}

// @_i p -> box @_i p from make-or-break.
ProofScript back_axiom_fixture() {
  ScriptBuilder b(Signature::kripke(), RuleSet::k());
  FormulaRef top = Formula::truth();
  FormulaRef atp = Formula::at("i", Formula::prop("p"));
  FormulaRef box_top = Formula::modal("box", {top});
  FormulaRef box_rel = Formula::modal("box", {Formula::conj(atp, top)});
  FormulaRef box_atp = Formula::modal("box", {atp});

  int l1 = b.taut(top);
  Substitution nec;
  nec.prop["a"] = top;
  int l2 = b.rule(1, nec, l1, box_top);
  Substitution mob;
  mob.prop["p"] = Formula::prop("p");
  mob.prop["q1"] = top;
  mob.nominal["i"] = "i";
  FormulaRef mob_inst = Formula::implies(atp, Formula::iff(box_top, box_rel));
  int l3 = b.axiom("mob:box", mob, mob_inst);
  FormulaRef step = Formula::implies(atp, box_rel);
  int l4 = b.taut(Formula::implies(mob_inst, Formula::implies(box_top, step)));
  int l5 = b.mp(l3, l4, Formula::implies(box_top, step));
  int l6 = b.mp(l2, l5, step);
  FormulaRef extract = Formula::implies(
      Formula::conj(Formula::conj(atp, top), top), atp);
  int l7 = b.taut(extract);
  Substitution kc;
  kc.prop["a"] = Formula::conj(atp, top);
  kc.prop["b"] = top;
  kc.prop["c"] = atp;
  FormulaRef boxed = Formula::implies(Formula::conj(box_rel, box_top), box_atp);
  int l8 = b.rule(2, kc, l7, boxed);
  FormulaRef back = Formula::implies(atp, box_atp);
  int l9 = b.taut(Formula::implies(
      step, Formula::implies(box_top, Formula::implies(boxed, back))));
  int l10 = b.mp(l6, l9, Formula::implies(box_top, Formula::implies(boxed, back)));
  int l11 = b.mp(l2, l10, Formula::implies(boxed, back));
  b.mp(l8, l11, back);
  return b.s;
}

}  // namespace

std::vector<ProofScript> derived_rule_fixtures() {
  return {name_prime_fixture(), name_cong_fixture(), back_axiom_fixture()};
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Entries of sub{...}, split on top-level commas and semicolons.
Substitution parse_sub(const std::string& body, const Signature& sig,
                       const std::string& where) {
  Substitution sub;
  int depth = 0;
  std::vector<std::string> entries;
  std::string cur;
  for (char c : body) {
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if ((c == ',' || c == ';') && depth == 0) {
      entries.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  entries.push_back(cur);
  for (const auto& raw : entries) {
    std::string e = trim(raw);
    if (e.empty()) continue;
    auto pos = e.find(":=");
    if (pos == std::string::npos) throw ConfigError(where + ": bad substitution entry " + e);
    std::string key = trim(e.substr(0, pos));
    std::string val = trim(e.substr(pos + 2));
    if (!key.empty() && key.back() == '\'') {
      if (val.empty() || val.back() != '\'')
        throw ConfigError(where + ": nominal must map to a nominal in " + e);
      sub.nominal[key.substr(0, key.size() - 1)] = val.substr(0, val.size() - 1);
    } else {
      sub.prop[key] = parse_formula(val, sig);
    }
  }
  return sub;
}

std::string take_sub_block(std::stringstream& ss, const std::string& where) {
  std::string tok;
  ss >> std::ws;
  if (ss.peek() != 's') return "";
  std::string word;
  ss >> word;
  if (word.rfind("sub{", 0) != 0) throw ConfigError(where + ": expected sub{...}");
  std::string body = word.substr(4);
  int depth = 1;
  for (char c : body) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
  }
  while (depth > 0) {
    int c = ss.get();
    if (c == EOF) throw ConfigError(where + ": unterminated sub{...}");
    if (c == '{') ++depth;
    if (c == '}') --depth;
    body += static_cast<char>(c);
  }
  // drop the final '}'
  body.pop_back();
  return body;
}

std::string strip_quote(const std::string& s, const std::string& where) {
  if (s.size() < 2 || s.back() != '\'')
    throw ConfigError(where + ": expected a nominal, got " + s);
  return s.substr(0, s.size() - 1);
}

std::vector<FormulaRef> load_formula_list(const std::string& spec,
                                          const std::string& base_dir,
                                          const Signature& sig) {
  if (spec == "none" || spec.empty()) return {};
  std::string path = spec;
  if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open formula file: " + path);
  std::vector<FormulaRef> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    out.push_back(parse_formula(line, sig));
  }
  return out;
}

}  // namespace

ProofScript parse_proof(std::istream& in, const std::string& origin,
                        const std::string& base_dir) {
  ProofScript script;
  bool have_sig = false;
  std::string rules_spec = "none", axioms_spec = "none", tbox_spec = "none",
              local_spec = "none";
  std::string line;
  int lineno = 0;
  int expected_no = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = origin + ":" + std::to_string(lineno);
    auto hash = line.find('#');
    if (hash != std::string::npos &&
        (hash == 0 || std::isspace(static_cast<unsigned char>(line[hash - 1]))))
      line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("sig:", 0) == 0) {
      script.sig = Signature::resolve(trim(t.substr(4)));
      have_sig = true;
      continue;
    }
    if (t.rfind("rules:", 0) == 0) {
      rules_spec = trim(t.substr(6));
      continue;
    }
    if (t.rfind("axioms:", 0) == 0) {
      axioms_spec = trim(t.substr(7));
      continue;
    }
    if (t.rfind("tbox:", 0) == 0) {
      tbox_spec = trim(t.substr(5));
      continue;
    }
    if (t.rfind("local:", 0) == 0) {
      local_spec = trim(t.substr(6));
      continue;
    }
    if (!have_sig) throw ConfigError(where + ": `sig:` must precede proof lines");
    if (script.lines.empty()) {
      // resolve headers once, at the first proof line
      script.rules = RuleSet::resolve(rules_spec, script.sig);
      script.pure_axioms = load_formula_list(axioms_spec, base_dir, script.sig);
      script.tbox = load_formula_list(tbox_spec, base_dir, script.sig);
      script.local = load_formula_list(local_spec, base_dir, script.sig);
    }

    auto dot = t.find('.');
    if (dot == std::string::npos) throw ConfigError(where + ": expected `n. formula BY just`");
    int no = std::stoi(t.substr(0, dot));
    if (no != expected_no) throw ConfigError(where + ": expected line " +
                                             std::to_string(expected_no));
    ++expected_no;
    std::string rest = t.substr(dot + 1);
    auto by = rest.find(" BY ");
    if (by == std::string::npos) throw ConfigError(where + ": missing BY");
    FormulaRef formula = parse_formula(rest.substr(0, by), script.sig);
    std::string jtext = trim(rest.substr(by + 4));

    Justification j;
    std::stringstream ss(jtext);
    std::string head;
    ss >> head;
    using K = Justification::Kind;
    if (head == "taut") {
      j.kind = K::taut;
    } else if (head.rfind("ax:", 0) == 0) {
      j.kind = K::axiom_instance;
      j.axiom_name = head.substr(3);
      j.sub = parse_sub(take_sub_block(ss, where), script.sig, where);
    } else if (head.rfind("pure:", 0) == 0) {
      j.kind = K::pure_axiom;
      j.index = std::stoi(head.substr(5));
      j.sub = parse_sub(take_sub_block(ss, where), script.sig, where);
    } else if (head.rfind("tbox:", 0) == 0) {
      j.kind = K::tbox;
      j.index = std::stoi(head.substr(5));
    } else if (head.rfind("local:", 0) == 0) {
      j.kind = K::local;
      j.index = std::stoi(head.substr(6));
    } else if (head == "mp") {
      j.kind = K::mp;
      ss >> j.premise_line >> j.implication_line;
    } else if (head == "atgen") {
      j.kind = K::at_gen;
      std::string nom;
      ss >> j.premise_line >> nom;
      j.nominal = strip_quote(nom, where);
    } else if (head.rfind("rule:", 0) == 0) {
      j.kind = K::rule_instance;
      j.index = std::stoi(head.substr(5));
      j.sub = parse_sub(take_sub_block(ss, where), script.sig, where);
      std::string kw;
      ss >> kw;
      if (kw != "from") throw ConfigError(where + ": expected `from <m>`");
      ss >> j.premise_line;
    } else if (head == "name") {
      j.kind = K::name;
      std::string nom;
      ss >> j.premise_line >> nom;
      j.nominal = strip_quote(nom, where);
    } else if (head.rfind("paste:", 0) == 0) {
      j.kind = K::paste;
      std::string spec = head.substr(6);
      auto colon = spec.rfind(':');
      if (colon == std::string::npos) throw ConfigError(where + ": expected paste:<op>:<k>");
      j.paste_op = spec.substr(0, colon);
      j.paste_k = std::stoi(spec.substr(colon + 1));
      std::string kw;
      ss >> j.premise_line >> kw;
      if (kw != "with") throw ConfigError(where + ": expected `with <nominals>`");
      std::string noms;
      std::getline(ss, noms);
      std::stringstream ns(noms);
      std::string piece;
      while (std::getline(ns, piece, ',')) {
        piece = trim(piece);
        if (!piece.empty()) j.witnesses.push_back(strip_quote(piece, where));
      }
    } else if (head == "da") {
      j.kind = K::da;
      std::string ni, nj;
      ss >> ni >> nj;
      j.da_i = strip_quote(ni, where);
      j.da_j = strip_quote(nj, where);
      std::string phi;
      std::getline(ss, phi);
      j.da_phi = parse_formula(phi, script.sig);
    } else {
      throw ConfigError(where + ": unknown justification " + head);
    }
    script.lines.push_back({formula, j});
  }
  if (!have_sig) throw ConfigError(origin + ": missing `sig:`");
  if (script.lines.empty()) {
    script.rules = RuleSet::resolve(rules_spec, script.sig);
    script.pure_axioms = load_formula_list(axioms_spec, base_dir, script.sig);
    script.tbox = load_formula_list(tbox_spec, base_dir, script.sig);
    script.local = load_formula_list(local_spec, base_dir, script.sig);
  }
  return script;
}

ProofScript parse_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open proof file: " + path);
  auto slash = path.rfind('/');
  std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
  return parse_proof(in, path, dir);
}

}  // namespace hycoa
