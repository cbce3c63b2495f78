#include "hycoa/onestep.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "hycoa/errors.hpp"
#include "hycoa/parser.hpp"
#include "hycoa/substitution.hpp"

namespace hycoa {

namespace {

// A one-step modal atom, identified by operator and argument denotations.
struct Atom {
  std::string op;
  std::vector<StateSet> args;
  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive = true;
};

void collect_atoms(const Formula& f, const std::map<std::string, StateSet>& tau,
                   std::vector<Atom>* out) {
  switch (f.kind()) {
    case FormulaKind::modal: {
      Atom a;
      a.op = f.name();
      for (const auto& arg : f.args()) {
        auto it = tau.find(arg->name());
        if (it == tau.end())
          throw ConfigError("one-step: variable " + arg->name() + " missing from tau");
        a.args.push_back(it->second);
      }
      out->push_back(std::move(a));
      return;
    }
    case FormulaKind::negation:
    case FormulaKind::conjunction:
      for (const auto& a : f.args()) collect_atoms(*a, tau, out);
      return;
    case FormulaKind::prop_var:
      if (f.name() == Formula::false_var()) return;
      throw ConfigError("one-step: bare variable " + f.name() + " outside a modality");
    default:
      throw ConfigError("one-step: formula is not in Prop(Lambda(P))");
  }
}

bool eval_under(const Formula& f, const std::map<Atom, bool>& v,
                const std::map<std::string, StateSet>& tau) {
  switch (f.kind()) {
    case FormulaKind::prop_var:
      return false;  // only the reserved falsum variable reaches here
    case FormulaKind::negation:
      return !eval_under(*f.arg(0), v, tau);
    case FormulaKind::conjunction:
      return eval_under(*f.arg(0), v, tau) && eval_under(*f.arg(1), v, tau);
    case FormulaKind::modal: {
      Atom a;
      a.op = f.name();
      for (const auto& arg : f.args()) a.args.push_back(tau.at(arg->name()));
      return v.at(a);
    }
    default:
      throw ConfigError("one-step: formula is not in Prop(Lambda(P))");
  }
}

int lowest_bit(StateSet s) {
  for (int i = 0; i < 64; ++i)
    if ((s >> i) & 1) return i;
  return -1;
}

struct Realizer {
  const Functor& functor;
  int n;
  const SearchBounds& bounds;
  bool hit_resource_limit = false;

  std::optional<TxElement> realize(const std::vector<Literal>& lits) {
    switch (functor.kind()) {
      case FunctorKind::kripke: return kripke(lits);
      case FunctorKind::multigraph: return multigraph(lits);
      case FunctorKind::neighborhood: return neighborhood(lits, false);
      case FunctorKind::monotone: return neighborhood(lits, true);
      case FunctorKind::selection: return selection(lits);
      case FunctorKind::game: return enumerated(lits);
    }
    return std::nullopt;
  }

  std::optional<TxElement> kripke(const std::vector<Literal>& lits) {
    const StateSet full = full_set(n);
    StateSet base = full;
    std::vector<StateSet> pos_dia, neg_box;
    for (const auto& l : lits) {
      auto sem = Signature::parse_op_name(l.atom.op).value();
      if (sem.kind == OpKind::box) {
        if (l.positive)
          base &= l.atom.args[0];
        else
          neg_box.push_back(l.atom.args[0]);
      } else if (sem.kind == OpKind::dia) {
        if (l.positive)
          pos_dia.push_back(l.atom.args[0]);
        else
          base &= ~l.atom.args[0] & full;
      } else {
        throw ConfigError("operator " + l.atom.op + " not interpreted over kripke");
      }
    }
    StateSet t = 0;
    for (StateSet a : pos_dia) {
      StateSet w = base & a;
      if (!w) return std::nullopt;
      t |= 1ULL << lowest_bit(w);
    }
    for (StateSet a : neg_box) {
      StateSet w = base & ~a & full;
      if (!w) return std::nullopt;
      t |= 1ULL << lowest_bit(w);
    }
    return KripkeTx{t};
  }

  std::optional<TxElement> multigraph(const std::vector<Literal>& lits) {
    // Pointwise truncation at the largest relevant threshold keeps every
    // literal's truth value, so the capped search is complete.
    std::uint64_t cap = 1;
    for (const auto& l : lits) {
      auto sem = Signature::parse_op_name(l.atom.op).value();
      if (sem.kind == OpKind::graded_dia)
        cap = std::max(cap, sem.grade + 1);
      else if (sem.kind == OpKind::presburger)
        cap = std::max(cap, sem.threshold + 1);
      else
        throw ConfigError("operator " + l.atom.op + " not interpreted over multigraph");
    }
    std::uint64_t space = 1;
    for (int i = 0; i < n; ++i) {
      space *= cap + 1;
      if (space > bounds.max_candidates) {
        hit_resource_limit = true;
        return std::nullopt;
      }
    }
    MultigraphTx t;
    t.weights.assign(n, 0);
    for (;;) {
      if (check_all(t, lits)) return t;
      int i = 0;
      while (i < n && t.weights[i] == cap) t.weights[i++] = 0;
      if (i == n) break;
      ++t.weights[i];
    }
    return std::nullopt;
  }

  std::optional<TxElement> neighborhood(const std::vector<Literal>& lits, bool monotone) {
    const StateSet full = full_set(n);
    std::vector<StateSet> forced_in, forced_out;
    for (const auto& l : lits) {
      auto sem = Signature::parse_op_name(l.atom.op).value();
      StateSet a = l.atom.args[0] & full;
      if (sem.kind == OpKind::box)
        (l.positive ? forced_in : forced_out).push_back(a);
      else if (sem.kind == OpKind::dia)
        (l.positive ? forced_out : forced_in).push_back(~a & full);
      else
        throw ConfigError("operator " + l.atom.op + " not interpreted over neighborhoods");
    }
    NeighborhoodTx t;
    t.collection = forced_in;
    std::sort(t.collection.begin(), t.collection.end());
    t.collection.erase(std::unique(t.collection.begin(), t.collection.end()),
                       t.collection.end());
    if (monotone) t = upward_closure(t, n);
    for (StateSet s : forced_out)
      if (t.contains(s)) return std::nullopt;
    return t;
  }

  std::optional<TxElement> selection(const std::vector<Literal>& lits) {
    const StateSet full = full_set(n);
    // Constraints decompose per distinct first-argument set.
    std::map<StateSet, std::vector<Literal>> groups;
    for (const auto& l : lits) groups[l.atom.args[0] & full].push_back(l);
    SelectionTx t;
    for (const auto& [a, group] : groups) {
      StateSet allowed = full;
      std::vector<StateSet> meets, notsubs;
      for (const auto& l : group) {
        auto sem = Signature::parse_op_name(l.atom.op).value();
        StateSet b = l.atom.args[1] & full;
        if (sem.kind == OpKind::cond_arrow) {
          if (l.positive)
            allowed &= b;
          else
            notsubs.push_back(b);
        } else if (sem.kind == OpKind::cond_meet) {
          if (l.positive)
            meets.push_back(b);
          else
            allowed &= ~b & full;
        } else {
          throw ConfigError("operator " + l.atom.op +
                            " not interpreted over selection frames");
        }
      }
      StateSet value = 0;
      for (StateSet b : meets) {
        StateSet w = allowed & b;
        if (!w) return std::nullopt;
        value |= 1ULL << lowest_bit(w);
      }
      for (StateSet b : notsubs) {
        StateSet w = allowed & ~b & full;
        if (!w) return std::nullopt;
        value |= 1ULL << lowest_bit(w);
      }
      t.entries.emplace_back(a, value);
    }
    std::sort(t.entries.begin(), t.entries.end());
    return t;
  }

  std::optional<TxElement> enumerated(const std::vector<Literal>& lits) {
    std::optional<TxElement> found;
    try {
      functor.enumerate_tx(n, bounds, [&](const TxElement& t) {
        if (check_all(t, lits)) {
          found = t;
          return false;
        }
        return true;
      });
    } catch (const ResourceBoundError&) {
      hit_resource_limit = true;
      return std::nullopt;
    }
    // The capped space proves nothing about larger strategy sets.
    if (!found) hit_resource_limit = true;
    return found;
  }

  bool check_all(const TxElement& t, const std::vector<Literal>& lits) {
    for (const auto& l : lits) {
      auto sem = Signature::parse_op_name(l.atom.op).value();
      if (functor.lifting_member(sem, t, l.atom.args, n) != l.positive) return false;
    }
    return true;
  }
};

}  // namespace

void OneStepProblem::validate(const Signature& sig) const {
  if (base.empty()) throw ConfigError("one-step: empty base set");
  if (base_size() > kMaxStates) throw ConfigError("one-step: base set too large");
  std::function<void(const Formula&, bool)> walk = [&](const Formula& f, bool under_modal) {
    switch (f.kind()) {
      case FormulaKind::prop_var:
        if (f.name() == Formula::false_var()) return;
        if (!under_modal)
          throw ConfigError("one-step: bare variable " + f.name());
        if (!tau.count(f.name()))
          throw ConfigError("one-step: variable " + f.name() + " missing from tau");
        return;
      case FormulaKind::modal: {
        const OperatorDecl* op = sig.find(f.name());
        if (!op) throw ConfigError("one-step: unknown operator " + f.name());
        if (under_modal) throw ConfigError("one-step: nested modality");
        for (const auto& a : f.args()) {
          if (a->kind() != FormulaKind::prop_var)
            throw ConfigError("one-step: modal argument must be a variable");
          walk(*a, true);
        }
        return;
      }
      case FormulaKind::negation:
      case FormulaKind::conjunction:
        for (const auto& a : f.args()) walk(*a, under_modal);
        return;
      default:
        throw ConfigError("one-step: nominals, @ and dn are not one-step material");
    }
  };
  for (const auto& f : xi) walk(*f, false);
}

bool tx_satisfies(const Functor& functor, const TxElement& t,
                  const OneStepProblem& p, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::prop_var:
      return false;  // the reserved falsum variable
    case FormulaKind::negation:
      return !tx_satisfies(functor, t, p, *f.arg(0));
    case FormulaKind::conjunction:
      return tx_satisfies(functor, t, p, *f.arg(0)) &&
             tx_satisfies(functor, t, p, *f.arg(1));
    case FormulaKind::modal: {
      auto sem = Signature::parse_op_name(f.name());
      if (!sem) throw ConfigError("unknown operator " + f.name());
      std::vector<StateSet> args;
      for (const auto& a : f.args()) args.push_back(p.tau.at(a->name()));
      return functor.lifting_member(*sem, t, args, p.base_size());
    }
    default:
      throw ConfigError("one-step: formula is not in Prop(Lambda(P))");
  }
}

namespace {

// When Xi is one literal per formula, the modal assignment is determined.
std::optional<Literal> as_literal(const Formula& f,
                                  const std::map<std::string, StateSet>& tau,
                                  bool polarity) {
  if (f.kind() == FormulaKind::negation) return as_literal(*f.arg(0), tau, !polarity);
  if (f.kind() != FormulaKind::modal) return std::nullopt;
  Literal l;
  l.positive = polarity;
  l.atom.op = f.name();
  for (const auto& arg : f.args()) {
    auto it = tau.find(arg->name());
    if (it == tau.end()) return std::nullopt;
    l.atom.args.push_back(it->second);
  }
  return l;
}

}  // namespace

OneStepResult one_step_sat(const OneStepProblem& p, const Functor& functor,
                           const SearchBounds& bounds) {
  {
    std::vector<Literal> lits;
    bool all_literals = true;
    for (const auto& f : p.xi) {
      auto l = as_literal(*f, p.tau, true);
      if (!l) {
        all_literals = false;
        break;
      }
      lits.push_back(*l);
    }
    if (all_literals) {
      std::map<Atom, bool> assign;
      for (const auto& l : lits) {
        auto [it, inserted] = assign.emplace(l.atom, l.positive);
        if (!inserted && it->second != l.positive)
          return {OneStepStatus::unsat, std::nullopt};
      }
      std::vector<Literal> merged;
      for (const auto& [atom, pol] : assign) merged.push_back({atom, pol});
      Realizer realizer{functor, p.base_size(), bounds};
      if (auto t = realizer.realize(merged)) {
        for (const auto& f : p.xi)
          if (!tx_satisfies(functor, *t, p, *f))
            throw std::logic_error("one-step witness failed re-verification");
        return {OneStepStatus::sat, t};
      }
      if (realizer.hit_resource_limit)
        return {OneStepStatus::resource_bound, std::nullopt};
      return {OneStepStatus::unsat, std::nullopt};
    }
  }

  std::vector<Atom> atoms;
  for (const auto& f : p.xi) collect_atoms(*f, p.tau, &atoms);
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  if (atoms.size() > 24)
    return {OneStepStatus::resource_bound, std::nullopt};

  Realizer realizer{functor, p.base_size(), bounds};
  const std::uint64_t num_assignments = 1ULL << atoms.size();
  for (std::uint64_t v = 0; v < num_assignments; ++v) {
    std::map<Atom, bool> val;
    for (std::size_t i = 0; i < atoms.size(); ++i) val[atoms[i]] = (v >> i) & 1;
    bool xi_holds = true;
    for (const auto& f : p.xi)
      if (!eval_under(*f, val, p.tau)) {
        xi_holds = false;
        break;
      }
    if (!xi_holds) continue;
    std::vector<Literal> lits;
    for (const auto& [atom, pol] : val) lits.push_back({atom, pol});
    if (auto t = realizer.realize(lits)) {
      for (const auto& f : p.xi)
        if (!tx_satisfies(functor, *t, p, *f))
          throw std::logic_error("one-step witness failed re-verification");
      return {OneStepStatus::sat, t};
    }
  }
  if (realizer.hit_resource_limit) return {OneStepStatus::resource_bound, std::nullopt};
  return {OneStepStatus::unsat, std::nullopt};
}

namespace {

// Boolean subalgebra of P(X) generated by tau's range, with one canonical
// representative formula per element.
struct Subalgebra {
  std::vector<StateSet> elements;
  std::vector<FormulaRef> reps;
};

Subalgebra generated_subalgebra(const OneStepProblem& p, const SearchBounds& bounds) {
  const int n = p.base_size();
  std::vector<std::pair<std::string, StateSet>> gens(p.tau.begin(), p.tau.end());
  // Cells of the partition induced by the generators.
  std::map<std::vector<bool>, StateSet> cells;
  for (int x = 0; x < n; ++x) {
    std::vector<bool> pattern;
    for (const auto& [name, s] : gens) pattern.push_back(set_member(s, x));
    cells[pattern] |= 1ULL << x;
  }
  std::vector<std::pair<std::vector<bool>, StateSet>> cell_list(cells.begin(), cells.end());
  if (cell_list.size() > 16)
    throw ResourceBoundError("one-step consistency: subalgebra too large");
  const std::uint64_t count = 1ULL << cell_list.size();
  if (count > bounds.max_candidates)
    throw ResourceBoundError("one-step consistency: subalgebra too large");

  Subalgebra out;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    StateSet denot = 0;
    std::vector<FormulaRef> cell_reps;
    for (std::size_t c = 0; c < cell_list.size(); ++c) {
      if (!((mask >> c) & 1)) continue;
      denot |= cell_list[c].second;
      FormulaRef rep;
      if (gens.empty()) {
        rep = Formula::truth();
      } else {
        for (std::size_t g = 0; g < gens.size(); ++g) {
          FormulaRef lit = Formula::prop(gens[g].first);
          if (!cell_list[c].first[g]) lit = Formula::neg(lit);
          rep = rep ? Formula::conj(rep, lit) : lit;
        }
      }
      cell_reps.push_back(rep);
    }
    out.elements.push_back(denot);
    out.reps.push_back(Formula::disj_all(cell_reps));
  }
  return out;
}

StateSet eval_prop_denotation(const Formula& f, const std::map<std::string, StateSet>& env,
                              StateSet full) {
  switch (f.kind()) {
    case FormulaKind::prop_var: {
      if (f.name() == Formula::false_var()) return 0;
      auto it = env.find(f.name());
      if (it == env.end()) throw ConfigError("unbound rule variable " + f.name());
      return it->second;
    }
    case FormulaKind::negation:
      return ~eval_prop_denotation(*f.arg(0), env, full) & full;
    case FormulaKind::conjunction:
      return eval_prop_denotation(*f.arg(0), env, full) &
             eval_prop_denotation(*f.arg(1), env, full);
    default:
      throw ConfigError("premise is not purely propositional");
  }
}

// Propositional skeleton over atom keys, for the consistency check.
struct KeyedFormula {
  // -1 = falsum leaf, -2 = negation, -3 = conjunction, >= 0 = atom index
  int tag;
  std::vector<KeyedFormula> kids;
};

KeyedFormula key_formula(const Formula& f, const std::map<std::string, StateSet>& env,
                         StateSet full, std::map<Atom, int>* index,
                         std::vector<Atom>* atoms) {
  switch (f.kind()) {
    case FormulaKind::prop_var:
      return {-1, {}};
    case FormulaKind::negation:
      return {-2, {key_formula(*f.arg(0), env, full, index, atoms)}};
    case FormulaKind::conjunction:
      return {-3,
              {key_formula(*f.arg(0), env, full, index, atoms),
               key_formula(*f.arg(1), env, full, index, atoms)}};
    case FormulaKind::modal: {
      Atom a;
      a.op = f.name();
      for (const auto& arg : f.args())
        a.args.push_back(eval_prop_denotation(*arg, env, full));
      auto [it, inserted] = index->emplace(a, static_cast<int>(atoms->size()));
      if (inserted) atoms->push_back(a);
      return {it->second, {}};
    }
    default:
      throw ConfigError("one-step: formula is not in Prop(Lambda(P))");
  }
}

bool eval_keyed(const KeyedFormula& f, std::uint64_t assignment) {
  switch (f.tag) {
    case -1: return false;
    case -2: return !eval_keyed(f.kids[0], assignment);
    case -3: return eval_keyed(f.kids[0], assignment) && eval_keyed(f.kids[1], assignment);
    default: return (assignment >> f.tag) & 1;
  }
}

}  // namespace

bool one_step_consistent(const OneStepProblem& p, const RuleSet& rules,
                         const SearchBounds& bounds) {
  const int n = p.base_size();
  const StateSet full = full_set(n);
  Subalgebra sub = generated_subalgebra(p, bounds);

  // Keyed skeletons of Xi; arguments are variables with tau denotations.
  std::map<Atom, int> index;
  std::vector<Atom> atoms;
  std::vector<KeyedFormula> clauses;
  {
    std::map<std::string, StateSet> env;
    for (const auto& [v, s] : p.tau) env[v] = s & full;
    for (const auto& f : p.xi)
      clauses.push_back(key_formula(*f, env, full, &index, &atoms));
  }

  // Rule instances over subalgebra representatives with tau-valid premises.
  for (const auto& rule : rules.rules()) {
    std::set<std::string> var_set = rule_variables(rule);
    std::vector<std::string> vars(var_set.begin(), var_set.end());
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      combos *= sub.elements.size();
      if (combos > bounds.max_candidates)
        throw ResourceBoundError("one-step consistency: instance space too large");
    }
    std::vector<std::size_t> pick(vars.size(), 0);
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::uint64_t rest = c;
      std::map<std::string, StateSet> env;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        pick[i] = rest % sub.elements.size();
        rest /= sub.elements.size();
        env[vars[i]] = sub.elements[pick[i]];
      }
      if (eval_prop_denotation(*rule.premise, env, full) != full) continue;
      clauses.push_back(key_formula(*rule.conclusion, env, full, &index, &atoms));
    }
  }

  if (atoms.size() > 22)
    throw ResourceBoundError("one-step consistency: too many modal atoms");
  const std::uint64_t num_assignments = 1ULL << atoms.size();
  for (std::uint64_t v = 0; v < num_assignments; ++v) {
    bool all = true;
    for (const auto& cl : clauses)
      if (!eval_keyed(cl, v)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

bool verify_one_step_soundness(const OneStepRule& rule, const Functor& functor,
                               int base_size, const SearchBounds& bounds) {
  const StateSet full = full_set(base_size);
  std::set<std::string> var_set = rule_variables(rule);
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  std::vector<StateSet> pick(vars.size(), 0);
  for (;;) {
    std::map<std::string, StateSet> env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = pick[i];
    if (eval_prop_denotation(*rule.premise, env, full) == full) {
      OneStepProblem p;
      for (int i = 0; i < base_size; ++i) p.base.push_back("x" + std::to_string(i));
      p.tau = env;
      bool ok = true;
      functor.enumerate_tx(base_size, bounds, [&](const TxElement& t) {
        if (!tx_satisfies(functor, t, p, *rule.conclusion)) ok = false;
        return ok;
      });
      if (!ok) return false;
    }
    std::size_t i = 0;
    while (i < pick.size() && pick[i] == full) pick[i++] = 0;
    if (i == pick.size()) break;
    ++pick[i];
  }
  return true;
}

AgreementReport agreement_check(const OneStepProblem& p, const Functor& functor,
                                const RuleSet& rules, const SearchBounds& bounds) {
  AgreementReport r;
  r.consistent = one_step_consistent(p, rules, bounds);
  OneStepResult sat = one_step_sat(p, functor, bounds);
  r.sat_status = sat.status;
  r.agree = (r.consistent == (sat.status == OneStepStatus::sat));
  return r;
}

OneStepProblem parse_one_step_problem(std::istream& in, const Signature& sig,
                                      const std::string& origin) {
  OneStepProblem p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (std::size_t i = 0; i < line.size(); ++i)
      if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
        line.erase(i);
        break;
      }
    std::stringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (head == "base:") {
      std::string x;
      while (ss >> x) p.base.push_back(x);
    } else if (head == "tau") {
      std::string var;
      ss >> var;
      if (var.empty() || var.back() != ':') fail("expected `tau <var>:`");
      var.pop_back();
      StateSet s = 0;
      std::string x;
      while (ss >> x) {
        auto it = std::find(p.base.begin(), p.base.end(), x);
        if (it == p.base.end()) fail("unknown base element " + x);
        s |= 1ULL << (it - p.base.begin());
      }
      p.tau[var] = s;
    } else if (head == "constraint:") {
      std::string rest;
      std::getline(ss, rest);
      p.xi.push_back(parse_formula(rest, sig));
    } else {
      fail("unknown directive " + head);
    }
  }
  p.validate(sig);
  return p;
}

}  // namespace hycoa
