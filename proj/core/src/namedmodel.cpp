#include "hycoa/namedmodel.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hycoa/errors.hpp"
#include "hycoa/onestep.hpp"
#include "hycoa/parser.hpp"
#include "hycoa/semantics.hpp"
#include "hycoa/substitution.hpp"

namespace hycoa {

namespace {

std::vector<std::string> problem_nominals(const NamedModelProblem& prob) {
  std::set<std::string> noms;
  for (const auto& f : prob.tbox) collect_free_nominals(*f, &noms);
  for (const auto& f : prob.goal) collect_free_nominals(*f, &noms);
  for (const auto& f : prob.pure_axioms) collect_free_nominals(*f, &noms);
  return {noms.begin(), noms.end()};
}

// Pure axiom instances over the present nominals.
std::vector<FormulaRef> axiom_instances(const std::vector<FormulaRef>& axioms,
                                        const std::vector<std::string>& present) {
  std::vector<FormulaRef> out;
  for (const auto& axiom : axioms) {
    std::set<std::string> nom_set = free_nominals(*axiom);
    std::vector<std::string> noms(nom_set.begin(), nom_set.end());
    if (noms.empty()) {
      out.push_back(axiom);
      continue;
    }
    std::vector<std::size_t> pick(noms.size(), 0);
    for (;;) {
      Substitution sub;
      for (std::size_t i = 0; i < noms.size(); ++i)
        sub.nominal[noms[i]] = present[pick[i]];
      out.push_back(substitute(axiom, sub));
      std::size_t i = 0;
      while (i < pick.size() && pick[i] == present.size() - 1) pick[i++] = 0;
      if (i == pick.size()) break;
      ++pick[i];
    }
  }
  return out;
}

}  // namespace

std::vector<FormulaRef> build_closure(const NamedModelProblem& prob,
                                      const std::vector<std::string>& present) {
  FormulaSet seen;
  std::vector<FormulaRef> order;
  std::function<void(const FormulaRef&)> add = [&](const FormulaRef& f) {
    if (seen.count(f)) return;
    seen.insert(f);
    for (const auto& a : f->args()) add(a);
    if (f->kind() == FormulaKind::down)
      for (const auto& g : present)
        add(substitute_nominal(f->arg(0), f->name(), g));
    order.push_back(f);
  };
  for (const auto& f : prob.tbox) add(f);
  for (const auto& f : prob.goal) add(f);
  for (const auto& f : axiom_instances(prob.pure_axioms, present)) add(f);
  std::vector<FormulaRef> base = order;
  for (const auto& g : present)
    for (const auto& f : base) add(Formula::at(g, f));
  // topological: strict subformulas (and binder instances) are smaller
  std::stable_sort(order.begin(), order.end(),
                   [](const FormulaRef& a, const FormulaRef& b) {
                     return formula_size(*a) < formula_size(*b);
                   });
  return order;
}

namespace {

enum class Tri : std::uint8_t { false_, true_, unknown };

Tri tri_not(Tri t) {
  if (t == Tri::unknown) return t;
  return t == Tri::true_ ? Tri::false_ : Tri::true_;
}
Tri tri_and(Tri a, Tri b) {
  if (a == Tri::false_ || b == Tri::false_) return Tri::false_;
  if (a == Tri::unknown || b == Tri::unknown) return Tri::unknown;
  return Tri::true_;
}

struct Engine {
  const NamedModelProblem& prob;
  Functor functor;
  int n;
  std::vector<std::string> originals;
  std::vector<std::string> fresh;    // fresh[k] names state k
  std::vector<std::string> present;  // originals + fresh

  std::vector<FormulaRef> closure;
  std::map<FormulaRef, int, FormulaRefLess> index;

  struct Node {
    FormulaKind kind;
    std::string name;
    std::vector<int> kids;       // children closure indices
    int slot = -1;               // modal choice slot / prop slot
    std::vector<int> down_inst;  // per-state instance index
  };
  std::vector<Node> nodes;
  std::vector<int> modal_idx;            // closure index per modal slot
  std::vector<std::string> prop_names;   // per prop slot
  std::vector<FormulaRef> global_reqs;   // tbox + axiom instances
  std::vector<FormulaRef> goal_reqs;

  std::map<std::string, int> nominal_state;
  // per state: choice masks and whether the state is decided
  std::vector<std::uint32_t> prop_choice, modal_choice;
  std::vector<bool> decided;
  // forced bits: 0 = free, 1 = forced true, 2 = forced false
  std::vector<std::vector<std::uint8_t>> forced_modal;  // [state][slot]
  std::vector<std::vector<std::uint8_t>> forced_prop;

  bool resource_hit = false;

  Engine(const NamedModelProblem& p, int states)
      : prob(p), functor(p.sig.functor(), p.sig.agents()), n(states) {
    originals = problem_nominals(p);
    std::set<std::string> avoid(originals.begin(), originals.end());
    for (int k = 0; k < n; ++k) {
      std::string f = fresh_nominal(avoid);
      avoid.insert(f);
      fresh.push_back(f);
    }
    present = originals;
    present.insert(present.end(), fresh.begin(), fresh.end());
    closure = build_closure(p, present);
    for (std::size_t i = 0; i < closure.size(); ++i)
      index.emplace(closure[i], static_cast<int>(i));
    build_nodes();
    global_reqs = prob.tbox;
    for (const auto& inst : axiom_instances(prob.pure_axioms, present))
      global_reqs.push_back(inst);
    goal_reqs = prob.goal;
  }

  int idx_of(const FormulaRef& f) const {
    auto it = index.find(f);
    if (it == index.end()) throw std::logic_error("closure lookup failed");
    return it->second;
  }

  void build_nodes() {
    std::map<std::string, int> prop_slot;
    nodes.resize(closure.size());
    for (std::size_t i = 0; i < closure.size(); ++i) {
      const FormulaRef& f = closure[i];
      Node& nd = nodes[i];
      nd.kind = f->kind();
      nd.name = f->name();
      for (const auto& a : f->args()) nd.kids.push_back(idx_of(a));
      switch (f->kind()) {
        case FormulaKind::prop_var:
          if (f->name() != Formula::false_var()) {
            auto [it, inserted] = prop_slot.emplace(f->name(),
                                                    static_cast<int>(prop_names.size()));
            if (inserted) prop_names.push_back(f->name());
            nd.slot = it->second;
          }
          break;
        case FormulaKind::modal:
          nd.slot = static_cast<int>(modal_idx.size());
          modal_idx.push_back(static_cast<int>(i));
          break;
        case FormulaKind::down:
          for (int s = 0; s < n; ++s)
            nd.down_inst.push_back(
                idx_of(substitute_nominal(f->arg(0), f->name(), fresh[s])));
          break;
        default:
          break;
      }
    }
    if (prop_names.size() > 20 || modal_idx.size() > 24)
      throw ResourceBoundError("named-model search: closure too large");
  }

  Tri val3(int i, int s) const {
    const Node& nd = nodes[i];
    switch (nd.kind) {
      case FormulaKind::prop_var:
        if (nd.slot < 0) return Tri::false_;
        if (!decided[s]) return Tri::unknown;
        return (prop_choice[s] >> nd.slot) & 1 ? Tri::true_ : Tri::false_;
      case FormulaKind::nominal:
        return nominal_state.at(nd.name) == s ? Tri::true_ : Tri::false_;
      case FormulaKind::negation:
        return tri_not(val3(nd.kids[0], s));
      case FormulaKind::conjunction:
        return tri_and(val3(nd.kids[0], s), val3(nd.kids[1], s));
      case FormulaKind::modal:
        if (!decided[s]) return Tri::unknown;
        return (modal_choice[s] >> nd.slot) & 1 ? Tri::true_ : Tri::false_;
      case FormulaKind::at:
        return val3(nd.kids[0], nominal_state.at(nd.name));
      case FormulaKind::down:
        return val3(nd.down_inst[s], s);
    }
    return Tri::unknown;
  }

  bool requirements_alive() const {
    for (const auto& r : global_reqs) {
      int i = index.at(r);
      for (int s = 0; s < n; ++s)
        if (val3(i, s) == Tri::false_) return false;
    }
    for (const auto& r : goal_reqs)
      if (val3(index.at(r), 0) == Tri::false_) return false;
    return true;
  }

  // Literal forcing: a requirement that is (up to negations) a single
  // modal or propositional closure formula pins its bit.
  bool force_literal(const FormulaRef& f, int state_or_all, bool positive) {
    FormulaRef g = f;
    bool pol = positive;
    while (g->kind() == FormulaKind::negation) {
      pol = !pol;
      g = g->arg(0);
    }
    const Node& nd = nodes[idx_of(g)];
    auto apply = [&](std::vector<std::vector<std::uint8_t>>& table, int slot) {
      std::uint8_t want = pol ? 1 : 2;
      if (state_or_all < 0) {
        for (int s = 0; s < n; ++s) {
          if (table[s][slot] != 0 && table[s][slot] != want) return false;
          table[s][slot] = want;
        }
        return true;
      }
      if (table[state_or_all][slot] != 0 && table[state_or_all][slot] != want)
        return false;
      table[state_or_all][slot] = want;
      return true;
    };
    if (nd.kind == FormulaKind::modal) return apply(forced_modal, nd.slot);
    if (nd.kind == FormulaKind::prop_var && nd.slot >= 0)
      return apply(forced_prop, nd.slot);
    if (g->kind() == FormulaKind::conjunction && pol) {
      for (const auto& c : flatten_conj(g))
        if (!force_literal(c, state_or_all, true)) return false;
      return true;
    }
    return true;  // not a literal; handled by three-valued pruning
  }

  bool compute_forced() {
    forced_modal.assign(n, std::vector<std::uint8_t>(modal_idx.size(), 0));
    forced_prop.assign(n, std::vector<std::uint8_t>(prop_names.size(), 0));
    for (const auto& r : global_reqs)
      if (!force_literal(r, -1, true)) return false;
    for (const auto& r : goal_reqs)
      if (!force_literal(r, 0, true)) return false;
    return true;
  }

  bool choice_respects_forced(int s, std::uint32_t props, std::uint32_t modals) const {
    for (std::size_t k = 0; k < prop_names.size(); ++k) {
      if (forced_prop[s][k] == 1 && !((props >> k) & 1)) return false;
      if (forced_prop[s][k] == 2 && ((props >> k) & 1)) return false;
    }
    for (std::size_t k = 0; k < modal_idx.size(); ++k) {
      if (forced_modal[s][k] == 1 && !((modals >> k) & 1)) return false;
      if (forced_modal[s][k] == 2 && ((modals >> k) & 1)) return false;
    }
    return true;
  }

  // Full truth table over the closure at a leaf, as per-formula state masks.
  std::vector<StateSet> leaf_masks() const {
    const StateSet full = full_set(n);
    std::vector<StateSet> mask(closure.size(), 0);
    for (std::size_t i = 0; i < closure.size(); ++i) {
      const Node& nd = nodes[i];
      switch (nd.kind) {
        case FormulaKind::prop_var:
          if (nd.slot >= 0)
            for (int s = 0; s < n; ++s)
              if ((prop_choice[s] >> nd.slot) & 1) mask[i] |= 1ULL << s;
          break;
        case FormulaKind::nominal:
          mask[i] = 1ULL << nominal_state.at(nd.name);
          break;
        case FormulaKind::negation:
          mask[i] = ~mask[nd.kids[0]] & full;
          break;
        case FormulaKind::conjunction:
          mask[i] = mask[nd.kids[0]] & mask[nd.kids[1]];
          break;
        case FormulaKind::modal:
          for (int s = 0; s < n; ++s)
            if ((modal_choice[s] >> nd.slot) & 1) mask[i] |= 1ULL << s;
          break;
        case FormulaKind::at:
          mask[i] = set_member(mask[nd.kids[0]], nominal_state.at(nd.name)) ? full : 0;
          break;
        case FormulaKind::down:
          for (int s = 0; s < n; ++s)
            if (set_member(mask[nd.down_inst[s]], s)) mask[i] |= 1ULL << s;
          break;
      }
    }
    return mask;
  }

  // Solve the per-state coherence problems; gamma out on success.
  bool solve_gammas(const std::vector<StateSet>& mask, std::vector<TxElement>* gamma) {
    gamma->clear();
    for (int s = 0; s < n; ++s) {
      OneStepProblem p;
      p.base = fresh;  // one element per state
      std::map<int, std::string> var_of;
      std::vector<FormulaRef> xi;
      for (std::size_t slot = 0; slot < modal_idx.size(); ++slot) {
        const FormulaRef& node = closure[modal_idx[slot]];
        std::vector<FormulaRef> args;
        for (const auto& a : node->args()) {
          int ai = idx_of(a);
          auto [it, inserted] = var_of.emplace(ai, "v" + std::to_string(ai));
          if (inserted) p.tau[it->second] = mask[ai];
          args.push_back(Formula::prop(it->second));
        }
        FormulaRef lit = Formula::modal(node->name(), std::move(args));
        if (!((modal_choice[s] >> slot) & 1)) lit = Formula::neg(lit);
        xi.push_back(lit);
      }
      p.xi = std::move(xi);
      OneStepResult r = one_step_sat(p, functor, prob.bounds);
      if (r.status == OneStepStatus::resource_bound) {
        resource_hit = true;
        return false;
      }
      if (r.status != OneStepStatus::sat) return false;
      gamma->push_back(*r.witness);
    }
    return true;
  }

  bool leaf(SearchOutcome* out) {
    std::vector<StateSet> mask = leaf_masks();
    const StateSet full = full_set(n);
    for (const auto& r : global_reqs)
      if (mask[index.at(r)] != full) return false;
    for (const auto& r : goal_reqs)
      if (!set_member(mask[index.at(r)], 0)) return false;
    std::vector<TxElement> gamma;
    if (!solve_gammas(mask, &gamma)) return false;

    HybridModel m;
    m.functor = functor.kind();
    m.agents = functor.agents();
    for (int s = 0; s < n; ++s) m.states.push_back("s" + std::to_string(s));
    m.gamma = std::move(gamma);
    for (std::size_t k = 0; k < prop_names.size(); ++k) {
      StateSet v = 0;
      for (int s = 0; s < n; ++s)
        if ((prop_choice[s] >> k) & 1) v |= 1ULL << s;
      m.val_props[prop_names[k]] = v;
    }
    for (const auto& [nom, s] : nominal_state) m.val_noms[nom] = s;
    m.validate();

    out->status = SearchStatus::found;
    out->model = std::move(m);
    out->designated = 0;
    out->labels.formulas = closure;
    for (std::size_t i = 0; i < closure.size(); ++i) {
      out->labels.formulas.push_back(Formula::neg(closure[i]));
    }
    out->labels.value.assign(n, {});
    for (int s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < closure.size(); ++i)
        out->labels.value[s].push_back(set_member(mask[i], s));
      for (std::size_t i = 0; i < closure.size(); ++i)
        out->labels.value[s].push_back(!set_member(mask[i], s));
    }
    return true;
  }

  bool dfs(int s, SearchOutcome* out) {
    if (s == n) return leaf(out);
    const std::uint32_t prop_count = 1u << prop_names.size();
    const std::uint32_t modal_count = 1u << modal_idx.size();
    for (std::uint32_t pm = 0; pm < prop_count; ++pm) {
      for (std::uint32_t mm = 0; mm < modal_count; ++mm) {
        if (!choice_respects_forced(s, pm, mm)) continue;
        // canonical order for states that nothing distinguishes
        if (s > 1 && !state_named(s) && !state_named(s - 1)) {
          std::uint64_t prev = (static_cast<std::uint64_t>(prop_choice[s - 1]) << 32) |
                               modal_choice[s - 1];
          std::uint64_t curr = (static_cast<std::uint64_t>(pm) << 32) | mm;
          if (curr < prev) continue;
        }
        prop_choice[s] = pm;
        modal_choice[s] = mm;
        decided[s] = true;
        if (requirements_alive() && dfs(s + 1, out)) return true;
        decided[s] = false;
      }
    }
    return false;
  }

  bool state_named(int s) const {
    for (const auto& nom : originals)
      if (nominal_state.at(nom) == s) return true;
    return false;
  }

  bool run(SearchOutcome* out) {
    if (!compute_forced()) return false;
    prop_choice.assign(n, 0);
    modal_choice.assign(n, 0);
    decided.assign(n, false);
    std::vector<int> assign(originals.size(), 0);
    for (;;) {
      nominal_state.clear();
      for (int s = 0; s < n; ++s) nominal_state[fresh[s]] = s;
      for (std::size_t i = 0; i < originals.size(); ++i)
        nominal_state[originals[i]] = assign[i];
      if (dfs(0, out)) return true;
      std::size_t i = 0;
      while (i < assign.size() && assign[i] == n - 1) assign[i++] = 0;
      if (i == assign.size()) break;
      ++assign[i];
    }
    return false;
  }
};

}  // namespace

SearchOutcome named_model_search(const NamedModelProblem& prob) {
  SearchOutcome out;
  if (prob.bounds.max_states < 1) {
    // a zero state budget is an exhausted resource, not a refutation
    out.status = SearchStatus::resource_bound;
    return out;
  }
  bool resource = false;
  for (int n = 1; n <= prob.bounds.max_states && n <= kMaxStates; ++n) {
    try {
      Engine engine(prob, n);
      if (engine.run(&out)) {
        NamedModelReport report =
            verify_named_model(out.model, out.designated, prob, &out.labels);
        if (!report.ok())
          throw std::logic_error("named-model search output failed re-verification");
        return out;
      }
      resource = resource || engine.resource_hit;
    } catch (const ResourceBoundError&) {
      resource = true;
    }
  }
  out.status = resource ? SearchStatus::resource_bound : SearchStatus::exhausted;
  return out;
}

NamedModelReport verify_named_model(const HybridModel& m, int designated,
                                    const NamedModelProblem& prob,
                                    const LabeledClosure* labels) {
  NamedModelReport rep;
  const int n = m.num_states();

  rep.named_ok = true;
  {
    std::vector<bool> named(n, false);
    for (const auto& [nom, s] : m.val_noms) named[s] = true;
    for (int s = 0; s < n; ++s)
      if (!named[s]) {
        rep.named_ok = false;
        rep.failures.push_back("state " + m.states[s] + " is not named");
      }
  }

  rep.goal_ok = true;
  for (const auto& g : prob.goal)
    if (!satisfies(m, designated, *g)) {
      rep.goal_ok = false;
      rep.failures.push_back("goal fails at the designated state: " + to_string(g));
    }

  rep.tbox_ok = model_satisfies_globally(m, prob.tbox);
  if (!rep.tbox_ok) rep.failures.push_back("tbox fails somewhere");

  try {
    auto frame = frame_satisfies_pure(m, prob.pure_axioms, prob.bounds);
    rep.frame_ok = frame.holds;
    if (!frame.holds)
      rep.frame_ok = false,
      rep.failures.push_back("pure axiom " + std::to_string(frame.axiom_index) +
                             " fails as a frame condition");
  } catch (const std::exception& e) {
    rep.frame_ok = false;
    rep.failures.push_back(std::string("frame check: ") + e.what());
  }

  // (d) compares the search labels against the satisfaction relation;
  // a model supplied without labels has nothing left to re-check here.
  rep.truth_ok = true;
  if (labels) {
    for (int s = 0; s < n; ++s)
      for (std::size_t i = 0; i < labels->formulas.size(); ++i) {
        bool actual = satisfies(m, s, *labels->formulas[i]);
        if (actual != labels->value[s][i]) {
          rep.truth_ok = false;
          rep.failures.push_back("truth lemma fails at " + m.states[s] + ": " +
                                 to_string(labels->formulas[i]));
        }
      }
  }
  return rep;
}

NamedModelProblem parse_named_model_problem(std::istream& in, const std::string& origin) {
  NamedModelProblem prob;
  prob.sig = Signature::kripke();
  std::string rules_spec = "none";
  enum class Section { none, axioms, tbox, goal } section = Section::none;
  std::vector<std::string> axiom_lines, tbox_lines, goal_lines;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos &&
        (hash == 0 || std::isspace(static_cast<unsigned char>(line[hash - 1]))))
      line.erase(hash);
    std::string t = line;
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t\r\n") + 1);
    if (t.empty()) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (t.rfind("functor:", 0) == 0) {
      std::string f = t.substr(8);
      f.erase(0, f.find_first_not_of(" \t"));
      auto fk = functor_from_string(f);
      if (!fk) fail("unknown functor " + f);
      switch (*fk) {
        case FunctorKind::kripke: prob.sig = Signature::kripke(); break;
        case FunctorKind::multigraph: prob.sig = Signature::graded(); break;
        case FunctorKind::neighborhood: prob.sig = Signature::neighborhood(); break;
        case FunctorKind::monotone: prob.sig = Signature::monotone(); break;
        case FunctorKind::selection: prob.sig = Signature::ck(); break;
        case FunctorKind::game: prob.sig = Signature::game(); break;
      }
      section = Section::none;
    } else if (t.rfind("sig:", 0) == 0) {
      std::string s = t.substr(4);
      s.erase(0, s.find_first_not_of(" \t"));
      prob.sig = Signature::resolve(s);
      section = Section::none;
    } else if (t.rfind("rules:", 0) == 0) {
      rules_spec = t.substr(6);
      rules_spec.erase(0, rules_spec.find_first_not_of(" \t"));
      section = Section::none;
    } else if (t.rfind("bounds:", 0) == 0) {
      prob.bounds = SearchBounds::parse(t.substr(7));
      section = Section::none;
    } else if (t == "axioms:") {
      section = Section::axioms;
    } else if (t == "tbox:") {
      section = Section::tbox;
    } else if (t == "goal:") {
      section = Section::goal;
    } else {
      switch (section) {
        case Section::axioms: axiom_lines.push_back(t); break;
        case Section::tbox: tbox_lines.push_back(t); break;
        case Section::goal: goal_lines.push_back(t); break;
        case Section::none: fail("formula outside a section: " + t);
      }
    }
  }
  prob.rules = RuleSet::resolve(rules_spec, prob.sig);
  for (const auto& s : axiom_lines) prob.pure_axioms.push_back(parse_formula(s, prob.sig));
  for (const auto& s : tbox_lines) prob.tbox.push_back(parse_formula(s, prob.sig));
  for (const auto& s : goal_lines) prob.goal.push_back(parse_formula(s, prob.sig));
  for (const auto& a : prob.pure_axioms)
    if (!is_pure(*a)) throw NotPureError("axiom is not pure: " + to_string(a));
  return prob;
}

NamedModelProblem parse_named_model_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open problem file: " + path);
  return parse_named_model_problem(in, path);
}

}  // namespace hycoa
