#pragma once

// Bounded named-model search. Candidate models have one state per fresh
// nominal (plus the problem's own nominals mapped onto them); states carry
// maximal labels over a finite closure, and each state's transition
// structure is obtained by solving the one-step problem its label demands.
//
// Problem file format (sections; formulas one per line inside a section):
//   functor: kripke            (selects the builtin signature)
//   sig: <name|path>           (optional override)
//   rules: K|<path>|none
//   bounds: max_states=3 max_mult=2
//   axioms:                    (pure formulas)
//   tbox:
//   goal:

#include <iosfwd>
#include <string>
#include <vector>

#include "hycoa/abox.hpp"
#include "hycoa/bounds.hpp"
#include "hycoa/formula.hpp"
#include "hycoa/model.hpp"
#include "hycoa/rules.hpp"
#include "hycoa/signature.hpp"

namespace hycoa {

struct NamedModelProblem {
  Signature sig;
  RuleSet rules;
  std::vector<FormulaRef> pure_axioms;
  std::vector<FormulaRef> tbox;
  std::vector<FormulaRef> goal;
  SearchBounds bounds;
};

enum class SearchStatus {
  found,
  exhausted,       // the bounded space holds no model; not a refutation
  resource_bound,  // some engine hit a cap; exhaustion cannot be claimed
};

// Labels produced by the search: truth of every closure formula at every
// state, for the truth-lemma re-verification.
struct LabeledClosure {
  std::vector<FormulaRef> formulas;
  std::vector<std::vector<bool>> value;  // [state][formula index]
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::exhausted;
  HybridModel model;
  int designated = -1;
  LabeledClosure labels;
};

SearchOutcome named_model_search(const NamedModelProblem& prob);

struct NamedModelReport {
  bool named_ok = false;   // every state is the denotation of a nominal
  bool goal_ok = false;    // (a)
  bool tbox_ok = false;    // (b)
  bool frame_ok = false;   // (c)
  bool truth_ok = false;   // (d), against the supplied labels
  std::vector<std::string> failures;

  bool ok() const { return named_ok && goal_ok && tbox_ok && frame_ok && truth_ok; }
};

// Re-checks the search postconditions through the satisfaction relation
// only. The truth-lemma condition compares the supplied labels; a model
// given without labels is checked for (a)-(c) and namedness.
NamedModelReport verify_named_model(const HybridModel& m, int designated,
                                    const NamedModelProblem& prob,
                                    const LabeledClosure* labels = nullptr);

// Subformula closure over the given present nominals: tbox, goal, pure
// axiom instances, binder instances, and @-prefixed closure formulas,
// closed under single negation.
std::vector<FormulaRef> build_closure(const NamedModelProblem& prob,
                                      const std::vector<std::string>& present);

NamedModelProblem parse_named_model_problem(std::istream& in,
                                            const std::string& origin = "<problem>");
NamedModelProblem parse_named_model_problem_file(const std::string& path);

}  // namespace hycoa
