#pragma once

// One-step satisfiability and one-step consistency. A one-step problem
// lives over a finite base set X with a variable valuation tau and a set
// Xi of single-modal-layer formulas (modalities applied to variables,
// combined propositionally). Satisfiability asks for a TX element meeting
// all of Xi; consistency closes Xi under rule instances and checks
// propositional consistency with modal atoms opaque.
//
// Problem file format:
//   base: x0 x1
//   tau a: x0
//   constraint: (box a & ~ dia b)

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hycoa/bounds.hpp"
#include "hycoa/formula.hpp"
#include "hycoa/functor.hpp"
#include "hycoa/rules.hpp"
#include "hycoa/signature.hpp"

namespace hycoa {

struct OneStepProblem {
  std::vector<std::string> base;            // element names; indices are bits
  std::map<std::string, StateSet> tau;      // variable -> subset of base
  std::vector<FormulaRef> xi;

  int base_size() const { return static_cast<int>(base.size()); }
  void validate(const Signature& sig) const;  // shape invariants
};

enum class OneStepStatus { sat, unsat, resource_bound };

struct OneStepResult {
  OneStepStatus status = OneStepStatus::unsat;
  std::optional<TxElement> witness;  // present iff sat, re-verified
};

OneStepResult one_step_sat(const OneStepProblem& p, const Functor& functor,
                           const SearchBounds& bounds = {});

// True iff Xi plus all applicable rule instances is propositionally
// consistent. Substitutions range over representatives of the boolean
// subalgebra generated by tau's range; modal atoms are identified by
// their argument denotations.
bool one_step_consistent(const OneStepProblem& p, const RuleSet& rules,
                         const SearchBounds& bounds = {});

// One-step soundness of a rule: whenever X,tau |= premise then every
// enumerable TX element satisfies the conclusion.
bool verify_one_step_soundness(const OneStepRule& rule, const Functor& functor,
                               int base_size, const SearchBounds& bounds = {});

struct AgreementReport {
  bool consistent = false;
  OneStepStatus sat_status = OneStepStatus::unsat;
  bool agree = false;  // consistent == (sat_status == sat)
};

AgreementReport agreement_check(const OneStepProblem& p, const Functor& functor,
                                const RuleSet& rules, const SearchBounds& bounds = {});

OneStepProblem parse_one_step_problem(std::istream& in, const Signature& sig,
                                      const std::string& origin = "<onestep>");

// Evaluate a Prop(Lambda(P)) formula against a concrete TX element.
bool tx_satisfies(const Functor& functor, const TxElement& t,
                  const OneStepProblem& p, const Formula& f);

}  // namespace hycoa
