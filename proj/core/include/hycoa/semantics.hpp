#pragma once

// Coalgebraic satisfaction: @ jumps to the named state, `dn` rebinds the
// current state, and modal operators go through the predicate liftings.
// Propositional variables without a valuation denote the empty set;
// nominals without a valuation raise UnboundNominalError.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hycoa/bounds.hpp"
#include "hycoa/formula.hpp"
#include "hycoa/model.hpp"

namespace hycoa {

bool satisfies(const HybridModel& m, int state, const Formula& f);
StateSet truth_set(const HybridModel& m, const Formula& f);
bool model_satisfies_globally(const HybridModel& m, const std::vector<FormulaRef>& fs);

struct FrameCheckResult {
  bool holds = true;
  int axiom_index = -1;
  std::map<std::string, int> assignment;  // free nominals -> states
  int state = -1;
};

// A frame satisfies a pure axiom when the axiom holds at all states under
// every assignment of its free nominals; the rest of the valuation cannot
// matter for pure formulas. The model's own valuation is ignored.
FrameCheckResult frame_satisfies_pure(const HybridModel& frame,
                                      const std::vector<FormulaRef>& axioms,
                                      const SearchBounds& bounds = {});

// Indicator multigraph of a Kripke model: multiplicity 1 exactly on edges.
HybridModel kripke_to_multigraph(const HybridModel& m);

// Def of k-boundedness in the designated argument:
//   [[op]](..,A,..) == union over B subset A, |B| <= k of [[op]](..,B,..)
// checked over every argument tuple and every enumerable TX element.
bool check_bounded(const Functor& functor, const OpSemantics& op, int arity,
                   std::uint32_t k, int n, int designated_arg,
                   const SearchBounds& bounds = {});

}  // namespace hycoa
