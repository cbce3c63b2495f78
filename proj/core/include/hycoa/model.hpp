#pragma once

// Finite hybrid T-models: carrier, transition structure (one TX element per
// state), and a hybrid valuation. Nominals denote exactly one state.
//
// Model file format (line oriented, `#` comments):
//   functor: kripke|multigraph|neighborhood|monotone|selection|game
//   states: s0 s1 ...
//   succ s0: s1 s2                      (kripke)
//   mult s0: s1=2 s2=0                  (multigraph; absent = 0, `inf` allowed)
//   nbhd s0: {s1 s2} {s0}               (neighborhood/monotone)
//   sel s0: {s1} -> {s1 s2}             (selection; `default ->` for the rest)
//   agents: a b                         (game)
//   strat s0 a: 2
//   out s0: (1,1)->s1 (1,2)->s0 ...
//   val p: s0 s1
//   name i': s0

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hycoa/formula.hpp"
#include "hycoa/functor.hpp"

namespace hycoa {

struct HybridModel {
  FunctorKind functor = FunctorKind::kripke;
  std::vector<std::string> agents;          // game only
  std::vector<std::string> states;          // index -> display name
  std::vector<TxElement> gamma;             // one per state
  std::map<std::string, StateSet> val_props;
  std::map<std::string, int> val_noms;

  int num_states() const { return static_cast<int>(states.size()); }
  int state_index(const std::string& name) const;  // -1 when absent
  Functor functor_structure() const { return Functor(functor, agents); }

  // Structural invariants: gamma total, nominal targets in range,
  // monotone collections upward closed, game outcome tables complete.
  void validate() const;  // throws ConfigError
};

HybridModel parse_model(std::istream& in, const std::string& origin = "<model>");
HybridModel parse_model_file(const std::string& path);
std::string serialize_model(const HybridModel& m);

}  // namespace hycoa
