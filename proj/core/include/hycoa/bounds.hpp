#pragma once

#include <cstdint>
#include <string>

namespace hycoa {

// Finite enumeration limits. TX is infinite for the multigraph and game
// functors; these caps carve out the finite fragments the engines search.
struct SearchBounds {
  int max_states = 4;
  std::uint64_t max_multiplicity = 3;  // multigraph enumeration cap
  int max_strategies = 2;              // per agent, game functor
  int max_base = 8;                    // |X| guard for neighborhood/selection
  std::uint64_t max_candidates = 20000000;  // overall enumeration guard

  // Parses "max_states=4 max_mult=3 max_strategies=2" (spaces or commas).
  static SearchBounds parse(const std::string& text);
};

}  // namespace hycoa
