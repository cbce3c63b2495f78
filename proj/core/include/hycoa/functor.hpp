#pragma once

// Finite-set functor structures: an enumerable representation of TX for a
// finite carrier of n states, membership tests for each predicate lifting,
// and the functor action on maps (needed for the naturality laws).
// States are indices 0..n-1; a state set is a bitmask.

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "hycoa/bounds.hpp"
#include "hycoa/signature.hpp"

namespace hycoa {

using StateSet = std::uint64_t;

inline constexpr std::uint64_t kMultInf = ~0ULL;
inline constexpr int kMaxStates = 32;

inline StateSet full_set(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }
inline bool set_member(StateSet s, int x) { return (s >> x) & 1; }

struct KripkeTx {
  StateSet succ = 0;
  auto operator<=>(const KripkeTx&) const = default;
};

struct MultigraphTx {
  std::vector<std::uint64_t> weights;  // kMultInf = infinity
  auto operator<=>(const MultigraphTx&) const = default;
};

struct NeighborhoodTx {
  std::vector<StateSet> collection;  // sorted, unique
  auto operator<=>(const NeighborhoodTx&) const = default;
  bool contains(StateSet s) const;
};

struct SelectionTx {
  // Sparse table P(X) -> P(X): listed entries plus a default value.
  std::vector<std::pair<StateSet, StateSet>> entries;  // sorted by key
  StateSet fallback = 0;
  auto operator<=>(const SelectionTx&) const = default;
  StateSet apply(StateSet a) const;
};

struct GameTx {
  std::vector<int> strategy_counts;  // per agent, all >= 1
  std::vector<int> outcomes;         // row-major over strategy profiles
  auto operator<=>(const GameTx&) const = default;
};

using TxElement = std::variant<KripkeTx, MultigraphTx, NeighborhoodTx, SelectionTx, GameTx>;

bool tx_equal(const TxElement& a, const TxElement& b);
std::string tx_to_string(const TxElement& t, const std::vector<std::string>& state_names,
                         const std::vector<std::string>& agents);

NeighborhoodTx upward_closure(const NeighborhoodTx& t, int n);
bool is_upward_closed(const NeighborhoodTx& t, int n);

class Functor {
 public:
  explicit Functor(FunctorKind kind, std::vector<std::string> agents = {});

  FunctorKind kind() const { return kind_; }
  const std::vector<std::string>& agents() const { return agents_; }

  // Streams every TX element over an n-state carrier within `bounds`
  // (multigraph weights capped, strategy sets capped, monotone restricted
  // to upward-closed collections). Stops early when `yield` returns false;
  // returns false in that case. Throws ResourceBoundError when the space
  // exceeds bounds.max_candidates.
  bool enumerate_tx(int n, const SearchBounds& bounds,
                    const std::function<bool(const TxElement&)>& yield) const;
  std::uint64_t enumeration_size(int n, const SearchBounds& bounds) const;

  bool lifting_member(const OpSemantics& op, const TxElement& t,
                      std::span<const StateSet> args, int n) const;

  // T f for f: states(n_from) -> states(n_to), f given pointwise.
  TxElement map_tx(std::span<const int> f, int n_from, int n_to,
                   const TxElement& t) const;

 private:
  FunctorKind kind_;
  std::vector<std::string> agents_;
};

}  // namespace hycoa
