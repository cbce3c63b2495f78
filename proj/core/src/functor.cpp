#include "hycoa/functor.hpp"

#include <algorithm>
#include <sstream>

#include "hycoa/errors.hpp"

namespace hycoa {

SearchBounds SearchBounds::parse(const std::string& text) {
  SearchBounds b;
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), ',', ' ');
  std::stringstream ss(norm);
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ConfigError("bounds: expected key=value, got " + tok);
    std::string key = tok.substr(0, eq);
    std::uint64_t val = std::stoull(tok.substr(eq + 1));
    if (key == "max_states")
      b.max_states = static_cast<int>(val);
    else if (key == "max_mult" || key == "max_multiplicity")
      b.max_multiplicity = val;
    else if (key == "max_strategies")
      b.max_strategies = static_cast<int>(val);
    else if (key == "max_base")
      b.max_base = static_cast<int>(val);
    else if (key == "max_candidates")
      b.max_candidates = val;
    else
      throw ConfigError("bounds: unknown key " + key);
  }
  return b;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  if (a == kMultInf || b == kMultInf) return kMultInf;
  std::uint64_t s = a + b;
  return s < a ? kMultInf : s;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a == kMultInf || b == kMultInf) return kMultInf;
  if (a > kMultInf / b) return kMultInf;
  return a * b;
}

std::uint64_t mass(const MultigraphTx& t, StateSet a, int n) {
  std::uint64_t total = 0;
  for (int x = 0; x < n; ++x)
    if (set_member(a, x)) total = sat_add(total, t.weights[x]);
  return total;
}

int profile_count(const std::vector<int>& counts) {
  int p = 1;
  for (int c : counts) p *= c;
  return p;
}

}  // namespace

bool NeighborhoodTx::contains(StateSet s) const {
  return std::binary_search(collection.begin(), collection.end(), s);
}

StateSet SelectionTx::apply(StateSet a) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), a,
                             [](const auto& e, StateSet k) { return e.first < k; });
  if (it != entries.end() && it->first == a) return it->second;
  return fallback;
}

bool tx_equal(const TxElement& a, const TxElement& b) { return a == b; }

NeighborhoodTx upward_closure(const NeighborhoodTx& t, int n) {
  const StateSet full = full_set(n);
  std::vector<StateSet> out;
  for (StateSet s = 0; s <= full; ++s) {
    for (StateSet base : t.collection) {
      if ((base & ~s) == 0) {
        out.push_back(s);
        break;
      }
    }
    if (s == full) break;
  }
  return NeighborhoodTx{std::move(out)};
}

bool is_upward_closed(const NeighborhoodTx& t, int n) {
  const StateSet full = full_set(n);
  for (StateSet s : t.collection)
    for (int x = 0; x < n; ++x) {
      StateSet up = s | (1ULL << x);
      if (up != s && !t.contains(up)) return false;
    }
  (void)full;
  return true;
}

Functor::Functor(FunctorKind kind, std::vector<std::string> agents)
    : kind_(kind), agents_(std::move(agents)) {
  if (kind_ == FunctorKind::game && agents_.empty()) agents_ = {"a", "b"};
}

std::uint64_t Functor::enumeration_size(int n, const SearchBounds& b) const {
  const std::uint64_t subsets = 1ULL << n;
  switch (kind_) {
    case FunctorKind::kripke:
      return subsets;
    case FunctorKind::multigraph: {
      std::uint64_t total = 1;
      for (int i = 0; i < n; ++i) total = sat_mul(total, b.max_multiplicity + 1);
      return total;
    }
    case FunctorKind::neighborhood:
      return subsets >= 64 ? kMultInf : (1ULL << subsets);
    case FunctorKind::monotone:
      return subsets >= 64 ? kMultInf : (1ULL << subsets);  // pre-filter size
    case FunctorKind::selection: {
      std::uint64_t total = 1;
      for (std::uint64_t i = 0; i < subsets; ++i) total = sat_mul(total, subsets);
      return total;
    }
    case FunctorKind::game: {
      std::uint64_t total = 0;
      std::vector<int> counts(agents_.size(), 1);
      for (;;) {
        std::uint64_t tables = 1;
        for (int i = 0; i < profile_count(counts); ++i)
          tables = sat_mul(tables, static_cast<std::uint64_t>(n));
        total = sat_add(total, tables);
        std::size_t k = 0;
        while (k < counts.size() && counts[k] == b.max_strategies) counts[k++] = 1;
        if (k == counts.size()) break;
        ++counts[k];
      }
      return total;
    }
  }
  return 0;
}

bool Functor::enumerate_tx(int n, const SearchBounds& bounds,
                           const std::function<bool(const TxElement&)>& yield) const {
  if (n <= 0 || n > kMaxStates) throw ConfigError("enumerate_tx: bad carrier size");
  if (enumeration_size(n, bounds) > bounds.max_candidates)
    throw ResourceBoundError("enumerate_tx: space exceeds max_candidates for " +
                             to_string(kind_));
  const StateSet full = full_set(n);
  switch (kind_) {
    case FunctorKind::kripke: {
      for (StateSet s = 0;; ++s) {
        if (!yield(KripkeTx{s})) return false;
        if (s == full) break;
      }
      return true;
    }
    case FunctorKind::multigraph: {
      MultigraphTx t;
      t.weights.assign(n, 0);
      for (;;) {
        if (!yield(t)) return false;
        int i = 0;
        while (i < n && t.weights[i] == bounds.max_multiplicity) t.weights[i++] = 0;
        if (i == n) break;
        ++t.weights[i];
      }
      return true;
    }
    case FunctorKind::neighborhood:
    case FunctorKind::monotone: {
      const std::uint64_t num_subsets = 1ULL << n;
      const std::uint64_t num_collections = 1ULL << num_subsets;
      for (std::uint64_t mask = 0; mask < num_collections; ++mask) {
        NeighborhoodTx t;
        for (std::uint64_t s = 0; s < num_subsets; ++s)
          if ((mask >> s) & 1) t.collection.push_back(static_cast<StateSet>(s));
        if (kind_ == FunctorKind::monotone && !is_upward_closed(t, n)) continue;
        if (!yield(t)) return false;
      }
      return true;
    }
    case FunctorKind::selection: {
      const std::uint64_t num_subsets = 1ULL << n;
      std::vector<StateSet> values(num_subsets, 0);
      for (;;) {
        SelectionTx t;
        t.entries.reserve(num_subsets);
        for (std::uint64_t k = 0; k < num_subsets; ++k)
          t.entries.emplace_back(static_cast<StateSet>(k), values[k]);
        if (!yield(t)) return false;
        std::uint64_t i = 0;
        while (i < num_subsets && values[i] == full) values[i++] = 0;
        if (i == num_subsets) break;
        ++values[i];
      }
      return true;
    }
    case FunctorKind::game: {
      std::vector<int> counts(agents_.size(), 1);
      for (;;) {
        const int profiles = profile_count(counts);
        std::vector<int> out(profiles, 0);
        for (;;) {
          if (!yield(GameTx{counts, out})) return false;
          int i = 0;
          while (i < profiles && out[i] == n - 1) out[i++] = 0;
          if (i == profiles) break;
          ++out[i];
        }
        std::size_t k = 0;
        while (k < counts.size() && counts[k] == bounds.max_strategies) counts[k++] = 1;
        if (k == counts.size()) break;
        ++counts[k];
      }
      return true;
    }
  }
  return true;
}

namespace {

// Row-major profile indexing over strategy_counts.
int profile_index(const std::vector<int>& counts, const std::vector<int>& profile) {
  int idx = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) idx = idx * counts[i] + profile[i];
  return idx;
}

bool coalition_member(const GameTx& t, const std::vector<int>& coalition_idx,
                      StateSet a) {
  const std::size_t m = t.strategy_counts.size();
  std::vector<bool> in_coalition(m, false);
  for (int i : coalition_idx) in_coalition[i] = true;
  std::vector<int> profile(m, 0);

  std::function<bool(std::size_t)> exists = [&](std::size_t i) -> bool {
    while (i < m && !in_coalition[i]) ++i;
    if (i >= m) {
      std::function<bool(std::size_t)> forall = [&](std::size_t j) -> bool {
        while (j < m && in_coalition[j]) ++j;
        if (j >= m)
          return set_member(a, t.outcomes[profile_index(t.strategy_counts, profile)]);
        for (int s = 0; s < t.strategy_counts[j]; ++s) {
          profile[j] = s;
          if (!forall(j + 1)) return false;
        }
        return true;
      };
      return forall(0);
    }
    for (int s = 0; s < t.strategy_counts[i]; ++s) {
      profile[i] = s;
      if (exists(i + 1)) return true;
    }
    return false;
  };
  return exists(0);
}

}  // namespace

bool Functor::lifting_member(const OpSemantics& op, const TxElement& t,
                             std::span<const StateSet> args, int n) const {
  const StateSet full = full_set(n);
  switch (kind_) {
    case FunctorKind::kripke: {
      const auto* k = std::get_if<KripkeTx>(&t);
      if (!k) throw ConfigError("kripke lifting on non-kripke element");
      if (op.kind == OpKind::box) return (k->succ & ~args[0] & full) == 0;
      if (op.kind == OpKind::dia) return (k->succ & args[0]) != 0;
      throw ConfigError("operator not interpreted over kripke");
    }
    case FunctorKind::multigraph: {
      const auto* m = std::get_if<MultigraphTx>(&t);
      if (!m) throw ConfigError("multigraph lifting on non-multigraph element");
      if (op.kind == OpKind::graded_dia) return mass(*m, args[0], n) > op.grade;
      if (op.kind == OpKind::presburger) {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < op.coefficients.size(); ++i)
          total = sat_add(total, sat_mul(op.coefficients[i], mass(*m, args[i], n)));
        return total >= op.threshold;
      }
      throw ConfigError("operator not interpreted over multigraph");
    }
    case FunctorKind::neighborhood:
    case FunctorKind::monotone: {
      const auto* s = std::get_if<NeighborhoodTx>(&t);
      if (!s) throw ConfigError("neighborhood lifting on non-neighborhood element");
      if (op.kind == OpKind::box) return s->contains(args[0] & full);
      if (op.kind == OpKind::dia) return !s->contains(~args[0] & full);
      throw ConfigError("operator not interpreted over neighborhoods");
    }
    case FunctorKind::selection: {
      const auto* f = std::get_if<SelectionTx>(&t);
      if (!f) throw ConfigError("selection lifting on non-selection element");
      if (op.kind == OpKind::cond_arrow)
        return (f->apply(args[0] & full) & ~args[1] & full) == 0;
      if (op.kind == OpKind::cond_meet)
        return (f->apply(args[0] & full) & args[1]) != 0;
      throw ConfigError("operator not interpreted over selection frames");
    }
    case FunctorKind::game: {
      const auto* g = std::get_if<GameTx>(&t);
      if (!g) throw ConfigError("game lifting on non-game element");
      if (op.kind != OpKind::coalition)
        throw ConfigError("operator not interpreted over game frames");
      std::vector<int> coalition_idx;
      for (const std::string& member : op.coalition) {
        auto it = std::find(agents_.begin(), agents_.end(), member);
        if (it == agents_.end()) throw ConfigError("unknown agent " + member);
        coalition_idx.push_back(static_cast<int>(it - agents_.begin()));
      }
      return coalition_member(*g, coalition_idx, args[0]);
    }
  }
  return false;
}

TxElement Functor::map_tx(std::span<const int> f, int n_from, int n_to,
                          const TxElement& t) const {
  const StateSet full_to = full_set(n_to);
  switch (kind_) {
    case FunctorKind::kripke: {
      const auto& k = std::get<KripkeTx>(t);
      StateSet out = 0;
      for (int x = 0; x < n_from; ++x)
        if (set_member(k.succ, x)) out |= 1ULL << f[x];
      return KripkeTx{out};
    }
    case FunctorKind::multigraph: {
      const auto& m = std::get<MultigraphTx>(t);
      MultigraphTx out;
      out.weights.assign(n_to, 0);
      for (int x = 0; x < n_from; ++x)
        out.weights[f[x]] = sat_add(out.weights[f[x]], m.weights[x]);
      return out;
    }
    case FunctorKind::neighborhood:
    case FunctorKind::monotone: {
      const auto& s = std::get<NeighborhoodTx>(t);
      NeighborhoodTx out;
      for (StateSet b = 0;; ++b) {
        StateSet pre = 0;
        for (int x = 0; x < n_from; ++x)
          if (set_member(b, f[x])) pre |= 1ULL << x;
        if (s.contains(pre)) out.collection.push_back(b);
        if (b == full_to) break;
      }
      return out;
    }
    case FunctorKind::selection: {
      const auto& g = std::get<SelectionTx>(t);
      SelectionTx out;
      for (StateSet b = 0;; ++b) {
        StateSet pre = 0;
        for (int x = 0; x < n_from; ++x)
          if (set_member(b, f[x])) pre |= 1ULL << x;
        StateSet val = g.apply(pre);
        StateSet img = 0;
        for (int x = 0; x < n_from; ++x)
          if (set_member(val, x)) img |= 1ULL << f[x];
        out.entries.emplace_back(b, img);
        if (b == full_to) break;
      }
      return out;
    }
    case FunctorKind::game: {
      const auto& g = std::get<GameTx>(t);
      GameTx out = g;
      for (int& o : out.outcomes) o = f[o];
      return out;
    }
  }
  return t;
}

std::string tx_to_string(const TxElement& t, const std::vector<std::string>& names,
                         const std::vector<std::string>& agents) {
  std::ostringstream os;
  auto set_str = [&](StateSet s) {
    os << '{';
    bool first = true;
    for (std::size_t x = 0; x < names.size(); ++x)
      if (set_member(s, static_cast<int>(x))) {
        if (!first) os << ' ';
        os << names[x];
        first = false;
      }
    os << '}';
  };
  if (const auto* k = std::get_if<KripkeTx>(&t)) {
    set_str(k->succ);
  } else if (const auto* m = std::get_if<MultigraphTx>(&t)) {
    os << '{';
    for (std::size_t x = 0; x < m->weights.size(); ++x) {
      if (x) os << ' ';
      os << names[x] << '=';
      if (m->weights[x] == kMultInf)
        os << "inf";
      else
        os << m->weights[x];
    }
    os << '}';
  } else if (const auto* nb = std::get_if<NeighborhoodTx>(&t)) {
    os << '{';
    for (std::size_t i = 0; i < nb->collection.size(); ++i) {
      if (i) os << ' ';
      set_str(nb->collection[i]);
    }
    os << '}';
  } else if (const auto* sel = std::get_if<SelectionTx>(&t)) {
    for (std::size_t i = 0; i < sel->entries.size(); ++i) {
      if (i) os << ' ';
      set_str(sel->entries[i].first);
      os << "->";
      set_str(sel->entries[i].second);
    }
  } else if (const auto* g = std::get_if<GameTx>(&t)) {
    os << "sizes(";
    for (std::size_t i = 0; i < g->strategy_counts.size(); ++i) {
      if (i) os << ',';
      os << agents[i] << '=' << g->strategy_counts[i];
    }
    os << ") outcomes(";
    for (std::size_t i = 0; i < g->outcomes.size(); ++i) {
      if (i) os << ',';
      os << names[g->outcomes[i]];
    }
    os << ')';
  }
  return os.str();
}

}  // namespace hycoa
