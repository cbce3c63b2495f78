#include "hycoa/semantics.hpp"

#include <algorithm>
#include <functional>

#include "hycoa/errors.hpp"

namespace hycoa {

namespace {

struct NomOverlay {
  const NomOverlay* parent = nullptr;
  std::string name;
  int state = -1;

  std::optional<int> lookup(const std::string& n) const {
    for (const NomOverlay* o = this; o; o = o->parent)
      if (o->name == n) return o->state;
    return std::nullopt;
  }
};

StateSet eval(const HybridModel& m, const Functor& fs, const Formula& f,
              const NomOverlay* overlay) {
  const int n = m.num_states();
  const StateSet full = full_set(n);
  switch (f.kind()) {
    case FormulaKind::prop_var: {
      auto it = m.val_props.find(f.name());
      return it == m.val_props.end() ? 0 : it->second;
    }
    case FormulaKind::nominal: {
      if (overlay)
        if (auto s = overlay->lookup(f.name())) return 1ULL << *s;
      auto it = m.val_noms.find(f.name());
      if (it == m.val_noms.end()) throw UnboundNominalError(f.name());
      return 1ULL << it->second;
    }
    case FormulaKind::negation:
      return ~eval(m, fs, *f.arg(0), overlay) & full;
    case FormulaKind::conjunction:
      return eval(m, fs, *f.arg(0), overlay) & eval(m, fs, *f.arg(1), overlay);
    case FormulaKind::at: {
      int target = -1;
      if (overlay)
        if (auto s = overlay->lookup(f.name())) target = *s;
      if (target < 0) {
        auto it = m.val_noms.find(f.name());
        if (it == m.val_noms.end()) throw UnboundNominalError(f.name());
        target = it->second;
      }
      StateSet inner = eval(m, fs, *f.arg(0), overlay);
      return set_member(inner, target) ? full : 0;
    }
    case FormulaKind::modal: {
      auto sem = Signature::parse_op_name(f.name());
      if (!sem) throw ConfigError("unknown modal operator " + f.name());
      std::vector<StateSet> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(eval(m, fs, *a, overlay));
      StateSet out = 0;
      for (int c = 0; c < n; ++c)
        if (fs.lifting_member(*sem, m.gamma[c], args, n)) out |= 1ULL << c;
      return out;
    }
    case FormulaKind::down: {
      StateSet out = 0;
      for (int c = 0; c < n; ++c) {
        NomOverlay o{overlay, f.name(), c};
        if (set_member(eval(m, fs, *f.arg(0), &o), c)) out |= 1ULL << c;
      }
      return out;
    }
  }
  return 0;
}

}  // namespace

StateSet truth_set(const HybridModel& m, const Formula& f) {
  Functor fs = m.functor_structure();
  return eval(m, fs, f, nullptr);
}

bool satisfies(const HybridModel& m, int state, const Formula& f) {
  if (state < 0 || state >= m.num_states()) throw ConfigError("state out of range");
  return set_member(truth_set(m, f), state);
}

bool model_satisfies_globally(const HybridModel& m, const std::vector<FormulaRef>& fs) {
  const StateSet full = full_set(m.num_states());
  for (const auto& f : fs)
    if (truth_set(m, *f) != full) return false;
  return true;
}

FrameCheckResult frame_satisfies_pure(const HybridModel& frame,
                                      const std::vector<FormulaRef>& axioms,
                                      const SearchBounds& bounds) {
  const int n = frame.num_states();
  if ((frame.functor == FunctorKind::selection ||
       frame.functor == FunctorKind::neighborhood ||
       frame.functor == FunctorKind::monotone) &&
      n > bounds.max_base)
    throw ResourceBoundError("frame check limited to " +
                             std::to_string(bounds.max_base) + " states here");
  const StateSet full = full_set(n);
  HybridModel scratch = frame;
  scratch.val_props.clear();
  scratch.val_noms.clear();

  for (std::size_t ai = 0; ai < axioms.size(); ++ai) {
    const FormulaRef& axiom = axioms[ai];
    if (!is_pure(*axiom))
      throw NotPureError("frame axiom contains a propositional variable: " +
                         to_string(axiom));
    std::set<std::string> nom_set = free_nominals(*axiom);
    std::vector<std::string> noms(nom_set.begin(), nom_set.end());
    std::vector<int> assign(noms.size(), 0);
    for (;;) {
      scratch.val_noms.clear();
      for (std::size_t i = 0; i < noms.size(); ++i) scratch.val_noms[noms[i]] = assign[i];
      StateSet ts = truth_set(scratch, *axiom);
      if (ts != full) {
        FrameCheckResult r;
        r.holds = false;
        r.axiom_index = static_cast<int>(ai);
        for (std::size_t i = 0; i < noms.size(); ++i) r.assignment[noms[i]] = assign[i];
        for (int c = 0; c < n; ++c)
          if (!set_member(ts, c)) {
            r.state = c;
            break;
          }
        return r;
      }
      std::size_t i = 0;
      while (i < assign.size() && assign[i] == n - 1) assign[i++] = 0;
      if (i == assign.size()) break;
      ++assign[i];
    }
    if (noms.empty()) continue;  // single empty-assignment pass done above
  }
  return {};
}

HybridModel kripke_to_multigraph(const HybridModel& m) {
  if (m.functor != FunctorKind::kripke)
    throw ConfigError("kripke_to_multigraph expects a kripke model");
  HybridModel out = m;
  out.functor = FunctorKind::multigraph;
  out.gamma.clear();
  for (const TxElement& t : m.gamma) {
    const auto& k = std::get<KripkeTx>(t);
    MultigraphTx mg;
    mg.weights.assign(m.num_states(), 0);
    for (int x = 0; x < m.num_states(); ++x)
      if (set_member(k.succ, x)) mg.weights[x] = 1;
    out.gamma.push_back(mg);
  }
  return out;
}

namespace {

// Subsets of `a` with at most k elements, including the empty set.
void for_each_small_subset(StateSet a, int n, std::uint32_t k,
                           const std::function<bool(StateSet)>& yield) {
  std::vector<int> elems;
  for (int x = 0; x < n; ++x)
    if (set_member(a, x)) elems.push_back(x);
  std::vector<int> pick;
  std::function<bool(std::size_t)> go = [&](std::size_t start) -> bool {
    StateSet s = 0;
    for (int x : pick) s |= 1ULL << x;
    if (!yield(s)) return false;
    if (pick.size() == k) return true;
    for (std::size_t i = start; i < elems.size(); ++i) {
      pick.push_back(elems[i]);
      if (!go(i + 1)) return false;
      pick.pop_back();
    }
    return true;
  };
  go(0);
}

bool bounded_identity_holds(const Functor& fs, const OpSemantics& op,
                            const std::vector<StateSet>& args, int designated_arg,
                            std::uint32_t k, const TxElement& t, int n) {
  bool lhs = fs.lifting_member(op, t, args, n);
  bool rhs = false;
  std::vector<StateSet> sub = args;
  for_each_small_subset(args[designated_arg], n, k, [&](StateSet b) {
    sub[designated_arg] = b;
    if (fs.lifting_member(op, t, sub, n)) {
      rhs = true;
      return false;
    }
    return true;
  });
  return lhs == rhs;
}

}  // namespace

bool check_bounded(const Functor& functor, const OpSemantics& op, int arity,
                   std::uint32_t k, int n, int designated_arg,
                   const SearchBounds& bounds) {
  if (designated_arg < 0 || designated_arg >= arity)
    throw ConfigError("check_bounded: bad designated argument");
  const StateSet full = full_set(n);

  SearchBounds eb = bounds;
  if (functor.kind() == FunctorKind::multigraph) {
    // Multiplicities above the relevant threshold cannot change membership
    // on either side, so the capped enumeration decides the identity.
    std::uint64_t cap = 1;
    if (op.kind == OpKind::graded_dia) cap = op.grade + 1;
    if (op.kind == OpKind::presburger) cap = op.threshold;
    eb.max_multiplicity = std::max<std::uint64_t>(cap, 1);
  }

  std::vector<StateSet> args(arity, 0);
  bool ok = true;
  std::function<bool(int)> per_args = [&](int i) -> bool {
    if (i == arity) {
      if (functor.kind() == FunctorKind::selection) {
        // Membership factors through the table's value at the first
        // argument, so enumerate that single coordinate.
        for (StateSet v = 0;; ++v) {
          SelectionTx t;
          t.entries.emplace_back(args[0], v);
          if (!bounded_identity_holds(functor, op, args, designated_arg, k, t, n)) {
            ok = false;
            return false;
          }
          if (v == full) break;
        }
        return true;
      }
      return functor.enumerate_tx(n, eb, [&](const TxElement& t) {
        if (!bounded_identity_holds(functor, op, args, designated_arg, k, t, n)) {
          ok = false;
          return false;
        }
        return true;
      });
    }
    for (StateSet a = 0;; ++a) {
      args[i] = a;
      if (!per_args(i + 1)) return false;
      if (a == full) break;
    }
    return true;
  };
  per_args(0);
  return ok;
}

}  // namespace hycoa
