#include "hycoa/substitution.hpp"

#include <vector>

namespace hycoa {

namespace {

std::string apply_nom(const Substitution& s, const std::string& n) {
  auto it = s.nominal.find(n);
  return it == s.nominal.end() ? n : it->second;
}

// Nominals that substitution may introduce into the body of a binder:
// targets of the nominal part plus free nominals of substituted formulas,
// restricted to keys that can actually occur free under the binder.
std::set<std::string> incoming_nominals(const Formula& body, const Substitution& s) {
  std::set<std::string> fn = free_nominals(body);
  std::set<std::string> pv = prop_vars(body);
  std::set<std::string> in;
  for (const auto& [from, to] : s.nominal)
    if (fn.count(from)) in.insert(to);
  for (const auto& [var, repl] : s.prop)
    if (pv.count(var)) collect_free_nominals(*repl, &in);
  return in;
}

FormulaRef subst_rec(const FormulaRef& f, const Substitution& s) {
  if (s.empty()) return f;
  switch (f->kind()) {
    case FormulaKind::prop_var: {
      auto it = s.prop.find(f->name());
      return it == s.prop.end() ? f : it->second;
    }
    case FormulaKind::nominal:
      return Formula::nominal(apply_nom(s, f->name()));
    case FormulaKind::negation:
      return Formula::neg(subst_rec(f->arg(0), s));
    case FormulaKind::conjunction:
      return Formula::conj(subst_rec(f->arg(0), s), subst_rec(f->arg(1), s));
    case FormulaKind::modal: {
      std::vector<FormulaRef> args;
      args.reserve(f->args().size());
      for (const auto& a : f->args()) args.push_back(subst_rec(a, s));
      return Formula::modal(f->name(), std::move(args));
    }
    case FormulaKind::at:
      return Formula::at(apply_nom(s, f->name()), subst_rec(f->arg(0), s));
    case FormulaKind::down: {
      Substitution inner = s;
      inner.nominal.erase(f->name());
      const FormulaRef& body = f->arg(0);
      std::set<std::string> in = incoming_nominals(*body, inner);
      if (in.count(f->name())) {
        std::set<std::string> avoid = in;
        collect_free_nominals(*body, &avoid);
        avoid.insert(f->name());
        std::string b = fresh_nominal(avoid);
        Substitution rename;
        rename.nominal[f->name()] = b;
        FormulaRef renamed = subst_rec(body, rename);
        return Formula::down(b, subst_rec(renamed, inner));
      }
      return Formula::down(f->name(), subst_rec(body, inner));
    }
  }
  return f;
}

}  // namespace

FormulaRef substitute(const FormulaRef& f, const Substitution& sigma) {
  return subst_rec(f, sigma);
}

FormulaRef substitute_nominal(const FormulaRef& f, const std::string& from,
                              const std::string& to) {
  Substitution s;
  s.nominal[from] = to;
  return subst_rec(f, s);
}

}  // namespace hycoa
