#include "hycoa/abox.hpp"

#include <algorithm>

#include "hycoa/errors.hpp"

namespace hycoa {

ABoxLabel::ABoxLabel(const std::vector<FormulaRef>& formulas) {
  for (const auto& f : formulas) insert(f);
}

void ABoxLabel::insert(const FormulaRef& f) {
  if (f->kind() != FormulaKind::at)
    throw ConfigError("ABox member is not an @-formula: " + to_string(f));
  formulas_.insert(f);
}

bool ABoxLabel::contains(const FormulaRef& f) const { return formulas_.count(f) > 0; }

std::vector<FormulaRef> ABoxLabel::label_of(const std::string& nominal) const {
  std::vector<FormulaRef> out;
  for (const auto& f : formulas_)
    if (f->name() == nominal) out.push_back(f->arg(0));
  return out;
}

std::set<std::string> ABoxLabel::nominals() const {
  std::set<std::string> out;
  for (const auto& f : formulas_) collect_free_nominals(*f, &out);
  return out;
}

bool is_zero_pasted(const ABoxLabel& k, const std::vector<FormulaRef>& closure,
                    const Signature& sig) {
  std::set<std::string> noms = k.nominals();
  for (const auto& f : closure) collect_free_nominals(*f, &noms);
  if (noms.empty()) return true;

  for (const auto& phi : closure)
    for (const auto& psi : closure) {
      bool premise = true;
      for (const auto& j : noms)
        if (!k.contains(Formula::at(j, Formula::iff(phi, psi)))) {
          premise = false;
          break;
        }
      if (!premise) continue;
      for (const auto& op : sig.operators()) {
        if (op.arity != 1) continue;
        FormulaRef body = Formula::iff(Formula::modal(op.name, {phi}),
                                       Formula::modal(op.name, {psi}));
        for (const auto& i : noms)
          if (!k.contains(Formula::at(i, body))) return false;
      }
    }
  return true;
}

namespace {

// True when the argument is a disjunction of at most k nominals.
bool self_witnessed(const FormulaRef& arg, std::uint32_t k) {
  std::vector<FormulaRef> parts = flatten_disj(arg);
  if (parts.size() > k) return false;
  for (const auto& p : parts)
    if (p->kind() != FormulaKind::nominal) return false;
  return true;
}

}  // namespace

OnePastedResult is_one_pasted(const ABoxLabel& k, const Signature& sig) {
  OnePastedResult res;
  std::set<std::string> noms = k.nominals();
  for (const auto& f : k.formulas()) {
    const FormulaRef inner = f->arg(0);
    if (inner->kind() != FormulaKind::modal) continue;
    const OperatorDecl* op = sig.find(inner->name());
    if (!op) throw ConfigError("unknown operator in ABox: " + inner->name());
    bool any_bounded = false;
    for (int d = 0; d < op->arity; ++d) {
      if (!op->bounds[d].bounded) continue;
      any_bounded = true;
      const std::uint32_t bound = op->bounds[d].k;
      const FormulaRef phi = inner->arg(d);
      if (self_witnessed(phi, bound)) continue;

      // Search the ABox for @_i op(.. j1|...|jk ..) with matching frame.
      bool witnessed = false;
      for (const auto& cand : k.formulas()) {
        if (witnessed) break;
        if (cand->name() != f->name()) continue;
        const FormulaRef cm = cand->arg(0);
        if (cm->kind() != FormulaKind::modal || cm->name() != inner->name()) continue;
        bool frame_ok = true;
        for (int a = 0; a < op->arity; ++a)
          if (a != d && !alpha_equal(cm->arg(a), inner->arg(a))) {
            frame_ok = false;
            break;
          }
        if (!frame_ok) continue;
        std::vector<FormulaRef> parts = flatten_disj(cm->arg(d));
        if (parts.size() != bound) continue;
        bool all_noms = true;
        for (const auto& part : parts)
          if (part->kind() != FormulaKind::nominal) {
            all_noms = false;
            break;
          }
        if (!all_noms) continue;
        bool have_witnesses = true;
        for (const auto& part : parts)
          if (!k.contains(Formula::at(part->name(), phi))) {
            have_witnesses = false;
            break;
          }
        if (have_witnesses) witnessed = true;
      }
      if (!witnessed) {
        res.pasted = false;
        res.obligations.push_back({f, f->name(), op->name, d, bound});
      }
    }
    if (!any_bounded)
      throw ConfigError("operator without a bounded argument in ABox: " + op->name);
  }
  return res;
}

SaturateResult saturate(const ABoxLabel& k, const Signature& sig,
                        const SearchBounds& bounds) {
  SaturateResult res;
  res.label = k;
  std::set<std::string> used = k.nominals();
  for (;;) {
    OnePastedResult state = is_one_pasted(res.label, sig);
    if (state.pasted) {
      res.ok = true;
      return res;
    }
    const PasteObligation& ob = state.obligations.front();
    if (res.fresh_used + static_cast<int>(ob.k) > bounds.max_states) return res;
    std::vector<FormulaRef> witnesses;
    const FormulaRef inner = ob.formula->arg(0);
    const FormulaRef phi = inner->arg(ob.arg);
    std::vector<FormulaRef> nom_refs;
    for (std::uint32_t r = 0; r < ob.k; ++r) {
      std::string fresh = fresh_nominal(used);
      used.insert(fresh);
      ++res.fresh_used;
      nom_refs.push_back(Formula::nominal(fresh));
      res.label.insert(Formula::at(fresh, phi));
    }
    std::vector<FormulaRef> args = inner->args();
    args[ob.arg] = Formula::disj_all(nom_refs);
    res.label.insert(Formula::at(ob.at_nominal, Formula::modal(ob.op, args)));
  }
}

}  // namespace hycoa
