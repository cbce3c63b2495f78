#pragma once

// ABoxes: finite sets of @-formulas with the pastedness conditions and the
// witness-introducing saturation that discharges Paste obligations with
// fresh nominals.
//
// An @_i op(...) member whose bounded argument is already a disjunction of
// at most k nominals is self-witnessed: in a maximally consistent ABox the
// corresponding witness formulas @_j(j1 | ... | jk) are theorems, so the
// finite check does not demand them.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hycoa/bounds.hpp"
#include "hycoa/formula.hpp"
#include "hycoa/signature.hpp"

namespace hycoa {

class ABoxLabel {
 public:
  ABoxLabel() = default;
  explicit ABoxLabel(const std::vector<FormulaRef>& formulas);  // all @-formulas

  void insert(const FormulaRef& f);  // throws ConfigError unless an @-formula
  bool contains(const FormulaRef& f) const;
  const FormulaSet& formulas() const { return formulas_; }
  std::size_t size() const { return formulas_.size(); }

  // K_i = { phi | @_i phi in K }
  std::vector<FormulaRef> label_of(const std::string& nominal) const;
  // Nominals occurring (free) anywhere in the ABox.
  std::set<std::string> nominals() const;

 private:
  FormulaSet formulas_;
};

// Whenever @_j(phi <-> psi) is in K for every nominal j occurring in
// K or the closure, @_i(op phi <-> op psi) must be in K for all such i;
// phi, psi range over the closure, op over the unary operators.
bool is_zero_pasted(const ABoxLabel& k, const std::vector<FormulaRef>& closure,
                    const Signature& sig);

struct PasteObligation {
  FormulaRef formula;       // the @_i op(...) member lacking witnesses
  std::string at_nominal;   // i
  std::string op;
  int arg = 0;              // designated bounded argument
  std::uint32_t k = 0;
};

struct OnePastedResult {
  bool pasted = true;
  std::vector<PasteObligation> obligations;
};

// Throws ConfigError when a member's operator has no bounded argument.
OnePastedResult is_one_pasted(const ABoxLabel& k, const Signature& sig);

struct SaturateResult {
  bool ok = false;  // false = fresh-nominal budget exhausted
  ABoxLabel label;
  int fresh_used = 0;
};

// Discharges obligations in deterministic order, introducing pairwise
// distinct fresh nominals; bounds.max_states caps the fresh names.
SaturateResult saturate(const ABoxLabel& k, const Signature& sig,
                        const SearchBounds& bounds);

}  // namespace hycoa
