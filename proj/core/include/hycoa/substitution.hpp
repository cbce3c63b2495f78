#pragma once

// Simultaneous capture-avoiding substitution: a propositional part mapping
// variables to formulas and a nominal part mapping nominals to nominals.
// Only free nominal occurrences are replaced; dn-bound nominals are renamed
// when a substituted nominal would otherwise be captured.

#include <map>
#include <string>

#include "hycoa/formula.hpp"

namespace hycoa {

struct Substitution {
  std::map<std::string, FormulaRef> prop;
  std::map<std::string, std::string> nominal;

  bool empty() const { return prop.empty() && nominal.empty(); }
};

FormulaRef substitute(const FormulaRef& f, const Substitution& sigma);

// f[to/from]: rename the free nominal `from` to `to`.
FormulaRef substitute_nominal(const FormulaRef& f, const std::string& from,
                              const std::string& to);

}  // namespace hycoa
