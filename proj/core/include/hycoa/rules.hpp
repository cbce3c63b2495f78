#pragma once

// One-step rules phi/psi: phi purely propositional over P, psi one modal
// layer over P. Rule sets are inherited from the underlying modal logics;
// the shipped K set is built in, graded and conditional sets load from
// rule files of lines `rule <name>: <premise> / <conclusion>`.

#include <iosfwd>
#include <string>
#include <vector>

#include "hycoa/formula.hpp"
#include "hycoa/signature.hpp"

namespace hycoa {

struct OneStepRule {
  std::string name;
  FormulaRef premise;     // Prop(P)
  FormulaRef conclusion;  // Prop(Lambda(P))
};

class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(std::string name, std::vector<OneStepRule> rules);

  const std::string& name() const { return name_; }
  const std::vector<OneStepRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

  static RuleSet k();  // nec, kconj, dual
  static RuleSet load(std::istream& in, const Signature& sig,
                      const std::string& origin = "<rules>");
  static RuleSet load_file(const std::string& path, const Signature& sig);
  // Builtin name ("K") or a rule file path.
  static RuleSet resolve(const std::string& name_or_path, const Signature& sig);

  // Shape checks: premise in Prop(P), conclusion in Prop(Lambda(P)).
  static void check_shape(const OneStepRule& rule);

 private:
  std::string name_;
  std::vector<OneStepRule> rules_;
};

std::set<std::string> rule_variables(const OneStepRule& rule);

}  // namespace hycoa
