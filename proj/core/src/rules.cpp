#include "hycoa/rules.hpp"

#include <fstream>
#include <sstream>

#include "hycoa/errors.hpp"
#include "hycoa/parser.hpp"

namespace hycoa {

namespace {

bool in_prop_p(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::prop_var:
      return true;
    case FormulaKind::negation:
    case FormulaKind::conjunction: {
      for (const auto& a : f.args())
        if (!in_prop_p(*a)) return false;
      return true;
    }
    default:
      return false;
  }
}

bool in_prop_lambda_p(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::prop_var:
      return true;  // propositional atoms may appear alongside modal ones
    case FormulaKind::negation:
    case FormulaKind::conjunction: {
      for (const auto& a : f.args())
        if (!in_prop_lambda_p(*a)) return false;
      return true;
    }
    case FormulaKind::modal: {
      for (const auto& a : f.args())
        if (a->kind() != FormulaKind::prop_var) return false;
      return true;
    }
    default:
      return false;
  }
}

}  // namespace

RuleSet::RuleSet(std::string name, std::vector<OneStepRule> rules)
    : name_(std::move(name)), rules_(std::move(rules)) {
  for (const auto& r : rules_) check_shape(r);
}

void RuleSet::check_shape(const OneStepRule& rule) {
  if (!in_prop_p(*rule.premise))
    throw ConfigError("rule " + rule.name + ": premise is not purely propositional");
  if (!in_prop_lambda_p(*rule.conclusion))
    throw ConfigError("rule " + rule.name +
                      ": conclusion is not one modal layer over variables");
}

RuleSet RuleSet::k() {
  Signature sig = Signature::kripke();
  auto f = [&](const std::string& s) { return parse_formula(s, sig); };
  std::vector<OneStepRule> rules;
  rules.push_back({"nec", f("a"), f("box a")});
  rules.push_back({"kconj", f("((a & b) -> c)"), f("((box a & box b) -> box c)")});
  rules.push_back({"dual", f("(a <-> ~ b)"), f("(dia a <-> ~ box b)")});
  return RuleSet("K", std::move(rules));
}

RuleSet RuleSet::load(std::istream& in, const Signature& sig, const std::string& origin) {
  std::vector<OneStepRule> rules;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (std::size_t i = 0; i < line.size(); ++i)
      if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
        line.erase(i);
        break;
      }
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty()) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (trimmed.rfind("rule ", 0) != 0) fail("expected `rule <name>: ... / ...`");
    auto colon = trimmed.find(':');
    if (colon == std::string::npos) fail("missing ':'");
    std::string name = trimmed.substr(5, colon - 5);
    std::string rest = trimmed.substr(colon + 1);
    auto slash = rest.find('/');
    if (slash == std::string::npos) fail("missing '/'");
    OneStepRule r;
    r.name = name;
    r.premise = parse_formula(rest.substr(0, slash), sig);
    r.conclusion = parse_formula(rest.substr(slash + 1), sig);
    check_shape(r);
    rules.push_back(std::move(r));
  }
  return RuleSet(origin, std::move(rules));
}

RuleSet RuleSet::load_file(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rule file: " + path);
  RuleSet rs = load(in, sig, path);
  return rs;
}

RuleSet RuleSet::resolve(const std::string& name_or_path, const Signature& sig) {
  if (name_or_path == "K") return k();
  if (name_or_path == "none") return RuleSet("none", {});
  return load_file(name_or_path, sig);
}

std::set<std::string> rule_variables(const OneStepRule& rule) {
  std::set<std::string> vars = prop_vars(*rule.premise);
  std::set<std::string> cvars = prop_vars(*rule.conclusion);
  vars.insert(cvars.begin(), cvars.end());
  vars.erase(Formula::false_var());
  return vars;
}

}  // namespace hycoa
