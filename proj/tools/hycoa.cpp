// hycoa: command-line front end for the hybrid coalgebraic logic workbench.
//
//   hycoa check       --model F --formula S [--state s]
//   hycoa validate    --model F
//   hycoa frame-check --model F --axioms F
//   hycoa prove       --proof F
//   hycoa sat         --problem F [--out F]
//   hycoa onestep     --problem F [--mode sat|consistent|agree]
//
// Exit codes: 0 = positive verdict, 1 = negative verdict, 2 = error or
// exhausted resource bounds. HYCOA_BOUNDS may supply default bounds
// ("max_states=4 max_mult=3 ..."); explicit flags win.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "hycoa/errors.hpp"
#include "hycoa/model.hpp"
#include "hycoa/namedmodel.hpp"
#include "hycoa/onestep.hpp"
#include "hycoa/parser.hpp"
#include "hycoa/proof.hpp"
#include "hycoa/semantics.hpp"

using namespace hycoa;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct Options {
  std::string model_path, formula_text, state, axioms_path, proof_path,
      problem_path, sig_spec, rules_spec, out_path;
  std::string mode = "sat";
  std::string format = "human";
  std::optional<int> max_states;
  std::optional<std::uint64_t> max_mult;
  std::optional<int> max_strategies;
  std::uint64_t seed = 0;  // reserved for randomized tooling
};

struct Report {
  std::string command;
  std::string verdict;  // valid|invalid|sat|unsat-within-bounds|accepted|rejected|error
  json witness;         // null unless the verdict admits one
  json extra = json::object();
  int exit_code = kExitError;
  double elapsed_ms = 0.0;
};

void emit(const Report& r, const Options& opt) {
  if (opt.format == "machine") {
    json out;
    out["command"] = r.command;
    out["verdict"] = r.verdict;
    out["witness"] = r.witness.is_null() ? json(nullptr) : r.witness;
    for (const auto& [k, v] : r.extra.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << r.command << ": " << r.verdict << "\n";
    if (!r.witness.is_null()) std::cout << "witness: " << r.witness.dump() << "\n";
    for (const auto& [k, v] : r.extra.items())
      std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                << "\n";
    std::cout << "elapsed: " << r.elapsed_ms << " ms\n";
  }
}

SearchBounds resolve_bounds(const Options& opt) {
  SearchBounds b;
  if (const char* env = std::getenv("HYCOA_BOUNDS")) b = SearchBounds::parse(env);
  if (opt.max_states) b.max_states = *opt.max_states;
  if (opt.max_mult) b.max_multiplicity = *opt.max_mult;
  if (opt.max_strategies) b.max_strategies = *opt.max_strategies;
  return b;
}

Signature default_sig_for(FunctorKind f) {
  switch (f) {
    case FunctorKind::kripke: return Signature::kripke();
    case FunctorKind::multigraph: return Signature::graded();
    case FunctorKind::neighborhood: return Signature::neighborhood();
    case FunctorKind::monotone: return Signature::monotone();
    case FunctorKind::selection: return Signature::ck();
    case FunctorKind::game: return Signature::game();
  }
  return Signature::kripke();
}

Signature sig_for_model(const Options& opt, const HybridModel& m) {
  if (!opt.sig_spec.empty()) return Signature::resolve(opt.sig_spec);
  return default_sig_for(m.functor);
}

std::vector<FormulaRef> load_formulas(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open formula file: " + path);
  std::vector<FormulaRef> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r\n");
    out.push_back(parse_formula(line.substr(b, e - b + 1), sig));
  }
  return out;
}

Report cmd_check(const Options& opt) {
  Report r;
  r.command = "check";
  HybridModel m = parse_model_file(opt.model_path);
  Signature sig = sig_for_model(opt, m);
  FormulaRef f = parse_formula(opt.formula_text, sig);
  if (!opt.state.empty()) {
    int s = m.state_index(opt.state);
    if (s < 0) throw ConfigError("unknown state " + opt.state);
    bool ok = satisfies(m, s, *f);
    r.verdict = ok ? "valid" : "invalid";
    r.exit_code = ok ? kExitPositive : kExitNegative;
  } else {
    StateSet ts = truth_set(m, *f);
    bool ok = ts == full_set(m.num_states());
    r.verdict = ok ? "valid" : "invalid";
    r.exit_code = ok ? kExitPositive : kExitNegative;
    if (!ok) {
      for (int s = 0; s < m.num_states(); ++s)
        if (!set_member(ts, s)) {
          r.witness = json{{"failing_state", m.states[s]}};
          break;
        }
    }
  }
  return r;
}

Report cmd_validate(const Options& opt) {
  Report r;
  r.command = "validate";
  try {
    HybridModel m = parse_model_file(opt.model_path);
    r.verdict = "valid";
    r.exit_code = kExitPositive;
    r.extra["functor"] = to_string(m.functor);
    r.extra["states"] = m.num_states();
  } catch (const ConfigError& e) {
    r.verdict = "invalid";
    r.exit_code = kExitNegative;
    r.extra["reason"] = e.what();
  }
  return r;
}

Report cmd_frame_check(const Options& opt) {
  Report r;
  r.command = "frame-check";
  HybridModel m = parse_model_file(opt.model_path);
  Signature sig = sig_for_model(opt, m);
  std::vector<FormulaRef> axioms = load_formulas(opt.axioms_path, sig);
  FrameCheckResult res = frame_satisfies_pure(m, axioms, resolve_bounds(opt));
  if (res.holds) {
    r.verdict = "valid";
    r.exit_code = kExitPositive;
  } else {
    r.verdict = "invalid";
    r.exit_code = kExitNegative;
    json assignment = json::object();
    for (const auto& [nom, s] : res.assignment) assignment[nom] = m.states[s];
    r.witness = json{{"axiom", to_string(axioms[res.axiom_index])},
                     {"assignment", assignment},
                     {"state", m.states[res.state]}};
  }
  return r;
}

Report cmd_prove(const Options& opt) {
  Report r;
  r.command = "prove";
  ProofScript script = parse_proof_file(opt.proof_path);
  ProofVerdict v = check_proof(script);
  if (v.accepted) {
    r.verdict = "accepted";
    r.exit_code = kExitPositive;
    r.extra["final"] = to_string(v.final_formula);
    r.extra["uses_local"] = v.final_uses_local;
  } else {
    r.verdict = "rejected";
    r.exit_code = kExitNegative;
    r.witness = json{{"line", v.line}, {"reason", v.reason}};
  }
  return r;
}

Report cmd_sat(const Options& opt) {
  Report r;
  r.command = "sat";
  NamedModelProblem prob = parse_named_model_problem_file(opt.problem_path);
  SearchBounds flags = resolve_bounds(opt);
  if (opt.max_states) prob.bounds.max_states = flags.max_states;
  if (opt.max_mult) prob.bounds.max_multiplicity = flags.max_multiplicity;
  if (opt.max_strategies) prob.bounds.max_strategies = flags.max_strategies;
  SearchOutcome out = named_model_search(prob);
  switch (out.status) {
    case SearchStatus::found: {
      NamedModelReport rep = verify_named_model(out.model, out.designated, prob,
                                                &out.labels);
      if (!rep.ok()) throw std::logic_error("search output failed re-verification");
      r.verdict = "sat";
      r.exit_code = kExitPositive;
      std::string serialized = serialize_model(out.model);
      r.witness = json{{"designated", out.model.states[out.designated]},
                       {"states", out.model.num_states()}};
      r.extra["model"] = serialized;
      if (!opt.out_path.empty()) {
        std::ofstream f(opt.out_path);
        if (!f) throw ConfigError("cannot write " + opt.out_path);
        f << serialized;
        r.extra["model_file"] = opt.out_path;
      }
      break;
    }
    case SearchStatus::exhausted:
      r.verdict = "unsat-within-bounds";
      r.exit_code = kExitNegative;
      r.extra["max_states"] = prob.bounds.max_states;
      break;
    case SearchStatus::resource_bound:
      r.verdict = "error";
      r.exit_code = kExitError;
      r.extra["reason"] = "resource-bound";
      break;
  }
  return r;
}

Report cmd_onestep(const Options& opt) {
  Report r;
  r.command = "onestep";
  Signature sig = opt.sig_spec.empty() ? Signature::kripke()
                                       : Signature::resolve(opt.sig_spec);
  std::ifstream in(opt.problem_path);
  if (!in) throw ConfigError("cannot open problem file: " + opt.problem_path);
  OneStepProblem p = parse_one_step_problem(in, sig, opt.problem_path);
  Functor functor(sig.functor(), sig.agents());
  SearchBounds bounds = resolve_bounds(opt);

  auto sat_part = [&]() -> OneStepResult { return one_step_sat(p, functor, bounds); };
  if (opt.mode == "sat") {
    OneStepResult res = sat_part();
    switch (res.status) {
      case OneStepStatus::sat:
        r.verdict = "sat";
        r.exit_code = kExitPositive;
        r.witness = json{{"tx", tx_to_string(*res.witness, p.base, sig.agents())}};
        break;
      case OneStepStatus::unsat:
        r.verdict = "unsat-within-bounds";
        r.exit_code = kExitNegative;
        break;
      case OneStepStatus::resource_bound:
        r.verdict = "error";
        r.exit_code = kExitError;
        r.extra["reason"] = "resource-bound";
        break;
    }
  } else if (opt.mode == "consistent") {
    RuleSet rules = RuleSet::resolve(opt.rules_spec.empty() ? "K" : opt.rules_spec, sig);
    bool ok = one_step_consistent(p, rules, bounds);
    r.verdict = ok ? "valid" : "invalid";
    r.exit_code = ok ? kExitPositive : kExitNegative;
    r.extra["rules"] = rules.name();
  } else if (opt.mode == "agree") {
    RuleSet rules = RuleSet::resolve(opt.rules_spec.empty() ? "K" : opt.rules_spec, sig);
    AgreementReport rep = agreement_check(p, functor, rules, bounds);
    r.verdict = rep.agree ? "valid" : "invalid";
    r.exit_code = rep.agree ? kExitPositive : kExitNegative;
    r.extra["consistent"] = rep.consistent;
    r.extra["sat"] = rep.sat_status == OneStepStatus::sat
                         ? "sat"
                         : (rep.sat_status == OneStepStatus::unsat
                                ? "unsat-within-bounds"
                                : "resource-bound");
  } else {
    throw ConfigError("unknown mode " + opt.mode);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid coalgebraic logic workbench"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--sig", opt.sig_spec, "signature name or file");
    sub->add_option("--rules", opt.rules_spec, "rule set name or file");
    sub->add_option("--max-states", opt.max_states, "state budget");
    sub->add_option("--max-mult", opt.max_mult, "multiplicity cap");
    sub->add_option("--max-strategies", opt.max_strategies, "strategy cap");
    sub->add_option("--seed", opt.seed, "seed for randomized tooling");
    sub->add_option("--format", opt.format, "human|machine")
        ->check(CLI::IsMember({"human", "machine"}));
  };

  CLI::App* check = app.add_subcommand("check", "evaluate a formula on a model");
  check->add_option("--model", opt.model_path)->required();
  check->add_option("--formula", opt.formula_text)->required();
  check->add_option("--state", opt.state);
  add_common(check);

  CLI::App* validate = app.add_subcommand("validate", "validate a model file");
  validate->add_option("--model", opt.model_path)->required();
  add_common(validate);

  CLI::App* frame = app.add_subcommand("frame-check", "check pure frame conditions");
  frame->add_option("--model", opt.model_path)->required();
  frame->add_option("--axioms", opt.axioms_path)->required();
  add_common(frame);

  CLI::App* prove = app.add_subcommand("prove", "check a proof script");
  prove->add_option("--proof", opt.proof_path)->required();
  add_common(prove);

  CLI::App* sat = app.add_subcommand("sat", "bounded named-model search");
  sat->add_option("--problem", opt.problem_path)->required();
  sat->add_option("--out", opt.out_path, "write the model file here");
  add_common(sat);

  CLI::App* onestep = app.add_subcommand("onestep", "one-step engines");
  onestep->add_option("--problem", opt.problem_path)->required();
  onestep->add_option("--mode", opt.mode, "sat|consistent|agree")
      ->check(CLI::IsMember({"sat", "consistent", "agree"}));
  add_common(onestep);

  CLI11_PARSE(app, argc, argv);

  auto started = std::chrono::steady_clock::now();
  Report r;
  try {
    if (check->parsed()) r = cmd_check(opt);
    if (validate->parsed()) r = cmd_validate(opt);
    if (frame->parsed()) r = cmd_frame_check(opt);
    if (prove->parsed()) r = cmd_prove(opt);
    if (sat->parsed()) r = cmd_sat(opt);
    if (onestep->parsed()) r = cmd_onestep(opt);
  } catch (const ResourceBoundError& e) {
    r.verdict = "error";
    r.exit_code = kExitError;
    r.extra["reason"] = std::string("resource-bound: ") + e.what();
  } catch (const std::exception& e) {
    r.verdict = "error";
    r.exit_code = kExitError;
    r.extra["reason"] = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  emit(r, opt);
  return r.exit_code;
}
