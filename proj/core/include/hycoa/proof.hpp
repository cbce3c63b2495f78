#pragma once

// Proof scripts for the Hilbert system with global assumptions (tbox),
// local assumptions, pure axioms, Name, Paste and the binder axiom.
//
// Lines justified from local assumptions are marked; @-generalization,
// rule instances, Name and Paste demand unmarked premises, since their
// soundness arguments are global. Modus ponens propagates the mark.
//
// Proof file format:
//   sig: kripke            (builtin name or path)
//   rules: K               (builtin name, path, or none)
//   axioms: none|<path>    (pure axioms, one formula per line)
//   tbox: none|<path>
//   local: none|<path>
//   1. <formula> BY taut
//   2. <formula> BY ax:<name> sub{p:=<f>,...;i':=j',...}
//   ...
// Justifications: taut | ax:<name> sub{..} | pure:<k> sub{..} | tbox:<k>
//   | local:<k> | mp <m> <n> | atgen <m> <nom> | rule:<k> sub{..} from <m>
//   | name <m> <nom> | paste:<op>:<k> <m> with <nom,...> | da <i> <j> <formula>
// Indices are 1-based; <n> in mp names the implication line.

#include <iosfwd>
#include <string>
#include <vector>

#include "hycoa/axioms.hpp"
#include "hycoa/formula.hpp"
#include "hycoa/rules.hpp"
#include "hycoa/signature.hpp"
#include "hycoa/substitution.hpp"

namespace hycoa {

struct Justification {
  enum class Kind {
    taut,
    axiom_instance,
    pure_axiom,
    tbox,
    local,
    mp,
    at_gen,
    rule_instance,
    name,
    paste,
    da,
  };
  Kind kind = Kind::taut;
  std::string axiom_name;               // axiom_instance
  int index = 0;                        // pure_axiom / tbox / local / rule_instance
  Substitution sub;                     // axiom_instance / pure_axiom / rule_instance
  int premise_line = 0;                 // mp antecedent / atgen / rule / name / paste
  int implication_line = 0;             // mp
  std::string nominal;                  // atgen / name
  std::string paste_op;                 // paste
  int paste_k = 0;                      // paste
  std::vector<std::string> witnesses;   // paste
  std::string da_i, da_j;               // da
  FormulaRef da_phi;                    // da
};

struct ProofLine {
  FormulaRef formula;
  Justification just;
};

struct ProofScript {
  Signature sig;
  RuleSet rules;
  std::vector<FormulaRef> pure_axioms;
  std::vector<FormulaRef> tbox;
  std::vector<FormulaRef> local;
  std::vector<ProofLine> lines;
};

struct ProofVerdict {
  bool accepted = false;
  int line = 0;              // 1-based failing line when rejected
  std::string reason;        // machine-readable code
  FormulaRef final_formula;  // when accepted
  bool final_uses_local = false;
};

ProofVerdict check_proof(const ProofScript& script);

// Phi; Psi |- goal: check_proof accepts and the final line is either the
// goal itself without local use, or (psi_1 & ... & psi_n) -> goal with
// every conjunct among the local assumptions.
bool check_derives(const std::vector<FormulaRef>& tbox,
                   const std::vector<FormulaRef>& local, const FormulaRef& goal,
                   const ProofScript& script);

// Checked witnesses that Name' and NameCong are derivable, plus the
// back-axiom derivation from make-or-break; all accepted by check_proof.
std::vector<ProofScript> derived_rule_fixtures();

// is_tautology over the propositional skeleton: maximal non-~/&
// subformulas are opaque atoms. Throws ResourceBoundError past 20 atoms.
bool is_tautology(const Formula& f);

ProofScript parse_proof(std::istream& in, const std::string& origin,
                        const std::string& base_dir);
ProofScript parse_proof_file(const std::string& path);

}  // namespace hycoa
