#pragma once

// The @-axiom schemes of the Hilbert system, as formula templates over the
// metavariables p, q, q1..qn (propositional) and i, j (nominal). Instances
// arise by explicit substitution. (mob) is generated per modal operator;
// the binder axiom instance is built from its parameters directly.

#include <string>
#include <vector>

#include "hycoa/formula.hpp"
#include "hycoa/signature.hpp"
#include "hycoa/substitution.hpp"

namespace hycoa {

struct AxiomScheme {
  std::string name;
  FormulaRef templ;
};

// at_intro, at_bot, at_selfdual, at_dist, at_ref, at_sym, at_nom.
const std::vector<AxiomScheme>& at_axiom_schemes();

// mob:<op>  @_i p -> (op(q1..qn) <-> op(@_i p & q1, ..., @_i p & qn))
AxiomScheme mob_scheme(const OperatorDecl& op);

// Resolve a scheme name ("at_ref", "mob:dia", ...) against a signature.
std::optional<AxiomScheme> find_axiom_scheme(const std::string& name, const Signature& sig);

// (DA)  @_i((dn j. phi) <-> phi[i/j])
FormulaRef da_instance(const std::string& nom_i, const std::string& nom_j,
                       const FormulaRef& phi);

}  // namespace hycoa
