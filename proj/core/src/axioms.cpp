#include "hycoa/axioms.hpp"

namespace hycoa {

namespace {

FormulaRef p() { return Formula::prop("p"); }
FormulaRef q() { return Formula::prop("q"); }
FormulaRef nom_i() { return Formula::nominal("i"); }
FormulaRef nom_j() { return Formula::nominal("j"); }

std::vector<AxiomScheme> build_at_schemes() {
  std::vector<AxiomScheme> out;
  out.push_back({"at_intro", Formula::implies(Formula::conj(nom_i(), p()),
                                              Formula::at("i", p()))});
  out.push_back({"at_bot", Formula::neg(Formula::at("i", Formula::falsum()))});
  out.push_back({"at_selfdual",
                 Formula::iff(Formula::neg(Formula::at("i", p())),
                              Formula::at("i", Formula::neg(p())))});
  out.push_back({"at_dist",
                 Formula::iff(Formula::at("i", Formula::conj(p(), q())),
                              Formula::conj(Formula::at("i", p()),
                                            Formula::at("i", q())))});
  out.push_back({"at_ref", Formula::at("i", nom_i())});
  out.push_back({"at_sym", Formula::iff(Formula::at("i", nom_j()),
                                        Formula::at("j", nom_i()))});
  out.push_back({"at_nom",
                 Formula::implies(Formula::conj(Formula::at("i", nom_j()),
                                                Formula::at("j", p())),
                                  Formula::at("i", p()))});
  return out;
}

}  // namespace

const std::vector<AxiomScheme>& at_axiom_schemes() {
  static const std::vector<AxiomScheme> schemes = build_at_schemes();
  return schemes;
}

AxiomScheme mob_scheme(const OperatorDecl& op) {
  FormulaRef atp = Formula::at("i", p());
  std::vector<FormulaRef> plain, relativized;
  for (int k = 1; k <= op.arity; ++k) {
    FormulaRef qk = Formula::prop("q" + std::to_string(k));
    plain.push_back(qk);
    relativized.push_back(Formula::conj(atp, qk));
  }
  FormulaRef body = Formula::iff(Formula::modal(op.name, plain),
                                 Formula::modal(op.name, relativized));
  return {"mob:" + op.name, Formula::implies(atp, body)};
}

std::optional<AxiomScheme> find_axiom_scheme(const std::string& name, const Signature& sig) {
  for (const auto& s : at_axiom_schemes())
    if (s.name == name) return s;
  if (name.rfind("mob:", 0) == 0) {
    const OperatorDecl* op = sig.find(name.substr(4));
    if (!op) return std::nullopt;
    return mob_scheme(*op);
  }
  return std::nullopt;
}

FormulaRef da_instance(const std::string& nom_i, const std::string& nom_j,
                       const FormulaRef& phi) {
  return Formula::at(nom_i, Formula::iff(Formula::down(nom_j, phi),
                                         substitute_nominal(phi, nom_j, nom_i)));
}

}  // namespace hycoa
