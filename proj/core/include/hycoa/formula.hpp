#pragma once

// Hybrid formula ASTs. Derived connectives (|, ->, <->, true, false) are
// desugared into ~ and & at construction time; the printer re-sugars them.
// Nominals and propositional variables are interned strings. `dn i'. f`
// binds the nominal i inside f.

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace hycoa {

enum class FormulaKind : std::uint8_t {
  prop_var,
  nominal,
  negation,
  conjunction,
  modal,
  at,
  down,
};

class Formula;
using FormulaRef = std::shared_ptr<const Formula>;

class Formula {
 public:
  static FormulaRef prop(std::string name);
  static FormulaRef nominal(std::string name);
  static FormulaRef neg(FormulaRef f);
  static FormulaRef conj(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef modal(std::string op, std::vector<FormulaRef> args);
  static FormulaRef at(std::string nom, FormulaRef f);
  static FormulaRef down(std::string nom, FormulaRef f);

  // Sugar. falsum() is the canonical contradiction over a reserved
  // variable that the concrete syntax cannot name, so it never collides
  // with user variables and round-trips through the printer as "false".
  static FormulaRef truth();
  static FormulaRef falsum();
  static FormulaRef disj(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef implies(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef iff(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef conj_all(const std::vector<FormulaRef>& fs);  // empty -> true
  static FormulaRef disj_all(const std::vector<FormulaRef>& fs);  // empty -> false

  FormulaKind kind() const { return kind_; }
  // prop/nominal: the symbol; modal: operator name; at/down: the nominal.
  const std::string& name() const { return name_; }
  const std::vector<FormulaRef>& args() const { return args_; }
  const FormulaRef& arg(std::size_t i) const { return args_[i]; }
  std::size_t hash() const { return hash_; }

  static const std::string& false_var();  // the reserved variable

 private:
  Formula(FormulaKind kind, std::string name, std::vector<FormulaRef> args);

  FormulaKind kind_;
  std::string name_;
  std::vector<FormulaRef> args_;
  std::size_t hash_;
};

bool equal(const Formula& a, const Formula& b);           // structural
bool equal(const FormulaRef& a, const FormulaRef& b);
bool alpha_equal(const Formula& a, const Formula& b);     // modulo dn-renaming
bool alpha_equal(const FormulaRef& a, const FormulaRef& b);
int compare(const Formula& a, const Formula& b);          // total order

// Decompose sugar; return true and fill outputs on a pattern match.
bool match_implies(const Formula& f, FormulaRef* lhs, FormulaRef* rhs);
bool match_iff(const Formula& f, FormulaRef* lhs, FormulaRef* rhs);
bool match_disj(const Formula& f, FormulaRef* lhs, FormulaRef* rhs);
bool is_truth(const Formula& f);
bool is_falsum(const Formula& f);

// Flatten a (left- or right-nested) & tree / desugared | tree.
std::vector<FormulaRef> flatten_conj(const FormulaRef& f);
std::vector<FormulaRef> flatten_disj(const FormulaRef& f);

std::set<std::string> free_nominals(const Formula& f);
void collect_free_nominals(const Formula& f, std::set<std::string>* out);
std::set<std::string> prop_vars(const Formula& f);
bool is_pure(const Formula& f);
bool is_at_formula(const Formula& f);
std::size_t formula_size(const Formula& f);

// Lowest iN not in `avoid`: i0, i1, i2, ...
std::string fresh_nominal(const std::set<std::string>& avoid);

std::string to_string(const Formula& f);
std::string to_string(const FormulaRef& f);

struct FormulaRefLess {
  bool operator()(const FormulaRef& a, const FormulaRef& b) const {
    return compare(*a, *b) < 0;
  }
};
using FormulaSet = std::set<FormulaRef, FormulaRefLess>;

}  // namespace hycoa
