#pragma once

// Modal similarity types. Operator names carry their semantic role:
//   box, dia            relational or neighbourhood modalities
//   <k>                 graded "in more than k successors"
//   sum{a1*#,...}>=k    positive Presburger inequality
//   =>, >               conditional operators (infix binary)
//   [a,b]               coalition operators over declared agents
// Each argument position is annotated as bounded(k) or unbounded; the
// annotation drives the Paste rule and the boundedness checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hycoa {

struct ArgBound {
  bool bounded = false;
  std::uint32_t k = 0;

  static ArgBound unbounded() { return {false, 0}; }
  static ArgBound of(std::uint32_t k) { return {true, k}; }
};

enum class OpKind : std::uint8_t {
  box,
  dia,
  graded_dia,   // <k>
  presburger,   // sum{...}>=k
  cond_arrow,   // =>
  cond_meet,    // >   (dual of => in the second argument)
  coalition,    // [C]
};

struct OpSemantics {
  OpKind kind = OpKind::box;
  std::uint64_t grade = 0;                  // graded_dia
  std::vector<std::uint64_t> coefficients;  // presburger
  std::uint64_t threshold = 0;              // presburger
  std::vector<std::string> coalition;       // coalition members
};

struct OperatorDecl {
  std::string name;
  int arity = 1;
  std::vector<ArgBound> bounds;  // one per argument
  OpSemantics sem;
};

enum class FunctorKind : std::uint8_t {
  kripke,
  multigraph,
  neighborhood,
  monotone,
  selection,
  game,
};

std::string to_string(FunctorKind k);
std::optional<FunctorKind> functor_from_string(const std::string& s);

class Signature {
 public:
  Signature() = default;
  Signature(FunctorKind functor, std::vector<OperatorDecl> ops,
            std::vector<std::string> agents = {});

  const std::vector<OperatorDecl>& operators() const { return ops_; }
  const OperatorDecl* find(const std::string& name) const;
  FunctorKind functor() const { return functor_; }
  const std::vector<std::string>& agents() const { return agents_; }

  // Shipped instances.
  static Signature kripke();
  static Signature graded(std::uint64_t max_grade = 3);
  static Signature presburger();  // graded(1) plus two sum operators
  static Signature ck();
  static Signature neighborhood();
  static Signature monotone();
  static Signature game();  // agents a, b and all four coalitions

  static Signature builtin(const std::string& name);  // throws on unknown
  static Signature load_file(const std::string& path, FunctorKind functor);
  // `name_or_path` resolves builtins first, then the filesystem.
  static Signature resolve(const std::string& name_or_path);

  // Parse an operator name into its semantics; nullopt if malformed.
  static std::optional<OpSemantics> parse_op_name(const std::string& name);
  static FunctorKind default_functor_for(const std::string& builtin_name);

 private:
  FunctorKind functor_ = FunctorKind::kripke;
  std::vector<OperatorDecl> ops_;
  std::vector<std::string> agents_;
};

}  // namespace hycoa
