#pragma once

// Surface grammar (whitespace-insensitive):
//   formula := "true" | "false" | ident | nominal | "~" formula
//            | "(" formula bin formula ")" | "@" nominal formula
//            | "dn" nominal "." formula | opname "(" formula ("," formula)* ")"
//            | unop formula
//   bin     := "&" | "|" | "->" | "<->" | "=>" | ">"
//   nominal := ident "'"
// Operator tokens `<k>`, `sum{a*#,...}>=k` and `[a,b]` are single lexemes;
// `=>` and `>` are written infix and must be declared binary in the signature.

#include <stdexcept>
#include <string>

#include "hycoa/formula.hpp"
#include "hycoa/signature.hpp"

namespace hycoa {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t line, std::size_t col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line_(line),
        col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_, col_;
};

FormulaRef parse_formula(const std::string& text, const Signature& sig);

}  // namespace hycoa
