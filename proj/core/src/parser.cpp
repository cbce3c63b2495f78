#include "hycoa/parser.hpp"

#include <cctype>
#include <vector>

namespace hycoa {

namespace {

enum class Tok {
  lparen, rparen, tilde, amp, pipe, arrow, iff, at, dot, comma,
  kw_dn, kw_true, kw_false, ident, nominal, opname, eof,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::eof) break;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  char peek(std::size_t k = 0) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token make(Tok k, std::string text, std::size_t line, std::size_t col) {
    return Token{k, std::move(text), line, col};
  }

  Token next() {
    std::size_t line = line_, col = col_;
    if (pos_ >= src_.size()) return make(Tok::eof, "", line, col);
    char c = peek();
    switch (c) {
      case '(': advance(); return make(Tok::lparen, "(", line, col);
      case ')': advance(); return make(Tok::rparen, ")", line, col);
      case '~': advance(); return make(Tok::tilde, "~", line, col);
      case '&': advance(); return make(Tok::amp, "&", line, col);
      case '|': advance(); return make(Tok::pipe, "|", line, col);
      case '@': advance(); return make(Tok::at, "@", line, col);
      case '.': advance(); return make(Tok::dot, ".", line, col);
      case ',': advance(); return make(Tok::comma, ",", line, col);
      default: break;
    }
    if (c == '-') {
      if (peek(1) == '>') {
        advance(); advance();
        return make(Tok::arrow, "->", line, col);
      }
      fail("stray '-'");
    }
    if (c == '=') {
      if (peek(1) == '>') {
        advance(); advance();
        return make(Tok::opname, "=>", line, col);
      }
      fail("stray '='");
    }
    if (c == '>') {
      advance();
      return make(Tok::opname, ">", line, col);
    }
    if (c == '<') {
      if (peek(1) == '-' && peek(2) == '>') {
        advance(); advance(); advance();
        return make(Tok::iff, "<->", line, col);
      }
      std::string digits;
      std::size_t k = 1;
      while (std::isdigit(static_cast<unsigned char>(peek(k)))) digits += peek(k++);
      if (!digits.empty() && peek(k) == '>') {
        for (std::size_t i = 0; i <= k; ++i) advance();
        return make(Tok::opname, "<" + digits + ">", line, col);
      }
      fail("malformed graded operator");
    }
    if (c == '[') {
      std::string name = "[";
      advance();
      while (peek() != ']') {
        if (peek() == '\0') fail("unterminated coalition operator");
        if (std::isspace(static_cast<unsigned char>(peek()))) { advance(); continue; }
        name += peek();
        advance();
      }
      advance();
      name += ']';
      return make(Tok::opname, name, line, col);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        word += peek();
        advance();
      }
      if (word == "sum" && peek() == '{') {
        std::string name = "sum";
        while (peek() != '}') {
          if (peek() == '\0') fail("unterminated sum operator");
          if (std::isspace(static_cast<unsigned char>(peek()))) { advance(); continue; }
          name += peek();
          advance();
        }
        name += '}';
        advance();
        if (peek() != '>' || peek(1) != '=') fail("sum operator missing >=");
        advance(); advance();
        name += ">=";
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          digits += peek();
          advance();
        }
        if (digits.empty()) fail("sum operator missing threshold");
        return make(Tok::opname, name + digits, line, col);
      }
      if (peek() == '\'') {
        advance();
        return make(Tok::nominal, word, line, col);
      }
      if (word == "dn") return make(Tok::kw_dn, word, line, col);
      if (word == "true") return make(Tok::kw_true, word, line, col);
      if (word == "false") return make(Tok::kw_false, word, line, col);
      return make(Tok::ident, word, line, col);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature& sig)
      : toks_(std::move(toks)), sig_(sig) {}

  FormulaRef run() {
    FormulaRef f = formula();
    expect(Tok::eof, "trailing input");
    return f;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void bump() { if (cur().kind != Tok::eof) ++pos_; }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, cur().line, cur().col);
  }

  void expect(Tok k, const std::string& what) {
    if (cur().kind != k) fail("expected " + what);
    bump();
  }

  const OperatorDecl& op_decl(const std::string& name) {
    const OperatorDecl* d = sig_.find(name);
    if (!d) fail("unknown operator " + name);
    return *d;
  }

  FormulaRef op_application(const OperatorDecl& d) {
    std::vector<FormulaRef> args;
    if (d.arity == 1) {
      // Prefix form; a following '(' is plain grouping.
      args.push_back(formula());
    } else {
      expect(Tok::lparen, "'(' before argument list");
      args.push_back(formula());
      while (cur().kind == Tok::comma) {
        bump();
        args.push_back(formula());
      }
      expect(Tok::rparen, "')'");
    }
    if (static_cast<int>(args.size()) != d.arity)
      fail("operator " + d.name + " expects " + std::to_string(d.arity) + " arguments");
    return Formula::modal(d.name, std::move(args));
  }

  FormulaRef formula() {
    switch (cur().kind) {
      case Tok::kw_true:
        bump();
        return Formula::truth();
      case Tok::kw_false:
        bump();
        return Formula::falsum();
      case Tok::tilde:
        bump();
        return Formula::neg(formula());
      case Tok::at: {
        bump();
        if (cur().kind != Tok::nominal) fail("expected nominal after '@'");
        std::string nom = cur().text;
        bump();
        return Formula::at(nom, formula());
      }
      case Tok::kw_dn: {
        bump();
        if (cur().kind != Tok::nominal) fail("expected nominal after 'dn'");
        std::string nom = cur().text;
        bump();
        expect(Tok::dot, "'.'");
        return Formula::down(nom, formula());
      }
      case Tok::nominal: {
        std::string nom = cur().text;
        bump();
        return Formula::nominal(nom);
      }
      case Tok::lparen: {
        bump();
        FormulaRef lhs = formula();
        Token binop = cur();
        switch (binop.kind) {
          case Tok::rparen:
            bump();
            return lhs;  // plain grouping
          case Tok::amp: {
            bump();
            FormulaRef rhs = formula();
            expect(Tok::rparen, "')'");
            return Formula::conj(lhs, rhs);
          }
          case Tok::pipe: {
            bump();
            FormulaRef rhs = formula();
            expect(Tok::rparen, "')'");
            return Formula::disj(lhs, rhs);
          }
          case Tok::arrow: {
            bump();
            FormulaRef rhs = formula();
            expect(Tok::rparen, "')'");
            return Formula::implies(lhs, rhs);
          }
          case Tok::iff: {
            bump();
            FormulaRef rhs = formula();
            expect(Tok::rparen, "')'");
            return Formula::iff(lhs, rhs);
          }
          case Tok::opname: {
            const OperatorDecl& d = op_decl(binop.text);
            if (d.arity != 2) fail("operator " + d.name + " is not binary");
            bump();
            FormulaRef rhs = formula();
            expect(Tok::rparen, "')'");
            return Formula::modal(d.name, {lhs, rhs});
          }
          default:
            fail("expected binary connective");
        }
      }
      case Tok::opname: {
        const OperatorDecl& d = op_decl(cur().text);
        bump();
        return op_application(d);
      }
      case Tok::ident: {
        std::string word = cur().text;
        if (const OperatorDecl* d = sig_.find(word)) {
          bump();
          return op_application(*d);
        }
        bump();
        return Formula::prop(word);
      }
      default:
        fail("expected formula");
    }
  }

  std::vector<Token> toks_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaRef parse_formula(const std::string& text, const Signature& sig) {
  Lexer lex(text);
  Parser p(lex.run(), sig);
  return p.run();
}

}  // namespace hycoa
