#include "hycoa/signature.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hycoa {

std::string to_string(FunctorKind k) {
  switch (k) {
    case FunctorKind::kripke: return "kripke";
    case FunctorKind::multigraph: return "multigraph";
    case FunctorKind::neighborhood: return "neighborhood";
    case FunctorKind::monotone: return "monotone";
    case FunctorKind::selection: return "selection";
    case FunctorKind::game: return "game";
  }
  return "?";
}

std::optional<FunctorKind> functor_from_string(const std::string& s) {
  if (s == "kripke") return FunctorKind::kripke;
  if (s == "multigraph") return FunctorKind::multigraph;
  if (s == "neighborhood") return FunctorKind::neighborhood;
  if (s == "monotone") return FunctorKind::monotone;
  if (s == "selection") return FunctorKind::selection;
  if (s == "game") return FunctorKind::game;
  return std::nullopt;
}

Signature::Signature(FunctorKind functor, std::vector<OperatorDecl> ops,
                     std::vector<std::string> agents)
    : functor_(functor), ops_(std::move(ops)), agents_(std::move(agents)) {
  std::set<std::string> seen;
  for (auto& op : ops_) {
    if (!seen.insert(op.name).second)
      throw std::runtime_error("signature: duplicate operator " + op.name);
    if (op.bounds.empty()) op.bounds.assign(op.arity, ArgBound::unbounded());
    if (static_cast<int>(op.bounds.size()) != op.arity)
      throw std::runtime_error("signature: bound count mismatch for " + op.name);
    auto sem = parse_op_name(op.name);
    if (!sem) throw std::runtime_error("signature: unrecognized operator name " + op.name);
    op.sem = *sem;
  }
}

const OperatorDecl* Signature::find(const std::string& name) const {
  for (const auto& op : ops_)
    if (op.name == name) return &op;
  return nullptr;
}

std::optional<OpSemantics> Signature::parse_op_name(const std::string& name) {
  OpSemantics s;
  if (name == "box") {
    s.kind = OpKind::box;
    return s;
  }
  if (name == "dia") {
    s.kind = OpKind::dia;
    return s;
  }
  if (name == "=>") {
    s.kind = OpKind::cond_arrow;
    return s;
  }
  if (name == ">") {
    s.kind = OpKind::cond_meet;
    return s;
  }
  if (name.size() >= 3 && name.front() == '<' && name.back() == '>') {
    std::string digits = name.substr(1, name.size() - 2);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      s.kind = OpKind::graded_dia;
      s.grade = std::stoull(digits);
      return s;
    }
    return std::nullopt;
  }
  if (name.size() >= 2 && name.front() == '[' && name.back() == ']') {
    s.kind = OpKind::coalition;
    std::string inner = name.substr(1, name.size() - 2);
    std::stringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) s.coalition.push_back(part);
    return s;
  }
  if (name.rfind("sum{", 0) == 0) {
    auto close = name.find('}');
    if (close == std::string::npos) return std::nullopt;
    if (name.compare(close, 3, "}>=") != 0) return std::nullopt;
    std::string body = name.substr(4, close - 4);
    std::string thr = name.substr(close + 3);
    if (thr.empty() || !std::all_of(thr.begin(), thr.end(), ::isdigit)) return std::nullopt;
    s.kind = OpKind::presburger;
    s.threshold = std::stoull(thr);
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ',')) {
      auto star = part.find("*#");
      if (star == std::string::npos || star + 2 != part.size()) return std::nullopt;
      std::string coef = part.substr(0, star);
      if (coef.empty() || !std::all_of(coef.begin(), coef.end(), ::isdigit)) return std::nullopt;
      std::uint64_t a = std::stoull(coef);
      // Only positive Presburger is bounded, hence supported.
      if (a == 0) return std::nullopt;
      s.coefficients.push_back(a);
    }
    if (s.coefficients.empty() || s.threshold == 0) return std::nullopt;
    return s;
  }
  return std::nullopt;
}

Signature Signature::kripke() {
  return Signature(FunctorKind::kripke,
                   {{"box", 1, {ArgBound::unbounded()}, {}},
                    {"dia", 1, {ArgBound::of(1)}, {}}});
}

Signature Signature::graded(std::uint64_t max_grade) {
  std::vector<OperatorDecl> ops;
  for (std::uint64_t k = 0; k <= max_grade; ++k)
    ops.push_back({"<" + std::to_string(k) + ">", 1,
                   {ArgBound::of(static_cast<std::uint32_t>(k + 1))}, {}});
  return Signature(FunctorKind::multigraph, std::move(ops));
}

Signature Signature::presburger() {
  std::vector<OperatorDecl> ops;
  for (std::uint64_t k = 0; k <= 1; ++k)
    ops.push_back({"<" + std::to_string(k) + ">", 1,
                   {ArgBound::of(static_cast<std::uint32_t>(k + 1))}, {}});
  ops.push_back({"sum{1*#,1*#}>=2", 2, {ArgBound::of(2), ArgBound::of(2)}, {}});
  ops.push_back({"sum{3*#,1*#}>=4", 2, {ArgBound::of(4), ArgBound::of(4)}, {}});
  return Signature(FunctorKind::multigraph, std::move(ops));
}

Signature Signature::ck() {
  return Signature(FunctorKind::selection,
                   {{"=>", 2, {ArgBound::unbounded(), ArgBound::unbounded()}, {}},
                    {">", 2, {ArgBound::unbounded(), ArgBound::of(1)}, {}}});
}

Signature Signature::neighborhood() {
  return Signature(FunctorKind::neighborhood,
                   {{"box", 1, {ArgBound::unbounded()}, {}},
                    {"dia", 1, {ArgBound::unbounded()}, {}}});
}

Signature Signature::monotone() {
  return Signature(FunctorKind::monotone,
                   {{"box", 1, {ArgBound::unbounded()}, {}},
                    {"dia", 1, {ArgBound::unbounded()}, {}}});
}

Signature Signature::game() {
  std::vector<std::string> agents = {"a", "b"};
  std::vector<OperatorDecl> ops;
  for (const std::string& name : {"[]", "[a]", "[b]", "[a,b]"})
    ops.push_back({name, 1, {ArgBound::unbounded()}, {}});
  return Signature(FunctorKind::game, std::move(ops), agents);
}

Signature Signature::builtin(const std::string& name) {
  if (name == "kripke") return kripke();
  if (name == "graded") return graded();
  if (name == "presburger") return presburger();
  if (name == "ck") return ck();
  if (name == "neighborhood") return neighborhood();
  if (name == "monotone") return monotone();
  if (name == "game") return game();
  throw std::runtime_error("unknown builtin signature: " + name);
}

FunctorKind Signature::default_functor_for(const std::string& name) {
  return builtin(name).functor();
}

Signature Signature::load_file(const std::string& path, FunctorKind functor) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open signature file: " + path);
  std::vector<OperatorDecl> ops;
  std::vector<std::string> agents;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // `#` starts a comment only at the line head or after whitespace;
    // operator names such as sum{1*#}>=2 contain literal hashes.
    for (std::size_t i = 0; i < line.size(); ++i)
      if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
        line.erase(i);
        break;
      }
    std::stringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    if (head == "functor:") {
      std::string f;
      ss >> f;
      auto fk = functor_from_string(f);
      if (!fk) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad functor");
      functor = *fk;
      continue;
    }
    if (head == "agents:") {
      std::string a;
      while (ss >> a) agents.push_back(a);
      continue;
    }
    if (head != "op")
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected `op`");
    OperatorDecl op;
    std::string tok;
    if (!(ss >> op.name))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": missing name");
    bool have_arity = false;
    while (ss >> tok) {
      if (tok.rfind("arity=", 0) == 0) {
        op.arity = std::stoi(tok.substr(6));
        have_arity = true;
      } else if (tok.rfind("bound=", 0) == 0) {
        std::stringstream bs(tok.substr(6));
        std::string b;
        while (std::getline(bs, b, ',')) {
          if (b == "unbounded")
            op.bounds.push_back(ArgBound::unbounded());
          else
            op.bounds.push_back(ArgBound::of(static_cast<std::uint32_t>(std::stoul(b))));
        }
      } else {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad token " + tok);
      }
    }
    if (!have_arity)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": missing arity");
    if (op.bounds.size() == 1 && op.arity > 1)
      op.bounds.assign(op.arity, op.bounds[0]);
    ops.push_back(std::move(op));
  }
  return Signature(functor, std::move(ops), std::move(agents));
}

Signature Signature::resolve(const std::string& name_or_path) {
  for (const char* b : {"kripke", "graded", "presburger", "ck", "neighborhood",
                        "monotone", "game"})
    if (name_or_path == b) return builtin(name_or_path);
  return load_file(name_or_path, FunctorKind::kripke);
}

}  // namespace hycoa
