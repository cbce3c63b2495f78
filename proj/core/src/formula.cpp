#include "hycoa/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace hycoa {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::string kFalseVar = "$false";

}  // namespace

const std::string& Formula::false_var() { return kFalseVar; }

Formula::Formula(FormulaKind kind, std::string name, std::vector<FormulaRef> args)
    : kind_(kind), name_(std::move(name)), args_(std::move(args)) {
  std::size_t h = mix(static_cast<std::size_t>(kind_) + 1, std::hash<std::string>{}(name_));
  for (const auto& a : args_) h = mix(h, a->hash());
  hash_ = h;
}

FormulaRef Formula::prop(std::string name) {
  return FormulaRef(new Formula(FormulaKind::prop_var, std::move(name), {}));
}
FormulaRef Formula::nominal(std::string name) {
  return FormulaRef(new Formula(FormulaKind::nominal, std::move(name), {}));
}
FormulaRef Formula::neg(FormulaRef f) {
  return FormulaRef(new Formula(FormulaKind::negation, "", {std::move(f)}));
}
FormulaRef Formula::conj(FormulaRef lhs, FormulaRef rhs) {
  return FormulaRef(new Formula(FormulaKind::conjunction, "", {std::move(lhs), std::move(rhs)}));
}
FormulaRef Formula::modal(std::string op, std::vector<FormulaRef> args) {
  return FormulaRef(new Formula(FormulaKind::modal, std::move(op), std::move(args)));
}
FormulaRef Formula::at(std::string nom, FormulaRef f) {
  return FormulaRef(new Formula(FormulaKind::at, std::move(nom), {std::move(f)}));
}
FormulaRef Formula::down(std::string nom, FormulaRef f) {
  return FormulaRef(new Formula(FormulaKind::down, std::move(nom), {std::move(f)}));
}

FormulaRef Formula::falsum() {
  static const FormulaRef f = conj(prop(kFalseVar), neg(prop(kFalseVar)));
  return f;
}
FormulaRef Formula::truth() {
  static const FormulaRef t = neg(falsum());
  return t;
}
FormulaRef Formula::disj(FormulaRef lhs, FormulaRef rhs) {
  return neg(conj(neg(std::move(lhs)), neg(std::move(rhs))));
}
FormulaRef Formula::implies(FormulaRef lhs, FormulaRef rhs) {
  return neg(conj(std::move(lhs), neg(std::move(rhs))));
}
FormulaRef Formula::iff(FormulaRef lhs, FormulaRef rhs) {
  return conj(implies(lhs, rhs), implies(rhs, lhs));
}
FormulaRef Formula::conj_all(const std::vector<FormulaRef>& fs) {
  if (fs.empty()) return truth();
  FormulaRef acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}
FormulaRef Formula::disj_all(const std::vector<FormulaRef>& fs) {
  if (fs.empty()) return falsum();
  FormulaRef acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

bool equal(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.hash() != b.hash()) return false;
  if (a.kind() != b.kind() || a.name() != b.name()) return false;
  if (a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!equal(*a.arg(i), *b.arg(i))) return false;
  return true;
}
bool equal(const FormulaRef& a, const FormulaRef& b) { return equal(*a, *b); }

namespace {

// Bound nominals are compared through their binder depth.
bool alpha_eq_rec(const Formula& a, const Formula& b,
                  std::map<std::string, int>& ba, std::map<std::string, int>& bb,
                  int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::prop_var:
      return a.name() == b.name();
    case FormulaKind::nominal: {
      auto ia = ba.find(a.name());
      auto ib = bb.find(b.name());
      if ((ia == ba.end()) != (ib == bb.end())) return false;
      if (ia != ba.end()) return ia->second == ib->second;
      return a.name() == b.name();
    }
    case FormulaKind::at: {
      auto ia = ba.find(a.name());
      auto ib = bb.find(b.name());
      if ((ia == ba.end()) != (ib == bb.end())) return false;
      if (ia != ba.end()) {
        if (ia->second != ib->second) return false;
      } else if (a.name() != b.name()) {
        return false;
      }
      return alpha_eq_rec(*a.arg(0), *b.arg(0), ba, bb, depth);
    }
    case FormulaKind::down: {
      auto olda = ba.find(a.name()) != ba.end() ? std::optional<int>(ba[a.name()]) : std::nullopt;
      auto oldb = bb.find(b.name()) != bb.end() ? std::optional<int>(bb[b.name()]) : std::nullopt;
      ba[a.name()] = depth;
      bb[b.name()] = depth;
      bool r = alpha_eq_rec(*a.arg(0), *b.arg(0), ba, bb, depth + 1);
      if (olda) ba[a.name()] = *olda; else ba.erase(a.name());
      if (oldb) bb[b.name()] = *oldb; else bb.erase(b.name());
      return r;
    }
    default: {
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_eq_rec(*a.arg(i), *b.arg(i), ba, bb, depth)) return false;
      return true;
    }
  }
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  std::map<std::string, int> ba, bb;
  return alpha_eq_rec(a, b, ba, bb, 0);
}
bool alpha_equal(const FormulaRef& a, const FormulaRef& b) { return alpha_equal(*a, *b); }

int compare(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.args().size() != b.args().size())
    return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(*a.arg(i), *b.arg(i)); c != 0) return c;
  return 0;
}

bool match_implies(const Formula& f, FormulaRef* lhs, FormulaRef* rhs) {
  // ~(a & ~b)
  if (f.kind() != FormulaKind::negation) return false;
  const Formula& c = *f.arg(0);
  if (c.kind() != FormulaKind::conjunction) return false;
  if (c.arg(1)->kind() != FormulaKind::negation) return false;
  if (lhs) *lhs = c.arg(0);
  if (rhs) *rhs = c.arg(1)->arg(0);
  return true;
}

bool match_iff(const Formula& f, FormulaRef* lhs, FormulaRef* rhs) {
  // (a -> b) & (b -> a)
  if (f.kind() != FormulaKind::conjunction) return false;
  FormulaRef a1, b1, a2, b2;
  if (!match_implies(*f.arg(0), &a1, &b1)) return false;
  if (!match_implies(*f.arg(1), &a2, &b2)) return false;
  if (!equal(a1, b2) || !equal(b1, a2)) return false;
  if (lhs) *lhs = a1;
  if (rhs) *rhs = b1;
  return true;
}

bool match_disj(const Formula& f, FormulaRef* lhs, FormulaRef* rhs) {
  // ~(~a & ~b)
  if (f.kind() != FormulaKind::negation) return false;
  const Formula& c = *f.arg(0);
  if (c.kind() != FormulaKind::conjunction) return false;
  if (c.arg(0)->kind() != FormulaKind::negation) return false;
  if (c.arg(1)->kind() != FormulaKind::negation) return false;
  if (lhs) *lhs = c.arg(0)->arg(0);
  if (rhs) *rhs = c.arg(1)->arg(0);
  return true;
}

bool is_falsum(const Formula& f) { return equal(f, *Formula::falsum()); }
bool is_truth(const Formula& f) { return equal(f, *Formula::truth()); }

std::vector<FormulaRef> flatten_conj(const FormulaRef& f) {
  std::vector<FormulaRef> out;
  std::function<void(const FormulaRef&)> go = [&](const FormulaRef& g) {
    if (g->kind() == FormulaKind::conjunction) {
      go(g->arg(0));
      go(g->arg(1));
    } else {
      out.push_back(g);
    }
  };
  go(f);
  return out;
}

std::vector<FormulaRef> flatten_disj(const FormulaRef& f) {
  std::vector<FormulaRef> out;
  std::function<void(const FormulaRef&)> go = [&](const FormulaRef& g) {
    FormulaRef a, b;
    if (match_disj(*g, &a, &b)) {
      go(a);
      go(b);
    } else {
      out.push_back(g);
    }
  };
  go(f);
  return out;
}

namespace {

void free_noms_rec(const Formula& f, std::set<std::string>& bound,
                   std::set<std::string>* out) {
  switch (f.kind()) {
    case FormulaKind::nominal:
      if (!bound.count(f.name())) out->insert(f.name());
      break;
    case FormulaKind::at:
      if (!bound.count(f.name())) out->insert(f.name());
      free_noms_rec(*f.arg(0), bound, out);
      break;
    case FormulaKind::down: {
      bool was = bound.count(f.name()) > 0;
      bound.insert(f.name());
      free_noms_rec(*f.arg(0), bound, out);
      if (!was) bound.erase(f.name());
      break;
    }
    default:
      for (const auto& a : f.args()) free_noms_rec(*a, bound, out);
      break;
  }
}

}  // namespace

void collect_free_nominals(const Formula& f, std::set<std::string>* out) {
  std::set<std::string> bound;
  free_noms_rec(f, bound, out);
}

std::set<std::string> free_nominals(const Formula& f) {
  std::set<std::string> out;
  collect_free_nominals(f, &out);
  return out;
}

std::set<std::string> prop_vars(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g.kind() == FormulaKind::prop_var) out.insert(g.name());
    for (const auto& a : g.args()) go(*a);
  };
  go(f);
  return out;
}

bool is_pure(const Formula& f) {
  if (f.kind() == FormulaKind::prop_var) return false;
  for (const auto& a : f.args())
    if (!is_pure(*a)) return false;
  return true;
}

bool is_at_formula(const Formula& f) { return f.kind() == FormulaKind::at; }

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& a : f.args()) n += formula_size(*a);
  return n;
}

std::string fresh_nominal(const std::set<std::string>& avoid) {
  for (std::size_t k = 0;; ++k) {
    std::string cand = "i" + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

namespace {

bool is_atomic_print(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::prop_var:
    case FormulaKind::nominal:
      return true;
    default:
      return is_truth(f) || is_falsum(f);
  }
}

bool op_is_infix(const std::string& name) { return name == "=>" || name == ">"; }

// Forms whose printed shape already starts with '(' and ends with ')'.
bool prints_own_parens(const Formula& f) {
  if (is_truth(f) || is_falsum(f)) return false;
  if (match_iff(f, nullptr, nullptr) || match_disj(f, nullptr, nullptr) ||
      match_implies(f, nullptr, nullptr))
    return true;
  if (f.kind() == FormulaKind::conjunction) return true;
  if (f.kind() == FormulaKind::modal && f.args().size() == 2 && op_is_infix(f.name()))
    return true;
  return false;
}

void print_rec(const Formula& f, std::ostringstream& os);

void print_wrapped(const Formula& f, std::ostringstream& os) {
  if (is_atomic_print(f) || prints_own_parens(f)) {
    print_rec(f, os);
  } else {
    os << '(';
    print_rec(f, os);
    os << ')';
  }
}

void print_rec(const Formula& f, std::ostringstream& os) {
  if (is_truth(f)) {
    os << "true";
    return;
  }
  if (is_falsum(f)) {
    os << "false";
    return;
  }
  FormulaRef a, b;
  if (match_iff(f, &a, &b)) {
    os << '(';
    print_wrapped(*a, os);
    os << " <-> ";
    print_wrapped(*b, os);
    os << ')';
    return;
  }
  if (match_disj(f, &a, &b)) {
    os << '(';
    print_wrapped(*a, os);
    os << " | ";
    print_wrapped(*b, os);
    os << ')';
    return;
  }
  if (match_implies(f, &a, &b)) {
    os << '(';
    print_wrapped(*a, os);
    os << " -> ";
    print_wrapped(*b, os);
    os << ')';
    return;
  }
  switch (f.kind()) {
    case FormulaKind::prop_var:
      os << f.name();
      break;
    case FormulaKind::nominal:
      os << f.name() << '\'';
      break;
    case FormulaKind::negation:
      os << "~ ";
      print_wrapped(*f.arg(0), os);
      break;
    case FormulaKind::conjunction:
      os << '(';
      print_wrapped(*f.arg(0), os);
      os << " & ";
      print_wrapped(*f.arg(1), os);
      os << ')';
      break;
    case FormulaKind::modal:
      if (f.args().size() == 2 && op_is_infix(f.name())) {
        os << '(';
        print_wrapped(*f.arg(0), os);
        os << ' ' << f.name() << ' ';
        print_wrapped(*f.arg(1), os);
        os << ')';
      } else if (f.args().size() == 1) {
        os << f.name() << ' ';
        print_wrapped(*f.arg(0), os);
      } else {
        os << f.name() << '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) os << ", ";
          print_rec(*f.arg(i), os);
        }
        os << ')';
      }
      break;
    case FormulaKind::at:
      os << '@' << f.name() << "' ";
      print_wrapped(*f.arg(0), os);
      break;
    case FormulaKind::down:
      os << "dn " << f.name() << "'. ";
      print_wrapped(*f.arg(0), os);
      break;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print_rec(f, os);
  return os.str();
}
std::string to_string(const FormulaRef& f) { return to_string(*f); }

}  // namespace hycoa
