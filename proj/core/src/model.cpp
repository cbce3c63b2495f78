#include "hycoa/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hycoa/errors.hpp"

namespace hycoa {

int HybridModel::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

void HybridModel::validate() const {
  const int n = num_states();
  if (n == 0) throw ConfigError("model has no states");
  if (n > kMaxStates) throw ConfigError("model exceeds the state limit");
  if (static_cast<int>(gamma.size()) != n)
    throw ConfigError("transition function is not total");
  for (const auto& [nom, s] : val_noms)
    if (s < 0 || s >= n) throw ConfigError("nominal " + nom + " maps outside the carrier");
  for (int c = 0; c < n; ++c) {
    const TxElement& t = gamma[c];
    switch (functor) {
      case FunctorKind::kripke:
        if (!std::holds_alternative<KripkeTx>(t)) throw ConfigError("gamma kind mismatch");
        break;
      case FunctorKind::multigraph: {
        const auto* m = std::get_if<MultigraphTx>(&t);
        if (!m || static_cast<int>(m->weights.size()) != n)
          throw ConfigError("gamma kind mismatch");
        break;
      }
      case FunctorKind::neighborhood:
      case FunctorKind::monotone: {
        const auto* s = std::get_if<NeighborhoodTx>(&t);
        if (!s) throw ConfigError("gamma kind mismatch");
        if (functor == FunctorKind::monotone && !is_upward_closed(*s, n))
          throw ConfigError("monotone model with non-upward-closed collection at " +
                            states[c]);
        break;
      }
      case FunctorKind::selection:
        if (!std::holds_alternative<SelectionTx>(t)) throw ConfigError("gamma kind mismatch");
        break;
      case FunctorKind::game: {
        const auto* g = std::get_if<GameTx>(&t);
        if (!g || g->strategy_counts.size() != agents.size())
          throw ConfigError("gamma kind mismatch");
        int profiles = 1;
        for (int k : g->strategy_counts) {
          if (k < 1) throw ConfigError("empty strategy set at " + states[c]);
          profiles *= k;
        }
        if (static_cast<int>(g->outcomes.size()) != profiles)
          throw ConfigError("incomplete outcome table at " + states[c]);
        for (int o : g->outcomes)
          if (o < 0 || o >= n) throw ConfigError("outcome outside the carrier");
        break;
      }
    }
  }
}

namespace {

struct LineReader {
  std::istream& in;
  std::string origin;
  int lineno = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
  }
};

StateSet parse_state_set(std::stringstream& ss, const HybridModel& m, LineReader& r) {
  std::string tok;
  ss >> std::ws;
  if (ss.get() != '{') r.fail("expected '{'");
  StateSet out = 0;
  std::string word;
  for (;;) {
    int c = ss.get();
    if (c == EOF) r.fail("unterminated '{'");
    if (c == '}' || std::isspace(c)) {
      if (!word.empty()) {
        int idx = m.state_index(word);
        if (idx < 0) r.fail("unknown state " + word);
        out |= 1ULL << idx;
        word.clear();
      }
      if (c == '}') break;
    } else {
      word += static_cast<char>(c);
    }
  }
  return out;
}

std::string strip_nominal_quote(const std::string& tok, LineReader& r) {
  if (tok.size() < 2 || tok.back() != '\'') r.fail("expected a nominal (ident')");
  return tok.substr(0, tok.size() - 1);
}

}  // namespace

HybridModel parse_model(std::istream& in, const std::string& origin) {
  HybridModel m;
  LineReader reader{in, origin};
  bool have_functor = false;
  std::map<int, std::map<std::string, int>> strat;  // state -> agent -> count
  std::map<int, std::vector<std::pair<std::vector<int>, int>>> outs;
  std::map<int, SelectionTx> sels;
  std::map<int, bool> sel_default_set;
  std::string line;

  auto require_state = [&](const std::string& name) {
    int idx = m.state_index(name);
    if (idx < 0) reader.fail("unknown state " + name);
    return idx;
  };

  while (std::getline(in, line)) {
    ++reader.lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;

    if (head == "functor:") {
      std::string f;
      ss >> f;
      auto fk = functor_from_string(f);
      if (!fk) reader.fail("unknown functor " + f);
      m.functor = *fk;
      have_functor = true;
    } else if (head == "states:") {
      std::string s;
      while (ss >> s) m.states.push_back(s);
      if (m.states.empty()) reader.fail("empty state list");
      if (m.num_states() > kMaxStates) reader.fail("too many states");
    } else if (head == "agents:") {
      std::string a;
      while (ss >> a) m.agents.push_back(a);
    } else if (head == "succ") {
      std::string st;
      ss >> st;
      if (st.empty() || st.back() != ':') reader.fail("expected `succ <state>:`");
      int c = require_state(st.substr(0, st.size() - 1));
      if (m.gamma.empty()) m.gamma.assign(m.states.size(), KripkeTx{});
      StateSet succ = 0;
      std::string t;
      while (ss >> t) succ |= 1ULL << require_state(t);
      m.gamma[c] = KripkeTx{succ};
    } else if (head == "mult") {
      std::string st;
      ss >> st;
      if (st.empty() || st.back() != ':') reader.fail("expected `mult <state>:`");
      int c = require_state(st.substr(0, st.size() - 1));
      if (m.gamma.empty()) {
        MultigraphTx zero;
        zero.weights.assign(m.states.size(), 0);
        m.gamma.assign(m.states.size(), zero);
      }
      MultigraphTx tx;
      tx.weights.assign(m.states.size(), 0);
      std::string t;
      while (ss >> t) {
        auto eq = t.find('=');
        if (eq == std::string::npos) reader.fail("expected target=mult");
        int target = require_state(t.substr(0, eq));
        std::string v = t.substr(eq + 1);
        tx.weights[target] = (v == "inf") ? kMultInf : std::stoull(v);
      }
      m.gamma[c] = tx;
    } else if (head == "nbhd") {
      std::string st;
      ss >> st;
      if (st.empty() || st.back() != ':') reader.fail("expected `nbhd <state>:`");
      int c = require_state(st.substr(0, st.size() - 1));
      if (m.gamma.empty()) m.gamma.assign(m.states.size(), NeighborhoodTx{});
      NeighborhoodTx tx;
      ss >> std::ws;
      while (ss.peek() == '{') {
        tx.collection.push_back(parse_state_set(ss, m, reader));
        ss >> std::ws;
      }
      std::sort(tx.collection.begin(), tx.collection.end());
      tx.collection.erase(std::unique(tx.collection.begin(), tx.collection.end()),
                          tx.collection.end());
      m.gamma[c] = tx;
    } else if (head == "sel") {
      std::string st;
      ss >> st;
      if (st.empty() || st.back() != ':') reader.fail("expected `sel <state>:`");
      int c = require_state(st.substr(0, st.size() - 1));
      ss >> std::ws;
      bool is_default = false;
      StateSet key = 0;
      if (ss.peek() == 'd') {
        std::string kw;
        ss >> kw;
        if (kw != "default") reader.fail("expected set or `default`");
        is_default = true;
      } else {
        key = parse_state_set(ss, m, reader);
      }
      std::string arrow;
      ss >> arrow;
      if (arrow != "->") reader.fail("expected '->'");
      StateSet value = parse_state_set(ss, m, reader);
      if (is_default) {
        sels[c].fallback = value;
        sel_default_set[c] = true;
      } else {
        sels[c].entries.emplace_back(key, value);
      }
    } else if (head == "strat") {
      std::string st, agent;
      ss >> st >> agent;
      if (agent.empty() || agent.back() != ':') reader.fail("expected `strat <state> <agent>:`");
      agent.pop_back();
      int c = require_state(st);
      int k;
      if (!(ss >> k) || k < 1) reader.fail("bad strategy count");
      strat[c][agent] = k;
    } else if (head == "out") {
      std::string st;
      ss >> st;
      if (st.empty() || st.back() != ':') reader.fail("expected `out <state>:`");
      int c = require_state(st.substr(0, st.size() - 1));
      std::string t;
      while (ss >> t) {
        auto arrow = t.find("->");
        if (arrow == std::string::npos || t.front() != '(')
          reader.fail("expected (s1,...)->state");
        std::string profile_str = t.substr(1, arrow - 2);
        if (t[arrow - 1] != ')') reader.fail("expected (s1,...)->state");
        std::vector<int> profile;
        std::stringstream ps(profile_str);
        std::string num;
        while (std::getline(ps, num, ',')) profile.push_back(std::stoi(num) - 1);
        int target = require_state(t.substr(arrow + 2));
        outs[c].emplace_back(profile, target);
      }
    } else if (head == "val") {
      std::string p;
      ss >> p;
      if (p.empty() || p.back() != ':') reader.fail("expected `val <var>:`");
      p.pop_back();
      StateSet set = 0;
      std::string t;
      while (ss >> t) set |= 1ULL << require_state(t);
      m.val_props[p] = set;
    } else if (head == "name") {
      std::string nom;
      ss >> nom;
      if (nom.empty() || nom.back() != ':') reader.fail("expected `name <nominal>:`");
      nom.pop_back();
      nom = strip_nominal_quote(nom, reader);
      std::string t;
      if (!(ss >> t)) reader.fail("missing state");
      m.val_noms[nom] = require_state(t);
      std::string extra;
      if (ss >> extra) reader.fail("a nominal names exactly one state");
    } else {
      reader.fail("unknown directive " + head);
    }
  }

  if (!have_functor) throw ConfigError(origin + ": missing `functor:` line");
  if (m.states.empty()) throw ConfigError(origin + ": missing `states:` line");

  const int n = m.num_states();
  if (m.gamma.empty()) {
    switch (m.functor) {
      case FunctorKind::kripke:
        m.gamma.assign(n, KripkeTx{});
        break;
      case FunctorKind::multigraph: {
        MultigraphTx zero;
        zero.weights.assign(n, 0);
        m.gamma.assign(n, zero);
        break;
      }
      case FunctorKind::neighborhood:
      case FunctorKind::monotone:
        m.gamma.assign(n, NeighborhoodTx{});
        break;
      case FunctorKind::selection:
      case FunctorKind::game:
        break;  // filled below
    }
  }
  if (m.functor == FunctorKind::selection) {
    m.gamma.assign(n, SelectionTx{});
    for (auto& [c, tx] : sels) {
      std::sort(tx.entries.begin(), tx.entries.end());
      m.gamma[c] = tx;
    }
  }
  if (m.functor == FunctorKind::game) {
    if (m.agents.empty()) throw ConfigError(origin + ": game model needs `agents:`");
    m.gamma.assign(n, GameTx{});
    for (int c = 0; c < n; ++c) {
      GameTx g;
      for (const auto& a : m.agents) {
        auto it = strat.find(c);
        int k = 1;
        if (it != strat.end()) {
          auto jt = it->second.find(a);
          if (jt != it->second.end()) k = jt->second;
        }
        g.strategy_counts.push_back(k);
      }
      int profiles = 1;
      for (int k : g.strategy_counts) profiles *= k;
      g.outcomes.assign(profiles, -1);
      auto it = outs.find(c);
      if (it != outs.end()) {
        for (const auto& [profile, target] : it->second) {
          if (profile.size() != m.agents.size())
            throw ConfigError(origin + ": profile arity mismatch at " + m.states[c]);
          int idx = 0;
          for (std::size_t i = 0; i < profile.size(); ++i) {
            if (profile[i] < 0 || profile[i] >= g.strategy_counts[i])
              throw ConfigError(origin + ": profile out of range at " + m.states[c]);
            idx = idx * g.strategy_counts[i] + profile[i];
          }
          g.outcomes[idx] = target;
        }
      }
      for (int o : g.outcomes)
        if (o < 0)
          throw ConfigError(origin + ": incomplete outcome table at " + m.states[c]);
      m.gamma[c] = g;
    }
  }
  m.validate();
  return m;
}

HybridModel parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file: " + path);
  return parse_model(in, path);
}

namespace {

void write_state_set(std::ostringstream& os, const HybridModel& m, StateSet s) {
  os << '{';
  bool first = true;
  for (int x = 0; x < m.num_states(); ++x)
    if (set_member(s, x)) {
      if (!first) os << ' ';
      os << m.states[x];
      first = false;
    }
  os << '}';
}

}  // namespace

std::string serialize_model(const HybridModel& m) {
  std::ostringstream os;
  os << "functor: " << to_string(m.functor) << '\n';
  os << "states:";
  for (const auto& s : m.states) os << ' ' << s;
  os << '\n';
  if (m.functor == FunctorKind::game) {
    os << "agents:";
    for (const auto& a : m.agents) os << ' ' << a;
    os << '\n';
  }
  for (int c = 0; c < m.num_states(); ++c) {
    const TxElement& t = m.gamma[c];
    if (const auto* k = std::get_if<KripkeTx>(&t)) {
      os << "succ " << m.states[c] << ':';
      for (int x = 0; x < m.num_states(); ++x)
        if (set_member(k->succ, x)) os << ' ' << m.states[x];
      os << '\n';
    } else if (const auto* mg = std::get_if<MultigraphTx>(&t)) {
      os << "mult " << m.states[c] << ':';
      for (int x = 0; x < m.num_states(); ++x)
        if (mg->weights[x] != 0) {
          os << ' ' << m.states[x] << '=';
          if (mg->weights[x] == kMultInf)
            os << "inf";
          else
            os << mg->weights[x];
        }
      os << '\n';
    } else if (const auto* nb = std::get_if<NeighborhoodTx>(&t)) {
      os << "nbhd " << m.states[c] << ':';
      for (StateSet s : nb->collection) {
        os << ' ';
        write_state_set(os, m, s);
      }
      os << '\n';
    } else if (const auto* sel = std::get_if<SelectionTx>(&t)) {
      for (const auto& [key, val] : sel->entries) {
        os << "sel " << m.states[c] << ": ";
        write_state_set(os, m, key);
        os << " -> ";
        write_state_set(os, m, val);
        os << '\n';
      }
      os << "sel " << m.states[c] << ": default -> ";
      write_state_set(os, m, sel->fallback);
      os << '\n';
    } else if (const auto* g = std::get_if<GameTx>(&t)) {
      for (std::size_t i = 0; i < m.agents.size(); ++i)
        os << "strat " << m.states[c] << ' ' << m.agents[i] << ": "
           << g->strategy_counts[i] << '\n';
      os << "out " << m.states[c] << ':';
      std::vector<int> profile(m.agents.size(), 0);
      for (int idx = 0; idx < static_cast<int>(g->outcomes.size()); ++idx) {
        os << " (";
        for (std::size_t i = 0; i < profile.size(); ++i) {
          if (i) os << ',';
          os << profile[i] + 1;
        }
        os << ")->" << m.states[g->outcomes[idx]];
        for (int i = static_cast<int>(profile.size()) - 1; i >= 0; --i) {
          if (++profile[i] < g->strategy_counts[i]) break;
          profile[i] = 0;
        }
      }
      os << '\n';
    }
  }
  for (const auto& [p, set] : m.val_props) {
    os << "val " << p << ':';
    for (int x = 0; x < m.num_states(); ++x)
      if (set_member(set, x)) os << ' ' << m.states[x];
    os << '\n';
  }
  for (const auto& [nom, s] : m.val_noms)
    os << "name " << nom << "': " << m.states[s] << '\n';
  return os.str();
}

}  // namespace hycoa
