#include "cflr/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "cflr/error.hpp"

namespace cflr {

std::string_view to_string(GrammarForm form) noexcept {
  switch (form) {
    case GrammarForm::General: return "general";
    case GrammarForm::Cnf: return "cnf";
    case GrammarForm::Linear: return "linear";
    case GrammarForm::Talnf: return "talnf";
  }
  return "general";
}

std::size_t Production::nonterminal_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(rhs.begin(), rhs.end(), [](Symbol s) { return s.is_nonterminal(); }));
}

std::uint32_t SymbolTable::intern(std::string_view name) {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> SymbolTable::find(std::string_view name) const {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  return std::nullopt;
}

Grammar::Grammar(SymbolTable terminals, SymbolTable nonterminals,
                 std::vector<Production> productions, Nonterminal start)
    : terminals_(std::move(terminals)),
      nonterminals_(std::move(nonterminals)),
      productions_(std::move(productions)),
      start_(start),
      form_(GrammarForm::General) {
  if (start_ >= nonterminals_.size()) {
    throw Error(ErrorKind::UndeclaredSymbol, "start symbol is not a declared nonterminal");
  }
  for (const auto& p : productions_) {
    if (p.lhs >= nonterminals_.size()) {
      throw Error(ErrorKind::UndeclaredSymbol, "production lhs is not a declared nonterminal");
    }
    for (Symbol s : p.rhs) {
      const auto limit = s.is_terminal() ? terminals_.size() : nonterminals_.size();
      if (s.id >= limit) {
        throw Error(ErrorKind::UndeclaredSymbol, "production references an undeclared symbol");
      }
    }
  }
  form_ = classify(*this);
}

std::size_t Grammar::size_measure() const noexcept {
  std::size_t total = 0;
  for (const auto& p : productions_) total += p.rhs.size();
  return total;
}

bool Grammar::has_start_epsilon() const noexcept {
  return std::any_of(productions_.begin(), productions_.end(),
                     [&](const Production& p) { return p.lhs == start_ && p.rhs.empty(); });
}

Grammar Grammar::with_start(Nonterminal start) const {
  return Grammar(terminals_, nonterminals_, productions_, start);
}

std::string Grammar::symbol_name(Symbol s) const {
  return s.is_terminal() ? terminals_.name(s.id) : nonterminals_.name(s.id);
}

bool operator==(const Grammar& a, const Grammar& b) {
  return a.start_ == b.start_ && a.terminals_ == b.terminals_ &&
         a.nonterminals_ == b.nonterminals_ && a.productions_ == b.productions_;
}

// ---------------------------------------------------------------------------
// Classification

bool is_linear(const Grammar& g) noexcept {
  return std::all_of(g.productions().begin(), g.productions().end(),
                     [](const Production& p) { return p.nonterminal_count() <= 1; });
}

bool is_cnf(const Grammar& g) noexcept {
  return std::all_of(g.productions().begin(), g.productions().end(), [&](const Production& p) {
    const auto& r = p.rhs;
    if (r.empty()) return p.lhs == g.start();
    if (r.size() == 1) return r[0].is_terminal();
    return r.size() == 2 && r[0].is_nonterminal() && r[1].is_nonterminal();
  });
}

bool is_talnf(const Grammar& g) noexcept {
  return std::all_of(g.productions().begin(), g.productions().end(), [&](const Production& p) {
    const auto& r = p.rhs;
    if (r.empty()) return p.lhs == g.start();
    if (r.size() == 1) return r[0].is_terminal();
    if (r.size() != 2) return false;
    return (r[0].is_terminal() && r[1].is_nonterminal()) ||
           (r[0].is_nonterminal() && r[1].is_terminal());
  });
}

GrammarForm classify(const Grammar& g) noexcept {
  if (is_talnf(g)) return GrammarForm::Talnf;
  if (is_cnf(g)) return GrammarForm::Cnf;
  if (is_linear(g)) return GrammarForm::Linear;
  return GrammarForm::General;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == begin) continue;
    if (line[begin] == '#') break;  // comment to end of line
    out.push_back(line.substr(begin, i - begin));
  }
  return out;
}

bool is_epsilon_token(std::string_view t) { return t == "eps" || t == "\xCE\xB5"; }

struct RawRule {
  std::size_t line;
  std::string lhs;
  std::vector<std::vector<std::string_view>> alternatives;
};

}  // namespace

Grammar parse_grammar(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string buffer{text};
    std::istringstream in(buffer);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
    }
  }

  std::optional<std::string> start_name;
  std::size_t start_line = 0;
  std::vector<std::string> declared_terminals;
  std::vector<std::string> declared_nonterminals;
  std::vector<RawRule> rules;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto tokens = split_ws(lines[i]);
    if (tokens.empty()) continue;

    if (tokens[0].front() == '@') {
      if (tokens[0] == "@start") {
        if (tokens.size() != 2) throw SyntaxError(lineno, "@start takes exactly one symbol");
        if (start_name) {
          throw Error(ErrorKind::DuplicateDeclaration,
                      "line " + std::to_string(lineno) + ": duplicate @start directive");
        }
        start_name = std::string(tokens[1]);
        start_line = lineno;
      } else if (tokens[0] == "@terminals" || tokens[0] == "@nonterminals") {
        auto& target = tokens[0] == "@terminals" ? declared_terminals : declared_nonterminals;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
          if (std::find(target.begin(), target.end(), tokens[t]) != target.end()) {
            throw Error(ErrorKind::DuplicateDeclaration, "line " + std::to_string(lineno) +
                                                             ": symbol '" + std::string(tokens[t]) +
                                                             "' declared twice");
          }
          target.emplace_back(tokens[t]);
        }
      } else {
        throw SyntaxError(lineno, "unknown directive '" + std::string(tokens[0]) + "'");
      }
      continue;
    }

    if (tokens.size() < 3 || tokens[1] != "->") {
      throw SyntaxError(lineno, "expected 'LHS -> rhs'");
    }
    if (tokens[0] == "|" || is_epsilon_token(tokens[0])) {
      throw SyntaxError(lineno, "invalid left-hand side '" + std::string(tokens[0]) + "'");
    }
    RawRule rule{lineno, std::string(tokens[0]), {{}}};
    for (std::size_t t = 2; t < tokens.size(); ++t) {
      if (tokens[t] == "|") {
        rule.alternatives.emplace_back();
      } else if (tokens[t] == "->") {
        throw SyntaxError(lineno, "unexpected '->' on right-hand side");
      } else {
        rule.alternatives.back().push_back(tokens[t]);
      }
    }
    for (const auto& alt : rule.alternatives) {
      if (alt.empty()) throw SyntaxError(lineno, "empty alternative (write 'eps' for epsilon)");
      const bool has_eps = std::any_of(alt.begin(), alt.end(), is_epsilon_token);
      if (has_eps && alt.size() != 1) {
        throw SyntaxError(lineno, "epsilon must be the only symbol of its alternative");
      }
    }
    rules.push_back(std::move(rule));
  }

  if (rules.empty()) throw SyntaxError(lines.size(), "grammar has no rules");

  SymbolTable nonterminals;
  for (const auto& name : declared_nonterminals) nonterminals.intern(name);
  for (const auto& r : rules) nonterminals.intern(r.lhs);

  SymbolTable terminals;
  for (const auto& name : declared_terminals) {
    if (nonterminals.contains(name)) {
      throw Error(ErrorKind::DuplicateDeclaration,
                  "symbol '" + name + "' declared both as terminal and nonterminal");
    }
    terminals.intern(name);
  }

  std::vector<Production> productions;
  std::set<Production> seen;
  for (const auto& r : rules) {
    const Nonterminal lhs = *nonterminals.find(r.lhs);
    for (const auto& alt : r.alternatives) {
      Production p{lhs, {}};
      if (!is_epsilon_token(alt.front())) {
        for (auto tok : alt) {
          if (auto nt = nonterminals.find(tok)) {
            p.rhs.push_back(Symbol::nonterminal(*nt));
          } else {
            p.rhs.push_back(Symbol::terminal(terminals.intern(tok)));
          }
        }
      }
      if (seen.insert(p).second) productions.push_back(std::move(p));
    }
  }

  Nonterminal start = *nonterminals.find(rules.front().lhs);
  if (start_name) {
    auto id = nonterminals.find(*start_name);
    if (!id) {
      throw Error(ErrorKind::UndeclaredSymbol, "line " + std::to_string(start_line) +
                                                   ": start symbol '" + *start_name +
                                                   "' is not a nonterminal");
    }
    start = *id;
  }
  return Grammar(std::move(terminals), std::move(nonterminals), std::move(productions), start);
}

std::string format_grammar(const Grammar& g) {
  std::ostringstream out;
  out << "@start " << g.nonterminals().name(g.start()) << '\n';
  if (g.terminal_count() > 0) {
    out << "@terminals";
    for (const auto& t : g.terminals().names()) out << ' ' << t;
    out << '\n';
  }
  out << "@nonterminals";
  for (const auto& n : g.nonterminals().names()) out << ' ' << n;
  out << '\n';
  // Adjacent rules with the same left-hand side share a line; rule order is
  // kept so parsing the output gives back the same grammar.
  const auto& rules = g.productions();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const bool continues = i > 0 && rules[i - 1].lhs == rules[i].lhs;
    out << (continues ? " |" : g.nonterminals().name(rules[i].lhs) + " ->");
    if (rules[i].rhs.empty()) out << " eps";
    for (Symbol s : rules[i].rhs) out << ' ' << g.symbol_name(s);
    if (i + 1 == rules.size() || rules[i + 1].lhs != rules[i].lhs) out << '\n';
  }
  return out.str();
}

std::vector<Terminal> parse_word(const Grammar& g, std::string_view text) {
  std::vector<Terminal> word;
  for (auto tok : split_ws(text)) {
    auto id = g.terminals().find(tok);
    if (!id) throw Error(ErrorKind::UnknownLabel, "unknown terminal '" + std::string(tok) + "'");
    word.push_back(*id);
  }
  return word;
}

Grammar canonical_rename(const Grammar& g) {
  const std::size_t n = g.nonterminal_count();
  constexpr auto kUnassigned = static_cast<Nonterminal>(-1);
  std::vector<Nonterminal> remap(n, kUnassigned);
  Nonterminal next = 0;
  auto assign = [&](Nonterminal a) {
    if (remap[a] == kUnassigned) remap[a] = next++;
  };
  // Breadth-first from the start symbol. Each nonterminal's rules are taken
  // in an order that only looks at terminals and already-named symbols, so
  // the numbering does not depend on the input's rule order or names.
  auto shape = [&](const Production& p) {
    std::vector<std::pair<int, std::uint32_t>> key;
    for (Symbol s : p.rhs) {
      if (s.is_terminal()) {
        key.emplace_back(0, s.id);
      } else {
        key.emplace_back(1, remap[s.id]);
      }
    }
    return key;
  };
  std::vector<Nonterminal> queue{g.start()};
  assign(g.start());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::vector<const Production*> rules;
    for (const auto& p : g.productions()) {
      if (p.lhs == queue[head]) rules.push_back(&p);
    }
    std::stable_sort(rules.begin(), rules.end(),
                     [&](const Production* a, const Production* b) { return shape(*a) < shape(*b); });
    for (const Production* p : rules) {
      for (Symbol s : p->rhs) {
        if (s.is_nonterminal() && remap[s.id] == kUnassigned) {
          assign(s.id);
          queue.push_back(s.id);
        }
      }
    }
  }
  for (Nonterminal a = 0; a < n; ++a) assign(a);

  SymbolTable names;
  for (Nonterminal i = 0; i < n; ++i) names.intern("N" + std::to_string(i));

  std::vector<Production> productions;
  productions.reserve(g.productions().size());
  for (const auto& p : g.productions()) {
    Production q{remap[p.lhs], p.rhs};
    for (Symbol& s : q.rhs) {
      if (s.is_nonterminal()) s.id = remap[s.id];
    }
    productions.push_back(std::move(q));
  }
  std::sort(productions.begin(), productions.end());
  productions.erase(std::unique(productions.begin(), productions.end()), productions.end());
  return Grammar(g.terminals(), std::move(names), std::move(productions), remap[g.start()]);
}

}  // namespace cflr
