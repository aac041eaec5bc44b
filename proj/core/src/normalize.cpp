// Grammar normal forms: CNF (TERM, BIN, DEL, UNIT) and the terminal-anchored
// linear normal form.
//
// Fresh nonterminals are named `<lhs>#<ruleIndex>#<position>` where ruleIndex
// is the index of the source production at the time of the pass. CNF passes
// tag the position with the pass (`t` for terminal isolation, `b` for
// binarization) so names from different passes never collide.

#include <algorithm>
#include <set>

#include "cflr/error.hpp"
#include "cflr/grammar.hpp"

namespace cflr {
namespace {

struct Draft {
  SymbolTable terminals;
  SymbolTable nonterminals;
  std::vector<Production> rules;
  Nonterminal start;

  explicit Draft(const Grammar& g)
      : terminals(g.terminals()),
        nonterminals(g.nonterminals()),
        rules(g.productions()),
        start(g.start()) {}

  Nonterminal fresh(std::string name) {
    while (nonterminals.contains(name)) name += '\'';
    return nonterminals.intern(name);
  }

  std::string name_of(Nonterminal a) const { return nonterminals.name(a); }

  bool start_on_rhs() const {
    return std::any_of(rules.begin(), rules.end(), [&](const Production& p) {
      return std::find(p.rhs.begin(), p.rhs.end(), Symbol::nonterminal(start)) != p.rhs.end();
    });
  }

  Grammar finish() {
    std::vector<Production> unique;
    std::set<Production> seen;
    for (auto& p : rules) {
      if (seen.insert(p).second) unique.push_back(std::move(p));
    }
    return Grammar(std::move(terminals), std::move(nonterminals), std::move(unique), start);
  }
};

std::vector<bool> nullable_set(const Draft& d) {
  std::vector<bool> nullable(d.nonterminals.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : d.rules) {
      if (nullable[p.lhs]) continue;
      const bool all = std::all_of(p.rhs.begin(), p.rhs.end(), [&](Symbol s) {
        return s.is_nonterminal() && nullable[s.id];
      });
      if (all) {
        nullable[p.lhs] = true;
        changed = true;
      }
    }
  }
  return nullable;
}

// DEL: remove epsilon rules, adding every variant that omits nullable
// occurrences. Callers guarantee each rule has at most two nullable
// occurrences (after BIN, or because the grammar is linear).
void eliminate_epsilon(Draft& d) {
  const auto nullable = nullable_set(d);
  std::vector<Production> out;
  for (const auto& p : d.rules) {
    std::vector<std::size_t> optional;
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      if (p.rhs[i].is_nonterminal() && nullable[p.rhs[i].id]) optional.push_back(i);
    }
    const std::size_t variants = std::size_t{1} << optional.size();
    for (std::size_t mask = 0; mask < variants; ++mask) {
      Production q{p.lhs, {}};
      std::size_t next = 0;
      for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        const bool is_optional = next < optional.size() && optional[next] == i;
        if (is_optional) {
          const bool drop = (mask >> next) & 1U;
          ++next;
          if (drop) continue;
        }
        q.rhs.push_back(p.rhs[i]);
      }
      if (!q.rhs.empty()) out.push_back(std::move(q));
    }
  }
  d.rules = std::move(out);

  if (nullable[d.start]) {
    if (d.start_on_rhs()) {
      const Nonterminal old_start = d.start;
      d.start = d.fresh(d.name_of(old_start) + "#start");
      d.rules.push_back({d.start, {Symbol::nonterminal(old_start)}});
    }
    d.rules.push_back({d.start, {}});
  }
}

// UNIT: replace A -> B chains by copies of the non-unit rules reachable
// through them.
void eliminate_units(Draft& d) {
  const std::size_t n = d.nonterminals.size();
  auto is_unit = [](const Production& p) {
    return p.rhs.size() == 1 && p.rhs[0].is_nonterminal();
  };
  std::vector<std::vector<Nonterminal>> unit_succ(n);
  for (const auto& p : d.rules) {
    if (is_unit(p)) unit_succ[p.lhs].push_back(p.rhs[0].id);
  }
  std::vector<std::vector<const Production*>> own(n);
  for (const auto& p : d.rules) {
    if (!is_unit(p)) own[p.lhs].push_back(&p);
  }

  std::vector<Production> out;
  std::vector<char> visited(n);
  std::vector<Nonterminal> stack;
  for (Nonterminal a = 0; a < n; ++a) {
    std::fill(visited.begin(), visited.end(), 0);
    stack.assign(1, a);
    visited[a] = 1;
    std::vector<Nonterminal> closure;
    while (!stack.empty()) {
      const Nonterminal b = stack.back();
      stack.pop_back();
      closure.push_back(b);
      for (Nonterminal c : unit_succ[b]) {
        if (!visited[c]) {
          visited[c] = 1;
          stack.push_back(c);
        }
      }
    }
    std::sort(closure.begin(), closure.end());
    for (Nonterminal b : closure) {
      for (const Production* p : own[b]) {
        // Epsilon stays on the start symbol only.
        if (p->rhs.empty() && a != d.start) continue;
        out.push_back({a, p->rhs});
      }
    }
  }
  // Keep the original rule order stable: rules of lower lhs ids first was
  // already produced above; dedupe happens in finish().
  d.rules = std::move(out);
}

// TERM: isolate terminals inside rules of length >= 2.
void isolate_terminals(Draft& d) {
  std::vector<Production> out;
  std::vector<Production> extra;
  for (std::size_t r = 0; r < d.rules.size(); ++r) {
    Production p = d.rules[r];
    if (p.rhs.size() >= 2) {
      for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        if (!p.rhs[i].is_terminal()) continue;
        const Nonterminal t =
            d.fresh(d.name_of(p.lhs) + "#" + std::to_string(r) + "#t" + std::to_string(i));
        extra.push_back({t, {p.rhs[i]}});
        p.rhs[i] = Symbol::nonterminal(t);
      }
    }
    out.push_back(std::move(p));
  }
  out.insert(out.end(), extra.begin(), extra.end());
  d.rules = std::move(out);
}

// BIN: split rules longer than two symbols into right-nested pairs.
void binarize(Draft& d) {
  std::vector<Production> out;
  for (std::size_t r = 0; r < d.rules.size(); ++r) {
    const Production& p = d.rules[r];
    if (p.rhs.size() <= 2) {
      out.push_back(p);
      continue;
    }
    Nonterminal lhs = p.lhs;
    for (std::size_t i = 0; i + 2 < p.rhs.size(); ++i) {
      const Nonterminal rest =
          d.fresh(d.name_of(p.lhs) + "#" + std::to_string(r) + "#b" + std::to_string(i + 1));
      out.push_back({lhs, {p.rhs[i], Symbol::nonterminal(rest)}});
      lhs = rest;
    }
    out.push_back({lhs, {p.rhs[p.rhs.size() - 2], p.rhs.back()}});
  }
  d.rules = std::move(out);
}

}  // namespace

Grammar to_cnf(const Grammar& g) {
  if (is_cnf(g)) return g;
  Draft d(g);
  isolate_terminals(d);
  binarize(d);
  eliminate_epsilon(d);
  eliminate_units(d);
  return d.finish();
}

Grammar to_talnf(const Grammar& g) {
  if (is_talnf(g)) return g;
  if (!is_linear(g)) {
    throw Error(ErrorKind::NotLinear, "grammar has a production with two or more nonterminals");
  }
  Draft d(g);
  eliminate_epsilon(d);
  eliminate_units(d);

  std::vector<Production> out;
  const auto rules = d.rules;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const Production& p = rules[r];
    const auto& rhs = p.rhs;
    auto name = [&](std::size_t position) {
      return d.fresh(d.name_of(p.lhs) + "#" + std::to_string(r) + "#" + std::to_string(position));
    };

    const auto nt_pos = std::find_if(rhs.begin(), rhs.end(), [](Symbol s) { return s.is_nonterminal(); });
    if (rhs.size() <= 1 || (rhs.size() == 2 && nt_pos != rhs.end())) {
      out.push_back(p);  // already A -> a, A -> aB, A -> Ba or S -> eps
      continue;
    }

    // Emits A -> a_1 X_1, X_i -> a_{i+1} X_{i+1}, ..., X_{p-1} -> a_p tail,
    // where tail is either nothing (terminal-only rule) or one nonterminal.
    auto prefix_chain = [&](std::size_t p_len, std::optional<Symbol> tail) {
      Nonterminal lhs = p.lhs;
      for (std::size_t i = 0; i + 1 < p_len; ++i) {
        const Nonterminal next = name(i + 1);
        out.push_back({lhs, {rhs[i], Symbol::nonterminal(next)}});
        lhs = next;
      }
      Production last{lhs, {rhs[p_len - 1]}};
      if (tail) last.rhs.push_back(*tail);
      out.push_back(std::move(last));
    };

    if (nt_pos == rhs.end()) {
      prefix_chain(rhs.size(), std::nullopt);
      continue;
    }

    const auto p_len = static_cast<std::size_t>(nt_pos - rhs.begin());
    const std::size_t q_len = rhs.size() - p_len - 1;
    const Symbol b = *nt_pos;

    if (q_len == 0) {
      prefix_chain(p_len, b);
      continue;
    }

    // Suffix chain B(1) -> B b_1, B(i) -> B(i-1) b_i. When there is no prefix
    // the last link is the original lhs itself.
    const std::size_t links = p_len == 0 ? q_len - 1 : q_len;
    Symbol carried = b;
    for (std::size_t i = 1; i <= links; ++i) {
      const Nonterminal link = name(p_len + i);
      out.push_back({link, {carried, rhs[p_len + i]}});
      carried = Symbol::nonterminal(link);
    }
    if (p_len == 0) {
      out.push_back({p.lhs, {carried, rhs.back()}});
    } else {
      prefix_chain(p_len, carried);
    }
  }
  d.rules = std::move(out);
  return d.finish();
}

}  // namespace cflr
