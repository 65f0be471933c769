#pragma once
// Subsumption ontology: a DAG of categories rooted at `entity`, a set of
// categories that quantify abstractly by default, and a registry of bridging
// relations used to reconcile incomparable types.
//
// File format (UTF-8, line oriented, '#' starts a comment):
//
//   cat <name>                        declare a category
//   sub <child> <parent>              subsumption edge, child is-a parent
//   abstract-category <name>         quantification over it defaults to
//                                     abstract existence (inherited by
//                                     everything below it)
//   rel <Name> <cat0>[^a] <cat1>[^a]  bridging relation; slot 0 is the object
//                                     the relation introduces, slot 1 the
//                                     object it is predicated of; ^a marks
//                                     abstract existence
//
// The ontology is immutable after load and safe to share between threads.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ontosem/errors.hpp"

namespace ontosem {

using CategoryName = std::string;

enum class Mode { Actual, Abstract };

// A category plus an existence mode. An actual t counts as an abstract t,
// never the other way around.
struct TypeTerm {
  CategoryName category;
  Mode mode = Mode::Actual;

  bool operator==(const TypeTerm&) const = default;

  std::string str() const {
    return mode == Mode::Abstract ? category + "^a" : category;
  }
};

inline TypeTerm actual(CategoryName c) { return {std::move(c), Mode::Actual}; }
inline TypeTerm abstract(CategoryName c) { return {std::move(c), Mode::Abstract}; }

// A bridging relation R(slot0, slot1). slot1's mode is the existence the
// original object keeps once the bridge fires; slot0's mode annotates the
// introduced object.
struct RelationSig {
  std::string name;
  TypeTerm slot0;
  TypeTerm slot1;

  bool operator==(const RelationSig&) const = default;
};

class Ontology {
 public:
  static constexpr std::string_view kTop = "entity";

  // Parses and validates `text`. Throws CycleError, UnknownCategory,
  // DuplicateDeclaration or SyntaxError (with the 1-based line number).
  static Ontology load(std::string_view text);

  bool has_category(const CategoryName& c) const { return index_.count(c) != 0; }

  void require_category(const CategoryName& c) const {
    if (!has_category(c)) throw UnknownCategory(c);
  }

  const std::vector<CategoryName>& categories() const { return names_; }
  const std::vector<RelationSig>& relations() const { return relations_; }

  // s ⊑ t : reflexive-transitive reachability along sub edges.
  bool subsumes(const CategoryName& s, const CategoryName& t) const {
    std::size_t si = idx(s), ti = idx(t);
    return ancestors_[si][ti];
  }

  bool comparable(const CategoryName& s, const CategoryName& t) const {
    return subsumes(s, t) || subsumes(t, s);
  }

  // Least common ancestor. Throws AmbiguousLub when the minimal common
  // ancestors are incomparable among themselves.
  CategoryName lub(const CategoryName& s, const CategoryName& t) const {
    std::size_t si = idx(s), ti = idx(t);
    std::vector<std::size_t> common;
    for (std::size_t u = 0; u < names_.size(); ++u)
      if (ancestors_[si][u] && ancestors_[ti][u]) common.push_back(u);
    std::vector<std::size_t> minimal;
    for (std::size_t u : common) {
      bool has_lower = false;
      for (std::size_t v : common)
        if (v != u && ancestors_[v][u]) { has_lower = true; break; }
      if (!has_lower) minimal.push_back(u);
    }
    if (minimal.size() == 1) return names_[minimal[0]];
    std::vector<std::string> cands;
    for (std::size_t u : minimal) cands.push_back(names_[u]);
    std::sort(cands.begin(), cands.end());
    std::string msg = "ambiguous lub(" + s + ", " + t + "):";
    for (const auto& c : cands) msg += " " + c;
    throw AmbiguousLub(std::move(cands), msg);
  }

  // Number of sub edges on a shortest upward path s -> t, or nullopt when
  // t is not an ancestor of s.
  std::optional<int> up_distance(const CategoryName& s, const CategoryName& t) const {
    if (!subsumes(s, t)) return std::nullopt;
    std::size_t ti = idx(t);
    std::queue<std::pair<std::size_t, int>> q;
    q.push({idx(s), 0});
    std::vector<bool> seen(names_.size(), false);
    while (!q.empty()) {
      auto [u, d] = q.front();
      q.pop();
      if (u == ti) return d;
      if (seen[u]) continue;
      seen[u] = true;
      for (std::size_t p : parents_[u]) q.push({p, d + 1});
    }
    return std::nullopt;  // unreachable given the subsumes() guard
  }

  // All relations that can reconcile `original` with a selectional demand for
  // `selected`: those R with selected ⊑ slot0 and original ⊑ slot1. Sorted
  // most specific first (fewest subsumption steps to the slot categories),
  // declaration order breaking ties.
  std::vector<RelationSig> find_bridges(const CategoryName& original,
                                        const CategoryName& selected) const {
    require_category(original);
    require_category(selected);
    std::vector<std::pair<int, RelationSig>> hits;
    for (const auto& r : relations_) {
      auto d0 = up_distance(selected, r.slot0.category);
      auto d1 = up_distance(original, r.slot1.category);
      if (d0 && d1) hits.emplace_back(*d0 + *d1, r);
    }
    std::stable_sort(hits.begin(), hits.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<RelationSig> out;
    for (auto& [d, r] : hits) out.push_back(std::move(r));
    return out;
  }

  // Default existence mode for quantification over `c`: abstract when c sits
  // at or below an abstract-category declaration.
  Mode default_mode(const CategoryName& c) const {
    for (const auto& a : abstract_rooted_)
      if (subsumes(c, a)) return Mode::Abstract;
    return Mode::Actual;
  }

  const std::set<CategoryName>& abstract_rooted() const { return abstract_rooted_; }

 private:
  std::size_t idx(const CategoryName& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) throw UnknownCategory(c);
    return it->second;
  }

  std::vector<CategoryName> names_;            // declaration order
  std::map<CategoryName, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<bool>> ancestors_;   // reflexive-transitive closure
  std::set<CategoryName> abstract_rooted_;
  std::vector<RelationSig> relations_;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

// "book^a" -> TypeTerm{book, Abstract}
inline TypeTerm parse_type_token(std::string tok) {
  Mode m = Mode::Actual;
  if (tok.size() > 2 && tok.ends_with("^a")) {
    m = Mode::Abstract;
    tok.resize(tok.size() - 2);
  }
  return {std::move(tok), m};
}

}  // namespace detail

inline Ontology Ontology::load(std::string_view text) {
  Ontology o;
  struct Edge { std::string child, parent; int line; };
  struct RelLine { RelationSig sig; int line; };
  std::vector<Edge> edges;
  std::vector<RelLine> rels;
  std::vector<std::pair<std::string, int>> abstract_decls;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    const std::string& cmd = toks[0];
    if (cmd == "cat" && toks.size() == 2) {
      if (o.index_.count(toks[1]))
        throw DuplicateDeclaration("line " + std::to_string(lineno) +
                                   ": category '" + toks[1] + "' declared twice");
      o.index_[toks[1]] = o.names_.size();
      o.names_.push_back(toks[1]);
    } else if (cmd == "sub" && toks.size() == 3) {
      edges.push_back({toks[1], toks[2], lineno});
    } else if (cmd == "abstract-category" && toks.size() == 2) {
      abstract_decls.emplace_back(toks[1], lineno);
    } else if (cmd == "rel" && toks.size() == 4) {
      RelationSig sig{toks[1], detail::parse_type_token(toks[2]),
                      detail::parse_type_token(toks[3])};
      rels.push_back({std::move(sig), lineno});
    } else {
      throw SyntaxError("line " + std::to_string(lineno) +
                            ": bad ontology directive '" + line + "'",
                        0, lineno);
    }
  }

  const std::size_t n = o.names_.size();
  o.parents_.assign(n, {});
  for (const auto& e : edges) {
    auto ci = o.index_.find(e.child);
    auto pi = o.index_.find(e.parent);
    if (ci == o.index_.end()) throw UnknownCategory(e.child);
    if (pi == o.index_.end()) throw UnknownCategory(e.parent);
    o.parents_[ci->second].push_back(pi->second);
  }

  // Cycle check, DFS with an explicit stack so the cycle can be named.
  {
    enum { White, Grey, Black };
    std::vector<int> color(n, White);
    std::vector<std::size_t> path;
    auto dfs = [&](auto&& self, std::size_t u) -> void {
      color[u] = Grey;
      path.push_back(u);
      for (std::size_t p : o.parents_[u]) {
        if (color[p] == Grey) {
          std::vector<std::string> cyc;
          auto it = std::find(path.begin(), path.end(), p);
          for (; it != path.end(); ++it) cyc.push_back(o.names_[*it]);
          cyc.push_back(o.names_[p]);
          std::string msg = "subsumption cycle: ";
          for (std::size_t i = 0; i < cyc.size(); ++i)
            msg += (i ? " -> " : "") + cyc[i];
          throw CycleError(std::move(cyc), msg);
        }
        if (color[p] == White) self(self, p);
      }
      color[u] = Black;
      path.pop_back();
    };
    for (std::size_t u = 0; u < n; ++u)
      if (color[u] == White) dfs(dfs, u);
  }

  // Reflexive-transitive closure, memoized DFS.
  o.ancestors_.assign(n, std::vector<bool>(n, false));
  {
    std::vector<bool> done(n, false);
    auto closure = [&](auto&& self, std::size_t u) -> void {
      if (done[u]) return;
      done[u] = true;
      o.ancestors_[u][u] = true;
      for (std::size_t p : o.parents_[u]) {
        self(self, p);
        for (std::size_t a = 0; a < n; ++a)
          if (o.ancestors_[p][a]) o.ancestors_[u][a] = true;
      }
    };
    for (std::size_t u = 0; u < n; ++u) closure(closure, u);
  }

  // Every category must reach the single top.
  auto top = o.index_.find(std::string(kTop));
  if (top == o.index_.end())
    throw UnknownCategory(std::string(kTop));
  for (std::size_t u = 0; u < n; ++u)
    if (!o.ancestors_[u][top->second])
      throw Error("category '" + o.names_[u] + "' does not reach '" +
                  std::string(kTop) + "'");

  for (const auto& [name, ln] : abstract_decls) {
    if (!o.index_.count(name)) throw UnknownCategory(name);
    o.abstract_rooted_.insert(name);
  }

  std::set<std::pair<std::string, std::pair<std::string, std::string>>> seen_rel;
  for (auto& r : rels) {
    if (!o.index_.count(r.sig.slot0.category)) throw UnknownCategory(r.sig.slot0.category);
    if (!o.index_.count(r.sig.slot1.category)) throw UnknownCategory(r.sig.slot1.category);
    auto key = std::make_pair(r.sig.name, std::make_pair(r.sig.slot0.category,
                                                         r.sig.slot1.category));
    if (!seen_rel.insert(key).second)
      throw DuplicateDeclaration("line " + std::to_string(r.line) + ": relation '" +
                                 r.sig.name + "' declared twice for the same slots");
    o.relations_.push_back(std::move(r.sig));
  }
  return o;
}

}  // namespace ontosem
