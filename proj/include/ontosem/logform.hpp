#pragma once
// Logical forms: a prenex string of typed, mode-annotated quantifiers over a
// flat conjunction of atoms. The concrete syntax produced by serialize() and
// accepted by parse_lf() is
//
//   (E! john:human)(Ea e:seminar)(Noo(john,"john") & Attended(john,e))
//
// with quantifier tokens E (exists), E! (exists-unique), A (forall) and an
// `a` suffix for abstract existence. An empty conjunction prints as `true`.

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontosem/errors.hpp"
#include "ontosem/ontology.hpp"

namespace ontosem {

inline constexpr std::string_view kBottom = "⊥";  // ⊥, the absurd type
inline constexpr std::string_view kNow = "now";
inline constexpr std::string_view kTimeOfUtterance = "t_u";

enum class QuantKind { Exists, ExistsUnique, Forall };

struct Quantifier {
  QuantKind kind = QuantKind::Exists;
  int var = -1;            // stable identity, independent of position
  std::string display;     // name used by the concrete syntax
  TypeTerm type;           // type.mode is the quantifier's existence mode
};

// An atom argument: a bound variable or an uninterpreted constant (now, t_u).
struct Term {
  enum class Kind { Var, Const };
  Kind kind = Kind::Var;
  int var = -1;
  std::string text;

  static Term variable(int id) {
    Term t;
    t.kind = Kind::Var;
    t.var = id;
    return t;
  }
  static Term constant(std::string s) {
    Term t;
    t.kind = Kind::Const;
    t.var = -1;
    t.text = std::move(s);
    return t;
  }
  bool operator==(const Term&) const = default;
};

enum class AtomKind {
  Pred,  // Name(args), possibly negated
  Rel,   // bridging relation, prints like Pred
  Noo,   // Noo(x,"label"), ties a variable to a proper name
  Is,    // Is(x,y), identity
  Less,  // t < t_u, temporal precedence
};

struct Atom {
  AtomKind kind = AtomKind::Pred;
  std::string name;
  bool negated = false;
  std::vector<Term> args;
  std::string label;  // Noo only
  // Selectional demand each argument position places on its variable,
  // parallel to args. Consumed by unification, absent in parsed input.
  std::vector<std::optional<TypeTerm>> slot_types;

  static Atom pred(std::string name, std::vector<Term> args,
                   std::vector<std::optional<TypeTerm>> slots = {}) {
    Atom a;
    a.kind = AtomKind::Pred;
    a.name = std::move(name);
    a.args = std::move(args);
    a.slot_types = std::move(slots);
    a.slot_types.resize(a.args.size());
    return a;
  }
  static Atom rel(std::string name, Term t0, Term t1,
                  std::optional<TypeTerm> s0 = {}, std::optional<TypeTerm> s1 = {}) {
    Atom a;
    a.kind = AtomKind::Rel;
    a.name = std::move(name);
    a.args = {std::move(t0), std::move(t1)};
    a.slot_types = {std::move(s0), std::move(s1)};
    return a;
  }
  static Atom noo(Term v, std::string label) {
    Atom a;
    a.kind = AtomKind::Noo;
    a.name = "Noo";
    a.args = {std::move(v)};
    a.label = std::move(label);
    a.slot_types = {std::nullopt};
    return a;
  }
  static Atom is(Term x, Term y) {
    Atom a;
    a.kind = AtomKind::Is;
    a.name = "Is";
    a.args = {std::move(x), std::move(y)};
    a.slot_types = {std::nullopt, std::nullopt};
    return a;
  }
  static Atom less(Term lhs, Term rhs) {
    Atom a;
    a.kind = AtomKind::Less;
    a.args = {std::move(lhs), std::move(rhs)};
    a.slot_types = {std::nullopt, std::nullopt};
    return a;
  }

  // Equality up to bookkeeping: slot_types are advisory and ignored.
  bool same(const Atom& o) const {
    return kind == o.kind && name == o.name && negated == o.negated &&
           args == o.args && label == o.label;
  }
};

enum class FormStatus { PreUnification, Final, Anomalous };

struct LogicalForm {
  std::vector<Quantifier> prefix;
  std::vector<Atom> body;  // conjunction; empty means `true`
  FormStatus status = FormStatus::PreUnification;
  // Set when unification bottomed out: (demanded category, variable's category).
  std::optional<std::pair<std::string, std::string>> anomaly;
  // Extra type constraints per variable, beyond what the atoms demand. Fed by
  // identity merging and by user assumptions, consumed by unification.
  std::map<int, std::vector<TypeTerm>> assumed;
  // Snapshot taken by unify_all before it rewrites anything, so a form can be
  // re-unified later under additional assumptions.
  std::shared_ptr<const LogicalForm> pre;
  int next_var = 0;

  int fresh_id() { return next_var++; }

  int add_var(QuantKind kind, std::string display, TypeTerm type) {
    int id = fresh_id();
    prefix.push_back({kind, id, std::move(display), std::move(type)});
    return id;
  }

  // Inserts a quantifier right after the one binding `after`, or at the end
  // when `after` is not bound here.
  int insert_var_after(int after, QuantKind kind, std::string display, TypeTerm type) {
    int id = fresh_id();
    Quantifier q{kind, id, std::move(display), std::move(type)};
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i].var == after) {
        prefix.insert(prefix.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(q));
        return id;
      }
    }
    prefix.push_back(std::move(q));
    return id;
  }

  Quantifier* find_var(int id) {
    for (auto& q : prefix)
      if (q.var == id) return &q;
    return nullptr;
  }
  const Quantifier* find_var(int id) const {
    for (const auto& q : prefix)
      if (q.var == id) return &q;
    return nullptr;
  }
  Quantifier* find_display(const std::string& d) {
    for (auto& q : prefix)
      if (q.display == d) return &q;
    return nullptr;
  }
  const Quantifier* find_display(const std::string& d) const {
    for (const auto& q : prefix)
      if (q.display == d) return &q;
    return nullptr;
  }

  // whb, whb2, whb3, ... until unused.
  std::string unique_display(const std::string& base) const {
    if (!find_display(base)) return base;
    for (int n = 2;; ++n) {
      std::string cand = base + std::to_string(n);
      if (!find_display(cand)) return cand;
    }
  }

  void rewrite_var(int from, int to) {
    for (auto& a : body)
      for (auto& t : a.args)
        if (t.kind == Term::Kind::Var && t.var == from) t.var = to;
  }

  bool mentions(int var) const {
    for (const auto& a : body)
      for (const auto& t : a.args)
        if (t.kind == Term::Kind::Var && t.var == var) return true;
    return false;
  }
};

// --- printing ----------------------------------------------------------------

namespace detail {

inline std::string quant_token(const Quantifier& q) {
  std::string tok;
  switch (q.kind) {
    case QuantKind::Exists: tok = "E"; break;
    case QuantKind::ExistsUnique: tok = "E!"; break;
    case QuantKind::Forall: tok = "A"; break;
  }
  if (q.type.mode == Mode::Abstract && q.type.category != kBottom) tok += "a";
  return tok;
}

inline std::string term_str(const Term& t, const LogicalForm& f) {
  if (t.kind == Term::Kind::Const) return t.text;
  const Quantifier* q = f.find_var(t.var);
  return q ? q->display : "?" + std::to_string(t.var);
}

inline std::string atom_str(const Atom& a, const LogicalForm& f) {
  if (a.kind == AtomKind::Less)
    return term_str(a.args[0], f) + " < " + term_str(a.args[1], f);
  std::string out;
  if (a.negated) out += "!";
  out += a.name;
  out += "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += term_str(a.args[i], f);
  }
  if (a.kind == AtomKind::Noo) {
    out += ",\"" + a.label + "\"";
  }
  out += ")";
  return out;
}

}  // namespace detail

inline std::string serialize(const LogicalForm& f) {
  std::string out;
  for (const auto& q : f.prefix)
    out += "(" + detail::quant_token(q) + " " + q.display + ":" + q.type.category + ")";
  out += "(";
  if (f.body.empty()) {
    out += "true";
  } else {
    for (std::size_t i = 0; i < f.body.size(); ++i) {
      if (i) out += " & ";
      out += detail::atom_str(f.body[i], f);
    }
  }
  out += ")";
  return out;
}

// Like serialize() but suppresses, for each variable, its first naming atom,
// so `(E! whb:human)(Noo(whb,"william-h-bonney") & Thief(whb))` displays as
// `(E! whb:human)(Thief(whb))`. Lossy; for human consumption only.
inline std::string serialize_folded(const LogicalForm& f) {
  LogicalForm g = f;
  std::vector<Atom> kept;
  std::map<int, bool> folded;
  for (const auto& a : g.body) {
    if (a.kind == AtomKind::Noo && a.args[0].kind == Term::Kind::Var &&
        !folded[a.args[0].var]) {
      folded[a.args[0].var] = true;
      continue;
    }
    kept.push_back(a);
  }
  g.body = std::move(kept);
  return serialize(g);
}

// --- parsing -----------------------------------------------------------------

namespace detail {

struct LfParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("offset " + std::to_string(pos) + ": " + what, pos);
  }

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }

  void skip_ws() {
    while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    if (!ident_start(peek())) fail("expected identifier");
    std::size_t start = pos;
    while (!done() && ident_char(s[pos])) ++pos;
    return std::string(s.substr(start, pos - start));
  }

  std::string quoted() {
    expect('"');
    std::size_t start = pos;
    while (!done() && s[pos] != '"') ++pos;
    if (done()) fail("unterminated string");
    std::string out(s.substr(start, pos - start));
    ++pos;
    return out;
  }

  // The category in a quantifier: an identifier or the absurd type.
  std::string type_name() {
    if (s.substr(pos).starts_with(kBottom)) {
      pos += kBottom.size();
      return std::string(kBottom);
    }
    return ident();
  }

  // Attempts `QTok display:type)` after an already-consumed '('. Returns
  // false (position restored to the '(') when this group is the body instead.
  bool try_quantifier(LogicalForm& f) {
    std::size_t mark = pos - 1;  // at '('
    std::size_t start = pos;
    while (!done() && (s[pos] == 'E' || s[pos] == 'A' || s[pos] == '!' || s[pos] == 'a'))
      ++pos;
    std::string tok(s.substr(start, pos - start));
    QuantKind kind;
    Mode mode = Mode::Actual;
    if (tok == "E") kind = QuantKind::Exists;
    else if (tok == "Ea") { kind = QuantKind::Exists; mode = Mode::Abstract; }
    else if (tok == "E!") kind = QuantKind::ExistsUnique;
    else if (tok == "E!a") { kind = QuantKind::ExistsUnique; mode = Mode::Abstract; }
    else if (tok == "A") kind = QuantKind::Forall;
    else if (tok == "Aa") { kind = QuantKind::Forall; mode = Mode::Abstract; }
    else { pos = mark + 1; return false; }
    if (peek() != ' ') {  // a predicate that merely starts with E or A
      pos = mark + 1;
      return false;
    }
    skip_ws();
    std::string display = ident();
    expect(':');
    std::string cat = type_name();
    skip_ws();
    expect(')');
    if (f.find_display(display)) fail("duplicate variable '" + display + "'");
    f.add_var(kind, display, TypeTerm{cat, mode});
    return true;
  }

  Term term(const LogicalForm& f) {
    std::string id = ident();
    if (const Quantifier* q = f.find_display(id)) return Term::variable(q->var);
    return Term::constant(id);
  }

  Atom atom(LogicalForm& f) {
    bool neg = eat('!');
    std::string name = ident();
    skip_ws();
    if (peek() == '<') {
      if (neg) fail("cannot negate a precedence atom");
      ++pos;
      skip_ws();
      Term lhs = f.find_display(name) ? Term::variable(f.find_display(name)->var)
                                      : Term::constant(name);
      return Atom::less(lhs, term(f));
    }
    expect('(');
    std::vector<Term> args;
    std::string label;
    bool saw_label = false;
    skip_ws();
    if (peek() != ')') {
      for (;;) {
        skip_ws();
        if (peek() == '"') {
          label = quoted();
          saw_label = true;
        } else {
          if (saw_label) fail("string argument must come last");
          args.push_back(term(f));
        }
        skip_ws();
        if (!eat(',')) break;
      }
    }
    expect(')');
    if (name == "Noo") {
      if (args.size() != 1 || !saw_label || neg)
        fail("Noo expects (variable,\"name\")");
      return Atom::noo(args[0], std::move(label));
    }
    if (saw_label) fail("only Noo takes a string argument");
    if (name == "Is" && args.size() == 2 && !neg &&
        args[0].kind == Term::Kind::Var && args[1].kind == Term::Kind::Var)
      return Atom::is(args[0], args[1]);
    Atom a = Atom::pred(std::move(name), std::move(args));
    a.negated = neg;
    return a;
  }

  LogicalForm run() {
    LogicalForm f;
    skip_ws();
    expect('(');
    while (try_quantifier(f)) {
      skip_ws();
      expect('(');
    }
    // now inside the body group
    skip_ws();
    if (s.substr(pos).starts_with("true") && !ident_char(pos + 4 < s.size() ? s[pos + 4] : '\0')) {
      pos += 4;
    } else {
      for (;;) {
        f.body.push_back(atom(f));
        skip_ws();
        if (!eat('&')) break;
        skip_ws();
      }
    }
    skip_ws();
    expect(')');
    skip_ws();
    if (!done()) fail("trailing input");
    f.status = FormStatus::Final;
    return f;
  }
};

}  // namespace detail

inline LogicalForm parse_lf(std::string_view text) {
  detail::LfParser p{text};
  return p.run();
}

// --- comparison --------------------------------------------------------------

// Structural equality up to variable naming: quantifier kinds, modes and
// categories must match positionally, atoms must match in order with
// variables identified by binding position. The Pred/Rel distinction is
// internal bookkeeping and does not count.
inline bool alpha_equal(const LogicalForm& a, const LogicalForm& b) {
  if (a.prefix.size() != b.prefix.size() || a.body.size() != b.body.size())
    return false;
  std::map<int, std::size_t> ra, rb;
  for (std::size_t i = 0; i < a.prefix.size(); ++i) {
    const Quantifier &qa = a.prefix[i], &qb = b.prefix[i];
    if (qa.kind != qb.kind || qa.type != qb.type) return false;
    ra[qa.var] = i;
    rb[qb.var] = i;
  }
  auto fold = [](AtomKind k) { return k == AtomKind::Rel ? AtomKind::Pred : k; };
  for (std::size_t i = 0; i < a.body.size(); ++i) {
    const Atom &xa = a.body[i], &xb = b.body[i];
    if (fold(xa.kind) != fold(xb.kind) || xa.name != xb.name ||
        xa.negated != xb.negated || xa.label != xb.label ||
        xa.args.size() != xb.args.size())
      return false;
    for (std::size_t j = 0; j < xa.args.size(); ++j) {
      const Term &ta = xa.args[j], &tb = xb.args[j];
      if (ta.kind != tb.kind) return false;
      if (ta.kind == Term::Kind::Var) {
        auto ia = ra.find(ta.var), ib = rb.find(tb.var);
        if (ia == ra.end() || ib == rb.end() || ia->second != ib->second)
          return false;
      } else if (ta.text != tb.text) {
        return false;
      }
    }
  }
  return true;
}

// --- identity merging --------------------------------------------------------

// Collapses Is(x,y) atoms by merging y's variable into x's (whichever is
// bound first survives). The absorbed variable's type joins the survivor's
// assumed constraints so a later unification can reconcile them. Uniqueness
// wins when either side has it. Exact duplicate atoms left behind by a merge
// are dropped. Idempotent.
inline LogicalForm simplify_is(LogicalForm f) {
  for (;;) {
    bool merged = false;
    for (std::size_t i = 0; i < f.body.size(); ++i) {
      if (f.body[i].kind != AtomKind::Is) continue;
      int x = f.body[i].args[0].var;
      int y = f.body[i].args[1].var;
      if (x == y) {
        f.body.erase(f.body.begin() + static_cast<std::ptrdiff_t>(i));
        merged = true;
        break;
      }
      std::size_t px = 0, py = 0;
      for (std::size_t k = 0; k < f.prefix.size(); ++k) {
        if (f.prefix[k].var == x) px = k;
        if (f.prefix[k].var == y) py = k;
      }
      if (f.prefix[px].kind == QuantKind::Forall ||
          f.prefix[py].kind == QuantKind::Forall)
        throw ScopeError("cannot merge an identity under a universal quantifier");
      std::size_t ps = std::min(px, py), pa = std::max(px, py);
      Quantifier& survivor = f.prefix[ps];
      const Quantifier absorbed = f.prefix[pa];
      if (absorbed.kind == QuantKind::ExistsUnique)
        survivor.kind = QuantKind::ExistsUnique;
      f.assumed[survivor.var].push_back(absorbed.type);
      if (auto it = f.assumed.find(absorbed.var); it != f.assumed.end()) {
        auto& dst = f.assumed[survivor.var];
        dst.insert(dst.end(), it->second.begin(), it->second.end());
        f.assumed.erase(absorbed.var);
      }
      f.body.erase(f.body.begin() + static_cast<std::ptrdiff_t>(i));
      f.rewrite_var(absorbed.var, survivor.var);
      f.prefix.erase(f.prefix.begin() + static_cast<std::ptrdiff_t>(pa));
      merged = true;
      break;
    }
    if (!merged) break;
  }
  std::vector<Atom> unique;
  for (auto& a : f.body) {
    bool dup = false;
    for (const auto& u : unique)
      if (u.same(a)) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(std::move(a));
  }
  f.body = std::move(unique);
  return f;
}

}  // namespace ontosem
