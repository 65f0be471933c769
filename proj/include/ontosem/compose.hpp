#pragma once
// Turns controlled-grammar sentences into pre-unification logical forms and
// runs unification over them. Supported shapes:
//
//   sheba is hungry                      william-h-bonney is billy-the-kid
//   sheba is a young artist              john attended the seminar
//   john painted a large elephant        john read a book and=burned it
//   running is fun                       a book review
//   an artificial car                    a former president
//
// Clause conjunction is written `and=<verb>` with the second object given as
// `it` (the first clause's object) or `it:<display>` (explicit antecedent);
// resolving free pronouns is out of scope. Reified mode replaces the single
// verb atom with an activity individual carrying Subject/Object roles.
//
// Variable naming: proper names keep their label (hyphenated names shrink to
// initials: william-h-bonney -> whb); a noun variable is `e` when its
// category falls under event, otherwise the category's first letter; bridge
// and activity variables follow the same letter rule. Collisions append a
// counter (c, c2, ...).

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ontosem/errors.hpp"
#include "ontosem/lexicon.hpp"
#include "ontosem/logform.hpp"
#include "ontosem/ontology.hpp"
#include "ontosem/unify.hpp"

namespace ontosem {

enum class ComposeMode { Plain, Reified };

struct Reading {
  LogicalForm lf;
  ComposeMode mode = ComposeMode::Plain;
  std::vector<std::string> notes;
  Trace trace;
};

inline std::vector<std::string> tokenize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

namespace detail {

inline bool is_det(const std::string& t) { return t == "a" || t == "an" || t == "the"; }

inline std::string name_display(const std::string& label) {
  std::string initials;
  std::size_t parts = 0;
  for (std::size_t i = 0; i < label.size();) {
    auto dash = label.find('-', i);
    if (dash == std::string::npos) dash = label.size();
    if (dash > i) {
      initials += label[i];
      ++parts;
    }
    i = dash + 1;
  }
  return parts > 1 ? initials : label;
}

inline std::string noun_display(const Ontology& o, const CategoryName& cat) {
  if (o.has_category("event") && o.subsumes(cat, "event")) return "e";
  return cat.substr(0, 1);
}

inline int add_name_var(const Lexicon& lex, LogicalForm& f,
                        const std::string& surface) {
  const NameEntry& n = lex.name(surface);
  int id = f.add_var(QuantKind::ExistsUnique, f.unique_display(name_display(n.label)),
                     TypeTerm{n.category, Mode::Actual});
  f.body.push_back(Atom::noo(Term::variable(id), n.label));
  return id;
}

inline int add_noun_var(const Ontology& o, LogicalForm& f, QuantKind kind,
                        const CategoryName& cat) {
  return f.add_var(kind, f.unique_display(noun_display(o, cat)),
                   TypeTerm{cat, o.default_mode(cat)});
}

}  // namespace detail

// [noun noun] compound as a property fragment: the relation linking the two
// plus a hole predicate P over the head. Substance-of-artifact compounds
// quantify the head first (a brick house is a house); every other compound
// quantifies the modifier first (a book review asserts a book). Slot modes
// of the relation give the two variables their existence (a book proposal's
// book is merely abstract). No linking relation leaves the head at ⊥.
inline LogicalForm build_np_compound(const Ontology& o, const Lexicon& lex,
                                     const std::string& head, const std::string& modifier,
                                     QuantKind head_kind = QuantKind::Exists) {
  const CategoryName headcat = lex.noun(head).category;
  const CategoryName modcat = lex.noun(modifier).category;
  LogicalForm f;
  auto bridges = o.find_bridges(modcat, headcat);
  if (bridges.empty()) {
    int m = detail::add_noun_var(o, f, QuantKind::Exists, modcat);
    int h = f.add_var(head_kind, f.unique_display(detail::noun_display(o, headcat)),
                      TypeTerm{std::string(kBottom), Mode::Actual});
    (void)m;
    f.body.push_back(Atom::pred("P", {Term::variable(h)}));
    f.anomaly = {modcat, headcat};
    f.status = FormStatus::Anomalous;
    return f;
  }
  const RelationSig& rel = bridges.front();
  bool substance_head_first = o.has_category("substance") && o.has_category("artifact") &&
                              o.subsumes(modcat, "substance") &&
                              o.subsumes(headcat, "artifact");
  int h = -1, m = -1;
  auto add_head = [&] {
    h = f.add_var(head_kind, f.unique_display(detail::noun_display(o, headcat)),
                  TypeTerm{headcat, rel.slot0.mode});
  };
  auto add_mod = [&] {
    m = f.add_var(QuantKind::Exists, f.unique_display(detail::noun_display(o, modcat)),
                  TypeTerm{modcat, rel.slot1.mode});
  };
  if (substance_head_first) {
    add_head();
    add_mod();
  } else {
    add_mod();
    add_head();
  }
  f.body.push_back(Atom::rel(rel.name, Term::variable(h), Term::variable(m),
                             rel.slot0, rel.slot1));
  f.body.push_back(Atom::pred("P", {Term::variable(h)}));
  return f;
}

// `former P` for temporal role nouns: P held at some past time and does not
// hold now. Roles without a time parameter (father, doctor) do not take
// this reading.
inline LogicalForm build_former_p(const Ontology& o, const Lexicon& lex,
                                  const std::string& role,
                                  QuantKind kind = QuantKind::Exists) {
  const AdjEntry& e = lex.adj(role);
  if (!e.temporal_role)
    throw UnsupportedFormer("'former " + role + "' has no temporal reading");
  o.require_category("time");
  LogicalForm f;
  int x = f.add_var(kind, "x", TypeTerm{e.selects.category, Mode::Actual});
  int t = f.add_var(QuantKind::Exists, "t", TypeTerm{"time", Mode::Actual});
  f.body.push_back(Atom::less(Term::variable(t), Term::constant(std::string(kTimeOfUtterance))));
  f.body.push_back(Atom::pred(e.pred, {Term::variable(x), Term::variable(t)},
                              {e.selects, TypeTerm{"time", Mode::Actual}}));
  Atom neg = Atom::pred(e.pred, {Term::variable(x), Term::constant(std::string(kNow))},
                        {e.selects, std::nullopt});
  neg.negated = true;
  f.body.push_back(std::move(neg));
  return f;
}

namespace detail {

// Swaps the single verb atom for an activity individual: Gerund(a) &
// Subject(a, subj) & Object(a, obj), with `a` quantified between subject
// and object.
inline LogicalForm reify_pre(const Ontology& o, const Lexicon& lex, LogicalForm f) {
  o.require_category("activity");
  int verb_at = -1;
  const VerbEntry* ve = nullptr;
  for (std::size_t i = 0; i < f.body.size(); ++i) {
    const Atom& a = f.body[i];
    if (a.kind != AtomKind::Pred || a.args.size() != 2) continue;
    for (const auto& [surface, entry] : lex.verbs()) {
      if (entry.pred != a.name) continue;
      if (verb_at >= 0 && verb_at != static_cast<int>(i))
        throw UnsupportedPattern("reified mode supports exactly one verb per sentence");
      verb_at = static_cast<int>(i);
      ve = &entry;
    }
  }
  if (verb_at < 0)
    throw UnsupportedPattern("reified mode needs a verb to reify");
  if (ve->gerund.empty())
    throw UnsupportedPattern("verb '" + ve->pred + "' has no activity form");
  Atom verb = f.body[static_cast<std::size_t>(verb_at)];
  if (verb.args[0].kind != Term::Kind::Var || verb.args[1].kind != Term::Kind::Var)
    throw UnsupportedPattern("reified mode needs variable subject and object");

  TypeTerm act{"activity", Mode::Actual};
  int a = f.insert_var_after(verb.args[0].var, QuantKind::ExistsUnique,
                             f.unique_display("a"), act);
  std::vector<Atom> repl;
  repl.push_back(Atom::pred(ve->gerund, {Term::variable(a)}, {act}));
  repl.push_back(Atom::pred("Subject", {Term::variable(a), verb.args[0]}, {act, ve->subj}));
  repl.push_back(Atom::pred("Object", {Term::variable(a), verb.args[1]}, {act, ve->obj}));
  f.body.erase(f.body.begin() + verb_at);
  f.body.insert(f.body.begin() + verb_at, repl.begin(), repl.end());
  return f;
}

inline const LogicalForm& pre_of(const Reading& r) {
  if (r.lf.status == FormStatus::PreUnification) return r.lf;
  if (r.lf.pre) return *r.lf.pre;
  throw Error("reading has no pre-unification snapshot");
}

}  // namespace detail

// Re-derives a plain reading in reified form.
inline Reading reify(const Ontology& o, const Lexicon& lex, const Reading& plain) {
  LogicalForm pre = detail::reify_pre(o, lex, detail::pre_of(plain));
  UnifyResult ur = unify_all(o, std::move(pre));
  return Reading{std::move(ur.form), ComposeMode::Reified, std::move(ur.warnings),
                 std::move(ur.trace)};
}

// Applies a follow-up adjective ("it was exhausting") to a reified reading.
// Both the activity and the verb's object are candidate antecedents; each
// compatible one yields its own reading.
inline std::vector<Reading> reify_followup(const Ontology& o, const Lexicon& lex,
                                           const Reading& reified,
                                           const std::string& adj_surface) {
  const AdjEntry& ad = lex.adj(adj_surface);
  const LogicalForm& base = detail::pre_of(reified);
  int act = -1, obj = -1;
  for (const auto& a : reified.lf.body) {
    if (a.kind != AtomKind::Pred) continue;
    if (a.name == "Subject" && a.args[0].kind == Term::Kind::Var) act = a.args[0].var;
    if (a.name == "Object" && a.args[1].kind == Term::Kind::Var) obj = a.args[1].var;
  }
  std::vector<Reading> out;
  for (int target : {act, obj}) {
    if (target < 0) continue;
    const Quantifier* q = reified.lf.find_var(target);
    if (!q || q->type.category == kBottom) continue;
    if (!o.comparable(ad.selects.category, q->type.category)) continue;
    LogicalForm variant = base;
    variant.body.push_back(Atom::pred(ad.pred, {Term::variable(target)}, {ad.selects}));
    UnifyResult ur = unify_all(o, std::move(variant));
    out.push_back(Reading{std::move(ur.form), ComposeMode::Reified,
                          std::move(ur.warnings), std::move(ur.trace)});
  }
  return out;
}

namespace detail {

struct SentenceBuilder {
  const Ontology& o;
  const Lexicon& lex;
  const std::vector<std::string>& t;
  std::size_t matched = 0;  // tokens any pattern accepted so far

  void ok(std::size_t upto) { matched = std::max(matched, upto); }

  [[noreturn]] void reject() const {
    std::string prefix;
    for (std::size_t i = 0; i < matched; ++i) prefix += (i ? " " : "") + t[i];
    throw UnsupportedPattern("unsupported sentence pattern (matched '" + prefix + "')",
                             prefix);
  }

  LogicalForm run() {
    if (lex.has_gname(t[0])) return gerund_is_adj();
    if (lex.has_name(t[0])) return name_sentence();
    if (is_det(t[0]) || t[0] == "former" || lex.has_adj(t[0]) || lex.has_noun(t[0]))
      return noun_phrase();
    throw NotFound(t[0], "token");
  }

  LogicalForm gerund_is_adj() {
    ok(1);
    if (t.size() != 3 || t[1] != "is") reject();
    ok(2);
    const GnameEntry& g = lex.gname(t[0]);
    const AdjEntry& ad = lex.adj(t[2]);
    ok(3);
    LogicalForm f;
    int a = f.add_var(QuantKind::ExistsUnique, g.category.substr(0, 1),
                      TypeTerm{g.category, Mode::Actual});
    f.body.push_back(Atom::noo(Term::variable(a), g.label));
    f.body.push_back(Atom::pred(ad.pred, {Term::variable(a)}, {ad.selects}));
    return f;
  }

  LogicalForm name_sentence() {
    ok(1);
    if (t.size() >= 2 && t[1] == "is") return copular();
    if (t.size() >= 2 && lex.has_verb(t[1])) return verb_clause();
    reject();
  }

  LogicalForm copular() {
    ok(2);
    if (t.size() == 3 && lex.has_name(t[2])) {
      // name is name: two named individuals and an identity between them
      LogicalForm f;
      int x = add_name_var(lex, f, t[0]);
      int y = add_name_var(lex, f, t[2]);
      f.body.push_back(Atom::is(Term::variable(x), Term::variable(y)));
      ok(3);
      return f;
    }
    if (t.size() == 3 && lex.has_adj(t[2])) {
      LogicalForm f;
      int x = add_name_var(lex, f, t[0]);
      const AdjEntry& ad = lex.adj(t[2]);
      f.body.push_back(Atom::pred(ad.pred, {Term::variable(x)}, {ad.selects}));
      ok(3);
      return f;
    }
    if (t.size() >= 4 && (t[2] == "a" || t[2] == "an")) return copular_indef();
    reject();
  }

  // name is a [adj]* (noun | role-noun)
  LogicalForm copular_indef() {
    ok(3);
    LogicalForm f;
    int x = add_name_var(lex, f, t[0]);
    const std::string& head = t.back();
    int y;
    if (lex.has_noun(head)) {
      const CategoryName& cat = lex.noun(head).category;
      y = f.add_var(QuantKind::Exists, f.unique_display(noun_display(o, cat)),
                    TypeTerm{cat, o.default_mode(cat)});
    } else if (lex.has_adj(head)) {
      const AdjEntry& hd = lex.adj(head);
      y = f.add_var(QuantKind::Exists, f.unique_display("x"),
                    TypeTerm{hd.selects.category, Mode::Actual});
      f.body.push_back(Atom::pred(hd.pred, {Term::variable(y)}, {hd.selects}));
    } else {
      throw NotFound(head, "token");
    }
    for (std::size_t i = 3; i + 1 < t.size(); ++i) {
      const AdjEntry& ad = lex.adj(t[i]);
      f.body.push_back(Atom::pred(ad.pred, {Term::variable(y)}, {ad.selects}));
      ok(i + 1);
    }
    f.body.push_back(Atom::is(Term::variable(x), Term::variable(y)));
    ok(t.size());
    return f;
  }

  // name verb det [adj]* noun [and=verb (it | it:display)]
  LogicalForm verb_clause() {
    ok(2);
    std::size_t conj = t.size();
    for (std::size_t i = 2; i < t.size(); ++i)
      if (t[i].starts_with("and=")) conj = i;
    if (conj < 4) reject();  // first clause needs at least det + noun

    const VerbEntry& v1 = lex.verb(t[1]);
    if (!is_det(t[2])) reject();
    ok(3);
    const std::string& nounTok = t[conj - 1];
    const NounEntry& n = lex.noun(nounTok);

    LogicalForm f;
    int x = add_name_var(lex, f, t[0]);
    int y = add_noun_var(o, f, t[2] == "the" ? QuantKind::ExistsUnique : QuantKind::Exists,
                         n.category);
    f.body.push_back(Atom::pred(v1.pred, {Term::variable(x), Term::variable(y)},
                                {v1.subj, v1.obj}));
    for (std::size_t i = 3; i + 1 < conj; ++i) {
      const AdjEntry& ad = lex.adj(t[i]);
      f.body.push_back(Atom::pred(ad.pred, {Term::variable(y)}, {ad.selects}));
      ok(i + 1);
    }
    ok(conj);

    if (conj < t.size()) {
      const VerbEntry& v2 = lex.verb(t[conj].substr(4));
      if (conj + 2 != t.size()) reject();
      const std::string& pron = t[conj + 1];
      int target;
      if (pron == "it") {
        target = y;
      } else if (pron.starts_with("it:")) {
        const Quantifier* q = f.find_display(pron.substr(3));
        if (!q) throw UnknownVariable(pron.substr(3));
        target = q->var;
      } else {
        reject();
      }
      f.body.push_back(Atom::pred(v2.pred, {Term::variable(x), Term::variable(target)},
                                  {v2.subj, v2.obj}));
      ok(t.size());
    }
    return f;
  }

  // [det] former role | [det] adj (and adj)* noun | [det] noun noun
  LogicalForm noun_phrase() {
    std::size_t i = is_det(t[0]) ? 1 : 0;
    ok(i);
    if (i >= t.size()) reject();
    QuantKind kind = (i == 1 && t[0] == "the") ? QuantKind::ExistsUnique : QuantKind::Exists;

    if (t[i] == "former") {
      ok(i + 1);
      if (i + 1 < t.size() && t[i + 1] == "former")
        throw UnsupportedFormer("stacked 'former' has no reading");
      if (t.size() != i + 2) reject();
      return build_former_p(o, lex, t[i + 1], kind);
    }

    if (lex.has_adj(t[i])) {
      LogicalForm f;
      std::vector<const AdjEntry*> mods{&lex.adj(t[i])};
      std::size_t j = i + 1;
      ok(j);
      while (j + 1 < t.size() && t[j] == "and") {
        mods.push_back(&lex.adj(t[j + 1]));
        j += 2;
        ok(j);
      }
      if (j + 1 != t.size()) reject();
      const NounEntry& n = lex.noun(t[j]);
      int x = f.add_var(kind, f.unique_display(noun_display(o, n.category)),
                        TypeTerm{n.category, o.default_mode(n.category)});
      for (const AdjEntry* ad : mods)
        f.body.push_back(Atom::pred(ad->pred, {Term::variable(x)}, {ad->selects}));
      f.body.push_back(Atom::pred("P", {Term::variable(x)}));
      ok(t.size());
      return f;
    }

    if (lex.has_noun(t[i])) {
      ok(i + 1);
      if (t.size() != i + 2 || !lex.has_noun(t[i + 1])) reject();
      ok(t.size());
      return build_np_compound(o, lex, t[i + 1], t[i], kind);
    }
    reject();
  }
};

}  // namespace detail

// Parses, builds the pattern's pre-unification form, unifies, and packages
// the result. Most sentences yield exactly one reading.
inline std::vector<Reading> analyze(const Ontology& o, const Lexicon& lex,
                                    std::string_view text,
                                    ComposeMode mode = ComposeMode::Plain) {
  std::vector<std::string> toks = tokenize(text);
  if (toks.empty()) throw UnsupportedPattern("empty sentence");
  detail::SentenceBuilder b{o, lex, toks};
  LogicalForm pre = b.run();
  if (mode == ComposeMode::Reified) pre = detail::reify_pre(o, lex, std::move(pre));
  UnifyResult ur = unify_all(o, std::move(pre));
  std::vector<Reading> out;
  out.push_back(Reading{std::move(ur.form), mode, std::move(ur.warnings),
                        std::move(ur.trace)});
  return out;
}

}  // namespace ontosem
