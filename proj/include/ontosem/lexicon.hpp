#pragma once
// The lexicon maps surface tokens to their semantic contribution: proper
// names, nouns naming categories, adjectives and predicate nouns with a
// selectional type, two-place verbs with typed subject/object slots, and
// gerundive names of abstract individuals (running, nobility, aging).
//
// File format, one entry per line, '#' comments:
//
//   name <surface> [<category>]                    default category: entity
//   noun <surface> <category>
//   adj <surface> <Pred> <category>[^a] [temporal-role]
//   verb <surface> <Pred> <subj-cat>[^a] <obj-cat>[^a] [<GerundPred>]
//   gname <surface> <category>
//
// `temporal-role` marks predicate nouns (president, coach) that accept a
// "former" reading with a time parameter. A verb's trailing <GerundPred> is
// the activity predicate its reified form uses (Planned -> Planning).

#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "ontosem/errors.hpp"
#include "ontosem/ontology.hpp"

namespace ontosem {

struct NameEntry {
  std::string label;
  CategoryName category;  // entity unless the entry overrides it
};

struct NounEntry {
  CategoryName category;
};

struct AdjEntry {
  std::string pred;
  TypeTerm selects;
  bool temporal_role = false;
};

struct VerbEntry {
  std::string pred;
  TypeTerm subj;
  TypeTerm obj;
  std::string gerund;  // empty when the verb has no reified form
};

struct GnameEntry {
  std::string label;
  CategoryName category;
};

class Lexicon {
 public:
  static Lexicon load(std::string_view text, const Ontology& o);

  bool has_name(const std::string& s) const { return names_.count(s) != 0; }
  bool has_noun(const std::string& s) const { return nouns_.count(s) != 0; }
  bool has_adj(const std::string& s) const { return adjs_.count(s) != 0; }
  bool has_verb(const std::string& s) const { return verbs_.count(s) != 0; }
  bool has_gname(const std::string& s) const { return gnames_.count(s) != 0; }

  const NameEntry& name(const std::string& s) const { return get(names_, s, "name"); }
  const NounEntry& noun(const std::string& s) const { return get(nouns_, s, "noun"); }
  const AdjEntry& adj(const std::string& s) const { return get(adjs_, s, "adjective"); }
  const VerbEntry& verb(const std::string& s) const { return get(verbs_, s, "verb"); }
  const GnameEntry& gname(const std::string& s) const {
    return get(gnames_, s, "gerund name");
  }

  // surface -> entry; reification scans this to recognize verb atoms by
  // their predicate names
  const std::map<std::string, VerbEntry>& verbs() const { return verbs_; }

  std::size_t size() const {
    return names_.size() + nouns_.size() + adjs_.size() + verbs_.size() +
           gnames_.size();
  }

 private:
  template <class M>
  static const typename M::mapped_type& get(const M& m, const std::string& s,
                                            const char* what) {
    auto it = m.find(s);
    if (it == m.end()) throw NotFound(s, what);
    return it->second;
  }

  std::map<std::string, NameEntry> names_;
  std::map<std::string, NounEntry> nouns_;
  std::map<std::string, AdjEntry> adjs_;
  std::map<std::string, VerbEntry> verbs_;
  std::map<std::string, GnameEntry> gnames_;
};

inline Lexicon Lexicon::load(std::string_view text, const Ontology& o) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& why) -> SyntaxError {
    return SyntaxError("line " + std::to_string(lineno) + ": " + why, 0, lineno);
  };
  auto dup = [&](const std::string& surface, const char* pos) -> DuplicateEntry {
    return DuplicateEntry("line " + std::to_string(lineno) + ": duplicate " +
                          std::string(pos) + " entry '" + surface + "'");
  };
  auto type_of = [&](const std::string& tok) {
    TypeTerm t = detail::parse_type_token(tok);
    o.require_category(t.category);
    return t;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    const std::string& kind = toks[0];

    if (kind == "name") {
      if (toks.size() < 2 || toks.size() > 3) throw bad("name expects: name <surface> [<category>]");
      CategoryName cat = toks.size() == 3 ? toks[2] : std::string(Ontology::kTop);
      o.require_category(cat);
      if (!lex.names_.emplace(toks[1], NameEntry{toks[1], cat}).second)
        throw dup(toks[1], "name");
    } else if (kind == "noun") {
      if (toks.size() != 3) throw bad("noun expects: noun <surface> <category>");
      o.require_category(toks[2]);
      if (!lex.nouns_.emplace(toks[1], NounEntry{toks[2]}).second)
        throw dup(toks[1], "noun");
    } else if (kind == "adj") {
      if (toks.size() < 4 || toks.size() > 5)
        throw bad("adj expects: adj <surface> <Pred> <category>[^a] [temporal-role]");
      AdjEntry e{toks[2], type_of(toks[3]), false};
      if (toks.size() == 5) {
        if (toks[4] != "temporal-role") throw bad("unknown adj flag '" + toks[4] + "'");
        e.temporal_role = true;
      }
      if (!lex.adjs_.emplace(toks[1], std::move(e)).second) throw dup(toks[1], "adj");
    } else if (kind == "verb") {
      if (toks.size() < 5 || toks.size() > 6)
        throw bad("verb expects: verb <surface> <Pred> <subj-cat>[^a] <obj-cat>[^a] [<GerundPred>]");
      VerbEntry e{toks[2], type_of(toks[3]), type_of(toks[4]),
                  toks.size() == 6 ? toks[5] : std::string()};
      if (!lex.verbs_.emplace(toks[1], std::move(e)).second) throw dup(toks[1], "verb");
    } else if (kind == "gname") {
      if (toks.size() != 3) throw bad("gname expects: gname <surface> <category>");
      o.require_category(toks[2]);
      if (!lex.gnames_.emplace(toks[1], GnameEntry{toks[1], toks[2]}).second)
        throw dup(toks[1], "gname");
    } else {
      throw bad("unknown entry kind '" + kind + "'");
    }
  }
  return lex;
}

}  // namespace ontosem
