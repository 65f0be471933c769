#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ontosem;
using testutil::ref_lexicon;
using testutil::ref_ontology;

TEST_CASE("reference lexicon loads") {
  const Lexicon& lex = ref_lexicon();
  CHECK(lex.size() > 40);
  CHECK(lex.has_name("john"));
  CHECK(lex.has_noun("seminar"));
  CHECK(lex.has_adj("hungry"));
  CHECK(lex.has_verb("planned"));
  CHECK(lex.has_gname("running"));
}

TEST_CASE("proper names default to the top category") {
  const Lexicon& lex = ref_lexicon();
  CHECK(lex.name("john").category == "entity");
  CHECK(lex.name("william-h-bonney").label == "william-h-bonney");
}

TEST_CASE("adjectives carry selectional types") {
  const Lexicon& lex = ref_lexicon();
  const auto& hungry = lex.adj("hungry");
  CHECK(hungry.pred == "Hungry");
  CHECK(hungry.selects == actual("animal"));
  CHECK_FALSE(hungry.temporal_role);

  CHECK(lex.adj("important").selects == abstract("entity"));
  CHECK(lex.adj("president").temporal_role);
  CHECK_FALSE(lex.adj("father").temporal_role);
}

TEST_CASE("verbs carry slot types and an optional activity predicate") {
  const Lexicon& lex = ref_lexicon();
  const auto& planned = lex.verb("planned");
  CHECK(planned.pred == "Planned");
  CHECK(planned.subj == actual("human"));
  CHECK(planned.obj == abstract("event"));
  CHECK(planned.gerund == "Planning");

  CHECK(lex.verb("attended").obj == actual("event"));
  CHECK(lex.verbs().count("burned") == 1);
}

TEST_CASE("gerund names bind abstract categories") {
  const Lexicon& lex = ref_lexicon();
  CHECK(lex.gname("running").category == "activity");
  CHECK(lex.gname("aging").category == "process");
}

TEST_CASE("lookups report what kind of entry is missing") {
  const Lexicon& lex = ref_lexicon();
  CHECK_THROWS_AS(lex.noun("wug"), NotFound);
  CHECK_THROWS_WITH(lex.adj("wug"),
                    Catch::Matchers::ContainsSubstring("adjective"));
  CHECK_THROWS_WITH(lex.verb("wug"), Catch::Matchers::ContainsSubstring("verb"));
}

TEST_CASE("loader validates entries against the ontology") {
  const Ontology& o = ref_ontology();
  SECTION("unknown category") {
    CHECK_THROWS_AS(Lexicon::load("noun wug wugness\n", o), UnknownCategory);
  }
  SECTION("duplicate surface within a kind") {
    CHECK_THROWS_AS(Lexicon::load("noun car car\nnoun car car\n", o),
                    DuplicateEntry);
  }
  SECTION("same surface across kinds is fine") {
    auto lex = Lexicon::load("noun book book\nadj book Bookish human\n", o);
    CHECK(lex.has_noun("book"));
    CHECK(lex.has_adj("book"));
  }
  SECTION("bad directive reports its line") {
    try {
      Lexicon::load("noun car car\nblargh\n", o);
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line == 2);
    }
  }
  SECTION("wrong arity") {
    CHECK_THROWS_AS(Lexicon::load("verb ran\n", o), SyntaxError);
  }
  SECTION("unknown adj flag") {
    CHECK_THROWS_AS(Lexicon::load("adj tall Tall human sideways\n", o),
                    SyntaxError);
  }
}

TEST_CASE("slot modes parse in lexicon entries") {
  const Ontology& o = ref_ontology();
  auto lex = Lexicon::load("verb imagined Imagined human entity^a\n", o);
  CHECK(lex.verb("imagined").obj == abstract("entity"));
  CHECK(lex.verb("imagined").gerund.empty());
}
