#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ontosem;
using testutil::ref_lexicon;
using testutil::ref_ontology;

namespace {

Reading read(const std::string& text, ComposeMode mode = ComposeMode::Plain) {
  auto rs = analyze(ref_ontology(), ref_lexicon(), text, mode);
  REQUIRE(rs.size() == 1);
  return rs.front();
}

std::string run(const std::string& text, ComposeMode mode = ComposeMode::Plain) {
  return serialize(read(text, mode).lf);
}

}  // namespace

TEST_CASE("copular: name is name") {
  CHECK(run("william-h-bonney is billy-the-kid") ==
        "(E! whb:entity)(Noo(whb,\"william-h-bonney\") & Noo(whb,\"billy-the-kid\"))");
}

TEST_CASE("copular: a name is itself") {
  CHECK(run("william-h-bonney is william-h-bonney") ==
        "(E! whb:entity)(Noo(whb,\"william-h-bonney\"))");
}

TEST_CASE("copular: name is adjective narrows the name's category") {
  CHECK(run("sheba is hungry") ==
        "(E! sheba:animal)(Noo(sheba,\"sheba\") & Hungry(sheba))");
}

TEST_CASE("copular: indefinite predicate nominal merges into the name") {
  CHECK(run("william-h-bonney is a thief") ==
        "(E! whb:human)(Noo(whb,\"william-h-bonney\") & Thief(whb))");
  CHECK(run("sheba is a young artist") ==
        "(E! sheba:human)(Noo(sheba,\"sheba\") & Artist(sheba) & Young(sheba))");
}

TEST_CASE("verb clauses resolve the object against the verb's slot") {
  CHECK(run("john attended the seminar") ==
        "(E! john:human)(E! e:seminar)(Noo(john,\"john\") & Attended(john,e))");
  CHECK(run("john found a large elephant") ==
        "(E! john:human)(E e:elephant)(Noo(john,\"john\") & Found(john,e) & Large(e))");
}

TEST_CASE("intensional verbs leave their object abstract") {
  CHECK(run("john cancelled the seminar") ==
        "(E! john:human)(E!a e:seminar)(Noo(john,\"john\") & Cancelled(john,e))");
  CHECK(run("john planned the trip") ==
        "(E! john:human)(E!a e:trip)(Noo(john,\"john\") & Planned(john,e))");
}

TEST_CASE("an actual-mode modifier brings the object down in-sentence") {
  CHECK(run("john planned the lengthy trip") ==
        "(E! john:human)(E! e:trip)(Noo(john,\"john\") & Planned(john,e) & Lengthy(e))");
}

TEST_CASE("painting an elephant depicts it rather than requiring it") {
  auto r = read("john painted a large elephant");
  CHECK(serialize(r.lf) ==
        "(E! john:human)(Ea e:elephant)(E p:painting)"
        "(Noo(john,\"john\") & Painted(john,p) & PaintingOf(p,e) & Large(e))");
  // the bridge shows up in the trace
  bool bridged = false;
  for (const auto& s : r.trace)
    if (s.rule == "bridge PaintingOf") bridged = true;
  CHECK(bridged);
}

TEST_CASE("reading a book touches its content aspect") {
  CHECK(run("john read a book") ==
        "(E! john:human)(E b:book)(E c:content)"
        "(Noo(john,\"john\") & Read(john,c) & ContentOf(c,b))");
  CHECK(run("john burned a book") ==
        "(E! john:human)(E b:book)(Noo(john,\"john\") & Burn(john,b))");
}

TEST_CASE("a conjoined clause can use both aspects of one noun") {
  CHECK(run("john read a book and=burned it") ==
        "(E! john:human)(E b:book)(E c:content)"
        "(Noo(john,\"john\") & Read(john,c) & ContentOf(c,b) & Burn(john,b))");
}

TEST_CASE("the pronoun can name its antecedent explicitly") {
  CHECK(run("john read a book and=burned it:b") ==
        run("john read a book and=burned it"));
  CHECK_THROWS_AS(run("john read a book and=burned it:zz"), UnknownVariable);
}

TEST_CASE("names of abstract objects quantify over their category") {
  CHECK(run("running is fun") == "(E! a:activity)(Noo(a,\"running\") & Fun(a))");
  CHECK(run("nobility is desirable") ==
        "(E! a:attribute)(Noo(a,\"nobility\") & Desirable(a))");
  CHECK(run("aging is inevitable") ==
        "(E! p:process)(Noo(p,\"aging\") & Inevitable(p))");
}

TEST_CASE("noun-noun compounds bridge through a relation") {
  CHECK(run("a book review") == "(E b:book)(E e:review)(ReviewOf(e,b) & P(e))");
  CHECK(run("the book review") == "(E b:book)(E! e:review)(ReviewOf(e,b) & P(e))");
}

TEST_CASE("a proposed book need not exist") {
  CHECK(run("a book proposal") ==
        "(Ea b:book)(E e:proposal)(ProposalFor(e,b) & P(e))");
}

TEST_CASE("substance compounds quantify the artifact first") {
  CHECK(run("brick house") == "(E h:house)(E b:brick)(MadeOf(h,b) & P(h))");
  CHECK(run("cheese cake") == "(E c:cake)(E c2:cheese)(MadeOf(c,c2) & P(c))");
  CHECK(run("orange juice") == "(E j:juice)(E o:orange)(MadeOf(j,o) & P(j))");
}

TEST_CASE("a compound with no connecting relation is anomalous") {
  auto r = read("elephant seminar");
  CHECK(r.lf.status == FormStatus::Anomalous);
  REQUIRE(r.lf.anomaly.has_value());
  CHECK(r.lf.anomaly->first == "elephant");
  CHECK(r.lf.anomaly->second == "seminar");
}

TEST_CASE("adjective-noun phrases check selectional fit") {
  CHECK(run("an artificial flower") == "(E f:flower)(Artificial(f) & P(f))");
  CHECK(run("an important and imminent event") ==
        "(Ea e:event)(Important(e) & Imminent(e) & P(e))");
}

TEST_CASE("a selectional clash yields a bottom-typed variable") {
  auto r = read("an artificial car");
  CHECK(r.lf.status == FormStatus::Anomalous);
  CHECK(serialize(r.lf) == "(E c:\u22a5)(Artificial(c) & P(c))");
  REQUIRE(r.lf.anomaly.has_value());
  CHECK(r.lf.anomaly->first == "naturalObj");
  CHECK(r.lf.anomaly->second == "car");
}

TEST_CASE("former requires a time-indexable role") {
  CHECK(run("a former president") ==
        "(E x:human)(E t:time)(t < t_u & President(x,t) & !President(x,now))");
  CHECK(run("the former senator") ==
        "(E! x:human)(E t:time)(t < t_u & Senator(x,t) & !Senator(x,now))");
  CHECK_THROWS_AS(run("a former father"), UnsupportedFormer);
  CHECK_THROWS_AS(run("a former doctor"), UnsupportedFormer);
  CHECK_THROWS_AS(run("a former former president"), UnsupportedFormer);
}

TEST_CASE("reified mode quantifies the activity itself") {
  CHECK(run("john planned the trip", ComposeMode::Reified) ==
        "(E! john:human)(E! a:activity)(E!a e:trip)"
        "(Noo(john,\"john\") & Planning(a) & Subject(a,john) & Object(a,e))");
}

TEST_CASE("reified mode needs exactly one verb") {
  CHECK_THROWS_AS(run("sheba is hungry", ComposeMode::Reified), UnsupportedPattern);
  CHECK_THROWS_AS(run("john read a book and=burned it", ComposeMode::Reified),
                  UnsupportedPattern);
}

TEST_CASE("reified mode needs an activity form on the verb") {
  const Ontology& o = ref_ontology();
  auto lex = Lexicon::load(
      "name john\nnoun book book\nverb imagined Imagined human entity^a\n", o);
  CHECK_THROWS_WITH(analyze(o, lex, "john imagined the book", ComposeMode::Reified),
                    Catch::Matchers::ContainsSubstring("activity form"));
}

TEST_CASE("a follow-up adjective after reification is ambiguous between "
          "the activity and the object") {
  auto reified = read("john planned the trip", ComposeMode::Reified);
  auto readings = reify_followup(ref_ontology(), ref_lexicon(), reified, "exhausting");
  REQUIRE(readings.size() == 2);
  CHECK(serialize(readings[0].lf) ==
        "(E! john:human)(E! a:activity)(E!a e:trip)"
        "(Noo(john,\"john\") & Planning(a) & Subject(a,john) & Object(a,e)"
        " & Exhausting(a))");
  CHECK(serialize(readings[1].lf) ==
        "(E! john:human)(E! a:activity)(E! e:trip)"
        "(Noo(john,\"john\") & Planning(a) & Subject(a,john) & Object(a,e)"
        " & Exhausting(e))");
}

TEST_CASE("unparseable inputs fail loudly") {
  CHECK_THROWS_AS(run(""), UnsupportedPattern);
  CHECK_THROWS_AS(run("   "), UnsupportedPattern);
  CHECK_THROWS_AS(run("xyzzy walks"), NotFound);
  CHECK_THROWS_AS(run("john attended seminar"), UnsupportedPattern);
  CHECK_THROWS_AS(run("john wug the seminar"), UnsupportedPattern);
  CHECK_THROWS_AS(run("seminar"), UnsupportedPattern);
}

TEST_CASE("rejections name the prefix that did parse") {
  try {
    ref_lexicon();
    run("john attended seminar");
    FAIL("expected UnsupportedPattern");
  } catch (const UnsupportedPattern& e) {
    CHECK(e.matched_prefix.find("john") != std::string::npos);
  }
}

TEST_CASE("readings carry their mode and an empty note list by default") {
  auto r = read("john attended the seminar");
  CHECK(r.mode == ComposeMode::Plain);
  CHECK(r.notes.empty());
  CHECK_FALSE(r.trace.empty());
}
