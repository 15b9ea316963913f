#include <algorithm>
#include <set>

#include "doctest.h"
#include "spacetext/error.hpp"
#include "spacetext/kgraph.hpp"
#include "support.hpp"

using namespace spacetext;

namespace {

const char* kSmallKg =
    "concept\tk1\tEuropean Space Agency|ESA\torganization\tprogrammatics\tagency\n"
    "concept\tk2\tKourou\tplace\tlaunch\tspaceport\n"
    "concept\tk3\tAriane 5\tnone\tlaunch\tlauncher\n"
    "concept\tk4\tsatellite\tnone\tspacecraft\t\n"
    "concept\tk5\tpayload\tnone\tspacecraft\tinstruments\n"
    "concept\tk6\tpayload\tnone\tlogistics\tgoods\n"
    "concept\tk7\ttruck\tnone\tlogistics\t\n"
    "concept\tk8\tcargo\tnone\tlogistics\t\n"
    "concept\tk9\tsea surface temperature\tnone\tearth_observation\t\n"
    "concept\tk10\ttemperature\tnone\tphysics\t\n"
    "concept\tk11\tocean\tnone\tearth_observation\t\n"
    "rel\tsynonym\tk7\tk8\n"
    "rel\thypernym\tk4\tk5\n";

std::set<std::string> concept_ids(const std::vector<ConceptMention>& ms) {
  std::set<std::string> out;
  for (const auto& m : ms) out.insert(m.concept_id);
  return out;
}

}  // namespace

TEST_CASE("bundled graph loads cleanly") {
  Lexicon lex;
  auto kg = load_graph(testsupport::fixture("minikg.tsv"), lex);
  CHECK(kg.size() >= 500);
  for (const auto& [id, c] : kg.concepts()) {
    for (const auto& r : c.relations) {
      const Concept* t = kg.find(r.target);
      REQUIRE(t != nullptr);
      if (r.kind == RelationKind::related) continue;  // directed
      RelationKind inverse = r.kind == RelationKind::hypernym  ? RelationKind::hyponym
                             : r.kind == RelationKind::hyponym ? RelationKind::hypernym
                                                               : r.kind;
      CHECK(std::count(t->relations.begin(), t->relations.end(), Relation{inverse, id}) == 1);
    }
  }
}

TEST_CASE("graph file errors") {
  Lexicon lex;
  CHECK(parse_graph("", lex).size() == 0);
  try {
    parse_graph("concept\ta\tfoo\tnone\td\t\nrel\trelated\ta\tmissing\n", lex);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    std::string msg = e.what();
    CHECK(msg.find("missing") != std::string::npos);
    CHECK(msg.find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_graph("concept\ta\tfoo\tnone\td\t\nconcept\ta\tbar\tnone\td\t\n", lex), DataError);
  CHECK_THROWS_AS(parse_graph("concept\ta\t\tnone\td\t\n", lex), DataError);
  CHECK_THROWS_AS(load_graph("/nonexistent/kg.tsv", lex), IoError);
}

TEST_CASE("relations are repaired in both directions") {
  Lexicon lex;
  auto kg = parse_graph(kSmallKg, lex);
  const auto& truck = kg.find("k7")->relations;
  const auto& cargo = kg.find("k8")->relations;
  CHECK(std::count(truck.begin(), truck.end(), Relation{RelationKind::synonym, "k8"}) == 1);
  CHECK(std::count(cargo.begin(), cargo.end(), Relation{RelationKind::synonym, "k7"}) == 1);
  const auto& payload = kg.find("k5")->relations;
  CHECK(std::count(payload.begin(), payload.end(), Relation{RelationKind::hyponym, "k4"}) == 1);
  // Format round trip keeps the graph.
  auto again = parse_graph(format_graph(kg), lex);
  CHECK(again.concepts() == kg.concepts());
}

TEST_CASE("phrases win over their parts") {
  Lexicon lex;
  auto kg = parse_graph(kSmallKg, lex);
  std::string text = "Sea surface temperature over the ocean.";
  auto ms = annotate(text, kg, lex);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0].concept_id == "k9");
  CHECK(ms[0].char_start == 0);
  CHECK(ms[0].char_end == 23);
  CHECK(ms[1].concept_id == "k11");
  CHECK(annotate("plain words only", kg, lex).empty());
}

TEST_CASE("domain vote resolves ambiguous lemmas") {
  Lexicon lex;
  auto kg = parse_graph(kSmallKg, lex);
  auto space = annotate("The satellite carries a payload. Each satellite is tested.", kg, lex);
  auto it = std::find_if(space.begin(), space.end(), [](auto& m) { return m.matched_lemma == "payload"; });
  REQUIRE(it != space.end());
  CHECK(it->concept_id == "k5");
  CHECK(it->ambiguous_alternatives == std::vector<std::string>{"k6"});

  auto goods = annotate("The truck moved cargo and the payload.", kg, lex);
  it = std::find_if(goods.begin(), goods.end(), [](auto& m) { return m.matched_lemma == "payload"; });
  REQUIRE(it != goods.end());
  CHECK(it->concept_id == "k6");

  // No votes: lowest id.
  auto none = annotate("A payload.", kg, lex);
  REQUIRE(none.size() == 1);
  CHECK(none[0].concept_id == "k5");
}

TEST_CASE("bundled graph disambiguates payload by context") {
  Lexicon lex;
  auto kg = load_graph(testsupport::fixture("minikg.tsv"), lex);
  auto ms = annotate("The solar array and battery power the payload and the high gain antenna.", kg, lex);
  auto it = std::find_if(ms.begin(), ms.end(), [](auto& m) { return m.matched_lemma == "payload"; });
  REQUIRE(it != ms.end());
  CHECK(kg.find(it->concept_id)->domains == std::vector<std::string>{"spacecraft"});
}

TEST_CASE("metadata answer key") {
  Lexicon lex;
  auto kg = parse_graph(kSmallKg, lex);
  Document d{"d1", Source::study, "Flight",
             "ESA placed the satellite at Kourou. The payload flew on Ariane 5 with a second satellite.",
             {}, {}, {}};
  DocumentCollection c;
  c.add(d);
  auto stats = concept_stats(c, kg, lex);
  auto ms = annotate(d, kg, lex);
  CHECK(concept_ids(ms) == std::set<std::string>{"k1", "k2", "k3", "k4", "k5"});
  auto md = extract_metadata(d, ms, kg, lex, stats);

  CHECK(md.organizations == RankedList{{"k1", "European Space Agency", 1.0}});
  CHECK(md.places == RankedList{{"k2", "Kourou", 1.0}});
  CHECK(md.people.empty());
  CHECK(md.domains == RankedList{{"spacecraft", "spacecraft", 3.0}, {"launch", "launch", 2.0},
                                 {"programmatics", "programmatics", 1.0}});
  // One document, so every concept idf is ln(2/2) + 1 = 1.
  CHECK(md.main_syncons == RankedList{{"k4", "satellite", 2.0}, {"k1", "European Space Agency", 1.0},
                                      {"k2", "Kourou", 1.0}, {"k3", "Ariane 5", 1.0}, {"k5", "payload", 1.0}});
  CHECK(md.known_concepts.size() == 5);
  // Sentence scores: ESA + satellite(2) + Kourou = 4, payload + Ariane 5 + satellite(2) = 4.
  REQUIRE(md.main_sentences.size() == 2);
  CHECK(md.main_sentences[0].score == doctest::Approx(4.0));
  CHECK(md.main_sentences[1].score == doctest::Approx(4.0));
  for (const auto& u : md.unknown_concepts) {
    CHECK(kg.lookup(u.key) == nullptr);
  }
  auto unknown_has = [&](const std::string& k) {
    return std::any_of(md.unknown_concepts.begin(), md.unknown_concepts.end(), [&](auto& r) { return r.key == k; });
  };
  CHECK(unknown_has("flight"));
  CHECK_FALSE(unknown_has("satellite"));
}

TEST_CASE("nested lemmas stay known") {
  Lexicon lex;
  auto kg = parse_graph(kSmallKg, lex);
  Document d{"d", Source::paper, "", "Sea surface temperature rose.", {}, {}, {}};
  DocumentCollection c;
  c.add(d);
  auto ms = annotate(d, kg, lex);
  REQUIRE(ms.size() == 1);
  auto md = extract_metadata(d, ms, kg, lex, concept_stats(c, kg, lex));
  CHECK(md.known_concepts == RankedList{{"k10", "temperature", 1.0}, {"k9", "sea surface temperature", 1.0}});
  CHECK(md.main_syncons.size() == 1);
}

TEST_CASE("empty document gives empty metadata") {
  Lexicon lex;
  auto kg = parse_graph(kSmallKg, lex);
  Document d{"e", Source::idea, "", "", {}, {}, {}};
  auto md = extract_metadata(d, annotate(d, kg, lex), kg, lex, ConceptStats{});
  CHECK(md == DocumentMetadata{});
}

TEST_CASE("world health organization is an organization") {
  Lexicon lex;
  auto kg = load_graph(testsupport::fixture("minikg.tsv"), lex);
  Document d{"d", Source::paper, "", "The World Health Organization issued guidance.", {}, {}, {}};
  DocumentCollection c;
  c.add(d);
  auto md = extract_metadata(d, annotate(d, kg, lex), kg, lex, concept_stats(c, kg, lex));
  REQUIRE(md.organizations.size() == 1);
  CHECK(md.organizations[0].label == "World Health Organization");
}

TEST_CASE("adding a phrase concept creates mentions") {
  Lexicon lex;
  auto kg = parse_graph("concept\tx1\tsea\tnone\tearth\t\n", lex);
  std::string text = "Mean sea level rose.";
  auto before = annotate(text, kg, lex);
  CHECK(before.size() == 1);
  Concept msl{"x2", {"mean sea level"}, "", {"earth"}, EntityType::none, {}};
  auto kg2 = add_concepts(kg, {msl}, lex);
  CHECK(kg.size() == 1);
  auto after = annotate(text, kg2, lex);
  REQUIRE(after.size() == 1);
  CHECK(after[0].concept_id == "x2");
  // Re-adding identical content is fine; different content under the same id is not.
  CHECK_NOTHROW(add_concepts(kg2, {msl}, lex));
  Concept clash{"x2", {"other"}, "", {}, EntityType::none, {}};
  CHECK_THROWS_AS(add_concepts(kg2, {clash}, lex), DataError);
}

TEST_CASE("added synonym is repaired") {
  Lexicon lex;
  auto kg = parse_graph(kSmallKg, lex);
  Concept lorry{"k20", {"lorry"}, "", {"logistics"}, EntityType::none, {{RelationKind::synonym, "k7"}}};
  auto kg2 = add_concepts(kg, {lorry}, lex);
  const auto& truck = kg2.find("k7")->relations;
  CHECK(std::count(truck.begin(), truck.end(), Relation{RelationKind::synonym, "k20"}) == 1);
}
