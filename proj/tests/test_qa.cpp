#include <cmath>

#include "doctest.h"
#include "spacetext/corpus.hpp"
#include "spacetext/error.hpp"
#include "spacetext/qa.hpp"
#include "support.hpp"

using namespace spacetext;

namespace {

struct Fixture {
  Lexicon lex;
  Index index;
  Fixture() {
    index = Index::build({text_unit("r1#p0", "r1", "The rocket is tall. The rocket will carry a small probe.", lex),
                          text_unit("r1#p1", "r1", "Ground stations track the probe from Kourou.", lex),
                          text_unit("r2#p0", "r2", "The lander carries a drill to sample regolith.", lex)});
  }
};

// Returns fixed spans for every passage.
class FixedReader : public Reader {
 public:
  explicit FixedReader(std::vector<double> scores) : scores_(std::move(scores)) {}
  std::vector<AnswerSpan> read(std::string_view, const PassageRef& p) const override {
    std::vector<AnswerSpan> out;
    for (std::size_t i = 0; i < scores_.size(); ++i) {
      AnswerSpan s;
      s.text = p.text.substr(0, i + 1);
      s.passage_id = p.id;
      s.doc_id = p.doc_id;
      s.char_end = i + 1;
      s.score = scores_[i];
      out.push_back(s);
    }
    return out;
  }

 private:
  std::vector<double> scores_;
};

double squash(double raw) { return 1.0 / (1.0 + std::exp(-2.0 * std::log(0.85 / 0.15) * (raw - 0.5))); }

}  // namespace

TEST_CASE("squash calibration points") {
  Lexicon lex;
  LexicalReader reader(lex, [](const std::string&) { return 1.0; });
  CHECK(reader.squash(1.0) == doctest::Approx(0.85).epsilon(1e-6));
  CHECK(reader.squash(0.5) == doctest::Approx(0.5));
}

TEST_CASE("reader scoring trace on two sentences") {
  Lexicon lex;
  LexicalReader reader(lex, [](const std::string&) { return 1.0; });
  PassageRef p{"x#p0", "x", "The rocket is tall. The rocket will carry a small probe."};
  // Question terms rocket and carry, unit idf: sentence one covers 1/2,
  // sentence two covers 2/2 and is chosen.
  auto spans = reader.read("What does the rocket carry?", p);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].text == "small probe");
  CHECK(spans[0].score == doctest::Approx(squash(1.0)).epsilon(1e-12));
  CHECK(p.text.substr(spans[0].char_start, spans[0].char_end - spans[0].char_start) == spans[0].text);
}

TEST_CASE("typed spans get the bonus") {
  Lexicon lex;
  LexicalReader reader(lex, [](const std::string&) { return 1.0; });
  PassageRef p{"x#p0", "x", "The probe launched from Kourou in 2004. It was a long journey."};
  auto spans = reader.read("When did the probe launch?", p);
  REQUIRE(!spans.empty());
  CHECK(spans[0].text.find("2004") != std::string::npos);
  CHECK(spans[0].score == doctest::Approx(squash(1.25)).epsilon(1e-12));
}

TEST_CASE("reader example and empty cases") {
  Lexicon lex;
  LexicalReader reader(lex, [](const std::string&) { return 1.0; });
  PassageRef p{"a#p1", "a", "ATHENA will be launched on Ariane 5. The transfer to orbit takes 90 days."};
  auto spans = reader.read("Which launcher will Athena use?", p);
  REQUIRE(!spans.empty());
  CHECK(spans[0].text == "Ariane 5");
  CHECK(reader.read("Which launcher will Athena use?", {"e", "e", ""}).empty());
  CHECK(reader.read("Which launcher will Athena use?", {"e", "e", "Soil moisture maps."}).empty());
}

TEST_CASE("retriever scope") {
  Fixture f;
  IndexRetriever r(f.index, f.lex);
  auto all = r.retrieve("probe", 10, std::nullopt);
  CHECK(all.size() == 2);
  auto scoped = r.retrieve("probe regolith", 10, std::string("r2"));
  REQUIRE(scoped.size() == 1);
  CHECK(scoped[0].unit_id == "r2#p0");
  CHECK_THROWS_AS(r.retrieve("probe", 10, std::string("nope")), NotFound);
  CHECK(r.passage("r1#p1").doc_id == "r1");
  CHECK_THROWS_AS(r.passage("zz"), NotFound);
}

TEST_CASE("gating partitions by threshold") {
  Fixture f;
  IndexRetriever r(f.index, f.lex);
  FixedReader low({0.3, 0.2});
  auto res = QAPipeline(r, low).answer("probe", 10, 0.5);
  CHECK(res.primary_answers.empty());
  CHECK(!res.low_confidence_answers.empty());
  CHECK_FALSE(res.no_answer);

  FixedReader mixed({0.9, 0.4});
  auto res2 = QAPipeline(r, mixed).answer("probe", 10, 0.5);
  for (const auto& a : res2.primary_answers) CHECK(a.score >= 0.5);
  for (const auto& a : res2.low_confidence_answers) CHECK(a.score < 0.5);
  for (std::size_t i = 1; i < res2.primary_answers.size(); ++i)
    CHECK(res2.primary_answers[i - 1].score >= res2.primary_answers[i].score);

  FixedReader none({});
  auto res3 = QAPipeline(r, none).answer("probe", 10, 0.5);
  CHECK(res3.no_answer);
}

TEST_CASE("identical spans keep the max score") {
  Fixture f;
  class Same : public Reader {
   public:
    std::vector<AnswerSpan> read(std::string_view, const PassageRef& p) const override {
      AnswerSpan s{"probe", p.id, p.doc_id, 0, 5, p.id == "r1#p1" ? 0.9 : 0.6};
      return {s};
    }
  } reader;
  IndexRetriever r(f.index, f.lex);
  auto res = QAPipeline(r, reader).answer("probe", 10, 0.5);
  REQUIRE(res.primary_answers.size() == 1);
  CHECK(res.primary_answers[0].score == 0.9);
  CHECK(res.primary_answers[0].passage_id == "r1#p1");
}

TEST_CASE("scoped answers stay in scope") {
  Fixture f;
  IndexRetriever r(f.index, f.lex);
  LexicalReader reader(f.lex, index_idf(f.index));
  auto res = QAPipeline(r, reader).answer("What does the lander carry?", 10, 0.0, std::string("r2"));
  REQUIRE(!res.primary_answers.empty());
  for (const auto& a : res.primary_answers) CHECK(a.doc_id == "r2");
  for (const auto& a : res.primary_answers) {
    const auto& text = res.passages.at(a.passage_id);
    CHECK(text.substr(a.char_start, a.char_end - a.char_start) == a.text);
  }
}

TEST_CASE("token metrics") {
  Lexicon lex;
  auto m = token_prf("to support the solar panels stack namely 910mm by 500mm", "to support the solar panels", lex);
  CHECK(m.precision == doctest::Approx(0.5));
  CHECK(m.recall == doctest::Approx(1.0));
  CHECK(m.f1 == doctest::Approx(2.0 / 3.0));
  auto same = token_prf("Ariane 5", "Ariane 5", lex);
  CHECK(same.f1 == 1.0);
  auto none = token_prf("solar panel", "Ariane 5", lex);
  CHECK(none.precision == 0.0);
  CHECK(none.f1 == 0.0);
  // Swapping roles swaps P and R.
  auto swapped = token_prf("to support the solar panels", "to support the solar panels stack namely 910mm by 500mm", lex);
  CHECK(swapped.precision == doctest::Approx(m.recall));
  CHECK(swapped.recall == doctest::Approx(m.precision));
  CHECK_THROWS_AS(token_prf("x", "", lex), DataError);

  auto macro = eval_reader({{"Ariane 5", "Ariane 5"}, {"solar panel", "Ariane 5"}}, lex);
  CHECK(macro.f1 == doctest::Approx(0.5));
  CHECK(macro.pairs == 2);
}

TEST_CASE("report passages index and testset loader") {
  Lexicon lex;
  auto reports = load_corpus(testsupport::fixture("qa_reports.jsonl"));
  auto pc = index_reports(reports, lex);
  CHECK(pc.passages.size() == 20);
  CHECK(pc.index.unit_count() == 20);
  REQUIRE(pc.find("cdf-athena#p1") != nullptr);
  auto items = load_qa_testset(testsupport::fixture("qa_testset.tsv"));
  CHECK(items.size() == 15);
  for (const auto& it : items) CHECK(pc.find(it.gold_passage_id) != nullptr);
  CHECK_THROWS_AS(index_reports(DocumentCollection{}, lex), DataError);
}
