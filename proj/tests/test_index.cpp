#include <cmath>
#include <random>

#include "doctest.h"
#include "spacetext/error.hpp"
#include "spacetext/index.hpp"
#include "support.hpp"

using namespace spacetext;

namespace {

Index text_index(const std::vector<std::pair<std::string, std::string>>& docs, IndexParams params = {}) {
  Lexicon lex;
  std::vector<IndexUnit> units;
  for (const auto& [id, text] : docs) units.push_back(text_unit(id, id, text, lex));
  return Index::build(std::move(units), params);
}

}  // namespace

TEST_CASE("three one-word docs") {
  auto idx = text_index({{"a", "regolith"}, {"b", "basalt"}, {"c", "anorthosite"}});
  CHECK(idx.unit_count() == 3);
  for (const char* t : {"regolith", "basalt", "anorthosite"}) {
    const auto* p = idx.postings("text", t);
    REQUIRE(p != nullptr);
    CHECK(p->size() == 1);
    CHECK(idx.doc_freq("text", t) == 1);
  }
  auto r = search(idx, Lexicon{}, "basalt", 10);
  REQUIRE(r.hits.size() == 1);
  CHECK(r.hits[0].unit_id == "b");
}

TEST_CASE("BM25 hand example") {
  auto idx = text_index({{"A", "regolith regolith"}, {"B", "basalt basalt"}});
  auto r = search(idx, Lexicon{}, "regolith", 10);
  REQUIRE(r.hits.size() == 1);
  CHECK(r.hits[0].unit_id == "A");
  const double expected = std::log(2.0) * (2.0 * 2.2) / (2.0 + 1.2);
  CHECK(std::fabs(r.hits[0].score - expected) < 1e-12);
  CHECK(std::fabs(r.hits[0].score - 0.953) < 1e-3);
}

TEST_CASE("ties go to the lower id and empty queries are flagged") {
  auto idx = text_index({{"b", "crater rim"}, {"a", "crater rim"}, {"c", "dust"}});
  auto r = search(idx, Lexicon{}, "crater", 10);
  REQUIRE(r.hits.size() == 2);
  CHECK(r.hits[0].unit_id == "a");
  CHECK(r.hits[1].unit_id == "b");
  auto e = search(idx, Lexicon{}, "the of and", 10);
  CHECK(e.empty_query);
  CHECK(e.hits.empty());
}

TEST_CASE("empty units index without postings") {
  auto idx = text_index({{"a", ""}, {"b", "dust"}});
  CHECK(idx.unit_count() == 2);
  CHECK(idx.length(0, "text") == 0);
  CHECK(search(idx, Lexicon{}, "dust", 5).hits.size() == 1);
}

TEST_CASE("build errors") {
  Lexicon lex;
  CHECK_THROWS_AS(Index::build({}), DataError);
  std::vector<IndexUnit> dup{text_unit("a", "a", "x", lex), text_unit("a", "a", "y", lex)};
  CHECK_THROWS_AS(Index::build(dup), DataError);
}

TEST_CASE("BM25 is non-decreasing in tf") {
  // Same lengths, so only tf differs.
  auto idx = text_index({{"a", "ice dust dust dust"}, {"b", "ice ice dust dust"}, {"c", "ice ice ice dust"}, {"d", "rock rock rock rock"}});
  auto r = search(idx, Lexicon{}, "ice", 10);
  REQUIRE(r.hits.size() == 3);
  CHECK(r.hits[0].unit_id == "c");
  CHECK(r.hits[1].unit_id == "b");
  CHECK(r.hits[2].unit_id == "a");
}

TEST_CASE("tfidf scorer ranks the matching unit first") {
  auto idx = text_index({{"a", "lunar regolith sample"}, {"b", "mars dust storm"}, {"c", "ice core"}});
  auto r = search(idx, Lexicon{}, "regolith sample", 10, Scorer::tfidf);
  REQUIRE(!r.hits.empty());
  CHECK(r.hits[0].unit_id == "a");
  CHECK(r.hits[0].score <= 1.0 + 1e-12);
}

TEST_CASE("cosine") {
  auto idx = text_index({{"a", "orbit debris"}, {"b", "orbit debris"}, {"c", "soil moisture"}, {"d", ""}});
  CHECK(idx.cosine("a", "b").value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(idx.cosine("a", "a").value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(idx.cosine("a", "c").value == 0.0);
  auto z = idx.cosine("a", "d");
  CHECK(z.zero_vector);
  CHECK(z.value == 0.0);
  CHECK(idx.cosine("a", "c").value == idx.cosine("c", "a").value);
  SparseVector x{{"p", 1}, {"q", 1}}, y{{"p", 1}, {"r", 1}};
  CHECK(sparse_cosine(x, y) == doctest::Approx(0.5));
}

TEST_CASE("rebuild is byte identical and persists") {
  auto a = text_index({{"a", "orbit debris"}, {"b", "soil moisture"}});
  auto b = text_index({{"a", "orbit debris"}, {"b", "soil moisture"}});
  CHECK(a.to_bytes() == b.to_bytes());
  auto back = Index::from_bytes(a.to_bytes());
  CHECK(back.to_bytes() == a.to_bytes());
  testsupport::TempDir tmp;
  a.save(tmp.path() / "i.bin");
  CHECK(Index::load(tmp.path() / "i.bin").to_bytes() == a.to_bytes());
  CHECK_THROWS_AS(Index::from_bytes("garbage"), DataError);
}

TEST_CASE("metric definitions") {
  auto m = retrieval_metrics({{"x", "y", "g"}}, {{"g"}}, 10);
  CHECK(m.mrr_at_k == doctest::Approx(1.0 / 3.0));
  CHECK(m.accuracy_at_k == 1.0);
  CHECK(m.recall_at_k == 1.0);
  auto perfect = retrieval_metrics({{"a"}, {"b"}}, {{"a"}, {"b"}}, 10);
  CHECK(perfect.recall_at_k == 1.0);
  CHECK(perfect.mrr_at_k == 1.0);
  CHECK(perfect.accuracy_at_k == 1.0);
  auto two = retrieval_metrics({{"a", "x", "b"}}, {{"a", "b"}}, 2);
  CHECK(two.recall_at_k == 0.5);
  CHECK_THROWS_AS(retrieval_metrics({}, {}, 10), DataError);
}

TEST_CASE("recall is non-decreasing in k") {
  std::mt19937 rng(3);
  std::vector<std::vector<std::string>> rankings, gold;
  for (int q = 0; q < 20; ++q) {
    std::vector<std::string> r;
    for (int i = 0; i < 15; ++i) r.push_back("u" + std::to_string((q * 7 + i * 3) % 30));
    rankings.push_back(r);
    gold.push_back({"u" + std::to_string(rng() % 30), "u" + std::to_string(rng() % 30)});
  }
  double prev = 0.0;
  for (std::size_t k = 1; k <= 15; ++k) {
    auto m = retrieval_metrics(rankings, gold, k);
    CHECK(m.recall_at_k >= prev);
    CHECK(m.recall_at_k <= 1.0);
    CHECK(m.mrr_at_k <= m.accuracy_at_k);
    prev = m.recall_at_k;
  }
}

TEST_CASE("bundled retrieval testset reaches every gold passage") {
  Lexicon lex;
  auto set = load_retrieval_testset(testsupport::fixture("qa_retrieval.tsv"));
  CHECK(set.size() == 15);
  CHECK_THROWS_AS(load_retrieval_testset("/nonexistent.tsv"), IoError);
}
