#include <algorithm>
#include <set>

#include "doctest.h"
#include "spacetext/corpus.hpp"
#include "spacetext/error.hpp"
#include "support.hpp"

using namespace spacetext;
using testsupport::fixture;

namespace {

std::set<std::string> ids(const DocumentCollection& c) {
  std::set<std::string> out;
  for (const auto& d : c.docs) out.insert(d.id);
  return out;
}

// Coverage check: headings, passages and discarded ranges tile the body.
void check_tiling(const Segmentation& seg, std::size_t n) {
  std::vector<TextRange> all = seg.headings;
  all.insert(all.end(), seg.discarded.begin(), seg.discarded.end());
  for (const auto& p : seg.passages) all.push_back({p.char_start, p.char_end});
  std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.start < b.start; });
  std::size_t pos = 0;
  for (const auto& r : all) {
    CHECK(r.start == pos);
    CHECK(r.end > r.start);
    pos = r.end;
  }
  CHECK(pos == n);
}

}  // namespace

TEST_CASE("bundled corpus loads all records") {
  LoadReport rep;
  auto c = load_corpus(fixture("mini_corpus.jsonl"), {}, &rep);
  CHECK(c.docs.size() == 40);
  CHECK(rep.records == 40);
  CHECK(rep.kept == 40);
}

TEST_CASE("date and field filter on the bundled corpus") {
  CorpusFilter f;
  f.min_date = parse_date("2016-01-01");
  f.field_codes = std::set<std::string>{"04", "05"};
  LoadReport rep;
  auto c = load_corpus(fixture("mini_corpus.jsonl"), f, &rep);
  // Independent count over the raw records.
  auto all = load_corpus(fixture("mini_corpus.jsonl"));
  std::size_t expected = 0;
  for (const auto& d : all.docs) {
    bool date_ok = d.date && *d.date >= std::chrono::year{2016} / 1 / 1;
    bool code_ok = std::any_of(d.fields_of_research.begin(), d.fields_of_research.end(),
                               [](const std::string& s) { return s.rfind("04", 0) == 0 || s.rfind("05", 0) == 0; });
    if (date_ok && code_ok) ++expected;
  }
  CHECK(expected == 23);
  CHECK(c.docs.size() == 23);
  CHECK(rep.kept == 23);
  CHECK(rep.passed_date >= rep.kept);
}

TEST_CASE("filters compose") {
  auto all = load_corpus(fixture("mini_corpus.jsonl"));
  CorpusFilter f1;
  f1.min_date = parse_date("2018-06-01");
  CorpusFilter f2;
  f2.sources = std::set<Source>{Source::idea, Source::study};
  CorpusFilter both = f1;
  both.sources = f2.sources;
  auto chained = filter_collection(filter_collection(all, f1), f2);
  auto joint = filter_collection(all, both);
  CHECK(ids(chained) == ids(joint));
  // Order is preserved.
  for (std::size_t i = 0; i < joint.docs.size(); ++i) CHECK(joint.docs[i].id == chained.docs[i].id);
}

TEST_CASE("malformed records name the index and field") {
  std::string text =
      R"({"id":"a","source":"idea","title":"t","body":"b"})"
      "\n"
      R"({"id":"b","source":"idea","title":5,"body":"b"})"
      "\n";
  try {
    parse_corpus(text);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    std::string msg = e.what();
    CHECK(msg.find("record 1") != std::string::npos);
    CHECK(msg.find("title") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_corpus(R"({"id":"a","source":"blog","title":"t","body":"b"})"), DataError);
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl"), IoError);
}

TEST_CASE("duplicate ids are rejected") {
  std::string text =
      R"({"id":"a","source":"idea","title":"t","body":"b"})"
      "\n"
      R"({"id":"a","source":"idea","title":"t","body":"b"})"
      "\n";
  CHECK_THROWS_AS(parse_corpus(text), DataError);
}

TEST_CASE("records round trip") {
  testsupport::TempDir tmp;
  auto all = load_corpus(fixture("mini_corpus.jsonl"));
  write_corpus(tmp.path() / "c.jsonl", all);
  auto back = load_corpus(tmp.path() / "c.jsonl");
  CHECK(back.docs == all.docs);
}

TEST_CASE("numbered headings build a tree") {
  Document d{"r", Source::report, "R", "1 Intro\nSome intro text here.\n\n1.1 Scope\nScope text here.\n", {}, {}, {}};
  SegmentationRules rules;
  rules.min_passage_chars = 1;
  auto seg = segment_report(d, rules);
  REQUIRE(seg.root.children.size() == 1);
  CHECK(seg.root.children[0].heading == "1 Intro");
  CHECK(seg.root.children[0].level == 1);
  REQUIRE(seg.root.children[0].children.size() == 1);
  CHECK(seg.root.children[0].children[0].heading == "1.1 Scope");
  CHECK(seg.root.children[0].children[0].level == 2);
  REQUIRE(seg.passages.size() == 2);
  CHECK(seg.passages[1].section_path == std::vector<std::string>{"1 Intro", "1.1 Scope"});
  check_tiling(seg, d.body.size());
}

TEST_CASE("no headings gives paragraph passages under the root") {
  std::string para1(220, 'a'), para2(230, 'b');
  Document d{"r", Source::report, "R", para1 + "\n\n" + para2, {}, {}, {}};
  auto seg = segment_report(d);
  CHECK(seg.root.children.empty());
  REQUIRE(seg.passages.size() == 2);
  CHECK(seg.passages[0].text == para1);
  CHECK(seg.passages[1].text == para2);
  check_tiling(seg, d.body.size());
}

TEST_CASE("page numbers and running headers are discarded") {
  std::string body =
      "ACME Report\n1 Intro\nThe first page of content text.\n12\n\fACME Report\nMore content on the second page.\n13\n";
  Document d{"r", Source::report, "R", body, {}, {}, {}};
  SegmentationRules rules;
  rules.min_passage_chars = 1;
  auto seg = segment_report(d, rules);
  for (const auto& p : seg.passages) {
    CHECK(p.text.find("ACME") == std::string::npos);
    CHECK(p.text.find("12") == std::string::npos);
  }
  CHECK(seg.passages.size() == 2);
  check_tiling(seg, body.size());
}

TEST_CASE("segmentation of the bundled reports tiles every body") {
  auto reports = load_corpus(fixture("quality_procedure.jsonl"));
  auto qa = load_corpus(fixture("qa_reports.jsonl"));
  for (const auto* c : {&reports, &qa}) {
    for (const auto& d : c->docs) {
      auto seg = segment_report(d);
      check_tiling(seg, d.body.size());
      for (const auto& p : seg.passages) CHECK(d.body.substr(p.char_start, p.char_end - p.char_start) == p.text);
      CHECK(segment_report(d).passages == seg.passages);
    }
  }
  CHECK(segment_report(reports.docs[0]).passages.size() == 30);
}

TEST_CASE("windows") {
  Document shortdoc{"d", Source::report, "", "abcde fghi", {}, {}, {}};
  auto w = window_passages(shortdoc, 20, 20);
  REQUIRE(w.size() == 1);
  CHECK(w[0].text == "abcde fghi");

  Document words{"d", Source::report, "", "aaaaa bbbbb ccccc ddddd eeeee", {}, {}, {}};
  auto ws = window_passages(words, 12, 6);
  CHECK(ws.size() > 1);
  std::vector<bool> covered(words.body.size(), false);
  for (const auto& p : ws) {
    CHECK(words.body.substr(p.char_start, p.char_end - p.char_start) == p.text);
    // Never splits a token.
    CHECK((p.char_start == 0 || words.body[p.char_start - 1] == ' '));
    CHECK((p.char_end == words.body.size() || words.body[p.char_end] == ' '));
    for (std::size_t i = p.char_start; i < p.char_end; ++i) covered[i] = true;
  }
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (words.body[i] != ' ') CHECK(covered[i]);

  Document empty{"d", Source::report, "", "", {}, {}, {}};
  CHECK(window_passages(empty, 10, 5).empty());
  CHECK_THROWS_AS(window_passages(words, 10, 11), DataError);
}
