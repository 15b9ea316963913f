#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "spacetext/cli.hpp"
#include "spacetext/engine.hpp"
#include "spacetext/error.hpp"
#include "spacetext/http_service.hpp"
#include "support.hpp"

using namespace spacetext;
using testsupport::fixture;
using testsupport::TempDir;

namespace {

EngineConfig config_in(const TempDir& tmp) {
  EngineConfig c;
  c.base_dir = SPACETEXT_FIXTURE_DIR;
  c.state_dir = (tmp.path() / "state").string();
  return c;
}

struct Cli {
  int code = 0;
  std::string out, err;
};

Cli cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Cli r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct Server {
  HttpService service;
  int port;
  std::thread thread;
  explicit Server(Engine& e) : service(e), port(service.bind("127.0.0.1", 0)) {
    thread = std::thread([this] { service.listen(); });
    while (!service.running()) std::this_thread::yield();
  }
  ~Server() {
    service.stop();
    thread.join();
  }
};

}  // namespace

TEST_CASE("config keys, types and environment overrides") {
  EngineConfig c;
  auto j = c.to_json();
  auto back = EngineConfig::from_json(j, "/base");
  CHECK(back.to_json() == j);
  CHECK(back.resolve("x.tsv") == std::filesystem::path("/base/x.tsv"));
  CHECK(back.resolve("/abs/x.tsv") == std::filesystem::path("/abs/x.tsv"));
  CHECK_THROWS_AS(EngineConfig::from_json(Json{{"nope", 1}}, "."), DataError);
  CHECK_THROWS_AS(EngineConfig::from_json(Json{{"qa_k", "ten"}}, "."), DataError);
  CHECK_THROWS_AS(EngineConfig::from_json(Json{{"reports", "one.jsonl"}}, "."), DataError);
  CHECK_THROWS_AS(EngineConfig::from_json(Json{{"scorer", "dense"}}, "."), DataError);

  ::setenv("SPACETEXT_QA_THRESHOLD", "0.7", 1);
  ::setenv("SPACETEXT_REPORTS", "a.jsonl,b.jsonl", 1);
  auto env = EngineConfig::load(fixture("config.json"));
  CHECK(env.qa_threshold == 0.7);
  CHECK(env.reports == std::vector<std::string>{"a.jsonl", "b.jsonl"});
  CHECK(env.base_dir == std::filesystem::path(SPACETEXT_FIXTURE_DIR));
  ::setenv("SPACETEXT_QA_K", "many", 1);
  CHECK_THROWS_AS(EngineConfig::load(fixture("config.json")), DataError);
  ::unsetenv("SPACETEXT_QA_K");
  ::unsetenv("SPACETEXT_QA_THRESHOLD");
  ::unsetenv("SPACETEXT_REPORTS");
  CHECK_THROWS_AS(EngineConfig::load(std::filesystem::path("/nonexistent/config.json")), IoError);
}

TEST_CASE("engine lookups and errors") {
  TempDir tmp;
  Engine e(config_in(tmp));
  auto docs = e.documents();
  CHECK(docs.size() == 40 + 5);
  CHECK(e.document("id42")["metadata"].contains("main_syncons"));
  auto report = e.document("qp-ncr");
  CHECK(report["sections"].size() == 6);
  CHECK_THROWS_AS(e.document("nope"), NotFound);
  CHECK_THROWS_AS(e.novelty("st01"), NotFound);
  CHECK_THROWS_AS(e.novelty("nope"), NotFound);
  CHECK_THROWS_AS(e.ask("Which launcher?", std::nullopt, std::string("nope"), std::nullopt), NotFound);
  CHECK_THROWS_AS(e.create_session("nope", {}), NotFound);
  CHECK_THROWS_AS(e.create_session("qp-ncr", {"99 Missing"}), DataError);
  CHECK(e.snippets(5, 1) == e.snippets(5, 1));
  CHECK(e.snippets(5, 1).size() == 5);
  CHECK(e.snippets(1000, 1).size() == e.data()->passages.passages.size());
}

TEST_CASE("section paths match heading prefixes") {
  TempDir tmp;
  Engine e(config_in(tmp));
  const auto& pc = e.data()->passages;
  auto all = section_passages(pc, "qp-ncr", {});
  CHECK(all.size() == 30);
  auto first = all.front().section_path.front();
  auto number = first.substr(0, first.find(' '));
  auto by_number = section_passages(pc, "qp-ncr", {number});
  auto by_heading = section_passages(pc, "qp-ncr", {first});
  CHECK(by_number == by_heading);
  CHECK(by_number.size() == 5);
}

TEST_CASE("quiz session lifecycle and persistence") {
  TempDir tmp;
  std::string session;
  std::string validated;
  {
    Engine e(config_in(tmp));
    auto created = e.create_session("qp-ncr", {});
    session = created["session_id"];
    CHECK(session == "session-0001");
    for (const auto& c : created["candidates"]) {
      if (c["status"] == "validated") {
        validated = c["id"];
        break;
      }
    }
    REQUIRE(!validated.empty());
    CHECK_THROWS_AS(e.select(session, {"q9999"}), DataError);
    CHECK_THROWS_AS(e.select("session-9999", {validated}), NotFound);
    CHECK_THROWS_AS(e.finalize(session), DataError);  // nothing selected yet
    e.select(session, {validated});
  }
  Engine again(config_in(tmp));
  auto quiz = again.finalize(session);
  CHECK(quiz["trainee_section"].size() == 1);
  CHECK(again.create_session("qp-ncr", {})["session_id"] == "session-0002");
}

TEST_CASE("feedback validation and restart") {
  TempDir tmp;
  {
    Engine e(config_in(tmp));
    auto stored = e.add_feedback(Json{{"feature", "qa"}, {"payload", {{"verdict", "correct"}, {"question", "q"}}}});
    CHECK(stored.contains("timestamp"));
    CHECK_THROWS_AS(e.add_feedback(Json{{"feature", "chat"}, {"payload", {{"verdict", "correct"}}}}), DataError);
    CHECK_THROWS_AS(e.add_feedback(Json{{"feature", "qa"}, {"payload", {{"verdict", "meh"}}}}), DataError);
    CHECK_THROWS_AS(e.add_feedback(Json{{"feature", "qa"}}), DataError);
    CHECK(e.feedback().size() == 1);
  }
  Engine e2(config_in(tmp));
  auto records = e2.feedback();
  REQUIRE(records.size() == 1);
  CHECK(records[0]["payload"]["question"] == "q");
}

TEST_CASE("http status codes") {
  TempDir tmp;
  Engine e(config_in(tmp));
  Server srv(e);
  httplib::Client client("127.0.0.1", srv.port);

  auto nf = client.Get("/novelty/unknown-idea");
  REQUIRE(nf);
  CHECK(nf->status == 404);
  CHECK(Json::parse(nf->body).contains("error"));

  auto bad = client.Post("/ask", "{not json", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  auto missing = client.Post("/ask", "{}", "application/json");
  CHECK(missing->status == 400);
  auto zero = client.Post("/ask", R"({"question":"x","k":0})", "application/json");
  CHECK(zero->status == 400);
  auto scope = client.Post("/ask", R"({"question":"x","scope":"nope"})", "application/json");
  CHECK(scope->status == 404);
  auto route = client.Get("/no/such/route");
  REQUIRE(route);
  CHECK(route->status == 404);
  CHECK(Json::parse(route->body).contains("error"));
  auto badparam = client.Get("/passages/snippets?n=-1");
  CHECK(badparam->status == 400);
  auto fb = client.Post("/feedback", R"({"feature":"quiz","payload":{"verdict":"useful"}})", "application/json");
  CHECK(fb->status == 201);
  auto badfb = client.Post("/feedback", R"({"feature":"quiz","payload":{}})", "application/json");
  CHECK(badfb->status == 400);
  auto session = client.Post("/quiz/sessions", R"({"doc_id":"qp-ncr"})", "application/json");
  CHECK(session->status == 201);
  CHECK(client.Post("/quiz/sessions/none/finalize", "{}", "application/json")->status == 404);
}

TEST_CASE("cli usage errors and help") {
  CHECK(cli({"--help"}).code == 0);
  auto none = cli({});
  CHECK(none.code == 2);
  auto unknown = cli({"frobnicate"});
  CHECK(unknown.code == 2);
  auto missing = cli({"ask", "--question", "x"});
  CHECK(missing.code == 2);
  auto bad_input = cli({"ingest", "--input", "/nonexistent.jsonl", "--output", "/tmp/x.jsonl"});
  CHECK(bad_input.code == 1);
  CHECK(bad_input.err.find("nonexistent") != std::string::npos);
}

TEST_CASE("cli pipeline over the fixtures") {
  TempDir tmp;
  const std::string cfg = fixture("config.json").string();
  ::setenv("SPACETEXT_STATE_DIR", (tmp.path() / "state").c_str(), 1);
  auto filtered = (tmp.path() / "filtered.jsonl").string();
  auto ing = cli({"--config", cfg, "ingest", "--input", fixture("mini_corpus.jsonl").string(), "--output", filtered,
                  "--min-date", "2016-01-01", "--codes", "04,05"});
  CHECK(ing.code == 0);
  CHECK(load_corpus(filtered).docs.size() == 23);

  auto ann_path = (tmp.path() / "ann.jsonl").string();
  CHECK(cli({"--config", cfg, "annotate", "--input", filtered, "--output", ann_path}).code == 0);
  std::ifstream ann(ann_path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(ann, line)) {
    auto j = Json::parse(line);
    CHECK(j.contains("mentions"));
    CHECK(j["metadata"].size() == 10);
    ++lines;
  }
  CHECK(lines == 23);

  auto idx = (tmp.path() / "passages.idx").string();
  CHECK(cli({"--config", cfg, "index", "--input", fixture("qa_reports.jsonl").string(), "--output", idx}).code == 0);
  auto out = [&](const char* name) { return (tmp.path() / name).string(); };
  auto ask = cli({"--config", cfg, "ask", "--index", idx, "--question", "Which launcher will Athena use?", "--output",
                  out("ask.json")});
  REQUIRE(ask.code == 0);
  CHECK(ask.out.find("Ariane 5") != std::string::npos);
  auto answer = Json::parse(testsupport::read_file(out("ask.json")));
  REQUIRE(!answer["primary_answers"].empty());
  CHECK(answer["primary_answers"][0]["text"] == "Ariane 5");

  auto ret = cli({"--config", cfg, "eval", "retrieval", "--index", idx, "--testset", fixture("qa_retrieval.tsv").string(),
                  "--output", out("ret.json")});
  REQUIRE(ret.code == 0);
  CHECK(Json::parse(testsupport::read_file(out("ret.json")))["recall_at_k"].get<double>() == 1.0);

  auto gen = cli({"--config", cfg, "quiz", "generate", "--doc", "qp-ncr", "--output",
                  (tmp.path() / "cands.json").string()});
  CHECK(gen.code == 0);
  auto rendered = (tmp.path() / "quiz.md").string();
  auto render = cli({"--config", cfg, "quiz", "render", "--candidates", (tmp.path() / "cands.json").string(),
                     "--select", "q25", "--output", rendered});
  CHECK(render.code == 0);
  auto text = testsupport::read_file(rendered);
  CHECK(text.find("What is mandatory for the closure of a Problem Report?") != std::string::npos);
  CHECK(text.find("## Trainee") < text.find("## Trainer"));

  auto tg = cli({"--config", cfg, "termgap"});
  CHECK(tg.code == 0);
  auto nov = cli({"--config", cfg, "novelty", "score", "--idea", "id42", "--output", out("nov.json")});
  REQUIRE(nov.code == 0);
  CHECK(Json::parse(testsupport::read_file(out("nov.json")))["ideaId"] == "id42");
  CHECK(cli({"--config", cfg, "novelty", "clusters"}).code == 0);
  ::unsetenv("SPACETEXT_STATE_DIR");
}
