#include "spacetext/cli.hpp"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <pthread.h>

#include "CLI11.hpp"
#include "spacetext/engine.hpp"
#include "spacetext/error.hpp"
#include "spacetext/http_service.hpp"

namespace spacetext {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

void write_json(const std::string& path, const Json& j) {
  if (!path.empty()) write_file(path, j.dump(2) + "\n");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string default_config() {
  if (const char* env = std::getenv("SPACETEXT_CONFIG")) return env;
#ifdef SPACETEXT_DEFAULT_DATA_DIR
  return std::string(SPACETEXT_DEFAULT_DATA_DIR) + "/config.json";
#else
  return "config.json";
#endif
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void print_answers(std::ostream& out, const QAResult& r) {
  if (r.no_answer) out << "no answer above the threshold\n";
  for (const auto& a : r.primary_answers) {
    out << fmt(a.score) << "  " << a.text << "  [" << a.passage_id << "]\n";
  }
  if (!r.low_confidence_answers.empty()) {
    out << "low confidence:\n";
    for (const auto& a : r.low_confidence_answers) {
      out << fmt(a.score) << "  " << a.text << "  [" << a.passage_id << "]\n";
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Text analytics for space mission documents", "spacetext"};
  app.require_subcommand(1);
  std::string config_path = default_config();
  app.add_option("--config", config_path, "Configuration file");

  auto load_config = [&] { return EngineConfig::load(std::filesystem::path(config_path)); };
  std::function<void()> action;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Load and filter a corpus");
  std::string in_path, out_path, min_date, codes, sources;
  ingest->add_option("--input", in_path, "Corpus JSONL")->required();
  ingest->add_option("--output", out_path, "Filtered corpus JSONL")->required();
  ingest->add_option("--min-date", min_date, "Keep documents dated on or after YYYY-MM-DD");
  ingest->add_option("--codes", codes, "Comma-separated field-of-research code prefixes");
  ingest->add_option("--sources", sources, "Comma-separated sources");
  ingest->callback([&] {
    action = [&] {
      CorpusFilter filter;
      if (!min_date.empty()) {
        filter.min_date = parse_date(min_date);
        if (!filter.min_date) throw DataError("bad --min-date '" + min_date + "'");
      }
      if (!codes.empty()) {
        const auto list = split_list(codes);
        filter.field_codes = std::set<std::string>(list.begin(), list.end());
      }
      if (!sources.empty()) {
        std::set<Source> s;
        for (const auto& name : split_list(sources)) s.insert(source_from_string(name));
        filter.sources = s;
      }
      LoadReport report;
      const auto collection = load_corpus(in_path, filter, &report);
      write_corpus(out_path, collection);
      out << "records " << report.records << ", date " << report.passed_date << ", fields "
          << report.passed_fields << ", sources " << report.passed_sources << ", kept " << report.kept << "\n";
    };
  });

  // annotate
  auto* annotate_cmd = app.add_subcommand("annotate", "Annotate a corpus against the knowledge graph");
  std::string kg_path;
  annotate_cmd->add_option("--input", in_path, "Corpus JSONL")->required();
  annotate_cmd->add_option("--kg", kg_path, "Knowledge graph TSV (default: from config)");
  annotate_cmd->add_option("--output", out_path, "Annotations JSONL")->required();
  annotate_cmd->callback([&] {
    action = [&] {
      const Lexicon lex;
      const auto config = kg_path.empty() ? load_config() : EngineConfig{};
      const auto kg = load_graph(kg_path.empty() ? config.resolve(config.kg) : std::filesystem::path(kg_path), lex);
      const auto corpus = load_corpus(in_path);
      const auto metadata = extract_collection_metadata(corpus, kg, lex);
      std::string lines;
      std::size_t mentions_total = 0;
      for (const auto& doc : corpus.docs) {
        Json mentions = Json::array();
        for (const auto& m : annotate(doc, kg, lex)) mentions.push_back(to_json(m));
        mentions_total += mentions.size();
        lines += Json{{"id", doc.id}, {"mentions", mentions}, {"metadata", to_json(metadata.at(doc.id))}}.dump() + "\n";
      }
      write_file(out_path, lines);
      out << corpus.docs.size() << " documents, " << mentions_total << " mentions\n";
    };
  });

  // index
  auto* index_cmd = app.add_subcommand("index", "Segment reports into passages and build the passage index");
  double k1 = 1.2, b = 0.75;
  index_cmd->add_option("--input", in_path, "Reports JSONL")->required();
  index_cmd->add_option("--output", out_path, "Index file")->required();
  index_cmd->add_option("--k1", k1, "BM25 k1")->check(CLI::PositiveNumber);
  index_cmd->add_option("--b", b, "BM25 b")->check(CLI::Range(0.0, 1.0));
  index_cmd->callback([&] {
    action = [&] {
      const Lexicon lex;
      IndexParams params;
      params.k1 = k1;
      params.b = b;
      const auto pc = index_reports(load_corpus(in_path), lex, {}, params);
      pc.index.save(out_path);
      out << pc.passages.size() << " passages indexed\n";
    };
  });

  // ask
  auto* ask = app.add_subcommand("ask", "Answer a question from an index");
  std::string index_path, question, scope, scorer = "bm25";
  std::size_t k = 10;
  double threshold = 0.5;
  ask->add_option("--index", index_path, "Index file")->required();
  ask->add_option("--question", question, "Question")->required();
  ask->add_option("--k", k, "Passages to read")->check(CLI::PositiveNumber);
  ask->add_option("--threshold", threshold, "Confidence gate")->check(CLI::Range(0.0, 1.0));
  ask->add_option("--scope", scope, "Restrict to one document id");
  ask->add_option("--scorer", scorer, "bm25 or tfidf")->check(CLI::IsMember({"bm25", "tfidf"}));
  ask->add_option("--output", out_path, "QAResult JSON");
  ask->callback([&] {
    action = [&] {
      const Lexicon lex;
      const auto index = Index::load(index_path);
      const IndexRetriever retriever(index, lex, scorer_from_string(scorer));
      const LexicalReader reader(lex, index_idf(index));
      const auto result = QAPipeline(retriever, reader)
                              .answer(question, k, threshold,
                                      scope.empty() ? std::nullopt : std::optional<std::string>(scope));
      write_json(out_path, to_json(result));
      print_answers(out, result);
    };
  });

  // quiz
  auto* quiz = app.add_subcommand("quiz", "Quiz generation");
  quiz->require_subcommand(1);
  auto* quiz_gen = quiz->add_subcommand("generate", "Generate, deduplicate and validate candidates");
  std::string doc_id, candidates_path;
  std::vector<std::string> sections;
  quiz_gen->add_option("--doc", doc_id, "Report id")->required();
  quiz_gen->add_option("--section", sections, "Section path, e.g. \"2 Scope > 2.1 Terms\" (repeatable)");
  quiz_gen->add_option("--output", out_path, "Candidates JSON");
  quiz_gen->add_option("--tsv", candidates_path, "Candidates TSV");
  quiz_gen->callback([&] {
    action = [&] {
      const auto config = load_config();
      const auto data = EngineData::load(config);
      if (!data->reports.contains(doc_id)) throw NotFound("unknown report '" + doc_id + "'");
      const auto passages = section_passages(data->passages, doc_id, sections);
      if (passages.empty()) throw DataError("no passages match the requested sections");
      const auto candidates = quiz_candidates(passages, *data, config);
      write_json(out_path, to_json(candidates));
      if (!candidates_path.empty()) write_file(candidates_path, format_candidates(candidates));
      out << format_candidates(candidates);
    };
  });
  auto* quiz_render = quiz->add_subcommand("render", "Assemble and render a quiz from selected candidates");
  std::string select, title;
  quiz_render->add_option("--candidates", candidates_path, "Candidates JSON from quiz generate")->required();
  quiz_render->add_option("--select", select, "Comma-separated candidate ids (default: all validated)");
  quiz_render->add_option("--title", title, "Quiz title (default: report title)");
  quiz_render->add_option("--output", out_path, "Rendered quiz file");
  quiz_render->callback([&] {
    action = [&] {
      const auto config = load_config();
      const auto data = EngineData::load(config);
      std::ifstream in(candidates_path);
      if (!in) throw IoError("cannot read " + candidates_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw DataError(candidates_path + ": " + e.what());
      }
      QuizSession s = session_from_json(
          Json{{"session_id", ""}, {"doc_id", ""}, {"section_paths", Json::array()}, {"candidates", j},
               {"selected", Json::array()}});
      std::vector<QuestionCandidate> chosen;
      if (select.empty()) {
        for (const auto& c : s.candidates) {
          if (c.status == CandidateStatus::validated) chosen.push_back(c);
        }
      } else {
        for (const auto& id : split_list(select)) {
          auto it = std::find_if(s.candidates.begin(), s.candidates.end(),
                                 [&](const QuestionCandidate& c) { return c.id == id; });
          if (it == s.candidates.end()) throw DataError("unknown candidate '" + id + "'");
          chosen.push_back(*it);
        }
      }
      std::string quiz_title = title;
      if (quiz_title.empty() && !chosen.empty()) {
        const auto* p = data->passages.find(chosen.front().passage_id);
        const auto* doc = p ? data->reports.find(p->doc_id) : nullptr;
        if (doc) quiz_title = doc->title;
      }
      const auto rendered = render_quiz(assemble_quiz(chosen, data->passages.passages, quiz_title));
      if (!out_path.empty()) write_file(out_path, rendered);
      out << rendered;
    };
  });

  // termgap
  auto* termgap = app.add_subcommand("termgap", "Knowledge-graph coverage and weirdness report");
  std::string general_path;
  double pareto = 0.2;
  termgap->add_option("--input", in_path, "Domain corpus JSONL (default: from config)");
  termgap->add_option("--kg", kg_path, "Knowledge graph TSV (default: from config)");
  termgap->add_option("--general", general_path, "General-language stats (default: from config)");
  termgap->add_option("--pareto", pareto, "Fraction of unknown terms to select")->check(CLI::Range(0.0, 1.0));
  termgap->add_option("--output", out_path, "Report JSON");
  termgap->callback([&] {
    action = [&] {
      const auto config = load_config();
      const Lexicon lex;
      auto pick = [&](const std::string& given, const std::string& key) {
        return given.empty() ? config.resolve(key) : std::filesystem::path(given);
      };
      const auto corpus = load_corpus(pick(in_path, config.corpus));
      const auto kg = load_graph(pick(kg_path, config.kg), lex);
      const auto general = load_stats(pick(general_path, config.general_stats));
      GapOptions options;
      options.pareto_fraction = pareto;
      const auto report = gap_report(corpus, kg, general, lex, options);
      write_json(out_path, to_json(report));
      out << render_report(report);
    };
  });

  // novelty
  auto* novelty = app.add_subcommand("novelty", "Idea novelty, similarity graph and clusters");
  novelty->require_subcommand(1);
  auto* nov_score = novelty->add_subcommand("score", "Novelty of one idea (or all ideas)");
  std::string idea;
  nov_score->add_option("--idea", idea, "Idea id (default: every idea)");
  nov_score->add_option("--output", out_path, "Result JSON");
  nov_score->callback([&] {
    action = [&] {
      const auto config = load_config();
      const auto data = EngineData::load(config);
      if (!idea.empty()) {
        const auto r = score_idea(*data, idea);
        write_json(out_path, to_json(r));
        out << r.idea_id << "  novelty " << fmt(r.novelty_score) << "\n";
        return;
      }
      Json all = Json::array();
      for (const auto& id : data->ideas) {
        const auto r = score_idea(*data, id);
        all.push_back(novelty_record(data->novelty.document(id), r));
        out << id << "  novelty " << fmt(r.novelty_score) << "\n";
      }
      write_json(out_path, all);
    };
  });
  auto* nov_graph = novelty->add_subcommand("graph", "Idea similarity graph");
  std::optional<double> min_sim;
  std::string gexf_path, records_path;
  nov_graph->add_option("--min-sim", min_sim, "Edge cutoff (default: from config)")->check(CLI::Range(0.0, 1.0));
  nov_graph->add_option("--output", out_path, "Graph JSON");
  nov_graph->add_option("--gexf", gexf_path, "GEXF export");
  nov_graph->add_option("--records", records_path, "Node/edge TSV records");
  nov_graph->callback([&] {
    action = [&] {
      const auto config = load_config();
      const auto data = EngineData::load(config);
      const auto g = idea_graph(*data, min_sim.value_or(config.graph_min_sim));
      write_json(out_path, to_json(g));
      if (!gexf_path.empty()) write_file(gexf_path, to_gexf(g));
      if (!records_path.empty()) write_file(records_path, format_graph_records(g));
      out << g.nodes.size() << " nodes, " << g.edges.size() << " edges\n";
    };
  });
  auto* nov_clusters = novelty->add_subcommand("clusters", "Louvain communities of the idea graph");
  nov_clusters->add_option("--output", out_path, "Clusters JSON");
  nov_clusters->add_option("--gexf", gexf_path, "GEXF export with community attribute");
  nov_clusters->callback([&] {
    action = [&] {
      const auto config = load_config();
      const auto data = EngineData::load(config);
      const auto g = idea_graph(*data, config.graph_min_sim);
      const auto p = idea_partition(g, config);
      const auto topics = cluster_topics(g, p, data->novelty);
      write_json(out_path, Json{{"partition", to_json(p, g)}, {"clusters", to_json(topics)},
                                {"table", render_cluster_table(topics)}});
      if (!gexf_path.empty()) write_file(gexf_path, to_gexf(g, &p));
      out << "modularity " << fmt(p.modularity) << ", " << p.community_count() << " communities\n"
          << render_cluster_table(topics);
    };
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluation harness");
  eval->require_subcommand(1);
  auto* eval_ret = eval->add_subcommand("retrieval", "Recall@k, MRR@k and accuracy@k");
  std::string testset;
  eval_ret->add_option("--index", index_path, "Index file")->required();
  eval_ret->add_option("--testset", testset, "query<TAB>gold|gold... lines")->required();
  eval_ret->add_option("--k", k, "Cutoff")->check(CLI::PositiveNumber);
  eval_ret->add_option("--scorer", scorer, "bm25 or tfidf")->check(CLI::IsMember({"bm25", "tfidf"}));
  eval_ret->add_option("--output", out_path, "Metrics JSON");
  eval_ret->callback([&] {
    action = [&] {
      const Lexicon lex;
      const auto m = eval_retrieval(Index::load(index_path), lex, load_retrieval_testset(testset), k,
                                    scorer_from_string(scorer));
      write_json(out_path, to_json(m));
      out << "queries " << m.queries << "  R@" << m.k << " " << fmt(m.recall_at_k) << "  MRR@" << m.k << " "
          << fmt(m.mrr_at_k) << "  acc@" << m.k << " " << fmt(m.accuracy_at_k) << "\n";
    };
  });
  auto* eval_read = eval->add_subcommand("reader", "Token precision, recall and F1 of top answers");
  eval_read->add_option("--index", index_path, "Index file")->required();
  eval_read->add_option("--testset", testset, "question<TAB>gold answer<TAB>gold passage lines")->required();
  eval_read->add_option("--k", k, "Passages to read")->check(CLI::PositiveNumber);
  eval_read->add_option("--output", out_path, "Metrics JSON");
  eval_read->callback([&] {
    action = [&] {
      const Lexicon lex;
      const auto index = Index::load(index_path);
      const IndexRetriever retriever(index, lex);
      const LexicalReader reader(lex, index_idf(index));
      const QAPipeline pipeline(retriever, reader);
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& item : load_qa_testset(testset)) {
        const auto r = pipeline.answer(item.question, k, 0.0);
        pairs.emplace_back(r.primary_answers.empty() ? "" : r.primary_answers.front().text, item.gold_answer);
      }
      const auto m = eval_reader(pairs, lex);
      write_json(out_path, to_json(m));
      out << "pairs " << m.pairs << "  P " << fmt(m.precision) << "  R " << fmt(m.recall) << "  F1 " << fmt(m.f1)
          << "\n";
    };
  });

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  std::optional<std::string> host;
  std::optional<int> port;
  serve->add_option("--host", host, "Bind address (default: from config)");
  serve->add_option("--port", port, "Port (default: from config)")->check(CLI::Range(0, 65535));
  serve->callback([&] {
    action = [&] {
      auto config = load_config();
      if (host) config.host = *host;
      if (port) config.port = *port;
      sigset_t set;
      sigemptyset(&set);
      sigaddset(&set, SIGINT);
      sigaddset(&set, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &set, nullptr);
      Engine engine(config);
      HttpService service(engine);
      const int bound = service.bind(config.host, config.port);
      out << "listening on http://" << config.host << ":" << bound << std::endl;
      std::thread waiter([&] {
        int sig = 0;
        sigwait(&set, &sig);
        service.stop();
      });
      service.listen();
      // listen() also returns on bind loss; wake the waiter in that case.
      pthread_kill(waiter.native_handle(), SIGTERM);
      waiter.join();
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    // Help text of the deepest subcommand that was reached.
    const CLI::App* deepest = &app;
    for (bool descended = true; descended;) {
      descended = false;
      for (const auto* sub : deepest->get_subcommands()) {
        deepest = sub;
        descended = true;
        break;
      }
    }
    err << deepest->help();
    return 2;
  }

  try {
    if (action) action();
    return 0;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace spacetext
