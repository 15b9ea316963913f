#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "spacetext/serialize.hpp"

namespace spacetext {

// Flat key/value configuration. Every key can be overridden by an
// environment variable SPACETEXT_<KEY> (upper case); list values are
// comma-separated there.
struct EngineConfig {
  std::filesystem::path base_dir;  // relative paths resolve against this
  std::string corpus = "mini_corpus.jsonl";
  std::vector<std::string> reports = {"qa_reports.jsonl", "quality_procedure.jsonl"};
  std::string kg = "minikg.tsv";
  std::string general_stats = "general_stats.tsv";
  std::string templates = "templates.tsv";
  std::string predefined_questions = "predefined_questions.txt";
  std::string state_dir = "state";
  double index_k1 = 1.2;
  double index_b = 0.75;
  std::string scorer = "bm25";
  double qa_threshold = 0.5;
  std::size_t qa_k = 10;
  double dedup_threshold = 0.8;
  double validation_min_score = 0.5;
  std::size_t beam_width = 5;
  double graph_min_sim = 0.15;
  std::uint64_t louvain_seed = 42;
  double louvain_resolution = 1.0;
  std::size_t top_similar = 5;
  std::string host = "127.0.0.1";
  int port = 8080;

  std::filesystem::path resolve(const std::string& p) const;

  static EngineConfig from_json(const Json& j, const std::filesystem::path& base_dir);
  // Reads the file (if given), then applies environment overrides.
  static EngineConfig load(const std::optional<std::filesystem::path>& path);
  void apply_env();
  Json to_json() const;
};

// Everything derived from the input files; immutable once built.
struct EngineData {
  Lexicon lexicon;
  DocumentCollection corpus;
  DocumentCollection reports;
  KnowledgeGraph kg;
  QuizTemplates templates;
  std::vector<std::string> predefined_questions;
  PassageCorpus passages;
  std::map<std::string, DocumentMetadata> metadata;
  NoveltyIndex novelty;
  std::vector<std::string> ideas, studies, projects;

  static std::shared_ptr<const EngineData> load(const EngineConfig& config);
};

struct QuizSession {
  std::string id;
  std::string doc_id;
  std::vector<std::string> section_paths;
  std::vector<QuestionCandidate> candidates;
  std::vector<std::string> selected;
};

// Passages of `doc_id` whose section path starts with one of `section_paths`
// (each written "1 Intro > 1.2 Scope"); all passages when the list is empty.
std::vector<Passage> section_passages(const PassageCorpus& passages, const std::string& doc_id,
                                      const std::vector<std::string>& section_paths);

// generate -> dedup -> validate over the given passages.
std::vector<QuestionCandidate> quiz_candidates(const std::vector<Passage>& passages, const EngineData& data,
                                               const EngineConfig& config);

NoveltyResult score_idea(const EngineData& data, const std::string& idea_id);
SimilarityGraph idea_graph(const EngineData& data, double min_sim);
Partition idea_partition(const SimilarityGraph& graph, const EngineConfig& config);

// Uniform sample of n passages without replacement, reproducible by seed.
std::vector<Passage> sample_passages(const PassageCorpus& passages, std::size_t n, std::uint64_t seed);

// Application state behind the CLI and the HTTP service. Reads work on an
// immutable snapshot; rebuild() swaps in a new one.
class Engine {
 public:
  explicit Engine(EngineConfig config);

  const EngineConfig& config() const { return config_; }
  std::shared_ptr<const EngineData> data() const;
  void rebuild();

  Json documents() const;
  Json document(const std::string& id) const;  // NotFound
  Json ask(const std::string& question, std::optional<std::size_t> k, std::optional<std::string> scope,
           std::optional<double> threshold) const;
  Json snippets(std::size_t n, std::uint64_t seed) const;
  Json predefined_questions() const;
  Json novelty(const std::string& idea_id) const;  // NotFound for unknown ideas
  Json graph(std::optional<double> min_sim) const;
  Json clusters() const;

  Json create_session(const std::string& doc_id, const std::vector<std::string>& section_paths);
  Json select(const std::string& session_id, const std::vector<std::string>& candidate_ids);
  Json finalize(const std::string& session_id);

  // Validates and appends a feedback record; returns the stored record.
  Json add_feedback(const Json& record);
  std::vector<Json> feedback() const;

 private:
  std::filesystem::path sessions_dir() const;
  std::filesystem::path feedback_path() const;
  void save_session(const QuizSession& s) const;
  void load_sessions();

  EngineConfig config_;
  mutable std::mutex data_mutex_;
  std::shared_ptr<const EngineData> data_;
  std::mutex rebuild_mutex_;
  mutable std::mutex session_mutex_;
  std::map<std::string, QuizSession> sessions_;
  std::size_t next_session_ = 1;
  mutable std::mutex feedback_mutex_;
};

Json to_json(const QuizSession& s);
QuizSession session_from_json(const Json& j);

}  // namespace spacetext
