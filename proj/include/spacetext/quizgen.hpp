#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spacetext/corpus.hpp"
#include "spacetext/kgraph.hpp"
#include "spacetext/lexicon.hpp"
#include "spacetext/qa.hpp"

namespace spacetext {

enum class Strategy { answer_aware, answer_agnostic };
enum class CandidateStatus { generated, deduped_out, validated, rejected_no_answer };

std::string to_string(Strategy s);
std::string to_string(CandidateStatus s);

struct QuestionCandidate {
  std::string id;  // "q<n>" in generation order
  std::string question;
  std::string answer;  // empty for answer-agnostic until validated
  std::string seed_answer;
  std::string seed_type;
  std::string passage_id;
  Strategy strategy = Strategy::answer_aware;
  CandidateStatus status = CandidateStatus::generated;
  double validation_score = 0.0;
  std::optional<double> seed_f1;  // answer-aware only, after validation
  bool operator==(const QuestionCandidate&) const = default;
};

// One rule per line: seed_type<TAB>pattern. Placeholders:
//   {X} sentence text after the seed, {W} text before it, {V} the copula,
//   {S} subject, {M} modal, {B} verb base form.
struct QuizTemplate {
  std::string seed_type;
  std::string pattern;
};

struct QuizTemplates {
  std::vector<QuizTemplate> rules;

  std::vector<std::string> patterns_for(const std::string& seed_type) const;

  static QuizTemplates builtin();
  static QuizTemplates parse(const std::string& text, const std::string& origin = "<memory>");
  static QuizTemplates load(const std::filesystem::path& path);
};

struct GenerationOptions {
  std::size_t beam_width = 5;  // max variants per seed
};

std::vector<QuestionCandidate> generate_candidates(const std::vector<Passage>& passages,
                                                   const KnowledgeGraph& kg, const Lexicon& lexicon,
                                                   const QuizTemplates& templates,
                                                   const GenerationOptions& options = {});

// TF-IDF lemma vectors of the candidate questions, idf over the candidate set.
std::vector<SparseVector> question_vectors(const std::vector<QuestionCandidate>& candidates,
                                           const Lexicon& lexicon);

// Keep-first scan in generation order across both strategies.
void dedup(std::vector<QuestionCandidate>& candidates, const Lexicon& lexicon, double threshold = 0.8);

void validate(std::vector<QuestionCandidate>& candidates, const std::vector<Passage>& passages,
              const Reader& reader, const Lexicon& lexicon, double min_score = 0.5);

struct TrainerItem {
  std::string question;
  std::string answer;
  std::string passage;
};

struct Quiz {
  std::string title;
  std::vector<std::string> trainee_section;
  std::vector<TrainerItem> trainer_section;
};

// Throws DataError on an empty selection or a candidate that is not validated.
Quiz assemble_quiz(const std::vector<QuestionCandidate>& selected, const std::vector<Passage>& passages,
                   const std::string& title);

std::string render_quiz(const Quiz& quiz);

// Tab-separated candidate listing, one line per candidate.
std::string format_candidates(const std::vector<QuestionCandidate>& candidates);

}  // namespace spacetext
