#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spacetext/corpus.hpp"
#include "spacetext/index.hpp"
#include "spacetext/lexicon.hpp"

namespace spacetext {

struct PassageRef {
  std::string id;
  std::string doc_id;
  std::string text;
};

struct AnswerSpan {
  std::string text;
  std::string passage_id;
  std::string doc_id;
  std::size_t char_start = 0;  // within the passage text
  std::size_t char_end = 0;
  double score = 0.0;  // in [0, 1]
  bool operator==(const AnswerSpan&) const = default;
};

struct QAResult {
  std::string question;
  std::vector<AnswerSpan> primary_answers;
  std::vector<AnswerSpan> low_confidence_answers;
  bool no_answer = true;
  // Text of every passage referenced by an answer, keyed by passage id.
  std::map<std::string, std::string> passages;
};

class Retriever {
 public:
  virtual ~Retriever() = default;
  // Throws NotFound when `scope` names a document the retriever does not hold.
  virtual std::vector<Hit> retrieve(std::string_view question, std::size_t k,
                                    const std::optional<std::string>& scope) const = 0;
  virtual PassageRef passage(const std::string& id) const = 0;
};

// Reader implementations return spans that slice exactly out of the passage,
// with probability-like scores in [0, 1], best first.
class Reader {
 public:
  virtual ~Reader() = default;
  virtual std::vector<AnswerSpan> read(std::string_view question, const PassageRef& passage) const = 0;
};

class IndexRetriever : public Retriever {
 public:
  IndexRetriever(const Index& index, const Lexicon& lexicon, Scorer scorer = Scorer::bm25)
      : index_(index), lexicon_(lexicon), scorer_(scorer) {}

  std::vector<Hit> retrieve(std::string_view question, std::size_t k,
                            const std::optional<std::string>& scope) const override;
  PassageRef passage(const std::string& id) const override;

 private:
  const Index& index_;
  const Lexicon& lexicon_;
  Scorer scorer_;
};

struct LexicalReaderConfig {
  // Logistic squash of the raw score: midpoint 0.5 and steepness chosen so
  // that full question coverage maps to 0.85 and half coverage to 0.5.
  double midpoint = 0.5;
  double steepness = 3.4692021107762128;
  double type_bonus = 1.25;
  std::size_t max_span_tokens = 12;
  std::size_t top_n = 5;
};

enum class QuestionType { other, entity, numeric, temporal };
QuestionType classify_question(std::string_view question, const Lexicon& lexicon);

// Lexical span extractor: picks the passage sentence(s) with maximal
// IDF-weighted question-term overlap and proposes the stopword-bounded
// token runs in it that are not question terms.
class LexicalReader : public Reader {
 public:
  using IdfFn = std::function<double(const std::string&)>;

  LexicalReader(const Lexicon& lexicon, IdfFn idf, LexicalReaderConfig config = {});

  std::vector<AnswerSpan> read(std::string_view question, const PassageRef& passage) const override;

  double squash(double raw) const;
  const LexicalReaderConfig& config() const { return config_; }

 private:
  const Lexicon& lexicon_;
  IdfFn idf_;
  LexicalReaderConfig config_;
};

// IDF over the "text" field of an index (smoothed TF-IDF idf).
LexicalReader::IdfFn index_idf(const Index& index);

class QAPipeline {
 public:
  QAPipeline(const Retriever& retriever, const Reader& reader) : retriever_(retriever), reader_(reader) {}

  QAResult answer(std::string_view question, std::size_t k = 10, double threshold = 0.5,
                  const std::optional<std::string>& scope = std::nullopt) const;

  const Retriever& retriever() const { return retriever_; }
  const Reader& reader() const { return reader_; }

 private:
  const Retriever& retriever_;
  const Reader& reader_;
};

struct TokenPRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Token multiset overlap on case-folded lexicon tokens. Throws DataError when
// the gold span has no tokens.
TokenPRF token_prf(std::string_view predicted, std::string_view gold, const Lexicon& lexicon);

struct ReaderMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t pairs = 0;
};

// Macro average over (predicted, gold) pairs.
ReaderMetrics eval_reader(const std::vector<std::pair<std::string, std::string>>& pairs,
                          const Lexicon& lexicon);

struct QATestItem {
  std::string question;
  std::string gold_answer;
  std::string gold_passage_id;
};

// Segmented report passages and their text index.
struct PassageCorpus {
  std::vector<Passage> passages;
  Index index;

  const Passage* find(const std::string& id) const;
};

// Throws DataError when the reports yield no passages.
PassageCorpus index_reports(const DocumentCollection& reports, const Lexicon& lexicon,
                            const SegmentationRules& rules = {}, const IndexParams& params = {});

// "question<TAB>gold_answer<TAB>gold_passage_id" per line.
std::vector<QATestItem> load_qa_testset(const std::filesystem::path& path);

}  // namespace spacetext
