#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spacetext/lexicon.hpp"

namespace spacetext {

enum class Scorer { bm25, tfidf };
std::string to_string(Scorer s);
Scorer scorer_from_string(const std::string& s);

// A retrievable unit (document or passage) with pre-analyzed fields.
struct IndexUnit {
  std::string id;
  std::string group;  // owning document id; equals id for whole documents
  std::string text;   // stored, returned to readers
  std::map<std::string, std::vector<std::string>> fields;
};

struct IndexParams {
  double k1 = 1.2;
  double b = 0.75;
  std::map<std::string, double> field_weights = {
      {"text", 1.0}, {"main_lemmas", 2.0}, {"main_syncons", 2.0}};

  double weight(const std::string& field) const;
};

struct Posting {
  std::uint32_t unit = 0;
  std::uint32_t tf = 0;
  bool operator==(const Posting&) const = default;
};

struct Hit {
  std::string unit_id;
  double score = 0.0;
  std::vector<std::string> matched_terms;
};

struct SearchResult {
  std::vector<Hit> hits;
  bool empty_query = false;
};

using SparseVector = std::map<std::string, double>;

// Plain cosine; 0 when either vector is all-zero.
double sparse_cosine(const SparseVector& a, const SparseVector& b);

struct CosineResult {
  double value = 0.0;
  bool zero_vector = false;
};

// Immutable field-aware inverted index.
class Index {
 public:
  Index() = default;

  // Throws DataError on duplicate unit ids or an empty unit list.
  static Index build(std::vector<IndexUnit> units, IndexParams params = {});

  std::size_t unit_count() const { return units_.size(); }
  const std::string& unit_id(std::size_t u) const { return units_[u].id; }
  const std::string& unit_group(std::size_t u) const { return units_[u].group; }
  const std::string& unit_text(std::size_t u) const { return units_[u].text; }
  std::optional<std::size_t> find(const std::string& unit_id) const;
  bool has_group(const std::string& group) const;
  const IndexParams& params() const { return params_; }

  std::vector<std::string> fields() const;
  const std::vector<Posting>* postings(const std::string& field, const std::string& term) const;
  std::size_t doc_freq(const std::string& field, const std::string& term) const;
  std::uint32_t length(std::size_t unit, const std::string& field) const;
  double average_length(const std::string& field) const;
  // Term frequencies of one unit's field.
  const std::map<std::string, std::uint32_t>& terms(std::size_t unit, const std::string& field) const;

  double bm25_idf(const std::string& field, const std::string& term) const;
  // Smoothed: ln((1 + Nu) / (1 + df)) + 1.
  double tfidf_idf(const std::string& field, const std::string& term) const;

  // Ranks units against analyzed query terms. Units with zero score are
  // never returned. `group` restricts ranking to one document's units.
  SearchResult search_terms(const std::vector<std::string>& query_terms, std::size_t k, Scorer scorer,
                            const std::optional<std::string>& group = std::nullopt) const;

  // Field-weighted TF-IDF vector; `weights` overrides the index weights.
  SparseVector tfidf_vector(std::size_t unit,
                            const std::map<std::string, double>* weights = nullptr) const;

  CosineResult cosine(const std::string& a, const std::string& b,
                      const std::map<std::string, double>* weights = nullptr) const;

  std::string to_bytes() const;
  static Index from_bytes(const std::string& bytes);
  void save(const std::filesystem::path& path) const;
  static Index load(const std::filesystem::path& path);

 private:
  struct Unit {
    std::string id;
    std::string group;
    std::string text;
  };
  struct Field {
    std::map<std::string, std::vector<Posting>> postings;
    std::vector<std::uint32_t> lengths;
    std::uint64_t total_length = 0;
  };

  void finish();

  IndexParams params_;
  std::vector<Unit> units_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::string, Field> fields_;
  // unit -> field -> term -> tf
  std::vector<std::map<std::string, std::map<std::string, std::uint32_t>>> forward_;
};

inline constexpr std::uint32_t kIndexFormatVersion = 1;

// Query analysis shared by search and QA: content lemmas of `query`.
SearchResult search(const Index& index, const Lexicon& lexicon, std::string_view query,
                    std::size_t k, Scorer scorer = Scorer::bm25,
                    const std::optional<std::string>& group = std::nullopt);

// Builds one unit per passage-like record with a single "text" field.
IndexUnit text_unit(std::string id, std::string group, std::string text, const Lexicon& lexicon);

struct RetrievalQuery {
  std::string query;
  std::vector<std::string> gold;
};

struct RetrievalMetrics {
  double recall_at_k = 0.0;
  double mrr_at_k = 0.0;
  double accuracy_at_k = 0.0;
  std::size_t k = 10;
  std::size_t queries = 0;
};

// Metrics from already-ranked id lists (one per query, best first).
RetrievalMetrics retrieval_metrics(const std::vector<std::vector<std::string>>& rankings,
                                   const std::vector<std::vector<std::string>>& gold, std::size_t k);

RetrievalMetrics eval_retrieval(const Index& index, const Lexicon& lexicon,
                                const std::vector<RetrievalQuery>& testset, std::size_t k = 10,
                                Scorer scorer = Scorer::bm25);

// "query<TAB>gold1|gold2|..." per line.
std::vector<RetrievalQuery> load_retrieval_testset(const std::filesystem::path& path);

}  // namespace spacetext
