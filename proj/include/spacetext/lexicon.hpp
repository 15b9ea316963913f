#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace spacetext {

struct Token {
  std::string surface;  // exact slice of the source text
  std::string key;      // ASCII case-folded surface
  std::string lemma;
  std::size_t start = 0;
  std::size_t end = 0;
  bool is_stopword = false;
  bool is_numeric = false;
};

struct TextRange {
  std::size_t start = 0;
  std::size_t end = 0;
  bool operator==(const TextRange&) const = default;
};

// Token index range [first, last) of a maximal stopword-free run.
struct Chunk {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const { return last - first; }
};

struct PhraseCandidate {
  std::vector<std::string> lemmas;
  std::string surface;  // first occurrence as written
  std::size_t count = 0;

  std::string key() const;  // lemmas joined by single spaces
};

struct DocumentCollection;

// Tokenizer, rule-based lemmatizer and stopword list. Immutable after
// construction; share one instance across threads.
class Lexicon {
 public:
  // Built-in English stopwords and lemma exception table.
  Lexicon();

  // Either path may be empty to keep the built-in resource.
  static Lexicon from_files(const std::filesystem::path& stopwords,
                            const std::filesystem::path& exceptions);

  std::vector<Token> tokenize(std::string_view text) const;
  std::string lemmatize(std::string_view word) const;
  bool is_stopword(std::string_view word) const;

  // Analyzed lemma terms of `text` with stopwords and pure numbers removed.
  std::vector<std::string> content_lemmas(std::string_view text) const;
  // content_lemmas() case-folded, so "ATHENA" and "Athena" meet in an index.
  std::vector<std::string> index_terms(std::string_view text) const;

  // Lemma key of a multi-word string ("Sea-surface temperatures" ->
  // "sea surface temperature").
  std::string phrase_key(std::string_view phrase) const;

  const std::unordered_set<std::string>& stopwords() const { return stopwords_; }

 private:
  std::string apply_rules(std::string word) const;

  std::unordered_set<std::string> stopwords_;
  std::unordered_map<std::string, std::string> exceptions_;
  std::unordered_set<std::string> exception_targets_;
};

// Offsets of sentences in `text`, trimmed of surrounding whitespace.
std::vector<TextRange> split_sentences(std::string_view text);

// Maximal runs of tokens that are neither stopwords nor numbers and are
// separated only by whitespace or hyphens.
std::vector<Chunk> stopword_free_chunks(const std::vector<Token>& tokens,
                                        std::string_view text);

// Maximal stopword-free lemma n-grams (n = 2..4) with count >= min_count,
// sorted by count desc then key. Chunks longer than four tokens contribute
// each of their 4-token windows.
std::vector<PhraseCandidate> extract_mwes(const DocumentCollection& collection,
                                          const Lexicon& lexicon, std::size_t min_count);

// Same extraction over a single text; min_count 1.
std::vector<PhraseCandidate> extract_mwes(std::string_view text, const Lexicon& lexicon,
                                          std::size_t min_count = 1);

std::string to_lower_ascii(std::string_view s);

}  // namespace spacetext
