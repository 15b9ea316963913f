#include "spacetext/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "spacetext/corpus.hpp"
#include "spacetext/error.hpp"

namespace spacetext {
namespace {

constexpr std::string_view kStopwords[] = {
    "a",       "about",    "above",   "after",    "again",     "against", "all",
    "also",    "am",       "among",   "an",       "and",       "any",     "are",
    "as",      "at",       "be",      "because",  "been",      "before",  "being",
    "below",   "between",  "both",    "but",      "by",        "can",     "could",
    "d",       "did",      "do",      "does",     "doing",     "don",     "down",
    "during",  "each",     "either",  "else",     "etc",       "even",    "ever",
    "every",   "few",      "for",     "from",     "further",   "had",     "has",
    "have",    "having",   "he",      "her",      "here",      "hers",    "herself",
    "him",     "himself",  "his",     "how",      "however",   "i",       "if",
    "in",      "into",     "is",      "it",       "its",       "itself",  "just",
    "ll",      "m",        "may",     "me",       "might",     "more",    "most",
    "must",    "my",       "myself",  "neither",  "no",        "nor",     "not",
    "now",     "o",        "of",      "off",      "on",        "once",    "only",
    "or",      "other",    "ought",   "our",      "ours",      "ourselves", "out",
    "over",    "own",      "per",     "re",       "s",         "same",    "shall",
    "she",     "should",   "since",   "so",       "some",      "such",    "t",
    "than",    "that",     "the",     "their",    "theirs",    "them",    "themselves",
    "then",    "there",    "thereby", "therefore", "these",    "they",    "this",
    "those",   "though",   "through", "thus",     "to",        "too",     "under",
    "until",   "up",       "upon",    "us",       "ve",        "very",    "via",
    "was",     "we",       "were",    "what",     "whatever",  "when",    "whenever",
    "where",   "whereas",  "whether", "which",    "while",     "who",     "whom",
    "whose",   "why",      "will",    "with",     "within",    "without", "would",
    "y",       "yet",      "you",     "your",     "yours",     "yourself", "yourselves",
    "onto",    "across",   "along",   "around",   "beyond",    "towards", "toward",
    "throughout", "besides", "namely", "whereby", "wherein",   "hence",   "already",
    "always",  "often",    "never",   "much",     "many",      "several", "another",
};

// Irregular forms and words the suffix rules would damage.
constexpr std::pair<std::string_view, std::string_view> kExceptions[] = {
    {"analyses", "analysis"},   {"axes", "axis"},          {"bases", "basis"},
    {"bias", "bias"},           {"biases", "bias"},        {"atlas", "atlas"},
    {"gas", "gas"},             {"gases", "gas"},          {"lens", "lens"},
    {"lenses", "lens"},         {"canvas", "canvas"},      {"chaos", "chaos"},
    {"children", "child"},      {"crises", "crisis"},      {"criteria", "criterion"},
    {"data", "data"},           {"dynamics", "dynamics"},  {"economics", "economics"},
    {"electronics", "electronics"}, {"feet", "foot"},      {"geese", "goose"},
    {"hypotheses", "hypothesis"}, {"indices", "index"},    {"logistics", "logistics"},
    {"mathematics", "mathematics"}, {"matrices", "matrix"}, {"media", "medium"},
    {"men", "man"},             {"mice", "mouse"},         {"news", "news"},
    {"optics", "optics"},       {"people", "people"},      {"phenomena", "phenomenon"},
    {"physics", "physics"},     {"politics", "politics"},  {"series", "series"},
    {"species", "species"},     {"spectra", "spectrum"},   {"statistics", "statistics"},
    {"teeth", "tooth"},         {"vertices", "vertex"},    {"women", "woman"},
    {"went", "go"},             {"gone", "go"},            {"made", "make"},
    {"making", "make"},         {"built", "build"},        {"taken", "take"},
    {"took", "take"},           {"given", "give"},         {"gave", "give"},
    {"found", "find"},          {"led", "lead"},           {"sent", "send"},
    {"seen", "see"},            {"saw", "see"},            {"chosen", "choose"},
    {"written", "write"},       {"wrote", "write"},        {"flown", "fly"},
    {"flew", "fly"},            {"held", "hold"},          {"kept", "keep"},
    {"brought", "bring"},       {"thought", "think"},      {"bought", "buy"},
    {"caught", "catch"},        {"began", "begin"},        {"begun", "begin"},
    {"ran", "run"},             {"got", "get"},            {"lost", "lose"},
    {"meant", "mean"},          {"means", "means"},        {"uses", "use"},
    {"used", "use"},            {"using", "use"},          {"causes", "cause"},
    {"caused", "cause"},        {"sources", "source"},     {"surfaces", "surface"},
    {"purposes", "purpose"},    {"responses", "response"}, {"processes", "process"},
    {"focuses", "focus"},       {"focused", "focus"},      {"status", "status"},
    {"campus", "campus"},       {"nucleus", "nucleus"},    {"radius", "radius"},
    {"apparatus", "apparatus"}, {"plus", "plus"},          {"thesis", "thesis"},
    {"measuring", "measure"},   {"measured", "measure"},   {"requires", "require"},
    {"required", "require"},    {"requiring", "require"},  {"provides", "provide"},
    {"provided", "provide"},    {"providing", "provide"},  {"includes", "include"},
    {"included", "include"},    {"including", "include"},  {"ensures", "ensure"},
    {"ensured", "ensure"},      {"ensuring", "ensure"},    {"sizes", "size"},
    {"sampling", "sample"},     {"sampled", "sample"},     {"samples", "sample"},
    {"modelling", "modelling"}, {"modeling", "modelling"}, {"nitrogen", "nitrogen"},
};

bool is_vowel_at(const std::string& w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return true;
    case 'y':
      return i > 0 && !is_vowel_at(w, i - 1);
    default:
      return false;
  }
}

bool contains_vowel(const std::string& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel_at(w, i)) return true;
  }
  return false;
}

// Number of vowel-consonant sequences.
int measure(const std::string& w) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool v = is_vowel_at(w, i);
    if (!v && prev_vowel) ++m;
    prev_vowel = v;
  }
  return m;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool ends_cvc(const std::string& w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  if (is_vowel_at(w, n - 1) || !is_vowel_at(w, n - 2) || is_vowel_at(w, n - 3)) return false;
  const char last = w[n - 1];
  return last != 'w' && last != 'x' && last != 'y';
}

std::string restore_stem(std::string stem) {
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) return stem + "e";
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel_at(stem, n - 1) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
  return stem;
}

bool is_separator_codepoint(std::string_view text, std::size_t i, std::size_t* len) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  if (b0 == 0xC2 && i + 1 < text.size()) {
    const auto b1 = static_cast<unsigned char>(text[i + 1]);
    // NBSP, inverted marks, guillemets, middle dot
    if (b1 == 0xA0 || b1 == 0xAB || b1 == 0xBB || b1 == 0xB7 || b1 == 0xA1 || b1 == 0xBF) {
      *len = 2;
      return true;
    }
  }
  if (b0 == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80) {
    const auto b2 = static_cast<unsigned char>(text[i + 2]);
    // U+2010..U+2027: dashes, quotes, bullets, ellipsis
    if (b2 >= 0x90 && b2 <= 0xA7) {
      *len = 3;
      return true;
    }
  }
  return false;
}

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

bool is_numeric_surface(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return digit;
}

bool is_acronym(std::string_view s) {
  int letters = 0;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (std::islower(u)) return false;
    if (std::isupper(u)) ++letters;
  }
  return letters >= 2;
}

bool has_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string PhraseCandidate::key() const {
  std::string out;
  for (const auto& l : lemmas) {
    if (!out.empty()) out += ' ';
    out += l;
  }
  return out;
}

Lexicon::Lexicon() {
  for (auto w : kStopwords) stopwords_.emplace(w);
  for (auto [surface, lemma] : kExceptions) {
    exceptions_.emplace(surface, lemma);
    exception_targets_.emplace(lemma);
  }
}

Lexicon Lexicon::from_files(const std::filesystem::path& stopwords,
                            const std::filesystem::path& exceptions) {
  Lexicon lex;
  if (!stopwords.empty()) {
    lex.stopwords_.clear();
    for (auto& line : read_lines(stopwords)) lex.stopwords_.insert(to_lower_ascii(line));
  }
  if (!exceptions.empty()) {
    lex.exceptions_.clear();
    lex.exception_targets_.clear();
    std::size_t lineno = 0;
    for (auto& line : read_lines(exceptions)) {
      ++lineno;
      const auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
        throw DataError(exceptions.string() + ": entry " + std::to_string(lineno) +
                        ": expected surface<TAB>lemma");
      }
      auto lemma = line.substr(tab + 1);
      lex.exceptions_[to_lower_ascii(line.substr(0, tab))] = lemma;
      lex.exception_targets_.insert(lemma);
    }
  }
  return lex;
}

bool Lexicon::is_stopword(std::string_view word) const {
  return stopwords_.count(to_lower_ascii(word)) > 0;
}

std::string Lexicon::apply_rules(std::string w) const {
  // Bounded fixpoint: every rule shortens the word or replaces a suffix
  // with a shorter one, so this terminates well before the bound.
  for (int round = 0; round < 8; ++round) {
    if (exception_targets_.count(w)) return w;
    if (auto it = exceptions_.find(w); it != exceptions_.end()) return it->second;
    std::string next = w;
    const std::size_t n = w.size();
    if (n > 4 && (ends_with(w, "ies") || ends_with(w, "ied"))) {
      next = w.substr(0, n - 3) + "y";
    } else if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "ches") ||
               ends_with(w, "shes") || ends_with(w, "zzes")) {
      next = w.substr(0, n - 2);
    } else if (n > 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
               !ends_with(w, "is")) {
      next = w.substr(0, n - 1);
    } else if (n > 5 && ends_with(w, "ing")) {
      auto stem = w.substr(0, n - 3);
      if (stem.size() >= 3 && contains_vowel(stem)) next = restore_stem(stem);
    } else if (n > 4 && ends_with(w, "ed") && !ends_with(w, "eed")) {
      auto stem = w.substr(0, n - 2);
      if (stem.size() >= 3 && contains_vowel(stem)) next = restore_stem(stem);
    }
    if (next == w) return w;
    w = std::move(next);
  }
  return w;
}

std::string Lexicon::lemmatize(std::string_view word) const {
  if (word.empty()) return {};
  const std::string lower = to_lower_ascii(word);
  if (auto it = exceptions_.find(lower); it != exceptions_.end()) return it->second;
  if (exception_targets_.count(std::string(word))) return std::string(word);
  if (has_digit(word) || is_acronym(word)) return std::string(word);
  const bool ascii = std::all_of(word.begin(), word.end(),
                                 [](char c) { return static_cast<unsigned char>(c) < 0x80; });
  if (!ascii) return lower;
  return apply_rules(lower);
}

std::vector<Token> Lexicon::tokenize(std::string_view text) const {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    std::size_t sep_len = 0;
    const auto c = static_cast<unsigned char>(text[i]);
    if (!is_word_byte(c) || is_separator_codepoint(text, i, &sep_len)) {
      i += sep_len ? sep_len : 1;
      continue;
    }
    const std::size_t start = i;
    while (i < n) {
      const auto b = static_cast<unsigned char>(text[i]);
      if (is_separator_codepoint(text, i, &sep_len)) break;
      if (is_word_byte(b)) {
        ++i;
        continue;
      }
      // Decimal point or thousands separator between digits.
      if ((b == '.' || b == ',') && i > start && i + 1 < n &&
          std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
          std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        continue;
      }
      break;
    }
    std::string_view surface = text.substr(start, i - start);
    // Possessive "'s" is treated as a separator.
    if (surface == "s" && start > 0 && (text[start - 1] == '\'' ||
                                        (start >= 3 && text.substr(start - 3, 3) == "\xE2\x80\x99"))) {
      continue;
    }
    Token t;
    t.surface = std::string(surface);
    t.key = to_lower_ascii(surface);
    t.start = start;
    t.end = i;
    t.is_stopword = stopwords_.count(t.key) > 0;
    t.is_numeric = is_numeric_surface(surface);
    t.lemma = lemmatize(surface);
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<std::string> Lexicon::content_lemmas(std::string_view text) const {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) {
    if (t.is_stopword || t.is_numeric) continue;
    out.push_back(std::move(t.lemma));
  }
  return out;
}

std::vector<std::string> Lexicon::index_terms(std::string_view text) const {
  auto out = content_lemmas(text);
  for (auto& t : out) t = to_lower_ascii(t);
  return out;
}

std::string Lexicon::phrase_key(std::string_view phrase) const {
  std::string out;
  for (const auto& t : tokenize(phrase)) {
    if (!out.empty()) out += ' ';
    out += t.lemma;
  }
  return out;
}

std::vector<TextRange> split_sentences(std::string_view text) {
  std::vector<TextRange> out;
  const std::size_t n = text.size();
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  auto emit = [&](std::size_t s, std::size_t e) {
    while (s < e && is_space(text[s])) ++s;
    while (e > s && is_space(text[e - 1])) --e;
    if (e > s) out.push_back({s, e});
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      while (j < n && (text[j] == '"' || text[j] == ')' || text[j] == '\'')) ++j;
      if (j == n || is_space(text[j])) {
        emit(start, j);
        start = j;
        i = j - 1;
      }
    } else if (c == '\n' && i + 1 < n) {
      // Blank line ends a sentence even without punctuation.
      std::size_t j = i + 1;
      while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < n && text[j] == '\n') {
        emit(start, i);
        start = j;
        i = j - 1;
      }
    }
  }
  emit(start, n);
  return out;
}

std::vector<Chunk> stopword_free_chunks(const std::vector<Token>& tokens, std::string_view text) {
  std::vector<Chunk> chunks;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i].is_stopword || tokens[i].is_numeric) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size() && !tokens[j].is_stopword && !tokens[j].is_numeric) {
      const auto gap = text.substr(tokens[j - 1].end, tokens[j].start - tokens[j - 1].end);
      const bool joinable = std::all_of(gap.begin(), gap.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '-';
      });
      if (!joinable) break;
      ++j;
    }
    chunks.push_back({i, j});
    i = j;
  }
  return chunks;
}

namespace {

struct MweAccumulator {
  std::map<std::vector<std::string>, PhraseCandidate> by_lemmas;

  void add(const std::vector<Token>& tokens, std::string_view text, std::size_t first,
           std::size_t last) {
    std::vector<std::string> lemmas;
    for (std::size_t k = first; k < last; ++k) lemmas.push_back(tokens[k].lemma);
    auto& cand = by_lemmas[lemmas];
    if (cand.count == 0) {
      cand.lemmas = lemmas;
      cand.surface = std::string(text.substr(tokens[first].start,
                                             tokens[last - 1].end - tokens[first].start));
    }
    ++cand.count;
  }

  void scan(std::string_view text, const Lexicon& lexicon) {
    const auto tokens = lexicon.tokenize(text);
    for (const auto& ch : stopword_free_chunks(tokens, text)) {
      if (ch.size() < 2) continue;
      if (ch.size() <= 4) {
        add(tokens, text, ch.first, ch.last);
      } else {
        for (std::size_t s = ch.first; s + 4 <= ch.last; ++s) add(tokens, text, s, s + 4);
      }
    }
  }

  std::vector<PhraseCandidate> finish(std::size_t min_count) {
    std::vector<PhraseCandidate> out;
    for (auto& [_, cand] : by_lemmas) {
      if (cand.count >= min_count) out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [](const PhraseCandidate& a, const PhraseCandidate& b) {
      if (a.count != b.count) return a.count > b.count;
      return a.key() < b.key();
    });
    return out;
  }
};

}  // namespace

std::vector<PhraseCandidate> extract_mwes(const DocumentCollection& collection,
                                          const Lexicon& lexicon, std::size_t min_count) {
  MweAccumulator acc;
  for (const auto& doc : collection.docs) {
    acc.scan(doc.title, lexicon);
    acc.scan(doc.body, lexicon);
  }
  return acc.finish(std::max<std::size_t>(min_count, 1));
}

std::vector<PhraseCandidate> extract_mwes(std::string_view text, const Lexicon& lexicon,
                                          std::size_t min_count) {
  MweAccumulator acc;
  acc.scan(text, lexicon);
  return acc.finish(std::max<std::size_t>(min_count, 1));
}

}  // namespace spacetext
