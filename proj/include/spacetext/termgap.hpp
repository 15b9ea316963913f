#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "spacetext/corpus.hpp"
#include "spacetext/kgraph.hpp"
#include "spacetext/lexicon.hpp"

namespace spacetext {

// Token count N and per-term frequencies of a corpus. N includes stopwords;
// the frequency map does not.
struct CorpusStats {
  std::uint64_t total_tokens = 0;
  std::map<std::string, std::uint64_t> freq;

  std::uint64_t frequency(const std::string& term) const;
};

enum class TermUnit { lemma, surface };

// Throws DataError when the collection contains no tokens.
CorpusStats corpus_stats(const DocumentCollection& collection, const Lexicon& lexicon,
                         TermUnit unit = TermUnit::lemma);

// Stats file: "N=<int>" header, then "term<TAB>count" lines.
CorpusStats load_stats(const std::filesystem::path& path);
CorpusStats parse_stats(const std::string& text, const std::string& origin = "<memory>");
std::string format_stats(const CorpusStats& stats);

// W = (N_G * f_S) / ((1 + f_G) * N_S). Throws DataError if either corpus is empty.
double weirdness(const std::string& term, const CorpusStats& special, const CorpusStats& general);
double weirdness(std::uint64_t f_special, std::uint64_t n_special, std::uint64_t f_general,
                 std::uint64_t n_general);

struct TermStats {
  std::string term;
  std::uint64_t f_special = 0;
  std::uint64_t f_general = 0;
  std::uint64_t n_special = 0;
  std::uint64_t n_general = 0;
  double weirdness = 0.0;
  bool known_in_kg = false;
};

enum class TermCategory { lemmas, groups, persons, places, organizations };
std::string to_string(TermCategory c);
inline constexpr TermCategory kTermCategories[] = {
    TermCategory::lemmas, TermCategory::groups, TermCategory::persons, TermCategory::places,
    TermCategory::organizations};

struct CategoryReport {
  std::size_t known = 0;
  std::size_t unknown = 0;
  std::size_t pareto_selected = 0;
  std::size_t total = 0;
  std::vector<TermStats> unknown_terms;  // frequency desc, then term
  std::vector<TermStats> selected;       // first pareto_selected of unknown_terms
};

struct EnrichmentReport {
  double pareto_fraction = 0.2;
  std::uint64_t n_special = 0;
  std::uint64_t n_general = 0;
  std::map<TermCategory, CategoryReport> categories;
  std::vector<TermStats> highest_weirdness;  // W desc, then term
  std::vector<TermStats> lowest_weirdness;   // W asc, then term
  std::vector<std::string> notes;
};

struct GapOptions {
  double pareto_fraction = 0.20;
  std::size_t table_size = 10;
};

// Every lemma (stopwords and numbers excluded) in the collection, ranked by W
// descending with ties by term.
std::vector<TermStats> rank_by_weirdness(const CorpusStats& special, const CorpusStats& general,
                                         const KnowledgeGraph* kg = nullptr);

// Named-entity candidates that the knowledge graph does not cover, typed by
// surface cues (organisation and place head words, honorifics).
struct EntityCandidate {
  std::string surface;
  EntityType type = EntityType::none;
};
std::vector<EntityCandidate> guess_entities(std::string_view text, const Lexicon& lexicon);

EnrichmentReport gap_report(const DocumentCollection& collection, const KnowledgeGraph& kg,
                            const CorpusStats& general, const Lexicon& lexicon,
                            const GapOptions& options = {});

// Aligned-column rendering of the counts table and the weirdness table.
std::string render_report(const EnrichmentReport& report);

// Unknown terms of a report turned into concept candidates ("cand:<term>").
std::vector<Concept> enrichment_candidates(const EnrichmentReport& report, TermCategory category,
                                           std::size_t limit);

}  // namespace spacetext
