#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spacetext/corpus.hpp"
#include "spacetext/lexicon.hpp"

namespace spacetext {

enum class EntityType { none, person, place, organization };
enum class RelationKind { hypernym, hyponym, synonym, related };

std::string to_string(EntityType t);
std::string to_string(RelationKind k);

struct Relation {
  RelationKind kind = RelationKind::related;
  std::string target;
  auto operator<=>(const Relation&) const = default;
};

struct Concept {
  std::string id;
  std::vector<std::string> lemmas;  // as written; first one is the display label
  std::string gloss;
  std::vector<std::string> domains;
  EntityType entity_type = EntityType::none;
  std::vector<Relation> relations;

  const std::string& label() const { return lemmas.front(); }
  bool operator==(const Concept&) const = default;
};

// Open lexico-semantic graph. Values are immutable once built; add_concepts
// returns a new graph.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  // Validates ids, lemma lists and relation targets, and repairs missing
  // inverse relations. Throws DataError listing every violation.
  static KnowledgeGraph build(std::vector<Concept> concepts, const Lexicon& lexicon);

  const std::map<std::string, Concept>& concepts() const { return concepts_; }
  const Concept* find(const std::string& id) const;
  std::size_t size() const { return concepts_.size(); }

  // Concept ids whose lemma or phrase normalizes to `key`.
  const std::vector<std::string>* lookup(const std::string& key) const;

  struct PhraseEntry {
    std::vector<std::string> lemmas;
    std::string key;
  };
  // Phrase entries starting with `head`, longest first.
  const std::vector<PhraseEntry>* phrases_with_head(const std::string& head) const;

  const std::map<std::string, std::vector<std::string>>& lemma_index() const {
    return lemma_index_;
  }

 private:
  std::map<std::string, Concept> concepts_;
  std::map<std::string, std::vector<std::string>> lemma_index_;
  std::map<std::string, std::vector<PhraseEntry>> head_index_;
};

KnowledgeGraph load_graph(const std::filesystem::path& path, const Lexicon& lexicon);
KnowledgeGraph parse_graph(const std::string& text, const Lexicon& lexicon,
                           const std::string& origin = "<memory>");
std::string format_graph(const KnowledgeGraph& kg);

// Throws DataError when an addition reuses an existing id with different content.
KnowledgeGraph add_concepts(const KnowledgeGraph& kg, const std::vector<Concept>& additions,
                            const Lexicon& lexicon);

struct ConceptMention {
  std::string concept_id;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string matched_lemma;
  std::vector<std::string> ambiguous_alternatives;
  bool operator==(const ConceptMention&) const = default;
};

// Greedy longest match over the lemma index, then a domain vote resolves
// ambiguous lemmas (ties to the lowest concept id).
std::vector<ConceptMention> annotate(std::string_view text, const KnowledgeGraph& kg,
                                     const Lexicon& lexicon);
std::vector<ConceptMention> annotate(const Document& doc, const KnowledgeGraph& kg,
                                     const Lexicon& lexicon);

// Text that annotate() and extract_metadata() analyze for a document.
std::string analysis_text(const Document& doc);

struct RankedItem {
  std::string key;
  std::string label;
  double score = 0.0;
  bool operator==(const RankedItem&) const = default;
};
using RankedList = std::vector<RankedItem>;

struct DocumentMetadata {
  RankedList domains;
  RankedList organizations;
  RankedList people;
  RankedList places;
  RankedList known_concepts;  // includes lemmas nested inside longer mentions
  RankedList unknown_concepts;
  RankedList main_syncons;
  RankedList main_groups;
  RankedList main_lemmas;
  RankedList main_sentences;
  bool operator==(const DocumentMetadata&) const = default;
};

// Concept document frequencies over a collection, for main_syncons IDF.
struct ConceptStats {
  std::size_t documents = 0;
  std::map<std::string, std::size_t> doc_freq;

  double idf(const std::string& concept_id) const;
};

ConceptStats concept_stats(const DocumentCollection& collection, const KnowledgeGraph& kg,
                           const Lexicon& lexicon);

struct MetadataOptions {
  std::size_t top_k = 10;
};

DocumentMetadata extract_metadata(const Document& doc, const std::vector<ConceptMention>& mentions,
                                  const KnowledgeGraph& kg, const Lexicon& lexicon,
                                  const ConceptStats& stats, const MetadataOptions& options = {});

// Metadata for every document of a collection, keyed by document id.
std::map<std::string, DocumentMetadata> extract_collection_metadata(const DocumentCollection& collection,
                                                                    const KnowledgeGraph& kg,
                                                                    const Lexicon& lexicon,
                                                                    const MetadataOptions& options = {});

// Sorts by score desc then key asc.
void sort_ranked(RankedList& list);

}  // namespace spacetext
