#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spacetext/corpus.hpp"
#include "spacetext/index.hpp"
#include "spacetext/kgraph.hpp"
#include "spacetext/lexicon.hpp"
#include "spacetext/louvain.hpp"

namespace spacetext {

struct NoveltyOptions {
  std::size_t top_similar = 5;
  std::size_t keyword_count = 10;
  std::map<std::string, double> field_weights = {{"main_lemmas", 1.0}, {"main_syncons", 1.0}, {"keywords", 1.0}};
};

// Similarity store over a fixed pool of documents (ideas, studies, projects).
// Each document is a field-weighted TF-IDF vector over its main lemmas, main
// concepts and top title+body keywords; idf is computed over the pool.
class NoveltyIndex {
 public:
  NoveltyIndex() = default;

  // Every pool document needs an entry in `metadata`.
  static NoveltyIndex build(const DocumentCollection& pool,
                            const std::map<std::string, DocumentMetadata>& metadata, const Lexicon& lexicon,
                            NoveltyOptions options = {});

  bool contains(const std::string& id) const { return vectors_.count(id) > 0; }
  const std::vector<std::string>& ids() const { return ids_; }
  const Document& document(const std::string& id) const;
  const DocumentMetadata& metadata(const std::string& id) const;
  const std::vector<std::string>& keywords(const std::string& id) const;
  const SparseVector& vector(const std::string& id) const;
  const NoveltyOptions& options() const { return options_; }

  // Cosine in [0, 1]; symmetric. Throws NotFound for documents without
  // extracted metadata.
  double similarity(const std::string& a, const std::string& b) const;

 private:
  NoveltyOptions options_;
  std::vector<std::string> ids_;
  std::map<std::string, Document> docs_;
  std::map<std::string, DocumentMetadata> metadata_;
  std::map<std::string, std::vector<std::string>> keywords_;
  std::map<std::string, SparseVector> vectors_;
};

// Top-n title+body lemmas by TF-IDF over `pool`, ties by term.
std::map<std::string, std::vector<std::string>> tfidf_keywords(const DocumentCollection& pool,
                                                               const Lexicon& lexicon, std::size_t n);

struct SimilarDocument {
  std::string doc_id;
  double similarity = 0.0;
  std::vector<std::string> shared_concepts;  // labels, sorted
  bool operator==(const SimilarDocument&) const = default;
};

struct NoveltyResult {
  std::string idea_id;
  bool novelty_calculated = false;
  double novelty_score = 0.0;  // 100 * (1 - max similarity)
  std::vector<SimilarDocument> similar_ideas;
  std::vector<SimilarDocument> similar_projects;  // studies and projects
  bool operator==(const NoveltyResult&) const = default;
};

// Throws DataError when the idea is a member of `ideas`.
NoveltyResult novelty_score(const NoveltyIndex& index, const std::string& idea_id,
                            const std::vector<std::string>& ideas, const std::vector<std::string>& studies,
                            const std::vector<std::string>& projects);

// Shared known concepts of two documents, as sorted labels.
std::vector<std::string> shared_concepts(const DocumentMetadata& a, const DocumentMetadata& b);

struct GraphNode {
  std::string id;
  std::string kind;
  std::string label;
  bool operator==(const GraphNode&) const = default;
};

struct GraphEdge {
  std::string a;
  std::string b;
  double weight = 0.0;
  bool operator==(const GraphEdge&) const = default;
};

struct SimilarityGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;  // a precedes b in node order
  double min_sim = 0.15;
};

// Pairs are scored in parallel; output order is deterministic.
SimilarityGraph build_similarity_graph(const NoveltyIndex& index, const std::vector<std::string>& ids,
                                       double min_sim = 0.15);

WeightedGraph to_weighted(const SimilarityGraph& graph);

// node<TAB>id<TAB>kind<TAB>label and edge<TAB>a<TAB>b<TAB>weight lines.
std::string format_graph_records(const SimilarityGraph& graph);
std::string to_gexf(const SimilarityGraph& graph, const Partition* partition = nullptr);

struct ClusterTopic {
  std::size_t community = 0;
  std::vector<std::string> members;
  std::vector<std::pair<std::string, double>> concepts;  // label, summed frequency
};

// Communities by size desc, then id. Concept frequencies are summed over
// members' known concepts; top_n by frequency, ties by label.
std::vector<ClusterTopic> cluster_topics(const SimilarityGraph& graph, const Partition& partition,
                                         const NoveltyIndex& index, std::size_t top_n = 10);

// "size | concept, concept, ..." per community.
std::string render_cluster_table(const std::vector<ClusterTopic>& topics);

}  // namespace spacetext
