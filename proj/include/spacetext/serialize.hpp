#pragma once

#include <vector>

#include "json.hpp"
#include "spacetext/corpus.hpp"
#include "spacetext/index.hpp"
#include "spacetext/kgraph.hpp"
#include "spacetext/novelty.hpp"
#include "spacetext/qa.hpp"
#include "spacetext/quizgen.hpp"
#include "spacetext/termgap.hpp"

// JSON views of library results. The CLI and the HTTP service both emit
// exactly these objects.
namespace spacetext {

using Json = nlohmann::ordered_json;

Json to_json(const Document& doc);
Json document_summary(const Document& doc);  // id, source, title, date
Json to_json(const Passage& p);
Json to_json(const RankedList& list);
Json to_json(const DocumentMetadata& md);
Json to_json(const ConceptMention& m);
Json to_json(const SearchResult& r);
Json to_json(const AnswerSpan& a);
Json to_json(const QAResult& r);
Json to_json(const RetrievalMetrics& m);
Json to_json(const ReaderMetrics& m);
Json to_json(const QuestionCandidate& c);
Json to_json(const std::vector<QuestionCandidate>& cs);
Json to_json(const Quiz& q);
Json to_json(const TermStats& t);
Json to_json(const EnrichmentReport& r);
Json to_json(const NoveltyResult& r);
Json to_json(const SimilarityGraph& g);
Json to_json(const Partition& p, const SimilarityGraph& g);
Json to_json(const std::vector<ClusterTopic>& topics);

// Corpus record of an idea with the novelty keys appended.
Json novelty_record(const Document& idea, const NoveltyResult& r);

}  // namespace spacetext
