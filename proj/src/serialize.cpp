#include "spacetext/serialize.hpp"

namespace spacetext {

Json to_json(const Document& doc) {
  Json j;
  j["id"] = doc.id;
  j["source"] = to_string(doc.source);
  j["title"] = doc.title;
  j["body"] = doc.body;
  if (doc.date) j["date"] = format_date(*doc.date);
  if (!doc.fields_of_research.empty()) j["for_codes"] = doc.fields_of_research;
  if (!doc.keywords.empty()) j["keywords"] = doc.keywords;
  return j;
}

Json document_summary(const Document& doc) {
  Json j;
  j["id"] = doc.id;
  j["source"] = to_string(doc.source);
  j["title"] = doc.title;
  j["date"] = doc.date ? Json(format_date(*doc.date)) : Json(nullptr);
  return j;
}

Json to_json(const Passage& p) {
  return Json{{"id", p.id},
              {"doc_id", p.doc_id},
              {"section_path", p.section_path},
              {"char_start", p.char_start},
              {"char_end", p.char_end},
              {"text", p.text}};
}

Json to_json(const RankedList& list) {
  Json a = Json::array();
  for (const auto& r : list) a.push_back({{"key", r.key}, {"label", r.label}, {"score", r.score}});
  return a;
}

Json to_json(const DocumentMetadata& md) {
  return Json{{"domains", to_json(md.domains)},
              {"organizations", to_json(md.organizations)},
              {"people", to_json(md.people)},
              {"places", to_json(md.places)},
              {"known_concepts", to_json(md.known_concepts)},
              {"unknown_concepts", to_json(md.unknown_concepts)},
              {"main_syncons", to_json(md.main_syncons)},
              {"main_groups", to_json(md.main_groups)},
              {"main_lemmas", to_json(md.main_lemmas)},
              {"main_sentences", to_json(md.main_sentences)}};
}

Json to_json(const ConceptMention& m) {
  return Json{{"concept_id", m.concept_id},
              {"char_start", m.char_start},
              {"char_end", m.char_end},
              {"matched_lemma", m.matched_lemma},
              {"ambiguous_alternatives", m.ambiguous_alternatives}};
}

Json to_json(const SearchResult& r) {
  Json hits = Json::array();
  for (const auto& h : r.hits) {
    hits.push_back({{"unit_id", h.unit_id}, {"score", h.score}, {"matched_terms", h.matched_terms}});
  }
  return Json{{"empty_query", r.empty_query}, {"hits", hits}};
}

Json to_json(const AnswerSpan& a) {
  return Json{{"text", a.text},
              {"passage_id", a.passage_id},
              {"doc_id", a.doc_id},
              {"char_start", a.char_start},
              {"char_end", a.char_end},
              {"score", a.score}};
}

Json to_json(const QAResult& r) {
  Json primary = Json::array(), low = Json::array();
  for (const auto& a : r.primary_answers) primary.push_back(to_json(a));
  for (const auto& a : r.low_confidence_answers) low.push_back(to_json(a));
  Json passages = Json::object();
  for (const auto& [id, text] : r.passages) passages[id] = text;
  return Json{{"question", r.question},
              {"no_answer", r.no_answer},
              {"primary_answers", primary},
              {"low_confidence_answers", low},
              {"passages", passages}};
}

Json to_json(const RetrievalMetrics& m) {
  return Json{{"k", m.k},
              {"queries", m.queries},
              {"averaging", "macro"},
              {"recall_at_k", m.recall_at_k},
              {"mrr_at_k", m.mrr_at_k},
              {"accuracy_at_k", m.accuracy_at_k}};
}

Json to_json(const ReaderMetrics& m) {
  return Json{{"pairs", m.pairs},
              {"averaging", "macro"},
              {"precision", m.precision},
              {"recall", m.recall},
              {"f1", m.f1}};
}

Json to_json(const QuestionCandidate& c) {
  Json j{{"id", c.id},
         {"question", c.question},
         {"answer", c.answer},
         {"seed_answer", c.seed_answer},
         {"seed_type", c.seed_type},
         {"passage_id", c.passage_id},
         {"strategy", to_string(c.strategy)},
         {"status", to_string(c.status)},
         {"validation_score", c.validation_score}};
  j["seed_f1"] = c.seed_f1 ? Json(*c.seed_f1) : Json(nullptr);
  return j;
}

Json to_json(const std::vector<QuestionCandidate>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}

Json to_json(const Quiz& q) {
  Json trainer = Json::array();
  for (const auto& t : q.trainer_section) {
    trainer.push_back({{"question", t.question}, {"answer", t.answer}, {"passage", t.passage}});
  }
  return Json{{"title", q.title},
              {"trainee_section", q.trainee_section},
              {"trainer_section", trainer},
              {"rendered", render_quiz(q)}};
}

Json to_json(const TermStats& t) {
  return Json{{"term", t.term},
              {"f_special", t.f_special},
              {"f_general", t.f_general},
              {"weirdness", t.weirdness},
              {"known_in_kg", t.known_in_kg}};
}

Json to_json(const EnrichmentReport& r) {
  Json cats = Json::object();
  for (const auto& [cat, c] : r.categories) {
    Json selected = Json::array();
    for (const auto& t : c.selected) selected.push_back(to_json(t));
    cats[to_string(cat)] = {{"total", c.total},
                            {"known", c.known},
                            {"unknown", c.unknown},
                            {"pareto_selected", c.pareto_selected},
                            {"selected", selected}};
  }
  Json high = Json::array(), low = Json::array();
  for (const auto& t : r.highest_weirdness) high.push_back(to_json(t));
  for (const auto& t : r.lowest_weirdness) low.push_back(to_json(t));
  return Json{{"pareto_fraction", r.pareto_fraction},
              {"n_special", r.n_special},
              {"n_general", r.n_general},
              {"categories", cats},
              {"highest_weirdness", high},
              {"lowest_weirdness", low},
              {"notes", r.notes}};
}

namespace {

Json similar_list(const std::vector<SimilarDocument>& v) {
  Json a = Json::array();
  for (const auto& s : v) {
    a.push_back({{"id", s.doc_id}, {"similarity", s.similarity}, {"sharedConcepts", s.shared_concepts}});
  }
  return a;
}

}  // namespace

Json to_json(const NoveltyResult& r) {
  return Json{{"ideaId", r.idea_id},
              {"noveltyCalculated", r.novelty_calculated},
              {"noveltyScore", r.novelty_score},
              {"similarIdeas", similar_list(r.similar_ideas)},
              {"similarProjects", similar_list(r.similar_projects)}};
}

Json novelty_record(const Document& idea, const NoveltyResult& r) {
  Json j = to_json(idea);
  j["noveltyCalculated"] = r.novelty_calculated;
  j["noveltyScore"] = r.novelty_score;
  j["similarIdeas"] = similar_list(r.similar_ideas);
  j["similarProjects"] = similar_list(r.similar_projects);
  return j;
}

Json to_json(const SimilarityGraph& g) {
  Json nodes = Json::array(), edges = Json::array();
  for (const auto& n : g.nodes) nodes.push_back({{"id", n.id}, {"kind", n.kind}, {"label", n.label}});
  for (const auto& e : g.edges) edges.push_back({{"source", e.a}, {"target", e.b}, {"weight", e.weight}});
  return Json{{"min_sim", g.min_sim}, {"nodes", nodes}, {"edges", edges}};
}

Json to_json(const Partition& p, const SimilarityGraph& g) {
  Json assignment = Json::object();
  for (std::size_t i = 0; i < g.nodes.size() && i < p.community.size(); ++i) {
    assignment[g.nodes[i].id] = p.community[i];
  }
  return Json{{"seed", p.seed},
              {"resolution", p.resolution},
              {"modularity", p.modularity},
              {"communities", p.community_count()},
              {"level_modularity", p.level_modularity},
              {"assignment", assignment}};
}

Json to_json(const std::vector<ClusterTopic>& topics) {
  Json a = Json::array();
  for (const auto& t : topics) {
    Json concepts = Json::array();
    for (const auto& [label, f] : t.concepts) concepts.push_back({{"concept", label}, {"frequency", f}});
    a.push_back({{"community", t.community}, {"size", t.members.size()}, {"members", t.members},
                 {"concepts", concepts}});
  }
  return a;
}

}  // namespace spacetext
