#include "spacetext/novelty.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

#include "spacetext/error.hpp"

namespace spacetext {

std::map<std::string, std::vector<std::string>> tfidf_keywords(const DocumentCollection& pool,
                                                               const Lexicon& lexicon, std::size_t n) {
  std::map<std::string, std::map<std::string, double>> tf;
  std::map<std::string, std::size_t> df;
  for (const auto& d : pool.docs) {
    auto& counts = tf[d.id];
    for (const auto& l : lexicon.content_lemmas(analysis_text(d))) counts[l] += 1.0;
    for (const auto& [l, _] : counts) ++df[l];
  }
  const double size = static_cast<double>(pool.docs.size());
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& d : pool.docs) {
    std::vector<std::pair<std::string, double>> scored;
    for (const auto& [l, c] : tf[d.id]) {
      scored.push_back({l, c * (std::log((1.0 + size) / (1.0 + static_cast<double>(df[l]))) + 1.0)});
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    auto& kw = out[d.id];
    for (std::size_t i = 0; i < scored.size() && i < n; ++i) kw.push_back(scored[i].first);
  }
  return out;
}

NoveltyIndex NoveltyIndex::build(const DocumentCollection& pool,
                                 const std::map<std::string, DocumentMetadata>& metadata,
                                 const Lexicon& lexicon, NoveltyOptions options) {
  NoveltyIndex ni;
  ni.options_ = std::move(options);
  if (pool.docs.empty()) return ni;
  ni.keywords_ = tfidf_keywords(pool, lexicon, ni.options_.keyword_count);
  std::vector<IndexUnit> units;
  for (const auto& d : pool.docs) {
    auto md = metadata.find(d.id);
    if (md == metadata.end()) {
      throw DataError("document '" + d.id + "' has no extracted metadata; run extraction first");
    }
    IndexUnit u;
    u.id = d.id;
    u.group = d.id;
    for (const auto& item : md->second.main_lemmas) u.fields["main_lemmas"].push_back(item.key);
    for (const auto& item : md->second.main_syncons) u.fields["main_syncons"].push_back(item.key);
    u.fields["keywords"] = ni.keywords_[d.id];
    units.push_back(std::move(u));
    ni.ids_.push_back(d.id);
    ni.docs_[d.id] = d;
    ni.metadata_[d.id] = md->second;
  }
  IndexParams params;
  params.field_weights = ni.options_.field_weights;
  const Index index = Index::build(std::move(units), params);
  for (std::size_t u = 0; u < index.unit_count(); ++u) ni.vectors_[index.unit_id(u)] = index.tfidf_vector(u);
  return ni;
}

namespace {

template <class Map>
const typename Map::mapped_type& must_find(const Map& m, const std::string& id) {
  auto it = m.find(id);
  if (it == m.end()) throw NotFound("document '" + id + "' has no extracted metadata; run extraction first");
  return it->second;
}

}  // namespace

const Document& NoveltyIndex::document(const std::string& id) const { return must_find(docs_, id); }
const DocumentMetadata& NoveltyIndex::metadata(const std::string& id) const { return must_find(metadata_, id); }
const std::vector<std::string>& NoveltyIndex::keywords(const std::string& id) const {
  return must_find(keywords_, id);
}
const SparseVector& NoveltyIndex::vector(const std::string& id) const { return must_find(vectors_, id); }

double NoveltyIndex::similarity(const std::string& a, const std::string& b) const {
  const auto& va = vector(a);
  const auto& vb = vector(b);
  if (va.empty() || vb.empty()) return 0.0;
  if (va == vb) return 1.0;
  return std::clamp(sparse_cosine(va, vb), 0.0, 1.0);
}

std::vector<std::string> shared_concepts(const DocumentMetadata& a, const DocumentMetadata& b) {
  std::set<std::string> keys;
  for (const auto& item : b.known_concepts) keys.insert(item.key);
  std::vector<std::string> out;
  for (const auto& item : a.known_concepts) {
    if (keys.count(item.key)) out.push_back(item.label);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NoveltyResult novelty_score(const NoveltyIndex& index, const std::string& idea_id,
                            const std::vector<std::string>& ideas, const std::vector<std::string>& studies,
                            const std::vector<std::string>& projects) {
  if (std::find(ideas.begin(), ideas.end(), idea_id) != ideas.end()) {
    throw DataError("idea '" + idea_id + "' must be excluded from its own idea collection");
  }
  const auto& idea_md = index.metadata(idea_id);
  NoveltyResult r;
  r.idea_id = idea_id;
  double max_sim = 0.0;
  auto score = [&](const std::vector<std::string>& ids, std::vector<SimilarDocument>& out) {
    for (const auto& id : ids) {
      const double s = index.similarity(idea_id, id);
      max_sim = std::max(max_sim, s);
      if (s > 0.0) out.push_back({id, s, shared_concepts(idea_md, index.metadata(id))});
    }
  };
  score(ideas, r.similar_ideas);
  score(studies, r.similar_projects);
  score(projects, r.similar_projects);
  auto top = [&](std::vector<SimilarDocument>& v) {
    std::stable_sort(v.begin(), v.end(), [](const SimilarDocument& a, const SimilarDocument& b) {
      if (a.similarity != b.similarity) return a.similarity > b.similarity;
      return a.doc_id < b.doc_id;
    });
    if (v.size() > index.options().top_similar) v.resize(index.options().top_similar);
  };
  top(r.similar_ideas);
  top(r.similar_projects);
  r.novelty_score = 100.0 * (1.0 - max_sim);
  r.novelty_calculated = true;
  return r;
}

SimilarityGraph build_similarity_graph(const NoveltyIndex& index, const std::vector<std::string>& ids,
                                       double min_sim) {
  SimilarityGraph g;
  g.min_sim = min_sim;
  for (const auto& id : ids) {
    g.nodes.push_back({id, to_string(index.document(id).source), index.document(id).title});
  }
  std::vector<std::vector<GraphEdge>> rows(ids.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ids.size(); i = next++) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const double s = index.similarity(ids[i], ids[j]);
        if (s > 0.0 && s >= min_sim) rows[i].push_back({ids[i], ids[j], s});
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), 8);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads && t < ids.size(); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& row : rows) g.edges.insert(g.edges.end(), row.begin(), row.end());
  return g;
}

WeightedGraph to_weighted(const SimilarityGraph& graph) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) pos[graph.nodes[i].id] = i;
  WeightedGraph w;
  w.nodes = graph.nodes.size();
  for (const auto& e : graph.edges) w.edges.push_back({pos.at(e.a), pos.at(e.b), e.weight});
  return w;
}

namespace {

std::string clean_field(const std::string& s) {
  std::string out = s;
  for (auto& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", w);
  return buf;
}

}  // namespace

std::string format_graph_records(const SimilarityGraph& graph) {
  std::ostringstream out;
  for (const auto& n : graph.nodes) {
    out << "node\t" << n.id << '\t' << n.kind << '\t' << clean_field(n.label) << "\n";
  }
  for (const auto& e : graph.edges) out << "edge\t" << e.a << '\t' << e.b << '\t' << format_weight(e.weight) << "\n";
  return out.str();
}

std::string to_gexf(const SimilarityGraph& graph, const Partition* partition) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://gexf.net/1.2\" version=\"1.2\">\n"
      << "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n"
      << "    <attributes class=\"node\">\n"
      << "      <attribute id=\"0\" title=\"kind\" type=\"string\"/>\n"
      << "      <attribute id=\"1\" title=\"community\" type=\"integer\"/>\n"
      << "    </attributes>\n    <nodes>\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    out << "      <node id=\"" << xml_escape(n.id) << "\" label=\"" << xml_escape(n.label) << "\">\n"
        << "        <attvalues>\n"
        << "          <attvalue for=\"0\" value=\"" << xml_escape(n.kind) << "\"/>\n";
    if (partition && i < partition->community.size()) {
      out << "          <attvalue for=\"1\" value=\"" << partition->community[i] << "\"/>\n";
    }
    out << "        </attvalues>\n      </node>\n";
  }
  out << "    </nodes>\n    <edges>\n";
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const auto& e = graph.edges[i];
    out << "      <edge id=\"" << i << "\" source=\"" << xml_escape(e.a) << "\" target=\"" << xml_escape(e.b)
        << "\" weight=\"" << format_weight(e.weight) << "\"/>\n";
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
  return out.str();
}

std::vector<ClusterTopic> cluster_topics(const SimilarityGraph& graph, const Partition& partition,
                                         const NoveltyIndex& index, std::size_t top_n) {
  if (partition.community.size() != graph.nodes.size()) {
    throw DataError("cluster_topics: partition does not match the graph");
  }
  std::map<std::size_t, ClusterTopic> by_id;
  std::map<std::size_t, std::map<std::string, double>> freq;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto c = partition.community[i];
    auto& t = by_id[c];
    t.community = c;
    t.members.push_back(graph.nodes[i].id);
    for (const auto& item : index.metadata(graph.nodes[i].id).known_concepts) freq[c][item.label] += item.score;
  }
  std::vector<ClusterTopic> out;
  for (auto& [c, t] : by_id) {
    std::vector<std::pair<std::string, double>> concepts(freq[c].begin(), freq[c].end());
    std::stable_sort(concepts.begin(), concepts.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (concepts.size() > top_n) concepts.resize(top_n);
    t.concepts = std::move(concepts);
    out.push_back(std::move(t));
  }
  std::stable_sort(out.begin(), out.end(), [](const ClusterTopic& a, const ClusterTopic& b) {
    if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
    return a.community < b.community;
  });
  return out;
}

std::string render_cluster_table(const std::vector<ClusterTopic>& topics) {
  std::ostringstream out;
  out << "size | concepts\n";
  for (const auto& t : topics) {
    out << t.members.size() << " |";
    for (std::size_t i = 0; i < t.concepts.size(); ++i) out << (i ? ", " : " ") << t.concepts[i].first;
    out << "\n";
  }
  return out.str();
}

}  // namespace spacetext
