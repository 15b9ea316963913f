#include "spacetext/kgraph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "spacetext/error.hpp"

namespace spacetext {

std::string to_string(EntityType t) {
  switch (t) {
    case EntityType::none: return "none";
    case EntityType::person: return "person";
    case EntityType::place: return "place";
    case EntityType::organization: return "organization";
  }
  return "none";
}

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::hypernym: return "hypernym";
    case RelationKind::hyponym: return "hyponym";
    case RelationKind::synonym: return "synonym";
    case RelationKind::related: return "related";
  }
  return "related";
}

namespace {

std::optional<EntityType> entity_from_string(const std::string& s) {
  if (s == "none" || s.empty()) return EntityType::none;
  if (s == "person") return EntityType::person;
  if (s == "place") return EntityType::place;
  if (s == "organization") return EntityType::organization;
  return std::nullopt;
}

std::optional<RelationKind> relation_from_string(const std::string& s) {
  if (s == "hypernym") return RelationKind::hypernym;
  if (s == "hyponym") return RelationKind::hyponym;
  if (s == "synonym") return RelationKind::synonym;
  if (s == "related") return RelationKind::related;
  return std::nullopt;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> split_nonempty(const std::string& s, char sep) {
  std::vector<std::string> out;
  for (auto& part : split(s, sep)) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::vector<std::string> split_words(const std::string& key) { return split_nonempty(key, ' '); }

void add_relation(Concept& c, RelationKind kind, const std::string& target) {
  Relation r{kind, target};
  if (std::find(c.relations.begin(), c.relations.end(), r) == c.relations.end()) {
    c.relations.push_back(r);
  }
}

std::optional<RelationKind> inverse(RelationKind k) {
  switch (k) {
    case RelationKind::synonym: return RelationKind::synonym;
    case RelationKind::hypernym: return RelationKind::hyponym;
    case RelationKind::hyponym: return RelationKind::hypernym;
    case RelationKind::related: return std::nullopt;
  }
  return std::nullopt;
}

bool has_alpha(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || (c & 0x80); });
}

bool is_lowercase_word(std::string_view s) {
  return std::none_of(s.begin(), s.end(),
                      [](char c) { return std::isupper(static_cast<unsigned char>(c)); });
}

}  // namespace

KnowledgeGraph KnowledgeGraph::build(std::vector<Concept> concepts, const Lexicon& lexicon) {
  std::vector<std::string> violations;
  KnowledgeGraph kg;
  for (auto& c : concepts) {
    if (c.id.empty()) {
      violations.push_back("concept with empty id");
      continue;
    }
    std::erase_if(c.lemmas, [](const std::string& l) { return l.empty(); });
    if (c.lemmas.empty()) {
      violations.push_back("concept '" + c.id + "': empty lemma list");
      continue;
    }
    if (kg.concepts_.count(c.id)) {
      violations.push_back("duplicate concept id '" + c.id + "'");
      continue;
    }
    kg.concepts_.emplace(c.id, std::move(c));
  }
  for (const auto& [id, c] : kg.concepts_) {
    for (const auto& r : c.relations) {
      if (!kg.concepts_.count(r.target)) {
        violations.push_back("concept '" + id + "': relation target '" + r.target +
                             "' does not exist");
      }
    }
  }
  if (!violations.empty()) {
    std::string msg = "invalid knowledge graph:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw DataError(msg);
  }
  // Repair symmetric and inverse relations.
  std::vector<std::tuple<std::string, RelationKind, std::string>> repairs;
  for (const auto& [id, c] : kg.concepts_) {
    for (const auto& r : c.relations) {
      if (auto inv = inverse(r.kind)) repairs.emplace_back(r.target, *inv, id);
    }
  }
  for (const auto& [src, kind, dst] : repairs) add_relation(kg.concepts_.at(src), kind, dst);
  for (auto& [id, c] : kg.concepts_) std::sort(c.relations.begin(), c.relations.end());

  for (const auto& [id, c] : kg.concepts_) {
    for (const auto& lemma : c.lemmas) {
      auto key = lexicon.phrase_key(lemma);
      if (key.empty()) continue;
      auto& ids = kg.lemma_index_[key];
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
  }
  for (auto& [key, ids] : kg.lemma_index_) {
    std::sort(ids.begin(), ids.end());
    auto words = split_words(key);
    kg.head_index_[words.front()].push_back({words, key});
  }
  for (auto& [head, entries] : kg.head_index_) {
    std::sort(entries.begin(), entries.end(), [](const PhraseEntry& a, const PhraseEntry& b) {
      if (a.lemmas.size() != b.lemmas.size()) return a.lemmas.size() > b.lemmas.size();
      return a.key < b.key;
    });
  }
  return kg;
}

const Concept* KnowledgeGraph::find(const std::string& id) const {
  auto it = concepts_.find(id);
  return it == concepts_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* KnowledgeGraph::lookup(const std::string& key) const {
  auto it = lemma_index_.find(key);
  return it == lemma_index_.end() ? nullptr : &it->second;
}

const std::vector<KnowledgeGraph::PhraseEntry>* KnowledgeGraph::phrases_with_head(
    const std::string& head) const {
  auto it = head_index_.find(head);
  return it == head_index_.end() ? nullptr : &it->second;
}

KnowledgeGraph parse_graph(const std::string& text, const Lexicon& lexicon,
                           const std::string& origin) {
  std::vector<Concept> concepts;
  std::map<std::string, std::size_t> line_of;
  struct PendingRel {
    std::size_t line;
    RelationKind kind;
    std::string src, dst;
  };
  std::vector<PendingRel> rels;
  std::vector<std::string> violations;
  auto violation = [&](std::size_t line, const std::string& what) {
    violations.push_back(origin + ":" + std::to_string(line) + ": " + what);
  };

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cols = split(line, '\t');
    if (cols[0] == "concept") {
      if (cols.size() < 5 || cols.size() > 6) {
        violation(lineno, "concept record needs 5 or 6 tab-separated columns");
        continue;
      }
      Concept c;
      c.id = cols[1];
      c.lemmas = split_nonempty(cols[2], '|');
      auto et = entity_from_string(cols[3]);
      if (!et) {
        violation(lineno, "unknown entity type '" + cols[3] + "'");
        continue;
      }
      c.entity_type = *et;
      c.domains = split_nonempty(cols[4], '|');
      if (cols.size() == 6) c.gloss = cols[5];
      if (c.id.empty()) {
        violation(lineno, "empty concept id");
        continue;
      }
      if (c.lemmas.empty()) {
        violation(lineno, "concept '" + c.id + "' has an empty lemma list");
        continue;
      }
      if (line_of.count(c.id)) {
        violation(lineno, "duplicate concept id '" + c.id + "' (first defined on line " +
                              std::to_string(line_of[c.id]) + ")");
        continue;
      }
      line_of[c.id] = lineno;
      concepts.push_back(std::move(c));
    } else if (cols[0] == "rel") {
      if (cols.size() != 4) {
        violation(lineno, "rel record needs 4 tab-separated columns");
        continue;
      }
      auto kind = relation_from_string(cols[1]);
      if (!kind) {
        violation(lineno, "unknown relation kind '" + cols[1] + "'");
        continue;
      }
      rels.push_back({lineno, *kind, cols[2], cols[3]});
    } else {
      violation(lineno, "unknown record type '" + cols[0] + "'");
    }
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < concepts.size(); ++i) index[concepts[i].id] = i;
  for (const auto& r : rels) {
    if (!index.count(r.src)) {
      violation(r.line, "relation source '" + r.src + "' does not exist");
      continue;
    }
    if (!index.count(r.dst)) {
      violation(r.line, "relation target '" + r.dst + "' does not exist");
      continue;
    }
    add_relation(concepts[index[r.src]], r.kind, r.dst);
  }
  if (!violations.empty()) {
    std::string msg = "invalid knowledge graph:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw DataError(msg);
  }
  return KnowledgeGraph::build(std::move(concepts), lexicon);
}

KnowledgeGraph load_graph(const std::filesystem::path& path, const Lexicon& lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read knowledge graph " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str(), lexicon, path.filename().string());
}

std::string format_graph(const KnowledgeGraph& kg) {
  std::ostringstream out;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) {
      if (!s.empty()) s += '|';
      s += x;
    }
    return s;
  };
  for (const auto& [id, c] : kg.concepts()) {
    out << "concept\t" << id << '\t' << join(c.lemmas) << '\t' << to_string(c.entity_type) << '\t'
        << join(c.domains) << '\t' << c.gloss << '\n';
  }
  for (const auto& [id, c] : kg.concepts()) {
    for (const auto& r : c.relations) {
      out << "rel\t" << to_string(r.kind) << '\t' << id << '\t' << r.target << '\n';
    }
  }
  return out.str();
}

KnowledgeGraph add_concepts(const KnowledgeGraph& kg, const std::vector<Concept>& additions,
                            const Lexicon& lexicon) {
  std::map<std::string, Concept> merged = kg.concepts();
  for (const auto& add : additions) {
    auto it = merged.find(add.id);
    if (it == merged.end()) {
      merged.emplace(add.id, add);
      continue;
    }
    // Identical re-additions are no-ops; compare ignoring relation order and
    // relations added by inverse repair.
    Concept existing = it->second;
    Concept incoming = add;
    bool same = existing.lemmas == incoming.lemmas && existing.gloss == incoming.gloss &&
                existing.domains == incoming.domains &&
                existing.entity_type == incoming.entity_type;
    for (const auto& r : incoming.relations) {
      if (std::find(existing.relations.begin(), existing.relations.end(), r) ==
          existing.relations.end()) {
        same = false;
      }
    }
    if (!same) throw DataError("concept id collision with differing content: '" + add.id + "'");
  }
  std::vector<Concept> all;
  all.reserve(merged.size());
  for (auto& [id, c] : merged) all.push_back(std::move(c));
  return KnowledgeGraph::build(std::move(all), lexicon);
}

std::string analysis_text(const Document& doc) {
  if (doc.title.empty()) return doc.body;
  if (doc.body.empty()) return doc.title;
  return doc.title + "\n\n" + doc.body;
}

namespace {

struct LemmaMatch {
  std::size_t first = 0;  // token range
  std::size_t last = 0;
  const KnowledgeGraph::PhraseEntry* entry = nullptr;
};

// Phrase entries matching at token i, longest first.
std::vector<LemmaMatch> matches_at(std::string_view text, const std::vector<Token>& tokens, std::size_t i,
                                   const KnowledgeGraph& kg) {
  std::vector<LemmaMatch> out;
  const auto* entries = kg.phrases_with_head(tokens[i].lemma);
  if (!entries) return out;
  auto joinable = [&](std::size_t a, std::size_t b) {
    auto gap = text.substr(tokens[a].end, tokens[b].start - tokens[a].end);
    return std::all_of(gap.begin(), gap.end(),
                       [](char c) { return c == ' ' || c == '\t' || c == '-' || c == '\n'; });
  };
  for (const auto& e : *entries) {
    const std::size_t len = e.lemmas.size();
    if (i + len > tokens.size()) continue;
    if (len == 1 && tokens[i].is_stopword && is_lowercase_word(tokens[i].lemma)) continue;
    bool ok = true;
    for (std::size_t k = 0; k < len && ok; ++k) {
      if (tokens[i + k].lemma != e.lemmas[k]) ok = false;
      if (ok && k > 0 && !joinable(i + k - 1, i + k)) ok = false;
    }
    if (ok) out.push_back({i, i + len, &e});
  }
  return out;
}

// Domain votes of the unambiguous mentions.
std::map<std::string, int> domain_votes(const std::vector<ConceptMention>& mentions, const KnowledgeGraph& kg) {
  std::map<std::string, int> votes;
  for (const auto& m : mentions) {
    if (!m.ambiguous_alternatives.empty()) continue;
    if (const Concept* c = kg.find(m.concept_id)) {
      for (const auto& d : c->domains) ++votes[d];
    }
  }
  return votes;
}

// Candidate with the highest vote score; candidates are sorted ascending,
// so ties keep the lowest id.
std::string resolve(const std::vector<std::string>& candidates, const std::map<std::string, int>& votes,
                    const KnowledgeGraph& kg) {
  std::string best = candidates.front();
  int best_score = -1;
  for (const auto& id : candidates) {
    int score = 0;
    for (const auto& d : kg.find(id)->domains) {
      if (auto it = votes.find(d); it != votes.end()) score += it->second;
    }
    if (score > best_score) {
      best_score = score;
      best = id;
    }
  }
  return best;
}

}  // namespace

std::vector<ConceptMention> annotate(std::string_view text, const KnowledgeGraph& kg,
                                     const Lexicon& lexicon) {
  const auto tokens = lexicon.tokenize(text);
  std::vector<ConceptMention> mentions;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const auto found = matches_at(text, tokens, i, kg);
    if (found.empty()) {
      ++i;
      continue;
    }
    const auto& longest = found.front();
    ConceptMention m;
    m.char_start = tokens[longest.first].start;
    m.char_end = tokens[longest.last - 1].end;
    m.matched_lemma = longest.entry->key;
    m.ambiguous_alternatives = *kg.lookup(longest.entry->key);  // all candidates for now
    mentions.push_back(std::move(m));
    i = longest.last;
  }

  std::map<std::string, int> votes;
  for (const auto& m : mentions) {
    if (m.ambiguous_alternatives.size() != 1) continue;
    for (const auto& d : kg.find(m.ambiguous_alternatives.front())->domains) ++votes[d];
  }
  for (auto& m : mentions) {
    auto candidates = std::move(m.ambiguous_alternatives);
    m.ambiguous_alternatives.clear();
    m.concept_id = resolve(candidates, votes, kg);
    for (const auto& id : candidates) {
      if (id != m.concept_id) m.ambiguous_alternatives.push_back(id);
    }
  }
  return mentions;
}

std::vector<ConceptMention> annotate(const Document& doc, const KnowledgeGraph& kg,
                                     const Lexicon& lexicon) {
  return annotate(analysis_text(doc), kg, lexicon);
}

double ConceptStats::idf(const std::string& concept_id) const {
  std::size_t df = 0;
  if (auto it = doc_freq.find(concept_id); it != doc_freq.end()) df = it->second;
  return std::log((1.0 + static_cast<double>(documents)) / (1.0 + static_cast<double>(df))) + 1.0;
}

ConceptStats concept_stats(const DocumentCollection& collection, const KnowledgeGraph& kg,
                           const Lexicon& lexicon) {
  ConceptStats stats;
  stats.documents = collection.docs.size();
  for (const auto& doc : collection.docs) {
    std::set<std::string> seen;
    for (const auto& m : annotate(doc, kg, lexicon)) seen.insert(m.concept_id);
    for (const auto& id : seen) ++stats.doc_freq[id];
  }
  return stats;
}

void sort_ranked(RankedList& list) {
  std::sort(list.begin(), list.end(), [](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.key < b.key;
  });
}

namespace {

RankedList ranked(const std::map<std::string, std::pair<std::string, double>>& scores,
                  std::size_t limit) {
  RankedList out;
  for (const auto& [key, v] : scores) out.push_back({key, v.first, v.second});
  sort_ranked(out);
  if (limit > 0 && out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace

DocumentMetadata extract_metadata(const Document& doc, const std::vector<ConceptMention>& mentions,
                                  const KnowledgeGraph& kg, const Lexicon& lexicon,
                                  const ConceptStats& stats, const MetadataOptions& options) {
  DocumentMetadata md;
  const std::string text = analysis_text(doc);
  if (text.empty()) return md;
  const auto tokens = lexicon.tokenize(text);
  const std::size_t k = options.top_k;

  using Scores = std::map<std::string, std::pair<std::string, double>>;
  Scores orgs, people, places, known, domains, counts;
  for (const auto& m : mentions) {
    const Concept* c = kg.find(m.concept_id);
    if (!c) continue;
    auto bump = [&](Scores& s) {
      auto& e = s[c->id];
      e.first = c->label();
      e.second += 1.0;
    };
    bump(known);
    switch (c->entity_type) {
      case EntityType::organization: bump(orgs); break;
      case EntityType::person: bump(people); break;
      case EntityType::place: bump(places); break;
      case EntityType::none: break;
    }
    for (const auto& d : c->domains) {
      auto& e = domains[d];
      e.first = d;
      e.second += 1.0;
    }
  }
  const Scores mentioned = known;
  // Lemmas inside or across longer mentions still make their concepts
  // known, so enriching the graph never hides a concept it already found.
  {
    const auto votes = domain_votes(mentions, kg);
    std::set<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& m : mentions) spans.insert({m.char_start, m.char_end});
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      for (const auto& lm : matches_at(text, tokens, t, kg)) {
        if (spans.count({tokens[lm.first].start, tokens[lm.last - 1].end})) continue;
        const Concept* c = kg.find(resolve(*kg.lookup(lm.entry->key), votes, kg));
        auto& e = known[c->id];
        e.first = c->label();
        e.second += 1.0;
      }
    }
  }
  md.organizations = ranked(orgs, 0);
  md.people = ranked(people, 0);
  md.places = ranked(places, 0);
  md.known_concepts = ranked(known, 0);
  md.domains = ranked(domains, k);

  // Token coverage by mentions.
  std::vector<bool> covered(tokens.size(), false);
  {
    std::size_t mi = 0;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      while (mi < mentions.size() && mentions[mi].char_end <= tokens[t].start) ++mi;
      if (mi < mentions.size() && mentions[mi].char_start <= tokens[t].start &&
          tokens[t].end <= mentions[mi].char_end) {
        covered[t] = true;
      }
    }
  }

  Scores lemmas, unknown;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const auto& tok = tokens[t];
    if (tok.is_stopword || tok.is_numeric || !has_alpha(tok.lemma)) continue;
    auto& l = lemmas[tok.lemma];
    l.first = tok.lemma;
    l.second += 1.0;
    if (!covered[t] && !kg.lookup(tok.lemma)) {
      auto& u = unknown[tok.lemma];
      u.first = tok.lemma;
      u.second += 1.0;
    }
  }
  md.main_lemmas = ranked(lemmas, k);

  Scores groups;
  for (const auto& g : extract_mwes(text, lexicon, 1)) {
    const auto key = g.key();
    groups[key] = {g.surface, static_cast<double>(g.count)};
    if (!kg.lookup(key)) unknown[key] = {g.surface, static_cast<double>(g.count)};
  }
  md.main_groups = ranked(groups, k);
  md.unknown_concepts = ranked(unknown, 0);

  Scores syncons;
  for (const auto& [id, v] : mentioned) syncons[id] = {v.first, v.second * stats.idf(id)};
  md.main_syncons = ranked(syncons, k);

  std::map<std::string, double> syncon_score;
  for (const auto& item : md.main_syncons) syncon_score[item.key] = item.score;
  Scores sentences;
  for (const auto& s : split_sentences(text)) {
    double score = 0.0;
    for (const auto& m : mentions) {
      if (m.char_start >= s.start && m.char_end <= s.end) {
        if (auto it = syncon_score.find(m.concept_id); it != syncon_score.end()) score += it->second;
      }
    }
    if (score <= 0.0) continue;
    auto sentence = text.substr(s.start, s.end - s.start);
    auto& e = sentences[sentence];
    e.first = sentence;
    e.second = std::max(e.second, score);
  }
  md.main_sentences = ranked(sentences, k);
  return md;
}

std::map<std::string, DocumentMetadata> extract_collection_metadata(const DocumentCollection& collection,
                                                                    const KnowledgeGraph& kg,
                                                                    const Lexicon& lexicon,
                                                                    const MetadataOptions& options) {
  const auto stats = concept_stats(collection, kg, lexicon);
  std::map<std::string, DocumentMetadata> out;
  for (const auto& d : collection.docs) {
    out[d.id] = extract_metadata(d, annotate(d, kg, lexicon), kg, lexicon, stats, options);
  }
  return out;
}

}  // namespace spacetext
