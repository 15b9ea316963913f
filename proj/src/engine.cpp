#include "spacetext/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "spacetext/error.hpp"

namespace spacetext {

std::filesystem::path EngineConfig::resolve(const std::string& p) const {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base_dir / path;
}

Json EngineConfig::to_json() const {
  return Json{{"corpus", corpus},
              {"reports", reports},
              {"kg", kg},
              {"general_stats", general_stats},
              {"templates", templates},
              {"predefined_questions", predefined_questions},
              {"state_dir", state_dir},
              {"index_k1", index_k1},
              {"index_b", index_b},
              {"scorer", scorer},
              {"qa_threshold", qa_threshold},
              {"qa_k", qa_k},
              {"dedup_threshold", dedup_threshold},
              {"validation_min_score", validation_min_score},
              {"beam_width", beam_width},
              {"graph_min_sim", graph_min_sim},
              {"louvain_seed", louvain_seed},
              {"louvain_resolution", louvain_resolution},
              {"top_similar", top_similar},
              {"host", host},
              {"port", port}};
}

EngineConfig EngineConfig::from_json(const Json& j, const std::filesystem::path& base_dir) {
  EngineConfig c;
  c.base_dir = base_dir;
  const Json defaults = c.to_json();
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key)) throw DataError("config: unknown key '" + key + "'");
    const auto& d = defaults[key];
    bool ok = (d.is_string() && value.is_string()) || (d.is_number() && value.is_number());
    if (d.is_array()) {
      ok = value.is_array() && std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_string(); });
    }
    if (!ok) throw DataError("config: key '" + key + "' has the wrong type");
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
  };
  get("corpus", c.corpus);
  get("reports", c.reports);
  get("kg", c.kg);
  get("general_stats", c.general_stats);
  get("templates", c.templates);
  get("predefined_questions", c.predefined_questions);
  get("state_dir", c.state_dir);
  get("index_k1", c.index_k1);
  get("index_b", c.index_b);
  get("scorer", c.scorer);
  get("qa_threshold", c.qa_threshold);
  get("qa_k", c.qa_k);
  get("dedup_threshold", c.dedup_threshold);
  get("validation_min_score", c.validation_min_score);
  get("beam_width", c.beam_width);
  get("graph_min_sim", c.graph_min_sim);
  get("louvain_seed", c.louvain_seed);
  get("louvain_resolution", c.louvain_resolution);
  get("top_similar", c.top_similar);
  get("host", c.host);
  get("port", c.port);
  scorer_from_string(c.scorer);
  return c;
}

void EngineConfig::apply_env() {
  Json j = to_json();
  bool changed = false;
  for (auto& [key, value] : j.items()) {
    std::string name = "SPACETEXT_" + key;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
    const char* env = std::getenv(name.c_str());
    if (!env) continue;
    changed = true;
    if (value.is_string()) {
      value = env;
      continue;
    }
    if (value.is_array()) {
      value = Json::array();
      std::stringstream ss(env);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) value.push_back(item);
      }
      continue;
    }
    try {
      std::size_t used = 0;
      const std::string s(env);
      if (value.is_number_float()) {
        value = std::stod(s, &used);
      } else {
        const long long v = std::stoll(s, &used);
        if (v < 0 && value.is_number_unsigned()) throw std::invalid_argument("negative");
        value = v;
      }
      if (used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError("environment: " + name + "='" + env + "' is not a number");
    }
  }
  if (changed) *this = from_json(j, base_dir);
}

EngineConfig EngineConfig::load(const std::optional<std::filesystem::path>& path) {
  EngineConfig c;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw IoError("cannot read config " + path->string());
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw DataError(path->string() + ": " + e.what());
    }
    c = from_json(j, path->parent_path().empty() ? std::filesystem::path(".") : path->parent_path());
  }
  c.apply_env();
  return c;
}

std::shared_ptr<const EngineData> EngineData::load(const EngineConfig& config) {
  auto d = std::make_shared<EngineData>();
  d->corpus = load_corpus(config.resolve(config.corpus));
  for (const auto& file : config.reports) {
    for (auto& doc : load_corpus(config.resolve(file)).docs) d->reports.add(std::move(doc));
  }
  d->kg = load_graph(config.resolve(config.kg), d->lexicon);
  d->templates = QuizTemplates::load(config.resolve(config.templates));
  {
    const auto path = config.resolve(config.predefined_questions);
    std::ifstream in(path);
    if (!in) throw IoError("cannot read predefined questions " + path.string());
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line.front() != '#') d->predefined_questions.push_back(line);
    }
  }
  IndexParams params;
  params.k1 = config.index_k1;
  params.b = config.index_b;
  d->passages = index_reports(d->reports, d->lexicon, {}, params);
  d->metadata = extract_collection_metadata(d->corpus, d->kg, d->lexicon);
  DocumentCollection pool;
  for (const auto& doc : d->corpus.docs) {
    switch (doc.source) {
      case Source::idea: d->ideas.push_back(doc.id); break;
      case Source::study: d->studies.push_back(doc.id); break;
      case Source::project: d->projects.push_back(doc.id); break;
      default: continue;
    }
    pool.docs.push_back(doc);
  }
  NoveltyOptions options;
  options.top_similar = config.top_similar;
  d->novelty = NoveltyIndex::build(pool, d->metadata, d->lexicon, options);
  return d;
}

namespace {

std::string join_path(const std::vector<std::string>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) out += (i ? " > " : "") + path[i];
  return out;
}

std::vector<std::string> split_path(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(" > ", pos);
    out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return out;
}

// "2" or "2 Mission" both select the heading "2 Mission".
bool heading_matches(const std::string& heading, const std::string& want) {
  return heading == want || heading.rfind(want + " ", 0) == 0;
}

}  // namespace

std::vector<Passage> section_passages(const PassageCorpus& passages, const std::string& doc_id,
                                      const std::vector<std::string>& section_paths) {
  std::vector<std::vector<std::string>> wanted;
  for (const auto& s : section_paths) wanted.push_back(split_path(s));
  std::vector<Passage> out;
  for (const auto& p : passages.passages) {
    if (p.doc_id != doc_id) continue;
    const bool keep = wanted.empty() || std::any_of(wanted.begin(), wanted.end(), [&](const auto& w) {
      if (w.size() > p.section_path.size()) return false;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (!heading_matches(p.section_path[i], w[i])) return false;
      }
      return true;
    });
    if (keep) out.push_back(p);
  }
  return out;
}

std::vector<QuestionCandidate> quiz_candidates(const std::vector<Passage>& passages, const EngineData& data,
                                               const EngineConfig& config) {
  GenerationOptions options;
  options.beam_width = config.beam_width;
  auto candidates = generate_candidates(passages, data.kg, data.lexicon, data.templates, options);
  dedup(candidates, data.lexicon, config.dedup_threshold);
  const LexicalReader reader(data.lexicon, index_idf(data.passages.index));
  validate(candidates, passages, reader, data.lexicon, config.validation_min_score);
  return candidates;
}

NoveltyResult score_idea(const EngineData& data, const std::string& idea_id) {
  if (std::find(data.ideas.begin(), data.ideas.end(), idea_id) == data.ideas.end()) {
    throw NotFound("unknown idea '" + idea_id + "'");
  }
  std::vector<std::string> others;
  for (const auto& id : data.ideas) {
    if (id != idea_id) others.push_back(id);
  }
  return novelty_score(data.novelty, idea_id, others, data.studies, data.projects);
}

SimilarityGraph idea_graph(const EngineData& data, double min_sim) {
  return build_similarity_graph(data.novelty, data.ideas, min_sim);
}

Partition idea_partition(const SimilarityGraph& graph, const EngineConfig& config) {
  return louvain(to_weighted(graph), config.louvain_seed, config.louvain_resolution);
}

std::vector<Passage> sample_passages(const PassageCorpus& passages, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(passages.passages.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  const std::size_t take = std::min(n, order.size());
  std::vector<Passage> out;
  for (std::size_t i = 0; i < take; ++i) {
    std::swap(order[i], order[i + rng() % (order.size() - i)]);
    out.push_back(passages.passages[order[i]]);
  }
  return out;
}

Json to_json(const QuizSession& s) {
  return Json{{"session_id", s.id},
              {"doc_id", s.doc_id},
              {"section_paths", s.section_paths},
              {"candidates", to_json(s.candidates)},
              {"selected", s.selected}};
}

namespace {

QuestionCandidate candidate_from_json(const Json& j) {
  QuestionCandidate c;
  c.id = j.at("id").get<std::string>();
  c.question = j.at("question").get<std::string>();
  c.answer = j.at("answer").get<std::string>();
  c.seed_answer = j.at("seed_answer").get<std::string>();
  c.seed_type = j.at("seed_type").get<std::string>();
  c.passage_id = j.at("passage_id").get<std::string>();
  c.strategy = j.at("strategy") == "answer_agnostic" ? Strategy::answer_agnostic : Strategy::answer_aware;
  const std::string status = j.at("status").get<std::string>();
  for (auto st : {CandidateStatus::generated, CandidateStatus::deduped_out, CandidateStatus::validated,
                  CandidateStatus::rejected_no_answer}) {
    if (to_string(st) == status) c.status = st;
  }
  c.validation_score = j.at("validation_score").get<double>();
  if (!j.at("seed_f1").is_null()) c.seed_f1 = j.at("seed_f1").get<double>();
  return c;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

QuizSession session_from_json(const Json& j) {
  QuizSession s;
  s.id = j.at("session_id").get<std::string>();
  s.doc_id = j.at("doc_id").get<std::string>();
  s.section_paths = j.at("section_paths").get<std::vector<std::string>>();
  for (const auto& c : j.at("candidates")) s.candidates.push_back(candidate_from_json(c));
  s.selected = j.at("selected").get<std::vector<std::string>>();
  return s;
}

Engine::Engine(EngineConfig config) : config_(std::move(config)) {
  data_ = EngineData::load(config_);
  std::filesystem::create_directories(sessions_dir());
  load_sessions();
}

std::shared_ptr<const EngineData> Engine::data() const {
  std::lock_guard lock(data_mutex_);
  return data_;
}

void Engine::rebuild() {
  std::lock_guard rebuild_lock(rebuild_mutex_);
  auto fresh = EngineData::load(config_);
  std::lock_guard lock(data_mutex_);
  data_ = std::move(fresh);
}

std::filesystem::path Engine::sessions_dir() const { return config_.resolve(config_.state_dir) / "sessions"; }
std::filesystem::path Engine::feedback_path() const {
  return config_.resolve(config_.state_dir) / "feedback.jsonl";
}

void Engine::save_session(const QuizSession& s) const {
  const auto path = sessions_dir() / (s.id + ".json");
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp);
    out << to_json(s).dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

void Engine::load_sessions() {
  for (const auto& entry : std::filesystem::directory_iterator(sessions_dir())) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    auto s = session_from_json(Json::parse(in));
    const auto dash = s.id.rfind('-');
    if (dash != std::string::npos) {
      next_session_ = std::max<std::size_t>(next_session_, std::stoul(s.id.substr(dash + 1)) + 1);
    }
    sessions_[s.id] = std::move(s);
  }
}

Json Engine::documents() const {
  const auto d = data();
  Json a = Json::array();
  for (const auto& doc : d->corpus.docs) a.push_back(document_summary(doc));
  for (const auto& doc : d->reports.docs) a.push_back(document_summary(doc));
  return a;
}

Json Engine::document(const std::string& id) const {
  const auto d = data();
  if (const auto* doc = d->corpus.find(id)) {
    Json j = to_json(*doc);
    j["metadata"] = to_json(d->metadata.at(id));
    return j;
  }
  if (const auto* doc = d->reports.find(id)) {
    Json j = to_json(*doc);
    std::vector<std::string> sections;
    for (const auto& p : d->passages.passages) {
      if (p.doc_id != id || p.section_path.empty()) continue;
      const auto path = join_path(p.section_path);
      if (std::find(sections.begin(), sections.end(), path) == sections.end()) sections.push_back(path);
    }
    j["sections"] = sections;
    return j;
  }
  throw NotFound("unknown document '" + id + "'");
}

Json Engine::ask(const std::string& question, std::optional<std::size_t> k, std::optional<std::string> scope,
                 std::optional<double> threshold) const {
  const auto d = data();
  const IndexRetriever retriever(d->passages.index, d->lexicon, scorer_from_string(config_.scorer));
  const LexicalReader reader(d->lexicon, index_idf(d->passages.index));
  const QAPipeline pipeline(retriever, reader);
  return to_json(pipeline.answer(question, k.value_or(config_.qa_k), threshold.value_or(config_.qa_threshold),
                                 scope));
}

Json Engine::snippets(std::size_t n, std::uint64_t seed) const {
  Json a = Json::array();
  for (const auto& p : sample_passages(data()->passages, n, seed)) a.push_back(to_json(p));
  return a;
}

Json Engine::predefined_questions() const { return Json(data()->predefined_questions); }

Json Engine::novelty(const std::string& idea_id) const { return to_json(score_idea(*data(), idea_id)); }

Json Engine::graph(std::optional<double> min_sim) const {
  return to_json(idea_graph(*data(), min_sim.value_or(config_.graph_min_sim)));
}

Json Engine::clusters() const {
  const auto d = data();
  const auto g = idea_graph(*d, config_.graph_min_sim);
  const auto p = idea_partition(g, config_);
  const auto topics = cluster_topics(g, p, d->novelty);
  return Json{{"partition", to_json(p, g)}, {"clusters", to_json(topics)}, {"table", render_cluster_table(topics)}};
}

Json Engine::create_session(const std::string& doc_id, const std::vector<std::string>& section_paths) {
  const auto d = data();
  if (!d->reports.contains(doc_id)) throw NotFound("unknown report '" + doc_id + "'");
  const auto passages = section_passages(d->passages, doc_id, section_paths);
  if (passages.empty()) throw DataError("no passages match the requested sections");
  QuizSession s;
  s.doc_id = doc_id;
  s.section_paths = section_paths;
  s.candidates = quiz_candidates(passages, *d, config_);
  {
    std::lock_guard lock(session_mutex_);
    char buf[32];
    std::snprintf(buf, sizeof buf, "session-%04zu", next_session_++);
    s.id = buf;
    save_session(s);
    sessions_[s.id] = s;
  }
  return Json{{"session_id", s.id}, {"candidates", to_json(s.candidates)}};
}

Json Engine::select(const std::string& session_id, const std::vector<std::string>& candidate_ids) {
  std::lock_guard lock(session_mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw NotFound("unknown session '" + session_id + "'");
  auto& s = it->second;
  for (const auto& id : candidate_ids) {
    auto c = std::find_if(s.candidates.begin(), s.candidates.end(),
                          [&](const QuestionCandidate& q) { return q.id == id; });
    if (c == s.candidates.end()) throw DataError("unknown candidate '" + id + "'");
    if (c->status != CandidateStatus::validated) {
      throw DataError("candidate '" + id + "' is " + to_string(c->status) + ", not validated");
    }
  }
  s.selected = candidate_ids;
  save_session(s);
  return Json{{"session_id", s.id}, {"selected", s.selected}};
}

Json Engine::finalize(const std::string& session_id) {
  QuizSession s;
  {
    std::lock_guard lock(session_mutex_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw NotFound("unknown session '" + session_id + "'");
    s = it->second;
  }
  const auto d = data();
  std::vector<QuestionCandidate> chosen;
  for (const auto& id : s.selected) {
    for (const auto& c : s.candidates) {
      if (c.id == id) chosen.push_back(c);
    }
  }
  const auto* doc = d->reports.find(s.doc_id);
  const std::string title = doc ? doc->title : s.doc_id;
  return to_json(assemble_quiz(chosen, section_passages(d->passages, s.doc_id, s.section_paths), title));
}

Json Engine::add_feedback(const Json& record) {
  static const std::set<std::string> features = {"qa", "quiz", "novelty"};
  static const std::set<std::string> verdicts = {"correct", "incorrect", "useful"};
  if (!record.is_object()) throw DataError("feedback: expected an object");
  if (!record.contains("feature") || !record["feature"].is_string() ||
      !features.count(record["feature"].get<std::string>())) {
    throw DataError("feedback: 'feature' must be one of qa, quiz, novelty");
  }
  if (!record.contains("payload") || !record["payload"].is_object()) {
    throw DataError("feedback: 'payload' must be an object");
  }
  const auto& payload = record["payload"];
  if (!payload.contains("verdict") || !payload["verdict"].is_string() ||
      !verdicts.count(payload["verdict"].get<std::string>())) {
    throw DataError("feedback: 'payload.verdict' must be one of correct, incorrect, useful");
  }
  Json stored{{"timestamp", record.contains("timestamp") ? record["timestamp"] : Json(utc_now())},
              {"feature", record["feature"]},
              {"payload", payload}};
  std::lock_guard lock(feedback_mutex_);
  std::filesystem::create_directories(feedback_path().parent_path());
  std::ofstream out(feedback_path(), std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot append to " + feedback_path().string());
  out << stored.dump() << "\n";
  out.flush();
  return stored;
}

std::vector<Json> Engine::feedback() const {
  std::lock_guard lock(feedback_mutex_);
  std::vector<Json> out;
  std::ifstream in(feedback_path());
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(Json::parse(line));
  }
  return out;
}

}  // namespace spacetext
