#include "spacetext/qa.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

#include "spacetext/error.hpp"

namespace spacetext {

std::vector<Hit> IndexRetriever::retrieve(std::string_view question, std::size_t k,
                                          const std::optional<std::string>& scope) const {
  if (scope && !index_.has_group(*scope)) {
    throw NotFound("scope document '" + *scope + "' is not indexed");
  }
  return search(index_, lexicon_, question, k, scorer_, scope).hits;
}

PassageRef IndexRetriever::passage(const std::string& id) const {
  auto u = index_.find(id);
  if (!u) throw NotFound("passage '" + id + "' is not indexed");
  return {id, index_.unit_group(*u), index_.unit_text(*u)};
}

LexicalReader::IdfFn index_idf(const Index& index) {
  return [&index](const std::string& term) { return index.tfidf_idf("text", term); };
}

namespace {

// Position of the quantity word in a "how many/much/..." phrase, if any.
std::optional<std::size_t> quantity_word(const std::vector<Token>& tokens) {
  static const std::set<std::string> quantity = {"many", "much", "long", "far",   "old",
                                                 "big",  "large", "often", "heavy", "high"};
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].key == "how" && quantity.count(tokens[i + 1].key)) return i + 1;
  }
  return std::nullopt;
}

const std::set<std::string> kTemporalNouns = {"year", "date"};
const std::set<std::string> kPlaceNouns = {"place", "country", "city", "organization", "agency"};
const std::set<std::string> kMonths = {"january", "february", "march",     "april",   "may",      "june",
                                       "july",    "august",   "september", "october", "november", "december"};

// Position of the noun in an echo phrase such as "which year".
std::optional<std::size_t> echo_noun(const std::vector<Token>& tokens) {
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].key != "which" && tokens[i].key != "what") continue;
    const auto& n = tokens[i + 1].key;
    if (kTemporalNouns.count(n) || kPlaceNouns.count(n)) return i + 1;
  }
  return std::nullopt;
}

}  // namespace

QuestionType classify_question(std::string_view question, const Lexicon& lexicon) {
  const auto tokens = lexicon.tokenize(question);
  if (tokens.empty()) return QuestionType::other;
  const auto& w = tokens[0].key;
  if (w == "who" || w == "whom" || w == "whose" || w == "where") return QuestionType::entity;
  if (w == "when") return QuestionType::temporal;
  if (quantity_word(tokens)) return QuestionType::numeric;
  // Echo questions: "... in which year?", "... in which place?"
  if (auto n = echo_noun(tokens)) {
    return kTemporalNouns.count(tokens[*n].key) ? QuestionType::temporal : QuestionType::entity;
  }
  return QuestionType::other;
}

LexicalReader::LexicalReader(const Lexicon& lexicon, IdfFn idf, LexicalReaderConfig config)
    : lexicon_(lexicon), idf_(std::move(idf)), config_(config) {}

double LexicalReader::squash(double raw) const {
  return 1.0 / (1.0 + std::exp(-config_.steepness * (raw - config_.midpoint)));
}

namespace {

bool span_is_numeric(const std::vector<Token>& tokens, std::size_t a, std::size_t b) {
  for (std::size_t i = a; i < b; ++i) {
    const auto& s = tokens[i].surface;
    if (std::any_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return true;
    }
  }
  return false;
}

bool span_is_temporal(const std::vector<Token>& tokens, std::size_t a, std::size_t b) {
  if (span_is_numeric(tokens, a, b)) return true;
  for (std::size_t i = a; i < b; ++i) {
    if (kMonths.count(to_lower_ascii(tokens[i].surface))) return true;
  }
  return false;
}

bool span_is_entity(const std::vector<Token>& tokens, std::size_t a, std::size_t b,
                    std::size_t sentence_first) {
  for (std::size_t i = a; i < b; ++i) {
    const auto& s = tokens[i].surface;
    if (!std::isupper(static_cast<unsigned char>(s[0]))) continue;
    if (i != sentence_first) return true;
    // A sentence-initial capital only counts for acronyms.
    if (s.size() > 1 && std::isupper(static_cast<unsigned char>(s[1]))) return true;
  }
  return false;
}

// Light derivational stem so that "launcher" meets "launched" (lemma "launch").
std::string soft_stem(const std::string& w) {
  static const char* const kSuffixes[] = {"ions", "ion", "ings", "ing", "ers", "er", "ed"};
  for (const char* suf : kSuffixes) {
    const std::string_view sv(suf);
    if (w.size() >= sv.size() + 5 && w.compare(w.size() - sv.size(), sv.size(), sv) == 0) {
      return w.substr(0, w.size() - sv.size());
    }
  }
  return w;
}

struct Candidate {
  std::size_t first = 0, last = 0;  // token range
  double score = 0.0;
  bool typed = false;  // entity- or number-like
  std::size_t distance = 0;
};

}  // namespace

std::vector<AnswerSpan> LexicalReader::read(std::string_view question, const PassageRef& passage) const {
  const std::string_view text = passage.text;
  if (text.empty()) return {};
  auto qtokens = lexicon_.tokenize(question);
  for (auto& t : qtokens) t.lemma = to_lower_ascii(t.lemma);
  const QuestionType qtype = classify_question(question, lexicon_);

  const auto quantity = quantity_word(qtokens);
  const auto echo = echo_noun(qtokens);
  std::set<std::string> qterms;
  for (std::size_t i = 0; i < qtokens.size(); ++i) {
    const auto& t = qtokens[i];
    if (t.is_stopword) continue;
    // Quantity and echo nouns belong to the wh-phrase.
    if ((quantity && *quantity == i) || (echo && *echo == i)) continue;
    qterms.insert(t.lemma);
  }
  if (qterms.empty()) return {};
  double question_mass = 0.0;
  for (const auto& t : qterms) question_mass += idf_(t);
  if (question_mass <= 0.0) return {};

  std::map<std::string, std::string> qstems;
  for (const auto& t : qterms) qstems.emplace(soft_stem(t), t);
  auto tokens = lexicon_.tokenize(text);
  for (auto& t : tokens) {
    t.lemma = to_lower_ascii(t.lemma);
    if (qterms.count(t.lemma)) continue;
    if (auto it = qstems.find(soft_stem(t.lemma)); it != qstems.end()) t.lemma = it->second;
  }
  const auto sentences = split_sentences(text);
  struct SentenceInfo {
    std::size_t first = 0, last = 0;  // token range
    double mass = 0.0;
  };
  std::vector<SentenceInfo> info;
  std::size_t ti = 0;
  for (const auto& s : sentences) {
    SentenceInfo si;
    while (ti < tokens.size() && tokens[ti].start < s.start) ++ti;
    si.first = ti;
    while (ti < tokens.size() && tokens[ti].end <= s.end) ++ti;
    si.last = ti;
    std::set<std::string> seen;
    for (std::size_t i = si.first; i < si.last; ++i) {
      if (qterms.count(tokens[i].lemma) && seen.insert(tokens[i].lemma).second) {
        si.mass += idf_(tokens[i].lemma);
      }
    }
    info.push_back(si);
  }
  double best = 0.0;
  for (const auto& si : info) best = std::max(best, si.mass);
  if (best <= 0.0) return {};

  auto joinable = [&](std::size_t a, std::size_t b) {
    auto gap = text.substr(tokens[a].end, tokens[b].start - tokens[a].end);
    return std::all_of(gap.begin(), gap.end(), [](char c) { return c == ' ' || c == '-' || c == '/'; });
  };

  auto spans_in = [&](const SentenceInfo& si, double mass) {
    std::vector<Candidate> out;
    std::vector<std::size_t> qpos;
    for (std::size_t i = si.first; i < si.last; ++i) {
      if (qterms.count(tokens[i].lemma)) qpos.push_back(i);
    }
    std::size_t i = si.first;
    while (i < si.last) {
      const auto& t = tokens[i];
      if (t.is_stopword || qterms.count(t.lemma)) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      while (j < si.last && j - i < config_.max_span_tokens && !tokens[j].is_stopword &&
             !qterms.count(tokens[j].lemma) && joinable(j - 1, j)) {
        ++j;
      }
      Candidate c;
      c.first = i;
      c.last = j;
      const bool numeric = span_is_numeric(tokens, i, j);
      const bool entity = span_is_entity(tokens, i, j, si.first);
      c.typed = numeric || entity;
      bool bonus = false;
      switch (qtype) {
        case QuestionType::entity: bonus = entity; break;
        case QuestionType::numeric: bonus = numeric; break;
        case QuestionType::temporal: bonus = span_is_temporal(tokens, i, j); break;
        case QuestionType::other: break;
      }
      c.score = squash((mass / question_mass) * (bonus ? config_.type_bonus : 1.0));
      c.distance = tokens.size();
      for (auto q : qpos) {
        const std::size_t d = q < i ? i - q : (q >= j ? q - j + 1 : 0);
        c.distance = std::min(c.distance, d);
      }
      out.push_back(c);
      i = j;
    }
    return out;
  };

  std::vector<Candidate> cands;
  for (std::size_t s = 0; s < info.size(); ++s) {
    if (info[s].mass != best) continue;
    auto here = spans_in(info[s], best);
    // Fall back to the following sentence when the best one is all question.
    if (here.empty() && s + 1 < info.size()) here = spans_in(info[s + 1], best);
    cands.insert(cands.end(), here.begin(), here.end());
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.typed != b.typed) return a.typed;
    if (a.last - a.first != b.last - b.first) return a.last - a.first > b.last - b.first;
    return a.first < b.first;
  });

  std::vector<AnswerSpan> out;
  std::set<std::string> texts;
  for (const auto& c : cands) {
    if (out.size() >= config_.top_n) break;
    AnswerSpan span;
    span.char_start = tokens[c.first].start;
    span.char_end = tokens[c.last - 1].end;
    span.text = std::string(text.substr(span.char_start, span.char_end - span.char_start));
    if (!texts.insert(span.text).second) continue;
    span.passage_id = passage.id;
    span.doc_id = passage.doc_id;
    span.score = c.score;
    out.push_back(std::move(span));
  }
  return out;
}

QAResult QAPipeline::answer(std::string_view question, std::size_t k, double threshold,
                            const std::optional<std::string>& scope) const {
  QAResult result;
  result.question = std::string(question);
  const auto hits = retriever_.retrieve(question, k, scope);

  struct Ranked {
    AnswerSpan span;
    std::size_t rank;
    std::size_t order;
  };
  std::map<std::string, Ranked> by_text;
  for (std::size_t r = 0; r < hits.size(); ++r) {
    const auto passage = retriever_.passage(hits[r].unit_id);
    const auto spans = reader_.read(question, passage);
    for (std::size_t o = 0; o < spans.size(); ++o) {
      auto it = by_text.find(spans[o].text);
      if (it == by_text.end() || spans[o].score > it->second.span.score) {
        by_text[spans[o].text] = {spans[o], r, o};
      }
    }
  }
  std::vector<Ranked> all;
  for (auto& [_, v] : by_text) all.push_back(std::move(v));
  std::sort(all.begin(), all.end(), [](const Ranked& a, const Ranked& b) {
    if (a.span.score != b.span.score) return a.span.score > b.span.score;
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.order < b.order;
  });
  for (auto& r : all) {
    result.passages[r.span.passage_id] = retriever_.passage(r.span.passage_id).text;
    if (r.span.score >= threshold) {
      result.primary_answers.push_back(std::move(r.span));
    } else {
      result.low_confidence_answers.push_back(std::move(r.span));
    }
  }
  result.no_answer = result.primary_answers.empty() && result.low_confidence_answers.empty();
  return result;
}

TokenPRF token_prf(std::string_view predicted, std::string_view gold, const Lexicon& lexicon) {
  std::map<std::string, int> gold_counts;
  std::size_t gold_n = 0;
  for (const auto& t : lexicon.tokenize(gold)) {
    ++gold_counts[t.key];
    ++gold_n;
  }
  if (gold_n == 0) throw DataError("eval_reader: empty gold span");
  std::size_t pred_n = 0, overlap = 0;
  for (const auto& t : lexicon.tokenize(predicted)) {
    ++pred_n;
    auto it = gold_counts.find(t.key);
    if (it != gold_counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  TokenPRF m;
  if (pred_n == 0 || overlap == 0) return m;
  m.precision = static_cast<double>(overlap) / static_cast<double>(pred_n);
  m.recall = static_cast<double>(overlap) / static_cast<double>(gold_n);
  m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

ReaderMetrics eval_reader(const std::vector<std::pair<std::string, std::string>>& pairs,
                          const Lexicon& lexicon) {
  if (pairs.empty()) throw DataError("eval_reader: no prediction pairs");
  ReaderMetrics m;
  for (const auto& [pred, gold] : pairs) {
    const auto p = token_prf(pred, gold, lexicon);
    m.precision += p.precision;
    m.recall += p.recall;
    m.f1 += p.f1;
  }
  m.pairs = pairs.size();
  const double n = static_cast<double>(pairs.size());
  m.precision /= n;
  m.recall /= n;
  m.f1 /= n;
  return m;
}

const Passage* PassageCorpus::find(const std::string& id) const {
  for (const auto& p : passages) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

PassageCorpus index_reports(const DocumentCollection& reports, const Lexicon& lexicon,
                            const SegmentationRules& rules, const IndexParams& params) {
  PassageCorpus pc;
  std::vector<IndexUnit> units;
  for (const auto& d : reports.docs) {
    for (auto& p : segment_report(d, rules).passages) {
      units.push_back(text_unit(p.id, p.doc_id, p.text, lexicon));
      pc.passages.push_back(std::move(p));
    }
  }
  if (units.empty()) throw DataError("no passages in the report collection");
  pc.index = Index::build(std::move(units), params);
  return pc;
}

std::vector<QATestItem> load_qa_testset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read QA testset " + path.string());
  std::vector<QATestItem> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto a = line.find('\t');
    const auto b = a == std::string::npos ? a : line.find('\t', a + 1);
    if (b == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected question<TAB>gold_answer<TAB>gold_passage_id");
    }
    out.push_back({line.substr(0, a), line.substr(a + 1, b - a - 1), line.substr(b + 1)});
  }
  return out;
}

}  // namespace spacetext
