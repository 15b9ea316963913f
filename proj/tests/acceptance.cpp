// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracles here are written independently of the library code they
// check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "novelty_oracle.hpp"
#include "spacetext/engine.hpp"
#include "spacetext/error.hpp"
#include "spacetext/http_service.hpp"
#include "support.hpp"

using namespace spacetext;
using testsupport::fixture;
using testsupport::read_file;
using testsupport::test_data;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failure notes; the first few are kept for the summary line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(checks_ - failures_) + "/" + std::to_string(checks_) + " checks";
    for (const auto& n : notes_) s += "; " + n;
    return s;
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::vector<std::string> notes_;
};

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

// ---------------------------------------------------------------- weirdness

Outcome weirdness_exact() {
  Checker c;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::uint64_t> f(0, 5'000'000), n(1, 2'000'000'000);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t fs = f(rng), fg = f(rng), ns = n(rng), ng = n(rng);
    // Exact integer numerator and denominator, one rounding at the end.
    const unsigned __int128 num = static_cast<unsigned __int128>(ng) * fs;
    const unsigned __int128 den = static_cast<unsigned __int128>(1 + fg) * ns;
    const long double want = static_cast<long double>(num) / static_cast<long double>(den);
    const double got = weirdness(fs, ns, fg, ng);
    double rel = want == 0 ? std::fabs(got) : static_cast<double>(std::fabs((got - want) / want));
    worst = std::max(worst, rel);
    c.expect(rel < 1e-12, "tuple " + std::to_string(i) + " rel err " + std::to_string(rel));
  }
  std::uniform_int_distribution<std::uint64_t> small(0, 100000), delta(1, 1000);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t fs = small(rng) + 1, fg = small(rng), ns = n(rng), ng = n(rng), d = delta(rng);
    c.expect(weirdness(fs + d, ns, fg, ng) > weirdness(fs, ns, fg, ng), "not increasing in f_S");
    c.expect(weirdness(fs, ns, fg + d, ng) < weirdness(fs, ns, fg, ng), "not decreasing in f_G");
  }
  return {c.ok(), c.summary() + ", max rel err " + std::to_string(worst)};
}

Outcome planted_jargon() {
  Checker c;
  Lexicon lex;
  auto corpus = load_corpus(fixture("mini_corpus.jsonl"));
  const auto general = load_stats(fixture("general_stats.tsv"));
  std::mt19937_64 rng(77);
  const std::string consonants = "bdfgklmnprtvz", vowels = "aeiou";
  std::vector<std::string> planted;
  while (planted.size() < 20) {
    std::string w;
    for (int k = 0; k < 4; ++k) {
      w += consonants[rng() % consonants.size()];
      w += vowels[rng() % vowels.size()];
    }
    w += consonants[rng() % consonants.size()];
    const bool usable = w.back() != 's' && lex.lemmatize(w) == w && !lex.is_stopword(w) &&
                        general.frequency(w) == 0 &&
                        std::find(planted.begin(), planted.end(), w) == planted.end();
    if (usable) planted.push_back(w);
  }
  // 30 occurrences of each term spread over random documents.
  for (const auto& w : planted) {
    for (int k = 0; k < 30; ++k) {
      auto& d = corpus.docs[rng() % corpus.docs.size()];
      d.body += " The " + w + " was used.";
    }
  }
  const auto special = corpus_stats(corpus, lex);
  const auto ranking = rank_by_weirdness(special, general);
  const std::size_t cut = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(ranking.size())));
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < ranking.size(); ++i) rank[ranking[i].term] = i;
  std::size_t worst = 0;
  for (const auto& w : planted) {
    c.expect(rank.count(w) > 0, w + " missing");
    if (!rank.count(w)) continue;
    worst = std::max(worst, rank[w]);
    c.expect(rank[w] < cut, w + " at rank " + std::to_string(rank[w] + 1));
  }
  // Every common word (general frequency >= 1000) ranks below every planted term.
  double lowest_planted = std::numeric_limits<double>::infinity();
  for (const auto& w : planted) lowest_planted = std::min(lowest_planted, weirdness(w, special, general));
  for (const auto& t : ranking) {
    if (t.f_general >= 1000) c.expect(t.weirdness < lowest_planted, "common word " + t.term + " above jargon");
  }
  return {c.ok(), c.summary() + ", worst planted rank " + std::to_string(worst + 1) + " of " +
                      std::to_string(ranking.size()) + " (top 5% = " + std::to_string(cut) + ")"};
}

// ---------------------------------------------------------------- novelty

struct NoveltyWorld {
  Lexicon lex;
  KnowledgeGraph kg;
  DocumentCollection pool;
  std::map<std::string, DocumentMetadata> md;
  std::vector<std::string> ideas, studies, projects;
  NoveltyIndex index;

  void build() {
    md = extract_collection_metadata(pool, kg, lex);
    index = NoveltyIndex::build(pool, md, lex);
    ideas.clear();
    studies.clear();
    projects.clear();
    for (const auto& d : pool.docs) {
      if (d.source == Source::idea) ideas.push_back(d.id);
      if (d.source == Source::study) studies.push_back(d.id);
      if (d.source == Source::project) projects.push_back(d.id);
    }
  }
};

// Bundled ideas, studies and projects plus synthetic ideas stitched from
// random sentences of the bundled documents.
NoveltyWorld novelty_world(std::mt19937_64& rng, std::size_t synthetic) {
  NoveltyWorld w;
  w.kg = load_graph(fixture("minikg.tsv"), w.lex);
  auto corpus = load_corpus(fixture("mini_corpus.jsonl"));
  std::vector<std::string> sentences;
  for (const auto& d : corpus.docs) {
    if (d.source == Source::paper) continue;
    w.pool.add(d);
    for (const auto& r : split_sentences(d.body)) sentences.push_back(d.body.substr(r.start, r.end - r.start));
  }
  for (std::size_t i = 0; i < synthetic; ++i) {
    Document d;
    d.id = "syn" + std::to_string(i);
    d.source = Source::idea;
    d.title = "Synthetic idea " + std::to_string(i);
    const std::size_t k = 2 + rng() % 3;
    for (std::size_t s = 0; s < k; ++s) d.body += sentences[rng() % sentences.size()] + " ";
    w.pool.add(d);
  }
  w.build();
  return w;
}

std::vector<std::string> without(const std::vector<std::string>& v, const std::string& id) {
  std::vector<std::string> out;
  for (const auto& x : v)
    if (x != id) out.push_back(x);
  return out;
}

Outcome novelty_exact() {
  Checker c;
  std::mt19937_64 rng(4242);
  auto w = novelty_world(rng, 40);
  oracle::Similarity sim(w.pool, w.md, w.lex, w.index.options().field_weights, w.index.options().keyword_count);

  // 50 random ideas from the 60 available.
  auto sample = w.ideas;
  std::shuffle(sample.begin(), sample.end(), rng);
  sample.resize(50);
  double worst = 0.0;
  for (const auto& id : sample) {
    const auto others = without(w.ideas, id);
    const auto r = novelty_score(w.index, id, others, w.studies, w.projects);
    double m = 0.0;
    for (const auto* coll : std::vector<const std::vector<std::string>*>{&others, &w.studies, &w.projects})
      for (const auto& o : *coll) m = std::max(m, sim(id, o));
    const double want = 100.0 * (1.0 - m);
    worst = std::max(worst, std::fabs(r.novelty_score - want));
    c.expect(std::fabs(r.novelty_score - want) < 1e-9, id + " score " + fmt(r.novelty_score, 9) + " vs " + fmt(want, 9));
    c.expect(r.novelty_score >= 0.0 && r.novelty_score <= 100.0, id + " out of bounds");
    c.expect(r.novelty_calculated, id + " not calculated");
  }

  // Duplicate insertion: a study identical to the idea forces 0.
  for (int t = 0; t < 5; ++t) {
    const auto id = sample[static_cast<std::size_t>(t)];
    NoveltyWorld dup;
    dup.kg = w.kg;
    dup.pool = w.pool;
    Document copy = *w.pool.find(id);
    copy.id = "dup-" + id;
    copy.source = Source::study;
    dup.pool.add(copy);
    dup.build();
    const auto r = novelty_score(dup.index, id, without(dup.ideas, id), dup.studies, dup.projects);
    c.expect(r.novelty_score == 0.0, "duplicate of " + id + " gives " + fmt(r.novelty_score));
  }

  // Growth: adding members to any collection never raises the score.
  for (int t = 0; t < 100; ++t) {
    const auto id = w.ideas[rng() % w.ideas.size()];
    std::vector<std::pair<int, std::string>> candidates;
    for (const auto& o : without(w.ideas, id)) candidates.push_back({0, o});
    for (const auto& o : w.studies) candidates.push_back({1, o});
    for (const auto& o : w.projects) candidates.push_back({2, o});
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<std::string> colls[3];
    double prev = novelty_score(w.index, id, {}, {}, {}).novelty_score;
    c.expect(prev == 100.0, "empty collections not 100");
    const std::size_t steps = 1 + rng() % 12;
    for (std::size_t s = 0; s < steps && s < candidates.size(); ++s) {
      colls[candidates[s].first].push_back(candidates[s].second);
      const double now = novelty_score(w.index, id, colls[0], colls[1], colls[2]).novelty_score;
      c.expect(now <= prev, "growth raised novelty for " + id);
      prev = now;
    }
  }
  return {c.ok(), c.summary() + ", max abs diff " + std::to_string(worst)};
}

// ---------------------------------------------------------------- retrieval

Outcome retrieval_oracle() {
  Checker c;
  Lexicon lex;
  std::mt19937_64 rng(99);
  // Vocabulary of inflection-free synthetic words.
  std::vector<std::string> vocab;
  for (char a = 'b'; a <= 'z' && vocab.size() < 40; ++a) {
    if (std::string("aeious").find(a) != std::string::npos) continue;
    for (char b : std::string("aeiou")) {
      std::string word = std::string("k") + b + a + "o";
      if (lex.lemmatize(word) == word && !lex.is_stopword(word)) vocab.push_back(word);
      if (vocab.size() >= 40) break;
    }
  }
  const double k1 = 1.2, b = 0.75;
  for (int corpus = 0; corpus < 20; ++corpus) {
    const std::size_t nunits = 5 + rng() % 46;
    const std::size_t vsize = 8 + rng() % (vocab.size() - 8);
    std::vector<std::pair<std::string, std::vector<std::string>>> units;
    std::vector<IndexUnit> index_units;
    for (std::size_t u = 0; u < nunits; ++u) {
      std::vector<std::string> words;
      const std::size_t len = 1 + rng() % 15;
      for (std::size_t i = 0; i < len; ++i) words.push_back(vocab[rng() % vsize]);
      std::string text;
      for (const auto& x : words) text += (text.empty() ? "" : " ") + x;
      char id[16];
      std::snprintf(id, sizeof id, "u%02zu", u);
      units.push_back({id, words});
      index_units.push_back(text_unit(id, id, text, lex));
    }
    const auto index = Index::build(index_units, IndexParams{k1, b, {{"text", 1.0}}});

    // Oracle statistics straight from the word lists.
    std::map<std::string, std::size_t> df;
    double total = 0;
    for (const auto& [_, words] : units) {
      total += static_cast<double>(words.size());
      for (const auto& x : std::set<std::string>(words.begin(), words.end())) ++df[x];
    }
    const double avg = total / static_cast<double>(nunits);
    const double nu = static_cast<double>(nunits);
    auto oracle_rank = [&](const std::vector<std::string>& query) {
      std::vector<std::pair<double, std::string>> scored;
      const std::set<std::string> terms(query.begin(), query.end());
      for (const auto& [id, words] : units) {
        double score = 0.0;
        for (const auto& t : terms) {
          const double tf = static_cast<double>(std::count(words.begin(), words.end(), t));
          if (tf == 0) continue;
          const double d = static_cast<double>(df[t]);
          const double idf = std::log(1.0 + (nu - d + 0.5) / (d + 0.5));
          score += 1.0 * idf * tf * (k1 + 1.0) /
                   (tf + k1 * (1.0 - b + b * (static_cast<double>(words.size()) / avg)));
        }
        if (score > 0) scored.push_back({-score, id});
      }
      std::sort(scored.begin(), scored.end());
      std::vector<std::string> ids;
      for (const auto& [_, id] : scored) ids.push_back(id);
      return ids;
    };

    std::vector<RetrievalQuery> testset;
    std::vector<std::vector<std::string>> full_rankings;
    const std::size_t nq = 3 + rng() % 8;
    for (std::size_t q = 0; q < nq; ++q) {
      RetrievalQuery rq;
      std::vector<std::string> qwords;
      for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) qwords.push_back(vocab[rng() % vsize]);
      for (const auto& x : qwords) rq.query += (rq.query.empty() ? "" : " ") + x;
      for (std::size_t g = 0, n = 1 + rng() % 3; g < n; ++g) {
        auto id = units[rng() % nunits].first;
        if (std::find(rq.gold.begin(), rq.gold.end(), id) == rq.gold.end()) rq.gold.push_back(id);
      }
      testset.push_back(rq);
      full_rankings.push_back(oracle_rank(qwords));
    }
    for (std::size_t k : {std::size_t{1}, std::size_t{3}, std::size_t{10}}) {
      const auto got = eval_retrieval(index, lex, testset, k);
      double recall = 0, mrr = 0, acc = 0;
      for (std::size_t q = 0; q < nq; ++q) {
        const auto& r = full_rankings[q];
        const auto& gold = testset[q].gold;
        std::size_t hits = 0, first = 0;
        for (std::size_t pos = 0; pos < std::min(k, r.size()); ++pos) {
          if (std::find(gold.begin(), gold.end(), r[pos]) != gold.end()) {
            ++hits;
            if (!first) first = pos + 1;
          }
        }
        recall += static_cast<double>(hits) / static_cast<double>(gold.size());
        mrr += first ? 1.0 / static_cast<double>(first) : 0.0;
        acc += hits ? 1.0 : 0.0;
      }
      const double n = static_cast<double>(nq);
      const std::string tag = "corpus " + std::to_string(corpus) + " k=" + std::to_string(k);
      c.expect(got.recall_at_k == recall / n, tag + " recall");
      c.expect(got.mrr_at_k == mrr / n, tag + " mrr");
      c.expect(got.accuracy_at_k == acc / n, tag + " accuracy");
      c.expect(got.queries == nq, tag + " query count");
    }
    // Ranked ids also agree with the full scan.
    for (std::size_t q = 0; q < nq; ++q) {
      const auto hits = search(index, lex, testset[q].query, 10).hits;
      std::vector<std::string> ids;
      for (const auto& h : hits) ids.push_back(h.unit_id);
      auto want = full_rankings[q];
      if (want.size() > 10) want.resize(10);
      c.expect(ids == want, "corpus " + std::to_string(corpus) + " ranking differs");
    }
  }

  // Hand example: ln(2) * (2 * 2.2) / (2 + 1.2).
  const auto hand = Index::build({text_unit("A", "A", "regolith regolith", lex), text_unit("B", "B", "basalt basalt", lex)});
  const auto hits = search(hand, lex, "regolith", 10).hits;
  const double want = std::log(2.0) * 4.4 / 3.2;
  c.expect(hits.size() == 1 && hits[0].unit_id == "A", "hand example ranking");
  const double got = hits.empty() ? 0.0 : hits[0].score;
  c.expect(std::fabs(got - want) < 1e-6, "hand example " + fmt(got, 9));
  return {c.ok(), c.summary() + ", BM25 hand example " + fmt(got, 6)};
}

// ---------------------------------------------------------------- QA

Outcome qa_end_to_end() {
  Checker c;
  Lexicon lex;
  const auto reports = load_corpus(fixture("qa_reports.jsonl"));
  const auto pc = index_reports(reports, lex);
  const auto items = load_qa_testset(fixture("qa_testset.tsv"));
  c.expect(pc.passages.size() == 20, "expected 20 passages");
  c.expect(items.size() == 15, "expected 15 questions");
  const IndexRetriever retriever(pc.index, lex);
  const LexicalReader reader(lex, index_idf(pc.index));
  const QAPipeline pipeline(retriever, reader);
  std::size_t in_top10 = 0, top_is_gold = 0;
  double f1_sum = 0.0;
  for (const auto& it : items) {
    const auto hits = retriever.retrieve(it.question, 10, std::nullopt);
    if (std::any_of(hits.begin(), hits.end(), [&](const Hit& h) { return h.unit_id == it.gold_passage_id; }))
      ++in_top10;
    const auto res = pipeline.answer(it.question, 10, 0.5);
    const std::string top = res.primary_answers.empty() ? "" : res.primary_answers.front().text;
    if (top == it.gold_answer) ++top_is_gold;
    f1_sum += token_prf(top, it.gold_answer, lex).f1;
  }
  const double f1 = f1_sum / static_cast<double>(items.size());
  c.expect(in_top10 >= 14, "gold passage in top 10 for " + std::to_string(in_top10));
  c.expect(top_is_gold >= 13, "gold span on top for " + std::to_string(top_is_gold));
  c.expect(f1 >= 0.90, "macro F1 " + fmt(f1));
  return {c.ok(), c.summary() + ", gold passage in top-10 " + std::to_string(in_top10) + "/15, gold span on top " +
                      std::to_string(top_is_gold) + "/15, macro F1 " + fmt(f1)};
}

Outcome token_metrics() {
  Lexicon lex;
  const auto m = token_prf("to support the solar panels stack namely 910mm by 500mm", "to support the solar panels", lex);
  const bool ok = std::fabs(m.precision - 0.5) < 1e-12 && std::fabs(m.recall - 1.0) < 1e-12 &&
                  std::fabs(m.f1 - 0.667) <= 0.001;
  return {ok, "P=" + fmt(m.precision, 3) + " R=" + fmt(m.recall, 3) + " F1=" + fmt(m.f1, 3)};
}

// ---------------------------------------------------------------- quiz

Outcome quiz_pipeline(const EngineConfig& config, const EngineData& data) {
  Checker c;
  const auto passages = section_passages(data.passages, "qp-ncr", {});
  c.expect(passages.size() == 30, "quality procedure has " + std::to_string(passages.size()) + " passages");
  const auto cands = quiz_candidates(passages, data, config);

  // No kept pair at or above the threshold, checked with vectors built here.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (cands[i].status != CandidateStatus::deduped_out) kept.push_back(i);
  std::vector<std::map<std::string, long double>> vecs(cands.size());
  std::map<std::string, std::size_t> df;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (const auto& t : data.lexicon.index_terms(cands[i].question)) vecs[i][t] += 1;
    for (const auto& [t, _] : vecs[i]) ++df[t];
  }
  const long double n = static_cast<long double>(cands.size());
  for (auto& v : vecs)
    for (auto& [t, x] : v) x *= std::log((1 + n) / (1 + df[t])) + 1;
  double max_cos = 0.0;
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      const auto& x = vecs[kept[a]];
      const auto& y = vecs[kept[b]];
      long double dot = 0, nx = 0, ny = 0;
      for (const auto& [t, v] : x) {
        nx += v * v;
        if (auto it = y.find(t); it != y.end()) dot += v * it->second;
      }
      for (const auto& [t, v] : y) ny += v * v;
      const double cos = (nx > 0 && ny > 0) ? static_cast<double>(dot / std::sqrt(nx * ny)) : 0.0;
      max_cos = std::max(max_cos, cos);
      c.expect(cos < 0.8, cands[kept[a]].id + "/" + cands[kept[b]].id + " cosine " + fmt(cos));
    }
  }

  // Finalized quiz over every validated candidate.
  std::vector<QuestionCandidate> selected;
  for (const auto& q : cands)
    if (q.status == CandidateStatus::validated) selected.push_back(q);
  c.expect(!selected.empty(), "no validated candidates");
  std::size_t answerable = 0;
  if (!selected.empty()) {
    const auto quiz = assemble_quiz(selected, passages, data.reports.find("qp-ncr")->title);
    const LexicalReader reader(data.lexicon, index_idf(data.passages.index));
    for (std::size_t i = 0; i < quiz.trainer_section.size(); ++i) {
      const auto& item = quiz.trainer_section[i];
      const auto* p = data.passages.find(selected[i].passage_id);
      c.expect(p && p->text == item.passage, item.question + " passage mismatch");
      const auto spans = p ? reader.read(item.question, {p->id, p->doc_id, p->text}) : std::vector<AnswerSpan>{};
      const bool ok = !spans.empty() && spans.front().score >= 0.5;
      if (ok) ++answerable;
      c.expect(ok, "unanswerable: " + item.question);
    }
    c.expect(render_quiz(quiz) == read_file(test_data("qp_quiz.md")), "rendered quiz differs from golden");
  }
  c.expect(to_json(cands).dump(2) + "\n" == read_file(test_data("qp_candidates.json")),
           "candidates differ from golden JSON");
  c.expect(format_candidates(cands) == read_file(test_data("qp_candidates.tsv")), "candidates differ from golden TSV");
  return {c.ok(), c.summary() + ", " + std::to_string(cands.size()) + " candidates, " + std::to_string(kept.size()) +
                      " kept, max kept cosine " + fmt(max_cos) + ", " + std::to_string(answerable) + "/" +
                      std::to_string(selected.size()) + " quiz questions answerable"};
}

// ---------------------------------------------------------------- louvain

std::vector<WeightedGraph> read_graph6(const std::filesystem::path& path) {
  std::vector<WeightedGraph> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    WeightedGraph g;
    g.nodes = static_cast<std::size_t>(line[0] - 63);
    std::size_t bit = 0;
    auto next_bit = [&]() {
      const std::size_t byte = 1 + bit / 6, off = 5 - bit % 6;
      ++bit;
      return ((line[byte] - 63) >> off) & 1;
    };
    for (std::size_t j = 1; j < g.nodes; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (next_bit()) g.edges.push_back({i, j, 1.0});
    out.push_back(std::move(g));
  }
  return out;
}

// Best modularity over all set partitions (restricted growth strings).
double exhaustive_optimum(const WeightedGraph& g) {
  const std::size_t n = g.nodes;
  double m = 0.0;
  std::vector<double> deg(n, 0.0);
  for (const auto& e : g.edges) {
    m += e.weight;
    deg[e.a] += e.weight;
    deg[e.b] += e.weight;
  }
  if (m == 0.0) return 0.0;
  std::vector<std::size_t> a(n, 0), maxv(n, 0);
  std::vector<double> in(n), tot(n);
  double best = -1.0;
  while (true) {
    std::fill(in.begin(), in.end(), 0.0);
    std::fill(tot.begin(), tot.end(), 0.0);
    for (const auto& e : g.edges)
      if (a[e.a] == a[e.b]) in[a[e.a]] += e.weight;
    for (std::size_t v = 0; v < n; ++v) tot[a[v]] += deg[v];
    double q = 0.0;
    for (std::size_t k = 0; k < n; ++k) q += in[k] / m - (tot[k] / (2 * m)) * (tot[k] / (2 * m));
    best = std::max(best, q);
    // Next restricted growth string.
    std::size_t i = n;
    while (i-- > 1) {
      if (a[i] <= maxv[i - 1]) {
        ++a[i];
        for (std::size_t j = i + 1; j < n; ++j) {
          a[j] = 0;
          maxv[j] = std::max(maxv[j - 1], a[j]);
        }
        maxv[i] = std::max(maxv[i - 1], a[i]);
        break;
      }
    }
    if (i == 0) break;
  }
  return best;
}

Outcome louvain_quality() {
  Checker c;
  auto graphs = read_graph6(test_data("connected_graphs_le8.g6"));
  c.expect(graphs.size() == 12113, "expected 12113 graphs, read " + std::to_string(graphs.size()));
  const std::size_t exhaustive = graphs.size();
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 20; ++t) {
    WeightedGraph g;
    g.nodes = 9 + rng() % 2;
    std::uniform_real_distribution<double> w(0.05, 1.0);
    for (std::size_t i = 0; i < g.nodes; ++i)
      for (std::size_t j = i + 1; j < g.nodes; ++j)
        if (rng() % 100 < 35) g.edges.push_back({i, j, w(rng)});
    graphs.push_back(g);
  }
  double worst_ratio = 1.0;
  std::size_t below_opt = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& g = graphs[gi];
    const double opt = exhaustive_optimum(g);
    const auto p = louvain(g, 42 + gi);
    const std::string tag = (gi < exhaustive ? "graph6 #" : "random #") + std::to_string(gi);
    c.expect(p.modularity >= 0.95 * opt - 1e-12, tag + " Q " + fmt(p.modularity) + " vs opt " + fmt(opt));
    if (opt > 1e-12) worst_ratio = std::min(worst_ratio, p.modularity / opt);
    if (p.modularity < opt - 1e-9) ++below_opt;
    c.expect(std::fabs(p.modularity - modularity(g, p.community)) < 1e-9, tag + " reported Q mismatch");
    for (std::size_t i = 1; i < p.level_modularity.size(); ++i)
      c.expect(p.level_modularity[i] >= p.level_modularity[i - 1] - 1e-12, tag + " level modularity decreased");
  }
  WeightedGraph tri;
  tri.nodes = 6;
  tri.edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}};
  const auto p = louvain(tri, 7);
  c.expect(p.community_count() == 2, "two triangles gave " + std::to_string(p.community_count()) + " communities");
  c.expect(std::fabs(p.modularity - 0.5) <= 1e-9, "two triangles Q " + fmt(p.modularity, 12));
  return {c.ok(), c.summary() + ", " + std::to_string(graphs.size()) + " graphs, worst Q/opt " + fmt(worst_ratio) +
                      ", " + std::to_string(below_opt) + " below optimum, two triangles Q " + fmt(p.modularity, 9)};
}

// ---------------------------------------------------------------- annotation

Outcome annotation_invariants() {
  Checker c;
  Lexicon lex;
  const auto kg = load_graph(fixture("minikg.tsv"), lex);
  std::vector<std::string> lemmas;
  for (const auto& [id, concept_] : kg.concepts())
    for (const auto& l : concept_.lemmas) lemmas.push_back(l);
  const std::vector<std::string> filler = {"the",    "of",     "and",   "new",   "results", "from",  "with",
                                           "data",   "early",  "long",  "team",  "plan",    "value", "system",
                                           "review", "design", "water", "image", "a",       "is"};
  std::mt19937_64 rng(1234);
  DocumentCollection docs;
  for (int d = 0; d < 500; ++d) {
    std::string body;
    const std::size_t n = 10 + rng() % 30;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& piece = rng() % 2 ? lemmas[rng() % lemmas.size()] : filler[rng() % filler.size()];
      body += (body.empty() ? "" : " ") + piece;
    }
    docs.add({"doc" + std::to_string(d), Source::paper, "", body + ".", {}, {}, {}});
  }

  std::size_t mentions_total = 0;
  for (const auto& d : docs.docs) {
    const auto ms = annotate(d, kg, lex);
    mentions_total += ms.size();
    for (std::size_t i = 1; i < ms.size(); ++i)
      c.expect(ms[i - 1].char_end <= ms[i].char_start, d.id + " overlapping mentions");
    // Greedy longest-match replayed from the lemma index alone.
    const auto toks = lex.tokenize(d.body);
    std::vector<std::pair<std::size_t, std::size_t>> want;
    for (std::size_t i = 0; i < toks.size();) {
      std::size_t best = 0;
      for (std::size_t len = 1; len <= 8 && i + len <= toks.size(); ++len) {
        const auto slice = d.body.substr(toks[i].start, toks[i + len - 1].end - toks[i].start);
        if (slice.find('.') != std::string::npos) break;
        if (len == 1 && toks[i].is_stopword && toks[i].surface == toks[i].key) continue;
        if (kg.lookup(lex.phrase_key(slice))) best = len;
      }
      if (best) {
        want.push_back({toks[i].start, toks[i + best - 1].end});
        i += best;
      } else {
        ++i;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> got;
    for (const auto& m : ms) got.push_back({m.char_start, m.char_end});
    c.expect(got == want, d.id + " differs from longest-match replay");
  }

  // Enrichment: termgap candidates plus random phrases built from KG lemmas.
  auto known_counts = [&](const KnowledgeGraph& g) {
    const auto md = extract_collection_metadata(docs, g, lex);
    std::map<std::string, std::size_t> out;
    for (const auto& [id, m] : md) out[id] = m.known_concepts.size();
    return out;
  };
  const auto general = load_stats(fixture("general_stats.tsv"));
  auto current = kg;
  auto before = known_counts(current);
  for (int round = 0; round < 3; ++round) {
    const auto rep = gap_report(docs, current, general, lex);
    std::vector<Concept> additions = enrichment_candidates(rep, TermCategory::groups, 15);
    for (int k = 0; k < 10; ++k) {
      Concept extra;
      extra.id = "rand" + std::to_string(round) + "_" + std::to_string(k);
      extra.lemmas = {lemmas[rng() % lemmas.size()] + " " + lemmas[rng() % lemmas.size()]};
      extra.domains = {"misc"};
      additions.push_back(extra);
    }
    current = add_concepts(current, additions, lex);
    const auto after = known_counts(current);
    for (const auto& [id, n] : before)
      c.expect(after.at(id) >= n, id + " lost known concepts in round " + std::to_string(round));
    before = after;
  }
  return {c.ok(), c.summary() + ", " + std::to_string(mentions_total) + " mentions over 500 documents"};
}

// ---------------------------------------------------------------- gateway

struct Server {
  HttpService service;
  int port;
  std::thread thread;
  explicit Server(Engine& e) : service(e), port(service.bind("127.0.0.1", 0)) {
    thread = std::thread([this] { service.listen(); });
    while (!service.running()) std::this_thread::yield();
  }
  ~Server() {
    service.stop();
    thread.join();
  }
};

Outcome gateway_parity(const EngineConfig& base, const EngineData& d) {
  Checker c;
  testsupport::TempDir tmp;
  EngineConfig config = base;
  config.state_dir = (tmp.path() / "state").string();
  std::size_t endpoints = 0;
  auto same = [&](const httplib::Result& res, int status, const Json& want, const std::string& what) {
    ++endpoints;
    c.expect(res && res->status == status, what + " status " + (res ? std::to_string(res->status) : "none"));
    c.expect(res && res->body == want.dump(), what + " body differs");
    c.expect(res && res->get_header_value("Content-Type").rfind("application/json", 0) == 0, what + " content type");
  };
  const std::string json = "application/json";
  {
    Engine engine(config);
    Server srv(engine);
    httplib::Client client("127.0.0.1", srv.port);

    const IndexRetriever retriever(d.passages.index, d.lexicon, scorer_from_string(config.scorer));
    const LexicalReader reader(d.lexicon, index_idf(d.passages.index));
    const QAPipeline qa(retriever, reader);
    const std::string q = "Which launcher will Athena use?";
    same(client.Post("/ask", Json{{"question", q}}.dump(), json), 200, to_json(qa.answer(q, 10, 0.5)), "POST /ask");
    same(client.Post("/ask", Json{{"question", q}, {"k", 3}, {"scope", "cdf-athena"}, {"threshold", 0.9}}.dump(), json),
         200, to_json(qa.answer(q, 3, 0.9, std::string("cdf-athena"))), "POST /ask scoped");

    Json docs = Json::array();
    for (const auto& doc : d.corpus.docs) docs.push_back(document_summary(doc));
    for (const auto& doc : d.reports.docs) docs.push_back(document_summary(doc));
    same(client.Get("/documents"), 200, docs, "GET /documents");
    Json idea = to_json(*d.corpus.find("id42"));
    idea["metadata"] = to_json(extract_metadata(*d.corpus.find("id42"), annotate(*d.corpus.find("id42"), d.kg, d.lexicon),
                                                d.kg, d.lexicon, concept_stats(d.corpus, d.kg, d.lexicon)));
    same(client.Get("/documents/id42"), 200, idea, "GET /documents/:id");
    Json report = to_json(*d.reports.find("qp-ncr"));
    std::vector<std::string> sections;
    for (const auto& p : segment_report(*d.reports.find("qp-ncr")).passages) {
      std::string path;
      for (const auto& h : p.section_path) path += (path.empty() ? "" : " > ") + h;
      if (!path.empty() && std::find(sections.begin(), sections.end(), path) == sections.end()) sections.push_back(path);
    }
    report["sections"] = sections;
    same(client.Get("/documents/qp-ncr"), 200, report, "GET /documents/:id report");

    Json snippets = Json::array();
    for (const auto& p : sample_passages(d.passages, 4, 11)) snippets.push_back(to_json(p));
    same(client.Get("/passages/snippets?n=4&seed=11"), 200, snippets, "GET /passages/snippets");
    same(client.Get("/questions/predefined"), 200, Json(d.predefined_questions), "GET /questions/predefined");

    const auto passages = section_passages(d.passages, "qp-ncr", {});
    GenerationOptions gen;
    gen.beam_width = config.beam_width;
    auto cands = generate_candidates(passages, d.kg, d.lexicon, d.templates, gen);
    dedup(cands, d.lexicon, config.dedup_threshold);
    validate(cands, passages, reader, d.lexicon, config.validation_min_score);
    same(client.Post("/quiz/sessions", R"({"doc_id":"qp-ncr"})", json), 201,
         Json{{"session_id", "session-0001"}, {"candidates", to_json(cands)}}, "POST /quiz/sessions");
    std::vector<QuestionCandidate> chosen;
    std::vector<std::string> ids;
    for (const auto& q2 : cands) {
      if (q2.status == CandidateStatus::validated && chosen.size() < 4) {
        chosen.push_back(q2);
        ids.push_back(q2.id);
      }
    }
    same(client.Post("/quiz/sessions/session-0001/selection", Json{{"candidate_ids", ids}}.dump(), json), 200,
         Json{{"session_id", "session-0001"}, {"selected", ids}}, "POST /quiz/sessions/:id/selection");
    same(client.Post("/quiz/sessions/session-0001/finalize", "{}", json), 200,
         to_json(assemble_quiz(chosen, passages, d.reports.find("qp-ncr")->title)), "POST /quiz/sessions/:id/finalize");

    same(client.Get("/novelty/id42"), 200, to_json(novelty_score(d.novelty, "id42", without(d.ideas, "id42"), d.studies, d.projects)),
         "GET /novelty/:id");
    auto missing = client.Get("/novelty/no-such-idea");
    ++endpoints;
    c.expect(missing && missing->status == 404, "GET /novelty unknown status");
    c.expect(missing && Json::parse(missing->body).contains("error"), "GET /novelty unknown body");

    const auto graph = build_similarity_graph(d.novelty, d.ideas, 0.2);
    same(client.Get("/graph?min_sim=0.2"), 200, to_json(graph), "GET /graph");
    const auto g15 = build_similarity_graph(d.novelty, d.ideas, config.graph_min_sim);
    const auto part = louvain(to_weighted(g15), config.louvain_seed, config.louvain_resolution);
    const auto topics = cluster_topics(g15, part, d.novelty);
    same(client.Get("/clusters"), 200,
         Json{{"partition", to_json(part, g15)}, {"clusters", to_json(topics)}, {"table", render_cluster_table(topics)}},
         "GET /clusters");

    const Json fb{{"timestamp", "2026-01-02T03:04:05Z"},
                  {"feature", "qa"},
                  {"payload", {{"verdict", "correct"}, {"question", q}, {"answer", "Ariane 5"}}}};
    same(client.Post("/feedback", fb.dump(), json), 201, fb, "POST /feedback");
    same(client.Get("/feedback"), 200, Json::array({fb}), "GET /feedback");
  }
  // Restart on the same state directory.
  {
    Engine engine(config);
    Server srv(engine);
    httplib::Client client("127.0.0.1", srv.port);
    auto res = client.Get("/feedback");
    c.expect(res && res->status == 200, "feedback after restart status");
    const auto records = res ? Json::parse(res->body) : Json::array();
    c.expect(records.size() == 1 && records[0]["timestamp"] == "2026-01-02T03:04:05Z" &&
                 records[0]["payload"]["answer"] == "Ariane 5",
             "feedback lost on restart");
    c.expect(client.Post("/quiz/sessions/session-0001/finalize", "{}", json)->status == 200, "session lost on restart");
  }
  return {c.ok(), c.summary() + ", " + std::to_string(endpoints) + " endpoint calls"};
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const auto suite_start = Clock::now();
  int failed = 0;
  auto run = [&](const std::string& name, double limit_s, const std::function<Outcome()>& f) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > limit_s) {
      o.pass = false;
      o.detail += "; over the " + fmt(limit_s, 0) + " s limit";
    }
    if (!o.pass) ++failed;
    std::printf("%s  %-28s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  };

  run("weirdness formula", 1, weirdness_exact);
  run("planted jargon", 5, planted_jargon);
  run("novelty formula", 10, novelty_exact);
  run("retrieval metrics oracle", 10, retrieval_oracle);
  run("end-to-end QA", 10, qa_end_to_end);
  run("token metrics", 1, token_metrics);

  EngineConfig config;
  config.base_dir = SPACETEXT_FIXTURE_DIR;
  std::shared_ptr<const EngineData> data;
  try {
    data = EngineData::load(config);
  } catch (const std::exception& e) {
    std::printf("fixture load failed: %s\n", e.what());
    return 1;
  }
  run("quiz pipeline", 30, [&] { return quiz_pipeline(config, *data); });
  run("louvain", 60, louvain_quality);
  run("annotation invariants", 30, annotation_invariants);
  run("gateway parity", 60, [&] { return gateway_parity(config, *data); });

  const double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
  const bool in_time = total < 180.0;
  if (!in_time) ++failed;
  std::printf("%s  %-28s %6.2fs  %d criteria failed\n", in_time && failed == 0 ? "PASS" : "FAIL", "suite total",
              total, failed);
  return failed == 0 ? 0 : 1;
}
