#include "spacetext/index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "spacetext/error.hpp"

namespace spacetext {

std::string to_string(Scorer s) { return s == Scorer::bm25 ? "bm25" : "tfidf"; }

Scorer scorer_from_string(const std::string& s) {
  if (s == "bm25") return Scorer::bm25;
  if (s == "tfidf") return Scorer::tfidf;
  throw DataError("unknown scorer '" + s + "' (expected bm25 or tfidf)");
}

double IndexParams::weight(const std::string& field) const {
  auto it = field_weights.find(field);
  return it == field_weights.end() ? 0.0 : it->second;
}

double sparse_cosine(const SparseVector& a, const SparseVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [k, v] : a) {
    na += v * v;
    if (auto it = b.find(k); it != b.end()) dot += v * it->second;
  }
  for (const auto& [k, v] : b) nb += v * v;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

Index Index::build(std::vector<IndexUnit> units, IndexParams params) {
  if (units.empty()) throw DataError("build_index: no units to index");
  Index idx;
  idx.params_ = std::move(params);
  std::set<std::string> field_names;
  for (const auto& u : units) {
    for (const auto& [f, _] : u.fields) field_names.insert(f);
  }
  for (const auto& f : field_names) idx.fields_[f].lengths.assign(units.size(), 0);

  for (std::uint32_t ui = 0; ui < units.size(); ++ui) {
    auto& u = units[ui];
    if (!idx.by_id_.emplace(u.id, ui).second) {
      throw DataError("build_index: duplicate unit id '" + u.id + "'");
    }
    for (const auto& [f, terms] : u.fields) {
      auto& field = idx.fields_[f];
      std::map<std::string, std::uint32_t> tf;
      for (const auto& t : terms) ++tf[t];
      for (const auto& [t, n] : tf) field.postings[t].push_back({ui, n});
      field.lengths[ui] = static_cast<std::uint32_t>(terms.size());
      field.total_length += terms.size();
    }
    idx.units_.push_back({std::move(u.id), std::move(u.group), std::move(u.text)});
  }
  idx.finish();
  return idx;
}

void Index::finish() {
  by_id_.clear();
  for (std::size_t u = 0; u < units_.size(); ++u) by_id_[units_[u].id] = u;
  forward_.assign(units_.size(), {});
  for (const auto& [f, field] : fields_) {
    for (const auto& [t, plist] : field.postings) {
      for (const auto& p : plist) forward_[p.unit][f][t] = p.tf;
    }
  }
}

std::optional<std::size_t> Index::find(const std::string& unit_id) const {
  auto it = by_id_.find(unit_id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

bool Index::has_group(const std::string& group) const {
  return std::any_of(units_.begin(), units_.end(), [&](const Unit& u) { return u.group == group; });
}

std::vector<std::string> Index::fields() const {
  std::vector<std::string> out;
  for (const auto& [f, _] : fields_) out.push_back(f);
  return out;
}

const std::vector<Posting>* Index::postings(const std::string& field, const std::string& term) const {
  auto fit = fields_.find(field);
  if (fit == fields_.end()) return nullptr;
  auto it = fit->second.postings.find(term);
  return it == fit->second.postings.end() ? nullptr : &it->second;
}

std::size_t Index::doc_freq(const std::string& field, const std::string& term) const {
  const auto* p = postings(field, term);
  return p ? p->size() : 0;
}

std::uint32_t Index::length(std::size_t unit, const std::string& field) const {
  auto fit = fields_.find(field);
  return fit == fields_.end() ? 0 : fit->second.lengths[unit];
}

double Index::average_length(const std::string& field) const {
  auto fit = fields_.find(field);
  if (fit == fields_.end() || units_.empty()) return 0.0;
  return static_cast<double>(fit->second.total_length) / static_cast<double>(units_.size());
}

const std::map<std::string, std::uint32_t>& Index::terms(std::size_t unit,
                                                         const std::string& field) const {
  static const std::map<std::string, std::uint32_t> kEmpty;
  auto it = forward_[unit].find(field);
  return it == forward_[unit].end() ? kEmpty : it->second;
}

double Index::bm25_idf(const std::string& field, const std::string& term) const {
  const double n = static_cast<double>(units_.size());
  const double df = static_cast<double>(doc_freq(field, term));
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double Index::tfidf_idf(const std::string& field, const std::string& term) const {
  const double n = static_cast<double>(units_.size());
  const double df = static_cast<double>(doc_freq(field, term));
  return std::log((1.0 + n) / (1.0 + df)) + 1.0;
}

SparseVector Index::tfidf_vector(std::size_t unit, const std::map<std::string, double>* weights) const {
  SparseVector v;
  for (const auto& [f, terms] : forward_[unit]) {
    double w = params_.weight(f);
    if (weights) {
      auto it = weights->find(f);
      w = it == weights->end() ? 0.0 : it->second;
    }
    if (w <= 0.0) continue;
    for (const auto& [t, tf] : terms) v[f + '\x1f' + t] = w * tf * tfidf_idf(f, t);
  }
  return v;
}

CosineResult Index::cosine(const std::string& a, const std::string& b,
                           const std::map<std::string, double>* weights) const {
  auto ua = find(a), ub = find(b);
  if (!ua) throw NotFound("unit '" + a + "' is not indexed");
  if (!ub) throw NotFound("unit '" + b + "' is not indexed");
  const auto va = tfidf_vector(*ua, weights);
  const auto vb = tfidf_vector(*ub, weights);
  auto nonzero = [](const SparseVector& v) {
    return std::any_of(v.begin(), v.end(), [](const auto& kv) { return kv.second != 0.0; });
  };
  if (!nonzero(va) || !nonzero(vb)) return {0.0, true};
  return {sparse_cosine(va, vb), false};
}

SearchResult Index::search_terms(const std::vector<std::string>& query_terms, std::size_t k,
                                 Scorer scorer, const std::optional<std::string>& group) const {
  SearchResult result;
  if (k == 0) throw DataError("search: k must be >= 1");
  if (query_terms.empty()) {
    result.empty_query = true;
    return result;
  }
  std::map<std::string, std::uint32_t> qtf;
  for (const auto& t : query_terms) ++qtf[t];

  std::vector<double> scores(units_.size(), 0.0);
  std::vector<std::set<std::string>> matched(units_.size());
  double query_norm_sq = 0.0;
  for (const auto& [f, field] : fields_) {
    const double w = params_.weight(f);
    if (w <= 0.0) continue;
    const double avg = average_length(f);
    for (const auto& [t, q] : qtf) {
      if (scorer == Scorer::tfidf) {
        const double qw = w * q * tfidf_idf(f, t);
        query_norm_sq += qw * qw;
      }
      auto pit = field.postings.find(t);
      if (pit == field.postings.end()) continue;
      const double bm_idf = bm25_idf(f, t);
      const double tf_idf = tfidf_idf(f, t);
      for (const auto& p : pit->second) {
        const double tf = p.tf;
        double s = 0.0;
        if (scorer == Scorer::bm25) {
          const double len = field.lengths[p.unit];
          const double norm = avg > 0.0 ? len / avg : 0.0;
          s = w * bm_idf * tf * (params_.k1 + 1.0) /
              (tf + params_.k1 * (1.0 - params_.b + params_.b * norm));
        } else {
          s = (w * q * tf_idf) * (w * tf * tf_idf);
        }
        scores[p.unit] += s;
        matched[p.unit].insert(t);
      }
    }
  }
  if (scorer == Scorer::tfidf) {
    const double qn = std::sqrt(query_norm_sq);
    for (std::size_t u = 0; u < units_.size(); ++u) {
      if (scores[u] == 0.0) continue;
      double un = 0.0;
      for (const auto& [_, v] : tfidf_vector(u)) un += v * v;
      scores[u] = (qn > 0.0 && un > 0.0) ? scores[u] / (qn * std::sqrt(un)) : 0.0;
    }
  }
  std::vector<std::size_t> order;
  for (std::size_t u = 0; u < units_.size(); ++u) {
    if (scores[u] <= 0.0) continue;
    if (group && units_[u].group != *group) continue;
    order.push_back(u);
  }
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return units_[a].id < units_[b].id;
  };
  if (order.size() > k) {
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      better);
    order.resize(k);
  } else {
    std::sort(order.begin(), order.end(), better);
  }
  for (auto u : order) {
    result.hits.push_back(
        {units_[u].id, scores[u], std::vector<std::string>(matched[u].begin(), matched[u].end())});
  }
  return result;
}

namespace {

constexpr char kMagic[4] = {'S', 'T', 'I', 'X'};

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void f64(double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof bits);
    u64(bits);
  }
  void str(const std::string& s) {
    u64(s.size());
    out_ += s;
  }
  void raw(const char* p, std::size_t n) { out_.append(p, n); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& in) : in_(in) {}
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in_[pos_++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_++])) << (8 * i);
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double d;
    std::memcpy(&d, &bits, sizeof d);
    return d;
  }
  std::string str() {
    const auto n = u64();
    need(n);
    std::string s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string raw(std::size_t n) {
    need(n);
    std::string s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::uint64_t n) const {
    if (n > in_.size() - pos_) throw DataError("index file truncated or corrupt");
  }
  const std::string& in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Index::to_bytes() const {
  Writer w;
  w.raw(kMagic, 4);
  w.u32(kIndexFormatVersion);
  w.f64(params_.k1);
  w.f64(params_.b);
  w.u64(params_.field_weights.size());
  for (const auto& [f, wt] : params_.field_weights) {
    w.str(f);
    w.f64(wt);
  }
  w.u64(units_.size());
  for (const auto& u : units_) {
    w.str(u.id);
    w.str(u.group);
    w.str(u.text);
  }
  w.u64(fields_.size());
  for (const auto& [f, field] : fields_) {
    w.str(f);
    for (auto len : field.lengths) w.u32(len);
    w.u64(field.postings.size());
    for (const auto& [t, plist] : field.postings) {
      w.str(t);
      w.u64(plist.size());
      for (const auto& p : plist) {
        w.u32(p.unit);
        w.u32(p.tf);
      }
    }
  }
  return w.take();
}

Index Index::from_bytes(const std::string& bytes) {
  Reader r(bytes);
  if (bytes.size() < 8 || r.raw(4) != std::string(kMagic, 4)) {
    throw DataError("not an index file (bad magic header)");
  }
  const auto version = r.u32();
  if (version != kIndexFormatVersion) {
    throw DataError("unsupported index format version " + std::to_string(version));
  }
  Index idx;
  idx.params_.k1 = r.f64();
  idx.params_.b = r.f64();
  idx.params_.field_weights.clear();
  for (auto n = r.u64(); n > 0; --n) {
    auto f = r.str();
    idx.params_.field_weights[f] = r.f64();
  }
  const auto nunits = r.u64();
  for (std::uint64_t i = 0; i < nunits; ++i) {
    Unit u;
    u.id = r.str();
    u.group = r.str();
    u.text = r.str();
    idx.units_.push_back(std::move(u));
  }
  for (auto nf = r.u64(); nf > 0; --nf) {
    auto name = r.str();
    auto& field = idx.fields_[name];
    field.lengths.resize(nunits);
    for (auto& len : field.lengths) {
      len = r.u32();
      field.total_length += len;
    }
    for (auto nt = r.u64(); nt > 0; --nt) {
      auto term = r.str();
      auto& plist = field.postings[term];
      for (auto np = r.u64(); np > 0; --np) {
        Posting p;
        p.unit = r.u32();
        p.tf = r.u32();
        if (p.unit >= nunits) throw DataError("index file corrupt: posting unit out of range");
        plist.push_back(p);
      }
    }
  }
  if (!r.done()) throw DataError("index file has trailing bytes");
  idx.finish();
  return idx;
}

void Index::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write index " + path.string());
  const auto bytes = to_bytes();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Index Index::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read index " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_bytes(ss.str());
}

SearchResult search(const Index& index, const Lexicon& lexicon, std::string_view query,
                    std::size_t k, Scorer scorer, const std::optional<std::string>& group) {
  return index.search_terms(lexicon.index_terms(query), k, scorer, group);
}

IndexUnit text_unit(std::string id, std::string group, std::string text, const Lexicon& lexicon) {
  IndexUnit u;
  u.fields["text"] = lexicon.index_terms(text);
  u.id = std::move(id);
  u.group = std::move(group);
  u.text = std::move(text);
  return u;
}

RetrievalMetrics retrieval_metrics(const std::vector<std::vector<std::string>>& rankings,
                                   const std::vector<std::vector<std::string>>& gold, std::size_t k) {
  if (rankings.empty()) throw DataError("eval_retrieval: empty testset");
  if (rankings.size() != gold.size()) throw DataError("eval_retrieval: rankings/gold size mismatch");
  RetrievalMetrics m;
  m.k = k;
  m.queries = rankings.size();
  double recall = 0.0, mrr = 0.0, acc = 0.0;
  for (std::size_t q = 0; q < rankings.size(); ++q) {
    const std::set<std::string> g(gold[q].begin(), gold[q].end());
    if (g.empty()) throw DataError("eval_retrieval: query " + std::to_string(q) + " has no gold ids");
    std::size_t found = 0;
    double rr = 0.0;
    const std::size_t limit = std::min(k, rankings[q].size());
    for (std::size_t r = 0; r < limit; ++r) {
      if (g.count(rankings[q][r])) {
        ++found;
        if (rr == 0.0) rr = 1.0 / static_cast<double>(r + 1);
      }
    }
    recall += static_cast<double>(found) / static_cast<double>(g.size());
    mrr += rr;
    acc += found > 0 ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(rankings.size());
  m.recall_at_k = recall / n;
  m.mrr_at_k = mrr / n;
  m.accuracy_at_k = acc / n;
  return m;
}

RetrievalMetrics eval_retrieval(const Index& index, const Lexicon& lexicon,
                                const std::vector<RetrievalQuery>& testset, std::size_t k,
                                Scorer scorer) {
  if (testset.empty()) throw DataError("eval_retrieval: empty testset");
  std::vector<std::vector<std::string>> rankings, gold;
  for (const auto& q : testset) {
    for (const auto& g : q.gold) {
      if (!index.find(g)) throw NotFound("eval_retrieval: gold id '" + g + "' is not indexed");
    }
    std::vector<std::string> ids;
    for (const auto& h : search(index, lexicon, q.query, k, scorer).hits) ids.push_back(h.unit_id);
    rankings.push_back(std::move(ids));
    gold.push_back(q.gold);
  }
  return retrieval_metrics(rankings, gold, k);
}

std::vector<RetrievalQuery> load_retrieval_testset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read testset " + path.string());
  std::vector<RetrievalQuery> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected query<TAB>gold_ids");
    }
    RetrievalQuery q;
    q.query = line.substr(0, tab);
    std::string rest = line.substr(tab + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto bar = rest.find('|', pos);
      if (bar == std::string::npos) bar = rest.size();
      if (bar > pos) q.gold.push_back(rest.substr(pos, bar - pos));
      pos = bar + 1;
    }
    if (q.gold.empty()) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": no gold ids");
    }
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace spacetext
