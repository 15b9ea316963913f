#pragma once

// Brute-force similarity used to check the novelty index. Rebuilds every
// vector from raw metadata with dense arrays and long double sums.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "spacetext/novelty.hpp"

namespace oracle {

using namespace spacetext;

struct Doc {
  std::map<std::string, std::vector<std::string>> fields;
};

inline std::vector<std::string> keywords(const Document& d, const DocumentCollection& pool, const Lexicon& lex,
                                         std::size_t n) {
  std::map<std::string, int> df;
  for (const auto& o : pool.docs) {
    std::set<std::string> seen;
    for (const auto& l : lex.content_lemmas(analysis_text(o))) seen.insert(l);
    for (const auto& l : seen) ++df[l];
  }
  std::map<std::string, int> tf;
  for (const auto& l : lex.content_lemmas(analysis_text(d))) ++tf[l];
  std::vector<std::pair<long double, std::string>> scored;
  const long double size = static_cast<long double>(pool.docs.size());
  for (const auto& [l, c] : tf) scored.push_back({-(c * (std::log((1 + size) / (1 + df[l])) + 1)), l});
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < n; ++i) out.push_back(scored[i].second);
  return out;
}

class Similarity {
 public:
  Similarity(const DocumentCollection& pool, const std::map<std::string, DocumentMetadata>& md,
             const Lexicon& lex, const std::map<std::string, double>& weights, std::size_t keyword_count) {
    for (const auto& d : pool.docs) {
      Doc o;
      for (const auto& r : md.at(d.id).main_lemmas) o.fields["main_lemmas"].push_back(r.key);
      for (const auto& r : md.at(d.id).main_syncons) o.fields["main_syncons"].push_back(r.key);
      o.fields["keywords"] = keywords(d, pool, lex, keyword_count);
      docs_[d.id] = o;
    }
    std::map<std::string, std::map<std::string, int>> df;
    for (const auto& [id, o] : docs_)
      for (const auto& [f, terms] : o.fields) {
        std::set<std::string> seen(terms.begin(), terms.end());
        for (const auto& t : seen) ++df[f][t];
      }
    // Dimension list over every (field, term).
    std::map<std::pair<std::string, std::string>, std::size_t> dim;
    for (const auto& [f, m] : df)
      for (const auto& [t, _] : m) dim.emplace(std::make_pair(f, t), dim.size());
    const long double n = static_cast<long double>(docs_.size());
    for (const auto& [id, o] : docs_) {
      std::vector<long double> v(dim.size(), 0.0L);
      for (const auto& [f, terms] : o.fields) {
        auto w = weights.find(f);
        if (w == weights.end()) continue;
        for (const auto& t : terms) {
          v[dim.at({f, t})] += w->second * (std::log((1 + n) / (1 + df[f][t])) + 1);
        }
      }
      dense_[id] = std::move(v);
    }
  }

  double operator()(const std::string& a, const std::string& b) const {
    const auto& x = dense_.at(a);
    const auto& y = dense_.at(b);
    long double dot = 0, nx = 0, ny = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      dot += x[i] * y[i];
      nx += x[i] * x[i];
      ny += y[i] * y[i];
    }
    if (nx == 0 || ny == 0) return 0.0;
    return static_cast<double>(dot / (std::sqrt(nx) * std::sqrt(ny)));
  }

  const std::vector<std::string>& field(const std::string& id, const std::string& f) const {
    return docs_.at(id).fields.at(f);
  }

 private:
  std::map<std::string, Doc> docs_;
  std::map<std::string, std::vector<long double>> dense_;
};

}  // namespace oracle
