#include "spacetext/termgap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "spacetext/error.hpp"

namespace spacetext {

std::uint64_t CorpusStats::frequency(const std::string& term) const {
  auto it = freq.find(term);
  return it == freq.end() ? 0 : it->second;
}

std::string to_string(TermCategory c) {
  switch (c) {
    case TermCategory::lemmas: return "lemmas";
    case TermCategory::groups: return "groups";
    case TermCategory::persons: return "persons";
    case TermCategory::places: return "places";
    case TermCategory::organizations: return "organizations";
  }
  return "lemmas";
}

namespace {

bool has_alpha(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || (static_cast<unsigned char>(c) & 0x80);
  });
}

std::size_t pareto_count(double fraction, std::size_t n) {
  if (n == 0 || fraction <= 0.0) return 0;
  // Guard against products like 0.2 * 5 landing a hair above the integer.
  const double raw = fraction * static_cast<double>(n);
  auto count = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::min(count, n);
}

bool by_frequency(const TermStats& a, const TermStats& b) {
  if (a.f_special != b.f_special) return a.f_special > b.f_special;
  return a.term < b.term;
}

}  // namespace

CorpusStats corpus_stats(const DocumentCollection& collection, const Lexicon& lexicon,
                         TermUnit unit) {
  CorpusStats stats;
  for (const auto& doc : collection.docs) {
    for (const auto& t : lexicon.tokenize(analysis_text(doc))) {
      ++stats.total_tokens;
      if (t.is_stopword) continue;
      ++stats.freq[unit == TermUnit::lemma ? t.lemma : t.key];
    }
  }
  if (stats.total_tokens == 0) throw DataError("empty corpus: no tokens to count");
  return stats;
}

CorpusStats parse_stats(const std::string& text, const std::string& origin) {
  CorpusStats stats;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_n = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto where = [&] { return origin + ":" + std::to_string(lineno) + ": "; };
    if (!have_n) {
      if (line.rfind("N=", 0) != 0) throw DataError(where() + "expected header N=<int>");
      try {
        stats.total_tokens = std::stoull(line.substr(2));
      } catch (const std::exception&) {
        throw DataError(where() + "invalid token count");
      }
      have_n = true;
      continue;
    }
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) throw DataError(where() + "expected term<TAB>count");
    std::uint64_t count = 0;
    try {
      count = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw DataError(where() + "invalid count");
    }
    if (count == 0) throw DataError(where() + "count must be >= 1");
    stats.freq[line.substr(0, tab)] += count;
  }
  if (!have_n) throw DataError(origin + ": missing N=<int> header");
  return stats;
}

CorpusStats load_stats(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read stats file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_stats(ss.str(), path.filename().string());
}

std::string format_stats(const CorpusStats& stats) {
  std::ostringstream out;
  out << "N=" << stats.total_tokens << '\n';
  for (const auto& [term, count] : stats.freq) out << term << '\t' << count << '\n';
  return out.str();
}

double weirdness(std::uint64_t f_special, std::uint64_t n_special, std::uint64_t f_general,
                 std::uint64_t n_general) {
  if (n_special == 0) throw DataError("weirdness: specialized corpus has no tokens");
  if (n_general == 0) throw DataError("weirdness: general corpus has no tokens");
  const long double num = static_cast<long double>(n_general) * static_cast<long double>(f_special);
  const long double den =
      (1.0L + static_cast<long double>(f_general)) * static_cast<long double>(n_special);
  return static_cast<double>(num / den);
}

double weirdness(const std::string& term, const CorpusStats& special, const CorpusStats& general) {
  return weirdness(special.frequency(term), special.total_tokens, general.frequency(term),
                   general.total_tokens);
}

std::vector<TermStats> rank_by_weirdness(const CorpusStats& special, const CorpusStats& general,
                                         const KnowledgeGraph* kg) {
  std::vector<TermStats> out;
  for (const auto& [term, f] : special.freq) {
    if (!has_alpha(term)) continue;
    TermStats ts;
    ts.term = term;
    ts.f_special = f;
    ts.f_general = general.frequency(term);
    ts.n_special = special.total_tokens;
    ts.n_general = general.total_tokens;
    ts.weirdness = weirdness(f, special.total_tokens, ts.f_general, general.total_tokens);
    ts.known_in_kg = kg && kg->lookup(term);
    out.push_back(std::move(ts));
  }
  std::sort(out.begin(), out.end(), [](const TermStats& a, const TermStats& b) {
    if (a.weirdness != b.weirdness) return a.weirdness > b.weirdness;
    return a.term < b.term;
  });
  return out;
}

std::vector<EntityCandidate> guess_entities(std::string_view text, const Lexicon& lexicon) {
  static const std::set<std::string> org_heads = {
      "agency",     "organization", "organisation", "institute",   "university", "centre",
      "center",     "union",        "council",      "panel",       "laboratory", "corporation",
      "company",    "committee",    "society",      "programme",   "foundation", "administration",
      "office",     "ministry",     "consortium",   "association", "academy",    "inc",
      "ltd",        "gmbh",         "observatory",  "commission",  "service",    "network"};
  static const std::set<std::string> place_heads = {
      "ocean",  "sea",       "river",   "lake",   "mountains", "mountain", "island",
      "islands", "desert",   "basin",   "gulf",   "bay",       "valley",   "peninsula",
      "plateau", "strait",   "coast",   "region", "province",  "city",     "county",
      "glacier", "archipelago"};
  static const std::set<std::string> honorifics = {"dr", "prof", "mr", "mrs", "ms", "sir"};
  static const std::set<std::string> connectors = {"of", "for", "on", "de", "and", "the"};

  const auto tokens = lexicon.tokenize(text);
  auto capitalized = [&](const Token& t) {
    return std::isupper(static_cast<unsigned char>(t.surface[0])) && !t.is_numeric;
  };
  auto adjacent = [&](std::size_t a, std::size_t b) {
    auto gap = text.substr(tokens[a].end, tokens[b].start - tokens[a].end);
    return std::all_of(gap.begin(), gap.end(), [](char c) { return c == ' ' || c == '-'; });
  };

  std::vector<EntityCandidate> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!capitalized(tokens[i]) || honorifics.count(tokens[i].key)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    std::size_t last_cap = i;
    while (j < tokens.size() && adjacent(j - 1, j)) {
      if (capitalized(tokens[j])) {
        last_cap = j;
      } else if (!connectors.count(tokens[j].key)) {
        break;
      }
      ++j;
    }
    const std::size_t end = last_cap + 1;
    EntityType type = EntityType::none;
    for (std::size_t k = i; k < end; ++k) {
      if (org_heads.count(tokens[k].key)) type = EntityType::organization;
    }
    if (type == EntityType::none) {
      for (std::size_t k = i; k < end; ++k) {
        if (place_heads.count(tokens[k].key)) type = EntityType::place;
      }
    }
    if (type == EntityType::none && end - i >= 1 && end - i <= 3) {
      const bool titled = i > 0 && honorifics.count(tokens[i - 1].key) > 0;
      const bool cited = end + 1 < tokens.size() && tokens[end].key == "et" &&
                         tokens[end + 1].key == "al";
      if (titled || cited) type = EntityType::person;
    }
    if (type != EntityType::none) {
      out.push_back({std::string(text.substr(tokens[i].start, tokens[end - 1].end - tokens[i].start)),
                     type});
    }
    i = end;
  }
  return out;
}

EnrichmentReport gap_report(const DocumentCollection& collection, const KnowledgeGraph& kg,
                            const CorpusStats& general, const Lexicon& lexicon,
                            const GapOptions& options) {
  EnrichmentReport rep;
  rep.pareto_fraction = options.pareto_fraction;
  const CorpusStats special = corpus_stats(collection, lexicon, TermUnit::lemma);
  rep.n_special = special.total_tokens;
  rep.n_general = general.total_tokens;

  auto make = [&](const std::string& term, std::uint64_t f, bool known) {
    TermStats ts;
    ts.term = term;
    ts.f_special = f;
    ts.f_general = general.frequency(term);
    ts.n_special = special.total_tokens;
    ts.n_general = general.total_tokens;
    ts.weirdness = weirdness(f, special.total_tokens, ts.f_general, general.total_tokens);
    ts.known_in_kg = known;
    return ts;
  };

  std::map<TermCategory, std::vector<TermStats>> terms;
  for (const auto& [term, f] : special.freq) {
    if (!has_alpha(term)) continue;
    terms[TermCategory::lemmas].push_back(make(term, f, kg.lookup(term) != nullptr));
  }
  for (const auto& g : extract_mwes(collection, lexicon, 1)) {
    const auto key = g.key();
    terms[TermCategory::groups].push_back(make(key, g.count, kg.lookup(key) != nullptr));
  }

  std::map<TermCategory, std::map<std::string, std::pair<std::uint64_t, bool>>> entities;
  auto category_of = [](EntityType t) {
    switch (t) {
      case EntityType::person: return TermCategory::persons;
      case EntityType::place: return TermCategory::places;
      default: return TermCategory::organizations;
    }
  };
  for (const auto& doc : collection.docs) {
    const auto text = analysis_text(doc);
    for (const auto& m : annotate(text, kg, lexicon)) {
      const Concept* c = kg.find(m.concept_id);
      if (c->entity_type == EntityType::none) continue;
      auto& e = entities[category_of(c->entity_type)][c->label()];
      ++e.first;
      e.second = true;
    }
    for (const auto& cand : guess_entities(text, lexicon)) {
      if (kg.lookup(lexicon.phrase_key(cand.surface))) continue;
      auto& e = entities[category_of(cand.type)][cand.surface];
      ++e.first;
    }
  }
  for (const auto& [cat, by_term] : entities) {
    for (const auto& [term, v] : by_term) {
      auto ts = make(term, v.first, v.second);
      ts.f_general = general.frequency(lexicon.phrase_key(term));
      ts.weirdness = weirdness(ts.f_special, ts.n_special, ts.f_general, ts.n_general);
      terms[cat].push_back(std::move(ts));
    }
  }

  for (auto cat : kTermCategories) {
    CategoryReport cr;
    for (auto& ts : terms[cat]) {
      if (ts.known_in_kg) {
        ++cr.known;
      } else {
        cr.unknown_terms.push_back(ts);
      }
    }
    std::sort(cr.unknown_terms.begin(), cr.unknown_terms.end(), by_frequency);
    cr.unknown = cr.unknown_terms.size();
    cr.total = cr.known + cr.unknown;
    cr.pareto_selected = pareto_count(options.pareto_fraction, cr.unknown);
    cr.selected.assign(cr.unknown_terms.begin(),
                       cr.unknown_terms.begin() + static_cast<std::ptrdiff_t>(cr.pareto_selected));
    rep.categories[cat] = std::move(cr);
  }

  auto ranking = rank_by_weirdness(special, general, &kg);
  const std::size_t n = std::min(options.table_size, ranking.size());
  rep.highest_weirdness.assign(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<TermStats> low(ranking.end() - static_cast<std::ptrdiff_t>(n), ranking.end());
  std::sort(low.begin(), low.end(), [](const TermStats& a, const TermStats& b) {
    if (a.weirdness != b.weirdness) return a.weirdness < b.weirdness;
    return a.term < b.term;
  });
  rep.lowest_weirdness = std::move(low);

  rep.notes = {
      "Token counts use this tool's tokenizer; N includes stopwords.",
      "Selected = top ceil(fraction x unknown) terms by corpus frequency, ties by term.",
      "Groups are stopword-bounded lemma n-grams (n=2..4); the boundary between groups and "
      "concept candidates is heuristic.",
      "Unknown persons/places/organizations are typed by surface cues only.",
  };
  return rep;
}

std::string render_report(const EnrichmentReport& report) {
  std::ostringstream out;
  const int pct = static_cast<int>(std::lround(report.pareto_fraction * 100));
  out << "Known vs. unknown corpus terms\n\n";
  out << std::left << std::setw(16) << "" << std::right << std::setw(10) << "Known" << std::setw(10)
      << "Unknown" << std::setw(28) << (std::to_string(pct) + "% Most frequent unknown")
      << std::setw(10) << "Total" << '\n';
  for (auto cat : kTermCategories) {
    const auto& c = report.categories.at(cat);
    auto name = to_string(cat);
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    out << std::left << std::setw(16) << name << std::right << std::setw(10) << c.known
        << std::setw(10) << c.unknown << std::setw(28) << c.pareto_selected << std::setw(10)
        << c.total << '\n';
  }
  out << "\nHighest and lowest weirdness index (N_S=" << report.n_special
      << ", N_G=" << report.n_general << ")\n\n";
  out << std::left << std::setw(28) << "Highest WI" << std::right << std::setw(18)
      << "Weirdness index" << "   " << std::left << std::setw(28) << "Lowest WI" << std::right
      << std::setw(18) << "Weirdness index" << '\n';
  const std::size_t rows = std::max(report.highest_weirdness.size(), report.lowest_weirdness.size());
  auto num = [](double w) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(w >= 1.0 ? 2 : 4) << w;
    return s.str();
  };
  for (std::size_t r = 0; r < rows; ++r) {
    if (r < report.highest_weirdness.size()) {
      const auto& h = report.highest_weirdness[r];
      out << std::left << std::setw(28) << h.term << std::right << std::setw(18) << num(h.weirdness);
    } else {
      out << std::setw(46) << "";
    }
    out << "   ";
    if (r < report.lowest_weirdness.size()) {
      const auto& l = report.lowest_weirdness[r];
      out << std::left << std::setw(28) << l.term << std::right << std::setw(18) << num(l.weirdness);
    }
    out << '\n';
  }
  out << "\nNotes:\n";
  for (const auto& n : report.notes) out << "  - " << n << '\n';
  return out.str();
}

std::vector<Concept> enrichment_candidates(const EnrichmentReport& report, TermCategory category,
                                           std::size_t limit) {
  std::vector<Concept> out;
  const auto& cr = report.categories.at(category);
  for (const auto& ts : cr.unknown_terms) {
    if (out.size() >= limit) break;
    Concept c;
    c.id = "cand:" + ts.term;
    c.lemmas = {ts.term};
    switch (category) {
      case TermCategory::persons: c.entity_type = EntityType::person; break;
      case TermCategory::places: c.entity_type = EntityType::place; break;
      case TermCategory::organizations: c.entity_type = EntityType::organization; break;
      default: break;
    }
    c.gloss = "enrichment candidate";
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace spacetext
