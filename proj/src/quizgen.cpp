#include "spacetext/quizgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "spacetext/error.hpp"

namespace spacetext {

std::string to_string(Strategy s) {
  return s == Strategy::answer_aware ? "answer_aware" : "answer_agnostic";
}

std::string to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::generated: return "generated";
    case CandidateStatus::deduped_out: return "deduped_out";
    case CandidateStatus::validated: return "validated";
    case CandidateStatus::rejected_no_answer: return "rejected_no_answer";
  }
  return "generated";
}

std::vector<std::string> QuizTemplates::patterns_for(const std::string& seed_type) const {
  std::vector<std::string> out;
  for (const auto& r : rules) {
    if (r.seed_type == seed_type) out.push_back(r.pattern);
  }
  return out;
}

QuizTemplates QuizTemplates::builtin() {
  return parse(
      "subject\tWhat {V} {X}?\n"
      "definition\tWhat {V} {W}?\n"
      "meaning\tWhat does {W} mean?\n"
      "person\tWho {X}?\n"
      "organization\tWho {X}?\n"
      "organization\tWhich organization {X}?\n"
      "place\t{W} which place {X}?\n"
      "year\t{W} which year {X}?\n"
      "number\t{W} how many {X}?\n"
      "modal\tWhat {M} {S} {B}?\n"
      "verb\tWhat does {S} {B}?\n",
      "<builtin>");
}

QuizTemplates QuizTemplates::parse(const std::string& text, const std::string& origin) {
  QuizTemplates t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw DataError(origin + ":" + std::to_string(lineno) + ": expected seed_type<TAB>pattern");
    }
    t.rules.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return t;
}

QuizTemplates QuizTemplates::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read templates " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

namespace {

const std::vector<std::string> kSeedOrder = {"subject", "definition", "meaning", "person", "organization",
                                             "place",   "year",       "number",  "modal",  "verb"};

std::size_t seed_rank(const std::string& type) {
  auto it = std::find(kSeedOrder.begin(), kSeedOrder.end(), type);
  return static_cast<std::size_t>(it - kSeedOrder.begin());
}

struct Seed {
  std::string type;
  std::size_t start = 0;
  std::string answer;
  std::map<std::string, std::string> fills;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string collapse_space(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

// Lowercases the first letter of a phrase opening with a function word.
std::string inner_phrase(const std::string& phrase, const Token& first) {
  std::string s = phrase;
  if (first.is_stopword && !s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

std::string fill(const std::string& pattern, const std::map<std::string, std::string>& fills) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '{') {
      auto close = pattern.find('}', i);
      if (close != std::string::npos) {
        auto it = fills.find(pattern.substr(i + 1, close - i - 1));
        if (it != fills.end()) {
          out += it->second;
          i = close;
          continue;
        }
      }
    }
    out += pattern[i];
  }
  out = collapse_space(out);
  std::string clean;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == ' ' && i + 1 < out.size() && (out[i + 1] == '?' || out[i + 1] == ',')) continue;
    clean += out[i];
  }
  if (!clean.empty()) clean[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(clean[0])));
  return clean;
}

bool is_word(const Token& t) {
  return std::all_of(t.surface.begin(), t.surface.end(),
                     [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

bool is_determiner(const Token& t) { return t.key == "a" || t.key == "an" || t.key == "the"; }

bool is_year(const Token& t) {
  if (t.surface.size() != 4 || !std::all_of(t.surface.begin(), t.surface.end(),
                                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return false;
  }
  const int y = std::stoi(t.surface);
  return y >= 1900 && y <= 2099;
}

// Noun-phrase-like copula subjects: no pronoun or subordinate clause.
bool subject_like(const std::vector<Token>& tokens, std::size_t f, std::size_t k) {
  static const std::set<std::string> openers = {"a",     "an",    "the",  "this", "these", "those",
                                                "each",  "every", "all",  "its",  "their", "our",
                                                "any",   "both",  "some", "such"};
  static const std::set<std::string> clause = {"how", "when", "which", "that", "where", "if",
                                               "because", "while", "whether", "who", "what"};
  if (tokens[f].is_stopword && !openers.count(tokens[f].key)) return false;
  for (std::size_t i = f; i < k; ++i) {
    if (clause.count(tokens[i].key)) return false;
  }
  return true;
}

std::vector<Seed> sentence_seeds(std::string_view text, const std::vector<Token>& tokens, std::size_t f,
                                 std::size_t l, TextRange sentence, const std::vector<ConceptMention>& mentions,
                                 const KnowledgeGraph& kg) {
  std::vector<Seed> seeds;
  if (l - f < 3) return seeds;
  std::size_t core_end = sentence.end;
  while (core_end > sentence.start && std::string_view(".!?;:").find(text[core_end - 1]) != std::string_view::npos) {
    --core_end;
  }
  auto before = [&](std::size_t pos) { return trim(text.substr(sentence.start, pos - sentence.start)); };
  auto after = [&](std::size_t pos) { return pos >= core_end ? std::string() : trim(text.substr(pos, core_end - pos)); };
  auto plain_run = [&](std::size_t a, std::size_t b) {
    auto s = text.substr(tokens[a].start, tokens[b - 1].end - tokens[a].start);
    return s.find_first_of(",;:()\n") == std::string_view::npos;
  };
  const bool capitalized = std::isupper(static_cast<unsigned char>(tokens[f].surface[0])) != 0;

  // Copula sentences: "<subject> is/are/means <complement>".
  for (std::size_t k = f + 1; capitalized && k < std::min(l, f + 9); ++k) {
    const auto& key = tokens[k].key;
    if (key != "is" && key != "are" && key != "means") continue;
    if (!plain_run(f, k) || k + 1 >= l || !subject_like(tokens, f, k)) break;
    const std::string subject = before(tokens[k].start);
    const std::string complement = after(tokens[k].end);
    if (complement.empty()) break;
    if (key != "means") {
      seeds.push_back({"subject", tokens[f].start, subject, {{"V", key}, {"X", complement}}});
    }
    if (key == "means") {
      seeds.push_back({"meaning", tokens[f].start, complement, {{"W", inner_phrase(subject, tokens[f])}}});
    } else if (is_determiner(tokens[k + 1])) {
      seeds.push_back({"definition", tokens[f].start, complement,
                       {{"V", key}, {"W", inner_phrase(subject, tokens[f])}}});
    }
    break;
  }

  // Knowledge-graph entities.
  std::vector<TextRange> taken;
  for (const auto& m : mentions) {
    if (m.char_start < sentence.start || m.char_end > core_end) continue;
    const auto* c = kg.find(m.concept_id);
    if (!c || c->entity_type == EntityType::none) continue;
    const std::string surface(text.substr(m.char_start, m.char_end - m.char_start));
    taken.push_back({m.char_start, m.char_end});
    if (m.char_start == tokens[f].start) {
      if (c->entity_type == EntityType::place) continue;
      const std::string rest = after(m.char_end);
      if (rest.empty()) continue;
      seeds.push_back({to_string(c->entity_type), m.char_start, surface, {{"X", rest}}});
    } else if (c->entity_type == EntityType::place) {
      seeds.push_back({"place", m.char_start, surface,
                       {{"W", inner_phrase(before(m.char_start), tokens[f])}, {"X", after(m.char_end)}}});
    }
  }

  // Inner numbers and years.
  for (std::size_t i = f + 1; i < l; ++i) {
    const auto& t = tokens[i];
    if (!t.is_numeric) continue;
    const bool inside = std::any_of(taken.begin(), taken.end(),
                                    [&](const TextRange& r) { return t.start >= r.start && t.end <= r.end; });
    if (inside) continue;
    std::map<std::string, std::string> fills = {{"W", inner_phrase(before(t.start), tokens[f])},
                                                {"X", after(t.end)}};
    if (is_year(t)) {
      static const std::set<std::string> preps = {"in", "since", "by", "until", "from", "before", "after"};
      if (preps.count(tokens[i - 1].key)) seeds.push_back({"year", t.start, t.surface, fills});
    } else if (i + 1 < l && is_word(tokens[i + 1]) && !tokens[i + 1].is_stopword &&
               text.substr(t.end, tokens[i + 1].start - t.end) == " ") {
      seeds.push_back({"number", t.start, t.surface, fills});
    }
  }

  // Answer-agnostic patterns.
  static const std::set<std::string> modals = {"shall", "must", "will", "should", "can", "may", "could", "would"};
  for (std::size_t k = f + 1; capitalized && k + 2 < l && k < f + 8; ++k) {
    if (!modals.count(tokens[k].key)) continue;
    const auto& verb = tokens[k + 1];
    if (verb.is_stopword || !is_word(verb) || !plain_run(f, k + 2)) break;
    seeds.push_back({"modal", tokens[k].start, "",
                     {{"M", tokens[k].key}, {"S", inner_phrase(before(tokens[k].start), tokens[f])},
                      {"B", verb.key}}});
    break;
  }
  for (std::size_t k = f + 1; capitalized && k + 1 < l && k < f + 6; ++k) {
    const auto& v = tokens[k];
    if (tokens[k - 1].is_stopword && k - 1 != f) break;
    if (v.is_stopword || !is_word(v) || v.key != v.surface || v.key.size() < 4 || v.key.back() != 's' ||
        v.lemma == v.key || !is_determiner(tokens[k + 1]) || !plain_run(f, k + 2)) {
      continue;
    }
    seeds.push_back({"verb", v.start, "",
                     {{"S", inner_phrase(before(v.start), tokens[f])}, {"B", v.lemma}}});
    break;
  }

  std::stable_sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    if (a.start != b.start) return a.start < b.start;
    return seed_rank(a.type) < seed_rank(b.type);
  });
  return seeds;
}

}  // namespace

std::vector<QuestionCandidate> generate_candidates(const std::vector<Passage>& passages,
                                                   const KnowledgeGraph& kg, const Lexicon& lexicon,
                                                   const QuizTemplates& templates,
                                                   const GenerationOptions& options) {
  std::vector<QuestionCandidate> out;
  for (const auto& p : passages) {
    const std::string_view text = p.text;
    const auto tokens = lexicon.tokenize(text);
    const auto mentions = annotate(text, kg, lexicon);
    std::size_t ti = 0;
    for (const auto& s : split_sentences(text)) {
      while (ti < tokens.size() && tokens[ti].start < s.start) ++ti;
      const std::size_t f = ti;
      while (ti < tokens.size() && tokens[ti].end <= s.end) ++ti;
      for (const auto& seed : sentence_seeds(text, tokens, f, ti, s, mentions, kg)) {
        auto patterns = templates.patterns_for(seed.type);
        if (patterns.size() > options.beam_width) patterns.resize(options.beam_width);
        for (const auto& pattern : patterns) {
          QuestionCandidate c;
          c.id = "q" + std::to_string(out.size() + 1);
          c.question = fill(pattern, seed.fills);
          c.answer = seed.answer;
          c.seed_answer = seed.answer;
          c.seed_type = seed.type;
          c.passage_id = p.id;
          c.strategy = seed.answer.empty() ? Strategy::answer_agnostic : Strategy::answer_aware;
          out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

std::vector<SparseVector> question_vectors(const std::vector<QuestionCandidate>& candidates,
                                           const Lexicon& lexicon) {
  std::vector<std::map<std::string, double>> tf(candidates.size());
  std::map<std::string, std::size_t> df;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (const auto& l : lexicon.index_terms(candidates[i].question)) tf[i][l] += 1.0;
    for (const auto& [l, _] : tf[i]) ++df[l];
  }
  const double n = static_cast<double>(candidates.size());
  std::vector<SparseVector> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (const auto& [l, c] : tf[i]) {
      out[i][l] = c * (std::log((1.0 + n) / (1.0 + static_cast<double>(df[l]))) + 1.0);
    }
  }
  return out;
}

void dedup(std::vector<QuestionCandidate>& candidates, const Lexicon& lexicon, double threshold) {
  const auto vectors = question_vectors(candidates, lexicon);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].status != CandidateStatus::generated) continue;
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](std::size_t j) {
      return sparse_cosine(vectors[i], vectors[j]) >= threshold;
    });
    if (dup) {
      candidates[i].status = CandidateStatus::deduped_out;
    } else {
      kept.push_back(i);
    }
  }
}

void validate(std::vector<QuestionCandidate>& candidates, const std::vector<Passage>& passages,
              const Reader& reader, const Lexicon& lexicon, double min_score) {
  std::map<std::string, const Passage*> by_id;
  for (const auto& p : passages) by_id[p.id] = &p;
  for (auto& c : candidates) {
    if (c.status != CandidateStatus::generated) continue;
    auto it = by_id.find(c.passage_id);
    if (it == by_id.end()) {
      c.status = CandidateStatus::rejected_no_answer;
      continue;
    }
    const auto spans = reader.read(c.question, {it->second->id, it->second->doc_id, it->second->text});
    c.validation_score = spans.empty() ? 0.0 : spans.front().score;
    if (spans.empty() || spans.front().score < min_score) {
      c.status = CandidateStatus::rejected_no_answer;
      continue;
    }
    c.status = CandidateStatus::validated;
    if (c.strategy == Strategy::answer_agnostic) {
      c.answer = spans.front().text;
    } else {
      c.seed_f1 = token_prf(spans.front().text, c.seed_answer, lexicon).f1;
    }
  }
}

Quiz assemble_quiz(const std::vector<QuestionCandidate>& selected, const std::vector<Passage>& passages,
                   const std::string& title) {
  if (selected.empty()) throw DataError("assemble_quiz: empty selection");
  std::map<std::string, const Passage*> by_id;
  for (const auto& p : passages) by_id[p.id] = &p;
  Quiz quiz;
  quiz.title = title;
  for (const auto& c : selected) {
    if (c.status != CandidateStatus::validated) {
      throw DataError("assemble_quiz: candidate " + c.id + " is " + to_string(c.status) + ", not validated");
    }
    auto it = by_id.find(c.passage_id);
    if (it == by_id.end()) throw DataError("assemble_quiz: unknown passage " + c.passage_id);
    quiz.trainee_section.push_back(c.question);
    quiz.trainer_section.push_back({c.question, c.answer, it->second->text});
  }
  return quiz;
}

std::string render_quiz(const Quiz& quiz) {
  std::ostringstream out;
  out << "# " << quiz.title << "\n\n## Trainee\n\n";
  for (std::size_t i = 0; i < quiz.trainee_section.size(); ++i) {
    out << i + 1 << ". " << quiz.trainee_section[i] << "\n";
  }
  out << "\n## Trainer\n\n";
  for (std::size_t i = 0; i < quiz.trainer_section.size(); ++i) {
    const auto& t = quiz.trainer_section[i];
    out << i + 1 << ". " << t.question << "\n";
    out << "   Answer: " << t.answer << "\n";
    out << "   Passage: " << collapse_space(t.passage) << "\n";
  }
  return out.str();
}

std::string format_candidates(const std::vector<QuestionCandidate>& candidates) {
  std::ostringstream out;
  out << "id\tstrategy\tseed_type\tstatus\tscore\tpassage_id\tquestion\tanswer\n";
  char buf[32];
  for (const auto& c : candidates) {
    std::snprintf(buf, sizeof buf, "%.4f", c.validation_score);
    out << c.id << '\t' << to_string(c.strategy) << '\t' << c.seed_type << '\t' << to_string(c.status) << '\t'
        << buf << '\t' << c.passage_id << '\t' << c.question << '\t' << c.answer << "\n";
  }
  return out.str();
}

}  // namespace spacetext
