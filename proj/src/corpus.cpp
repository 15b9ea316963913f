#include "spacetext/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "spacetext/error.hpp"

namespace spacetext {

using nlohmann::json;

std::string to_string(Source s) {
  switch (s) {
    case Source::idea: return "idea";
    case Source::study: return "study";
    case Source::project: return "project";
    case Source::report: return "report";
    case Source::paper: return "paper";
  }
  return "paper";
}

Source source_from_string(const std::string& s) {
  if (s == "idea") return Source::idea;
  if (s == "study") return Source::study;
  if (s == "project") return Source::project;
  if (s == "report") return Source::report;
  if (s == "paper") return Source::paper;
  throw DataError("unknown source '" + s + "'");
}

std::string to_string(CollectionRole r) {
  switch (r) {
    case CollectionRole::ideas: return "ideas";
    case CollectionRole::studies: return "studies";
    case CollectionRole::projects: return "projects";
    case CollectionRole::reports: return "reports";
    case CollectionRole::general: return "general";
  }
  return "general";
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

std::optional<Date> parse_date(const std::string& iso) {
  int y = 0;
  unsigned m = 0, d = 0;
  if (iso.size() < 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(iso[i]))) return std::nullopt;
  }
  y = std::stoi(iso.substr(0, 4));
  m = static_cast<unsigned>(std::stoi(iso.substr(5, 2)));
  d = static_cast<unsigned>(std::stoi(iso.substr(8, 2)));
  Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

const Document* DocumentCollection::find(const std::string& id) const {
  for (const auto& d : docs) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

void DocumentCollection::add(Document doc) {
  if (contains(doc.id)) throw DataError("duplicate document id '" + doc.id + "'");
  docs.push_back(std::move(doc));
}

namespace {

bool passes_date(const CorpusFilter& f, const Document& d) {
  if (!f.min_date) return true;
  return d.date && *d.date >= *f.min_date;
}

bool passes_fields(const CorpusFilter& f, const Document& d) {
  if (!f.field_codes) return true;
  for (const auto& code : d.fields_of_research) {
    for (const auto& want : *f.field_codes) {
      if (code.compare(0, want.size(), want) == 0) return true;
    }
  }
  return false;
}

bool passes_sources(const CorpusFilter& f, const Document& d) {
  return !f.sources || f.sources->count(d.source) > 0;
}

[[noreturn]] void record_error(std::size_t index, const std::string& field,
                               const std::string& what) {
  throw DataError("record " + std::to_string(index) + ": field '" + field + "': " + what);
}

std::vector<std::string> string_list(const json& rec, const char* key, std::size_t index) {
  std::vector<std::string> out;
  if (!rec.contains(key) || rec[key].is_null()) return out;
  if (!rec[key].is_array()) record_error(index, key, "expected a list of strings");
  for (const auto& v : rec[key]) {
    if (!v.is_string()) record_error(index, key, "expected a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Document parse_record(const std::string& line, std::size_t index) {
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError("record " + std::to_string(index) + ": invalid JSON: " + e.what());
  }
  if (!rec.is_object()) throw DataError("record " + std::to_string(index) + ": not an object");
  auto required = [&](const char* key) -> std::string {
    if (!rec.contains(key)) record_error(index, key, "missing");
    if (!rec[key].is_string()) record_error(index, key, "expected a string");
    return rec[key].get<std::string>();
  };
  Document doc;
  doc.id = required("id");
  if (doc.id.empty()) record_error(index, "id", "empty");
  try {
    doc.source = source_from_string(required("source"));
  } catch (const DataError&) {
    record_error(index, "source", "unknown value '" + rec["source"].get<std::string>() + "'");
  }
  doc.title = required("title");
  doc.body = required("body");
  if (rec.contains("date") && !rec["date"].is_null()) {
    if (!rec["date"].is_string()) record_error(index, "date", "expected ISO-8601 string");
    doc.date = parse_date(rec["date"].get<std::string>());
    if (!doc.date) record_error(index, "date", "invalid ISO-8601 date");
  }
  doc.fields_of_research = string_list(rec, "for_codes", index);
  doc.keywords = string_list(rec, "keywords", index);
  return doc;
}

}  // namespace

bool CorpusFilter::accepts(const Document& doc) const {
  return passes_date(*this, doc) && passes_fields(*this, doc) && passes_sources(*this, doc);
}

DocumentCollection parse_corpus(const std::string& text, const CorpusFilter& filter,
                                LoadReport* report) {
  DocumentCollection out;
  LoadReport rep;
  std::unordered_set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Document doc = parse_record(line, index);
    if (!seen.insert(doc.id).second) record_error(index, "id", "duplicate id '" + doc.id + "'");
    ++index;
    ++rep.records;
    const bool d = passes_date(filter, doc);
    const bool f = passes_fields(filter, doc);
    const bool s = passes_sources(filter, doc);
    rep.passed_date += d;
    rep.passed_fields += f;
    rep.passed_sources += s;
    if (d && f && s) {
      ++rep.kept;
      out.docs.push_back(std::move(doc));
    }
  }
  if (report) *report = rep;
  return out;
}

DocumentCollection load_corpus(const std::filesystem::path& path, const CorpusFilter& filter,
                               LoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str(), filter, report);
}

std::string document_to_record(const Document& doc) {
  json rec;
  rec["id"] = doc.id;
  rec["source"] = to_string(doc.source);
  rec["title"] = doc.title;
  rec["body"] = doc.body;
  if (doc.date) rec["date"] = format_date(*doc.date);
  if (!doc.fields_of_research.empty()) rec["for_codes"] = doc.fields_of_research;
  if (!doc.keywords.empty()) rec["keywords"] = doc.keywords;
  return rec.dump();
}

void write_corpus(const std::filesystem::path& path, const DocumentCollection& collection) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& d : collection.docs) out << document_to_record(d) << '\n';
}

DocumentCollection filter_collection(const DocumentCollection& c, const CorpusFilter& filter) {
  DocumentCollection out;
  out.role = c.role;
  for (const auto& d : c.docs) {
    if (filter.accepts(d)) out.docs.push_back(d);
  }
  return out;
}

SegmentationRules SegmentationRules::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read segmentation rules " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  SegmentationRules r;
  if (j.contains("heading")) r.heading = j["heading"].get<std::string>();
  if (j.contains("discard")) r.discard = j["discard"].get<std::string>();
  if (j.contains("min_passage_chars")) r.min_passage_chars = j["min_passage_chars"].get<std::size_t>();
  if (j.contains("repeated_line_fraction"))
    r.repeated_line_fraction = j["repeated_line_fraction"].get<double>();
  return r;
}

namespace {

enum class LineKind { content, blank, heading, discard };

struct Line {
  std::size_t start = 0;
  std::size_t end = 0;  // excludes the terminator
  std::size_t page = 0;
  LineKind kind = LineKind::content;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

int heading_level(const std::string& line) {
  int dots = 0;
  for (char c : line) {
    if (c == '.') {
      ++dots;
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      break;
    }
  }
  // "1." and "1.2." style trailing dots do not add a level.
  std::size_t i = 0;
  while (i < line.size() && (std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '.')) ++i;
  if (i > 0 && line[i - 1] == '.') --dots;
  return std::max(dots, 0) + 1;
}

std::vector<TextRange> complement(std::vector<TextRange> used, std::size_t n) {
  std::sort(used.begin(), used.end(),
            [](const TextRange& a, const TextRange& b) { return a.start < b.start; });
  std::vector<TextRange> out;
  std::size_t pos = 0;
  for (const auto& r : used) {
    if (r.start > pos) out.push_back({pos, r.start});
    pos = std::max(pos, r.end);
  }
  if (pos < n) out.push_back({pos, n});
  return out;
}

}  // namespace

Segmentation segment_report(const Document& doc, const SegmentationRules& rules) {
  const std::string& body = doc.body;
  Segmentation seg;
  const std::regex heading_re(rules.heading);
  const std::regex discard_re(rules.discard);

  std::vector<Line> lines;
  std::size_t page = 0;
  for (std::size_t pos = 0; pos < body.size();) {
    std::size_t nl = body.find('\n', pos);
    if (nl == std::string::npos) nl = body.size();
    std::size_t end = nl;
    // Form feeds start a new page; they are never part of content.
    std::size_t start = pos;
    while (start < end && body[start] == '\f') {
      ++page;
      ++start;
    }
    if (end > start && body[end - 1] == '\r') --end;
    lines.push_back({start, end, page, LineKind::content});
    pos = nl + 1;
  }
  const std::size_t pages = page + 1;

  // Lines repeated across pages are running headers or footers.
  std::map<std::string, std::set<std::size_t>> pages_of;
  if (pages >= 2) {
    for (const auto& l : lines) {
      auto t = trim(std::string_view(body).substr(l.start, l.end - l.start));
      if (!t.empty()) pages_of[t].insert(l.page);
    }
  }

  for (auto& l : lines) {
    const std::string raw = body.substr(l.start, l.end - l.start);
    const std::string t = trim(raw);
    if (t.empty()) {
      l.kind = LineKind::blank;
      continue;
    }
    if (std::regex_search(raw, discard_re)) {
      l.kind = LineKind::discard;
      continue;
    }
    if (auto it = pages_of.find(t); it != pages_of.end()) {
      const auto count = it->second.size();
      if (count >= 2 && static_cast<double>(count) / static_cast<double>(pages) >
                            rules.repeated_line_fraction) {
        l.kind = LineKind::discard;
        continue;
      }
    }
    if (std::regex_search(t, heading_re)) l.kind = LineKind::heading;
  }

  std::vector<SectionNode*> stack{&seg.root};
  std::vector<std::string> path;
  bool open = false;  // last passage may still absorb the next paragraph

  auto section_path = [&]() {
    std::vector<std::string> p;
    for (std::size_t i = 1; i < stack.size(); ++i) p.push_back(stack[i]->heading);
    return p;
  };

  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& l = lines[i];
    if (l.kind == LineKind::heading) {
      const std::string t = trim(std::string_view(body).substr(l.start, l.end - l.start));
      const int level = heading_level(t);
      while (stack.size() > 1 && stack.back()->level >= level) stack.pop_back();
      SectionNode node;
      node.heading = t;
      node.level = level;
      // Heading range is the trimmed line.
      std::size_t hs = l.start, he = l.end;
      while (hs < he && std::isspace(static_cast<unsigned char>(body[hs]))) ++hs;
      while (he > hs && std::isspace(static_cast<unsigned char>(body[he - 1]))) --he;
      node.heading_start = hs;
      node.heading_end = he;
      seg.headings.push_back({hs, he});
      stack.back()->children.push_back(std::move(node));
      stack.push_back(&stack.back()->children.back());
      open = false;
      ++i;
      continue;
    }
    if (l.kind != LineKind::content) {
      if (l.kind == LineKind::discard) open = false;
      ++i;
      continue;
    }
    // Paragraph: maximal run of content lines.
    std::size_t j = i;
    while (j + 1 < lines.size() && lines[j + 1].kind == LineKind::content &&
           lines[j + 1].page == lines[j].page) {
      ++j;
    }
    std::size_t ps = lines[i].start, pe = lines[j].end;
    while (ps < pe && std::isspace(static_cast<unsigned char>(body[ps]))) ++ps;
    while (pe > ps && std::isspace(static_cast<unsigned char>(body[pe - 1]))) --pe;

    auto& passages = seg.passages;
    if (open && !passages.empty() &&
        passages.back().char_end - passages.back().char_start < rules.min_passage_chars) {
      auto& last = passages.back();
      last.char_end = pe;
      last.text = body.substr(last.char_start, last.char_end - last.char_start);
    } else {
      Passage p;
      p.doc_id = doc.id;
      p.id = doc.id + "#p" + std::to_string(passages.size());
      p.section_path = section_path();
      p.char_start = ps;
      p.char_end = pe;
      p.text = body.substr(ps, pe - ps);
      stack.back()->passages.push_back(passages.size());
      passages.push_back(std::move(p));
    }
    open = true;
    i = j + 1;
  }

  std::vector<TextRange> used = seg.headings;
  for (const auto& p : seg.passages) used.push_back({p.char_start, p.char_end});
  seg.discarded = complement(std::move(used), body.size());
  return seg;
}

std::vector<Passage> window_passages(const Document& doc, std::size_t window_chars,
                                     std::size_t stride_chars) {
  if (window_chars == 0 || stride_chars == 0 || stride_chars > window_chars) {
    throw DataError("window_passages: require window > 0 and 0 < stride <= window");
  }
  const std::string& body = doc.body;
  const std::size_t n = body.size();
  auto space = [&](std::size_t k) { return std::isspace(static_cast<unsigned char>(body[k])) != 0; };
  std::vector<Passage> out;
  std::size_t start = 0;
  while (start < n && space(start)) ++start;
  while (start < n) {
    std::size_t end = std::min(start + window_chars, n);
    while (end < n && !space(end) && !space(end - 1)) ++end;
    std::size_t trimmed = end;
    while (trimmed > start && space(trimmed - 1)) --trimmed;
    Passage p;
    p.doc_id = doc.id;
    p.id = doc.id + "#w" + std::to_string(out.size());
    p.char_start = start;
    p.char_end = trimmed;
    p.text = body.substr(start, trimmed - start);
    out.push_back(std::move(p));
    if (end >= n) break;
    std::size_t next = start + stride_chars;
    while (next > start && next < n && !space(next) && !space(next - 1)) --next;
    if (next <= start) next = end;
    while (next < n && space(next)) ++next;
    // Trailing whitespace only.
    if (next >= n) break;
    start = next;
  }
  return out;
}

}  // namespace spacetext
