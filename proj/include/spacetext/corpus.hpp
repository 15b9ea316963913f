#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "spacetext/lexicon.hpp"

namespace spacetext {

enum class Source { idea, study, project, report, paper };
enum class CollectionRole { ideas, studies, projects, reports, general };

std::string to_string(Source s);
Source source_from_string(const std::string& s);  // throws DataError
std::string to_string(CollectionRole r);

using Date = std::chrono::year_month_day;

std::string format_date(const Date& d);
std::optional<Date> parse_date(const std::string& iso);  // YYYY-MM-DD[...]

struct Document {
  std::string id;
  Source source = Source::paper;
  std::string title;
  std::string body;
  std::optional<Date> date;
  std::vector<std::string> fields_of_research;
  std::vector<std::string> keywords;

  bool operator==(const Document&) const = default;
};

struct DocumentCollection {
  std::vector<Document> docs;
  CollectionRole role = CollectionRole::general;

  const Document* find(const std::string& id) const;
  bool contains(const std::string& id) const { return find(id) != nullptr; }
  // Throws DataError on a duplicate id.
  void add(Document doc);
};

struct CorpusFilter {
  std::optional<Date> min_date;                    // inclusive
  std::optional<std::set<std::string>> field_codes;  // prefix match on FoR codes
  std::optional<std::set<Source>> sources;

  bool accepts(const Document& doc) const;
};

// Per-clause pass counts from a filtered load.
struct LoadReport {
  std::size_t records = 0;
  std::size_t passed_date = 0;
  std::size_t passed_fields = 0;
  std::size_t passed_sources = 0;
  std::size_t kept = 0;
};

DocumentCollection load_corpus(const std::filesystem::path& path, const CorpusFilter& filter = {},
                               LoadReport* report = nullptr);

// Parses corpus records from in-memory text (one JSON object per line).
DocumentCollection parse_corpus(const std::string& text, const CorpusFilter& filter = {},
                                LoadReport* report = nullptr);

void write_corpus(const std::filesystem::path& path, const DocumentCollection& collection);
std::string document_to_record(const Document& doc);

DocumentCollection filter_collection(const DocumentCollection& c, const CorpusFilter& filter);

struct Passage {
  std::string id;  // "<doc_id>#p<n>"
  std::string doc_id;
  std::vector<std::string> section_path;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string text;

  bool operator==(const Passage&) const = default;
};

struct SectionNode {
  std::string heading;
  int level = 0;
  std::size_t heading_start = 0;
  std::size_t heading_end = 0;
  std::vector<std::size_t> passages;  // indices into Segmentation::passages
  std::vector<SectionNode> children;
};

struct SegmentationRules {
  std::string heading = R"(^\d+(\.\d+)*\s+\S)";
  // Bare page numbers, "Page n of m", and dotted table-of-contents leaders.
  std::string discard = R"(^\s*((Page\s+)?\d+(\s+of\s+\d+)?|.*\.{4,}\s*\d+)\s*$)";
  std::size_t min_passage_chars = 200;
  double repeated_line_fraction = 0.30;

  // Reads `heading`, `discard`, `min_passage_chars` from a JSON object file.
  static SegmentationRules from_file(const std::filesystem::path& path);
};

struct Segmentation {
  SectionNode root;  // level 0, empty heading
  std::vector<Passage> passages;
  std::vector<TextRange> headings;
  std::vector<TextRange> discarded;  // discarded lines and separator whitespace
};

// Splits a report into a section tree and passages. Every character of the
// body lies in exactly one passage, heading, or discarded range.
Segmentation segment_report(const Document& doc, const SegmentationRules& rules = {});

// Fixed-size overlapping windows snapped outward to whitespace.
std::vector<Passage> window_passages(const Document& doc, std::size_t window_chars,
                                     std::size_t stride_chars);

}  // namespace spacetext
