#pragma once

// Bibliographic records: CSV ingestion, validation and the
// research-document filters, with counts kept for auditing.

#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexevo {

enum class DocType {
  conference_paper,
  article,
  review,
  book_chapter,
  conference_review,
  book,
  other,
};

/// Canonical kebab-case name, e.g. "conference-paper".
std::string_view to_string(DocType type) noexcept;
std::optional<DocType> parse_doc_type(std::string_view canonical);

/// Case-insensitive mapping from export spellings to DocType. Unknown
/// spellings resolve to DocType::other.
class DocTypeAliases {
 public:
  /// Canonical names plus the spellings used by Scopus exports.
  static DocTypeAliases defaults();

  void add(std::string_view alias, DocType type);
  DocType resolve(std::string_view raw) const;

 private:
  std::unordered_map<std::string, DocType> table_;
};

struct Document {
  std::string id;
  std::string title;
  std::string abstract;
  std::vector<std::string> keywords;
  int year = 0;
  DocType doc_type = DocType::other;
  std::uint64_t citations = 0;

  bool operator==(const Document&) const = default;
};

struct FilterReport {
  std::uint64_t loaded = 0;
  std::uint64_t excluded_non_research = 0;
  std::uint64_t excluded_no_abstract = 0;
  std::uint64_t retained = 0;

  /// Derives `retained`; throws Error(argument) if exclusions exceed `loaded`.
  static FilterReport from_counts(std::uint64_t loaded, std::uint64_t non_research,
                                  std::uint64_t no_abstract);

  bool consistent() const noexcept {
    return loaded == excluded_non_research + excluded_no_abstract + retained;
  }
  bool operator==(const FilterReport&) const = default;
};

/// Ordered, id-unique set of documents plus the filtering provenance.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Document> documents, FilterReport provenance);

  const std::vector<Document>& documents() const noexcept { return documents_; }
  const FilterReport& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return documents_.size(); }
  bool empty() const noexcept { return documents_.empty(); }

  const Document* find(std::string_view id) const;

  bool operator==(const Corpus& other) const {
    return documents_ == other.documents_ && provenance_ == other.provenance_;
  }

 private:
  std::vector<Document> documents_;
  FilterReport provenance_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Maps logical fields to CSV column names. Optional fields left unset take
/// defaults on input: id -> "row-N", keywords -> empty, citations -> 0.
struct CsvSchema {
  std::optional<std::string> id = "EID";
  std::string title = "Title";
  std::string abstract = "Abstract";
  std::optional<std::string> keywords = "Author Keywords";
  std::string year = "Year";
  std::string doc_type = "Document Type";
  std::optional<std::string> citations = "Cited by";

  /// Column names equal to the logical field names.
  static CsvSchema canonical();

  /// Same mapping with every optional field filled by its logical name.
  CsvSchema completed() const;

  /// Column names in writing order: id, title, abstract, keywords, year,
  /// doc_type, citations. Unset optional fields are skipped.
  std::vector<std::string> columns() const;
};

struct YearWindow {
  int first = 1900;
  int last = 2100;
};

struct IngestOptions {
  CsvSchema schema;
  DocTypeAliases aliases = DocTypeAliases::defaults();
  YearWindow years;
};

struct RowReject {
  std::size_t row = 0;  // 1-based data row (header excluded)
  std::string reason;
};

struct IngestResult {
  Corpus corpus;
  std::vector<RowReject> rejects;
};

/// Parses an RFC 4180 export. Bad rows go to `rejects`; a missing mapped
/// column throws Error(schema) and invalid UTF-8 throws Error(encoding).
IngestResult parse_bibliographic_csv(std::string_view source, const IngestOptions& options = {});
IngestResult parse_bibliographic_csv(std::istream& source, const IngestOptions& options = {});

/// Writes the corpus with `schema.completed()` headers, "\n" endings and
/// minimal quoting; keywords joined with "; ".
std::string write_canonical_csv(const Corpus& corpus, const CsvSchema& schema = CsvSchema::canonical());

/// "row\treason" lines under a header.
std::string format_rejects(std::span<const RowReject> rejects);

/// Drops documents of `excluded_types`, then those with a blank abstract.
/// Exclusion counts accumulate onto the input's provenance.
Corpus filter_corpus(const Corpus& corpus,
                     const std::set<DocType>& excluded_types = {DocType::other});

}  // namespace lexevo
