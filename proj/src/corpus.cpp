#include "lexevo/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <sstream>

#include "lexevo/csv.hpp"
#include "lexevo/error.hpp"
#include "lexevo/io.hpp"
#include "lexevo/utf8.hpp"

namespace lexevo {
namespace {

std::string fold_alias(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (char c : trim(raw)) {
    if (c == ' ' || c == '-' || c == '_' || c == '\t') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>((c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c));
  }
  return out;
}

constexpr DocType kAllTypes[] = {
    DocType::conference_paper, DocType::article,  DocType::review, DocType::book_chapter,
    DocType::conference_review, DocType::book, DocType::other,
};

template <class Int>
std::optional<Int> parse_integer(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  Int value{};
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

std::vector<std::string> split_keywords(std::string_view cell) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= cell.size()) {
    auto semi = cell.find(';', start);
    if (semi == std::string_view::npos) semi = cell.size();
    auto keyword = trim(cell.substr(start, semi - start));
    if (!keyword.empty()) out.emplace_back(keyword);
    start = semi + 1;
  }
  return out;
}

bool is_blank(std::string_view text) { return trim(text).empty(); }

}  // namespace

std::string_view to_string(DocType type) noexcept {
  switch (type) {
    case DocType::conference_paper: return "conference-paper";
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::book_chapter: return "book-chapter";
    case DocType::conference_review: return "conference-review";
    case DocType::book: return "book";
    case DocType::other: return "other";
  }
  return "other";
}

std::optional<DocType> parse_doc_type(std::string_view canonical) {
  for (DocType type : kAllTypes) {
    if (to_string(type) == canonical) return type;
  }
  return std::nullopt;
}

DocTypeAliases DocTypeAliases::defaults() {
  DocTypeAliases aliases;
  for (DocType type : kAllTypes) aliases.add(to_string(type), type);
  aliases.add("Conference Paper", DocType::conference_paper);
  aliases.add("Proceedings Paper", DocType::conference_paper);
  aliases.add("Journal Article", DocType::article);
  aliases.add("Article in Press", DocType::article);
  aliases.add("Review Article", DocType::review);
  aliases.add("Book Chapter", DocType::book_chapter);
  aliases.add("Chapter", DocType::book_chapter);
  aliases.add("Conference Review", DocType::conference_review);
  return aliases;
}

void DocTypeAliases::add(std::string_view alias, DocType type) {
  table_[fold_alias(alias)] = type;
}

DocType DocTypeAliases::resolve(std::string_view raw) const {
  const auto it = table_.find(fold_alias(raw));
  return it == table_.end() ? DocType::other : it->second;
}

FilterReport FilterReport::from_counts(std::uint64_t loaded, std::uint64_t non_research,
                                       std::uint64_t no_abstract) {
  if (non_research > loaded || no_abstract > loaded - non_research) {
    throw Error(ErrorCode::argument, "exclusion counts exceed the loaded count");
  }
  return FilterReport{loaded, non_research, no_abstract, loaded - non_research - no_abstract};
}

Corpus::Corpus(std::vector<Document> documents, FilterReport provenance)
    : documents_(std::move(documents)), provenance_(provenance) {
  if (!provenance_.consistent()) {
    throw Error(ErrorCode::consistency, "filter report counts do not add up");
  }
  if (provenance_.retained != documents_.size()) {
    throw Error(ErrorCode::consistency, "filter report retained count differs from corpus size");
  }
  index_.reserve(documents_.size());
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    if (!index_.emplace(documents_[i].id, i).second) {
      throw Error(ErrorCode::consistency, "duplicate document id '" + documents_[i].id + "'");
    }
  }
}

const Document* Corpus::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &documents_[it->second];
}

CsvSchema CsvSchema::canonical() {
  return CsvSchema{"id", "title", "abstract", "keywords", "year", "doc_type", "citations"};
}

CsvSchema CsvSchema::completed() const {
  CsvSchema out = *this;
  if (!out.id) out.id = "id";
  if (!out.keywords) out.keywords = "keywords";
  if (!out.citations) out.citations = "citations";
  return out;
}

std::vector<std::string> CsvSchema::columns() const {
  std::vector<std::string> out;
  if (id) out.push_back(*id);
  out.push_back(title);
  out.push_back(abstract);
  if (keywords) out.push_back(*keywords);
  out.push_back(year);
  out.push_back(doc_type);
  if (citations) out.push_back(*citations);
  return out;
}

IngestResult parse_bibliographic_csv(std::string_view source, const IngestOptions& options) {
  if (source.starts_with("\xEF\xBB\xBF")) source.remove_prefix(3);
  if (auto bad = find_invalid_utf8(source)) {
    throw Error(ErrorCode::encoding,
                "input is not valid UTF-8 (byte offset " + std::to_string(*bad) + ")");
  }
  const auto records = csv::read_records(source);
  if (records.empty()) throw Error(ErrorCode::schema, "input has no header row");

  const csv::Row& header = records.front().fields;
  auto column_of = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorCode::schema, "missing mapped column '" + name + "'");
    }
    return static_cast<std::size_t>(std::distance(header.begin(), it));
  };
  auto optional_column = [&](const std::optional<std::string>& name) -> std::optional<std::size_t> {
    if (!name) return std::nullopt;
    return column_of(*name);
  };

  const CsvSchema& schema = options.schema;
  const auto id_col = optional_column(schema.id);
  const auto title_col = column_of(schema.title);
  const auto abstract_col = column_of(schema.abstract);
  const auto keywords_col = optional_column(schema.keywords);
  const auto year_col = column_of(schema.year);
  const auto type_col = column_of(schema.doc_type);
  const auto citations_col = optional_column(schema.citations);

  std::vector<Document> documents;
  std::vector<RowReject> rejects;
  std::unordered_map<std::string, std::size_t> seen_ids;
  documents.reserve(records.size() - 1);

  for (std::size_t r = 1; r < records.size(); ++r) {
    const csv::Row& fields = records[r].fields;
    const std::size_t row = r;
    auto cell = [&](std::size_t col) -> std::string_view {
      return col < fields.size() ? std::string_view(fields[col]) : std::string_view{};
    };

    Document doc;
    doc.id = id_col ? std::string(trim(cell(*id_col))) : "row-" + std::to_string(row);
    if (doc.id.empty()) {
      rejects.push_back({row, "empty id"});
      continue;
    }
    const auto year = parse_integer<int>(cell(year_col));
    if (!year) {
      rejects.push_back({row, "malformed year '" + std::string(cell(year_col)) + "'"});
      continue;
    }
    if (*year < options.years.first || *year > options.years.last) {
      rejects.push_back({row, "year " + std::to_string(*year) + " outside " +
                                  std::to_string(options.years.first) + "-" +
                                  std::to_string(options.years.last)});
      continue;
    }
    doc.year = *year;
    if (citations_col) {
      const auto raw = cell(*citations_col);
      if (!is_blank(raw)) {
        const auto citations = parse_integer<std::uint64_t>(raw);
        if (!citations || trim(raw).front() == '-') {
          rejects.push_back({row, "malformed citations '" + std::string(raw) + "'"});
          continue;
        }
        doc.citations = *citations;
      }
    }
    if (!seen_ids.emplace(doc.id, row).second) {
      rejects.push_back({row, "duplicate id '" + doc.id + "'"});
      continue;
    }
    doc.title = std::string(cell(title_col));
    doc.abstract = std::string(cell(abstract_col));
    if (keywords_col) doc.keywords = split_keywords(cell(*keywords_col));
    doc.doc_type = options.aliases.resolve(cell(type_col));
    documents.push_back(std::move(doc));
  }

  const auto count = static_cast<std::uint64_t>(documents.size());
  return IngestResult{Corpus(std::move(documents), FilterReport{count, 0, 0, count}),
                      std::move(rejects)};
}

IngestResult parse_bibliographic_csv(std::istream& source, const IngestOptions& options) {
  std::ostringstream buffer;
  buffer << source.rdbuf();
  return parse_bibliographic_csv(buffer.str(), options);
}

std::string write_canonical_csv(const Corpus& corpus, const CsvSchema& schema) {
  const CsvSchema full = schema.completed();
  std::string out = csv::write_row(full.columns());
  for (const Document& doc : corpus.documents()) {
    std::string keywords;
    for (std::size_t i = 0; i < doc.keywords.size(); ++i) {
      if (i > 0) keywords += "; ";
      keywords += doc.keywords[i];
    }
    out += csv::write_row({doc.id, doc.title, doc.abstract, keywords, std::to_string(doc.year),
                           std::string(to_string(doc.doc_type)), std::to_string(doc.citations)});
  }
  return out;
}

std::string format_rejects(std::span<const RowReject> rejects) {
  std::string out = "row\treason\n";
  for (const RowReject& reject : rejects) {
    out += std::to_string(reject.row);
    out += '\t';
    for (char c : reject.reason) out.push_back(c == '\t' || c == '\n' || c == '\r' ? ' ' : c);
    out += '\n';
  }
  return out;
}

Corpus filter_corpus(const Corpus& corpus, const std::set<DocType>& excluded_types) {
  std::vector<Document> kept;
  kept.reserve(corpus.size());
  std::uint64_t non_research = 0;
  std::uint64_t no_abstract = 0;
  for (const Document& doc : corpus.documents()) {
    if (excluded_types.contains(doc.doc_type)) {
      ++non_research;
    } else if (is_blank(doc.abstract)) {
      ++no_abstract;
    } else {
      kept.push_back(doc);
    }
  }
  FilterReport report = corpus.provenance();
  report.excluded_non_research += non_research;
  report.excluded_no_abstract += no_abstract;
  report.retained = kept.size();
  return Corpus(std::move(kept), report);
}

}  // namespace lexevo
