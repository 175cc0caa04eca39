#pragma once

// Tokenizing, stopword removal, vocabulary and the document-term matrix.

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexevo/sparse.hpp"

namespace lexevo {

inline constexpr std::size_t kDefaultMinTokenLength = 2;

/// Lowercases and splits on every code point that is not a Unicode letter.
/// Fragments shorter than `min_length` code points are dropped.
std::vector<std::string> tokenize(std::string_view text,
                                  std::size_t min_length = kDefaultMinTokenLength);

struct TokenStream {
  std::string doc_id;
  std::vector<std::string> tokens;

  bool operator==(const TokenStream&) const = default;
};

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(std::set<std::string> terms) : terms_(std::move(terms)) {}

  /// Built-in English list (articles, pronouns, prepositions, auxiliaries).
  static Stoplist english();
  /// One term per line, '#' starts a comment, blank lines ignored.
  static Stoplist parse(std::string_view text);
  static Stoplist load(const std::filesystem::path& path);

  bool contains(std::string_view term) const { return terms_.contains(std::string(term)); }
  void insert(std::string term) { terms_.insert(std::move(term)); }
  void merge(const Stoplist& other) { terms_.insert(other.terms_.begin(), other.terms_.end()); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::set<std::string>& terms() const noexcept { return terms_; }

 private:
  std::set<std::string> terms_;
};

TokenStream remove_stopwords(const TokenStream& stream, const Stoplist& stoplist);

/// Terms whose document frequency is strictly above `fraction` of the
/// streams, in lexicographic order.
std::vector<std::string> high_document_frequency_terms(std::span<const TokenStream> streams,
                                                       double fraction);

struct UniquenessStats {
  double mean_tokens = 0.0;
  double mean_unique = 0.0;
  double unique_ratio = 0.0;    // mean over non-empty docs of unique/total
  double ratio_of_means = 0.0;  // mean_unique / mean_tokens
};

/// Throws Error(degenerate) if there are no streams or all are empty.
UniquenessStats uniqueness_stats(std::span<const TokenStream> streams);

/// Terms ordered by descending total frequency, then lexicographically.
class Vocabulary {
 public:
  struct Entry {
    std::string term;
    std::uint64_t total_frequency = 0;
    std::uint64_t doc_frequency = 0;
  };

  Vocabulary() = default;
  /// Sorts `entries` into canonical order; throws on duplicate terms.
  explicit Vocabulary(std::vector<Entry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }

  /// Column index of `term`, or npos.
  std::size_t index_of(std::string_view term) const;
  std::uint64_t total_tokens() const noexcept;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Keeps terms with corpus-wide count >= `min_total_frequency` (>= 1).
/// Throws Error(config) when nothing survives the threshold.
Vocabulary build_vocabulary(std::span<const TokenStream> streams,
                            std::uint64_t min_total_frequency);

/// TSV: term, total_frequency, doc_frequency.
std::string format_vocabulary_tsv(const Vocabulary& vocab);

/// Sparse counts f_ij with row and column marginals.
struct DocTermMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> terms;
  CsrMatrix<std::uint64_t> counts;
  std::vector<std::uint64_t> row_margins;
  std::vector<std::uint64_t> col_margins;
  std::vector<std::uint64_t> doc_frequency;
  std::uint64_t grand_total = 0;
  std::vector<std::string> pruned_rows;  // documents with no in-vocabulary token
  std::vector<std::string> pruned_terms;  // vocabulary terms absent from every row

  std::size_t rows() const noexcept { return row_ids.size(); }
  std::size_t cols() const noexcept { return terms.size(); }
};

/// Counts in-vocabulary tokens per stream. All-zero rows and columns are
/// pruned and listed. Throws Error(empty_matrix) if no row survives.
DocTermMatrix build_dtm(std::span<const TokenStream> streams, const Vocabulary& vocab);

enum class WeightingScheme { relative_frequency, tf_idf, entropy };

std::string_view to_string(WeightingScheme scheme) noexcept;
WeightingScheme parse_weighting_scheme(std::string_view name);

struct WeightedMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> terms;
  CsrMatrix<double> values;
  WeightingScheme scheme = WeightingScheme::relative_frequency;
};

/// relative-frequency: f_ij / f_i.
/// tf-idf:  (f_ij / f_i.) * ln(N / df_j)
/// entropy: ln(1 + f_ij) * (1 + sum_i p_ij ln p_ij / ln N),  p_ij = f_ij / f_.j
/// Entries that evaluate to exactly zero are dropped. tf-idf and entropy
/// need N >= 2 rows, otherwise Error(degenerate).
WeightedMatrix weight_matrix(const DocTermMatrix& dtm, WeightingScheme scheme);

}  // namespace lexevo
