#pragma once

// Descriptive statistics: ranked terms, yearly publication counts,
// publication-type shares and the quadratic publication trend.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lexevo/corpus.hpp"
#include "lexevo/text.hpp"

namespace lexevo {

struct TermFrequency {
  std::string term;
  std::uint64_t frequency = 0;
  double share = 0.0;  // frequency / vocabulary token total
};

struct TermFrequencyTable {
  std::vector<TermFrequency> entries;
  double share_of_total = 0.0;  // selected frequencies / all frequencies
  std::size_t requested = 0;
  bool truncated = false;       // requested more terms than the vocabulary holds
};

TermFrequencyTable term_frequency_table(const Vocabulary& vocab, std::size_t top_k);

struct YearlyCounts {
  int first_year = 0;
  std::vector<std::uint64_t> counts;

  int last_year() const noexcept { return first_year + static_cast<int>(counts.size()) - 1; }
  std::uint64_t total() const noexcept;
  /// Drops bins after `year`; the result is empty when `year` < first_year.
  YearlyCounts through(int year) const;
};

/// One bin per calendar year from the earliest to the latest document.
YearlyCounts publications_per_year(const Corpus& corpus);

struct TypeShare {
  DocType type = DocType::other;
  std::uint64_t count = 0;
  double proportion = 0.0;
};

/// Descending by proportion, ties by canonical type name.
std::vector<TypeShare> publication_type_shares(const Corpus& corpus);

/// y(x) = c2 x^2 + c1 x + c0 with x = year - first_year + 1.
struct TrendFit {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  std::optional<double> r_squared;  // unset when the series is constant
  int first_year = 0;

  double x_of_year(int year) const noexcept {
    return static_cast<double>(year - first_year + 1);
  }
};

/// Ordinary least squares through every bin of `series`.
/// Throws Error(insufficient_data) with fewer than three years.
TrendFit fit_quadratic_trend(const YearlyCounts& series);

double predict_trend(const TrendFit& fit, int year) noexcept;

}  // namespace lexevo
