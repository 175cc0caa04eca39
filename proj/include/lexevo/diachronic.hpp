#pragma once

// Period segmentation, characteristic terms and pioneer documents.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexevo/corpus.hpp"
#include "lexevo/text.hpp"

namespace lexevo {

struct Period {
  std::string name;
  int first_year = 0;
  int last_year = 0;
};

class PeriodSpec {
 public:
  PeriodSpec() = default;
  /// Throws Error(config) unless periods are well-formed, ascending and
  /// non-overlapping with unique names.
  explicit PeriodSpec(std::vector<Period> periods);

  /// Surgimiento 2009-2012, Crecimiento 2013-2018, Auge 2019-2022.
  static PeriodSpec emergence_growth_boom();

  /// "Name:2009-2012, Name:2013-2018"
  static PeriodSpec parse(std::string_view text);
  std::string to_string() const;

  const std::vector<Period>& periods() const noexcept { return periods_; }
  std::size_t size() const noexcept { return periods_.size(); }
  std::optional<std::size_t> period_of(int year) const noexcept;
  /// Throws Error(lookup) for unknown names.
  std::size_t index_of(std::string_view name) const;

 private:
  std::vector<Period> periods_;
};

/// Document id -> period index (nullopt when no period covers its year).
class PeriodAssignment {
 public:
  PeriodAssignment() = default;
  PeriodAssignment(const Corpus& corpus, PeriodSpec spec);

  const PeriodSpec& spec() const noexcept { return spec_; }
  std::optional<std::size_t> period_of(std::string_view doc_id) const;
  std::uint64_t count(std::size_t period) const { return counts_.at(period); }
  std::uint64_t unassigned() const noexcept { return unassigned_; }

 private:
  PeriodSpec spec_;
  std::unordered_map<std::string, std::optional<std::size_t>> by_id_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t unassigned_ = 0;
};

PeriodAssignment assign_periods(const Corpus& corpus, const PeriodSpec& spec);

struct TermScore {
  std::string term;
  double score = 0.0;
};

/// Pearson residuals (observed - expected) / sqrt(expected) of the period
/// row in the period x term table built from assigned DTM rows. Terms with
/// zero expected count are skipped. Throws Error(empty_period) when the
/// period has no in-vocabulary tokens.
std::vector<TermScore> characteristic_terms(const DocTermMatrix& dtm, const PeriodAssignment& assignment,
                                            std::string_view period, std::size_t k);

/// Top-k by citations, then earlier year, then title.
std::vector<const Document*> pioneer_documents(const Corpus& corpus, const PeriodAssignment& assignment,
                                               std::string_view period, std::size_t k);

struct PeriodReport {
  Period period;
  std::uint64_t doc_count = 0;
  double share_of_corpus = 0.0;
  std::vector<TermScore> characteristic_terms;
  std::vector<const Document*> pioneer_docs;  // point into the corpus
};

struct PeriodSummary {
  std::vector<PeriodReport> periods;
  std::uint64_t unassigned = 0;
  double unassigned_share = 0.0;
};

/// One report per period. A period with no documents gets empty term and
/// pioneer lists instead of an error.
PeriodSummary period_report(const Corpus& corpus, const DocTermMatrix& dtm, const PeriodSpec& spec,
                            std::size_t k_terms, std::size_t k_docs);

std::string format_period_json(const PeriodSummary& summary);
std::string format_period_markdown(const PeriodSummary& summary);

}  // namespace lexevo
