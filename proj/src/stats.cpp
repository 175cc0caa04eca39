#include "lexevo/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <map>

#include "lexevo/error.hpp"

namespace lexevo {

TermFrequencyTable term_frequency_table(const Vocabulary& vocab, std::size_t top_k) {
  if (top_k < 1) throw Error(ErrorCode::argument, "top_k must be at least 1");
  TermFrequencyTable table;
  table.requested = top_k;
  table.truncated = top_k > vocab.size();
  const std::size_t k = std::min(top_k, vocab.size());

  std::vector<const Vocabulary::Entry*> ranked;
  ranked.reserve(vocab.size());
  for (const auto& e : vocab.entries()) ranked.push_back(&e);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto* a, const auto* b) {
    if (a->total_frequency != b->total_frequency) return a->total_frequency > b->total_frequency;
    return a->term < b->term;
  });

  const double total = static_cast<double>(vocab.total_tokens());
  std::uint64_t selected = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& e = *ranked[i];
    table.entries.push_back({e.term, e.total_frequency, static_cast<double>(e.total_frequency) / total});
    selected += e.total_frequency;
  }
  table.share_of_total = k == vocab.size() ? 1.0 : static_cast<double>(selected) / total;
  return table;
}

std::uint64_t YearlyCounts::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

YearlyCounts YearlyCounts::through(int year) const {
  YearlyCounts out{first_year, counts};
  if (year < first_year) {
    out.counts.clear();
  } else if (year < last_year()) {
    out.counts.resize(static_cast<std::size_t>(year - first_year + 1));
  }
  return out;
}

YearlyCounts publications_per_year(const Corpus& corpus) {
  if (corpus.empty()) throw Error(ErrorCode::argument, "corpus is empty");
  const auto [lo, hi] = std::minmax_element(
      corpus.documents().begin(), corpus.documents().end(),
      [](const Document& a, const Document& b) { return a.year < b.year; });
  YearlyCounts out{lo->year, std::vector<std::uint64_t>(static_cast<std::size_t>(hi->year - lo->year + 1), 0)};
  for (const Document& doc : corpus.documents()) {
    ++out.counts[static_cast<std::size_t>(doc.year - out.first_year)];
  }
  return out;
}

std::vector<TypeShare> publication_type_shares(const Corpus& corpus) {
  if (corpus.empty()) throw Error(ErrorCode::argument, "corpus is empty");
  std::map<DocType, std::uint64_t> counts;
  for (const Document& doc : corpus.documents()) ++counts[doc.doc_type];
  std::vector<TypeShare> out;
  const double n = static_cast<double>(corpus.size());
  for (const auto& [type, count] : counts) {
    out.push_back({type, count, static_cast<double>(count) / n});
  }
  std::sort(out.begin(), out.end(), [](const TypeShare& a, const TypeShare& b) {
    if (a.count != b.count) return a.count > b.count;
    return to_string(a.type) < to_string(b.type);
  });
  return out;
}

TrendFit fit_quadratic_trend(const YearlyCounts& series) {
  const auto n = static_cast<Eigen::Index>(series.counts.size());
  if (n < 3) {
    throw Error(ErrorCode::insufficient_data,
                "quadratic trend needs at least 3 years, got " + std::to_string(n));
  }
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1);
    design(i, 0) = x * x;
    design(i, 1) = x;
    design(i, 2) = 1.0;
    y(i) = static_cast<double>(series.counts[static_cast<std::size_t>(i)]);
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);

  TrendFit fit{coef(0), coef(1), coef(2), std::nullopt, series.first_year};
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  if (ss_tot > 0.0) {
    const double ss_res = (y - design * coef).squaredNorm();
    fit.r_squared = 1.0 - ss_res / ss_tot;
  }
  return fit;
}

double predict_trend(const TrendFit& fit, int year) noexcept {
  const double x = fit.x_of_year(year);
  return fit.c2 * x * x + fit.c1 * x + fit.c0;
}

}  // namespace lexevo
