#include "lexevo/diachronic.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "lexevo/error.hpp"
#include "lexevo/io.hpp"

namespace lexevo {
namespace {

int parse_year(std::string_view text, std::string_view context) {
  text = trim(text);
  int year = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), year);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::config, "bad year '" + std::string(text) + "' in period '" + std::string(context) + "'");
  }
  return year;
}

// Period x term table restricted to assigned documents.
struct PeriodTable {
  std::vector<std::vector<double>> cells;  // periods x terms
  std::vector<double> row_totals;
  std::vector<double> col_totals;
  double grand_total = 0.0;
};

PeriodTable tabulate(const DocTermMatrix& dtm, const PeriodAssignment& assignment) {
  const std::size_t n_periods = assignment.spec().size();
  PeriodTable t;
  t.cells.assign(n_periods, std::vector<double>(dtm.cols(), 0.0));
  t.row_totals.assign(n_periods, 0.0);
  t.col_totals.assign(dtm.cols(), 0.0);
  for (std::size_t i = 0; i < dtm.rows(); ++i) {
    const auto period = assignment.period_of(dtm.row_ids[i]);
    if (!period) continue;
    const auto cols = dtm.counts.row_columns(i);
    const auto vals = dtm.counts.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto v = static_cast<double>(vals[k]);
      t.cells[*period][cols[k]] += v;
      t.row_totals[*period] += v;
      t.col_totals[cols[k]] += v;
      t.grand_total += v;
    }
  }
  return t;
}

}  // namespace

PeriodSpec::PeriodSpec(std::vector<Period> periods) : periods_(std::move(periods)) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    const Period& p = periods_[i];
    if (p.name.empty()) throw Error(ErrorCode::config, "period name is empty");
    if (!names.insert(p.name).second) throw Error(ErrorCode::config, "duplicate period name '" + p.name + "'");
    if (p.first_year > p.last_year) {
      throw Error(ErrorCode::config, "period '" + p.name + "' ends before it starts");
    }
    if (i > 0 && p.first_year <= periods_[i - 1].last_year) {
      throw Error(ErrorCode::config, "period '" + p.name + "' overlaps or precedes '" + periods_[i - 1].name + "'");
    }
  }
}

PeriodSpec PeriodSpec::emergence_growth_boom() {
  return PeriodSpec({{"Surgimiento", 2009, 2012}, {"Crecimiento", 2013, 2018}, {"Auge", 2019, 2022}});
}

PeriodSpec PeriodSpec::parse(std::string_view text) {
  std::vector<Period> periods;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = trim(text.substr(start, comma - start));
    start = comma + 1;
    if (item.empty()) continue;
    const auto colon = item.rfind(':');
    const auto dash = colon == std::string_view::npos ? colon : item.find('-', colon);
    if (colon == std::string_view::npos || dash == std::string_view::npos) {
      throw Error(ErrorCode::config, "period '" + std::string(item) + "' is not NAME:FIRST-LAST");
    }
    const auto name = std::string(trim(item.substr(0, colon)));
    periods.push_back({name, parse_year(item.substr(colon + 1, dash - colon - 1), name),
                       parse_year(item.substr(dash + 1), name)});
  }
  return PeriodSpec(std::move(periods));
}

std::string PeriodSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (i > 0) out += ", ";
    out += periods_[i].name + ":" + std::to_string(periods_[i].first_year) + "-" +
           std::to_string(periods_[i].last_year);
  }
  return out;
}

std::optional<std::size_t> PeriodSpec::period_of(int year) const noexcept {
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (year >= periods_[i].first_year && year <= periods_[i].last_year) return i;
  }
  return std::nullopt;
}

std::size_t PeriodSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (periods_[i].name == name) return i;
  }
  throw Error(ErrorCode::lookup, "unknown period '" + std::string(name) + "'");
}

PeriodAssignment::PeriodAssignment(const Corpus& corpus, PeriodSpec spec)
    : spec_(std::move(spec)), counts_(spec_.size(), 0) {
  by_id_.reserve(corpus.size());
  for (const Document& doc : corpus.documents()) {
    const auto period = spec_.period_of(doc.year);
    by_id_.emplace(doc.id, period);
    if (period) {
      ++counts_[*period];
    } else {
      ++unassigned_;
    }
  }
}

std::optional<std::size_t> PeriodAssignment::period_of(std::string_view doc_id) const {
  const auto it = by_id_.find(std::string(doc_id));
  if (it == by_id_.end()) {
    throw Error(ErrorCode::consistency, "document '" + std::string(doc_id) + "' is not in the assignment");
  }
  return it->second;
}

PeriodAssignment assign_periods(const Corpus& corpus, const PeriodSpec& spec) {
  return PeriodAssignment(corpus, spec);
}

std::vector<TermScore> characteristic_terms(const DocTermMatrix& dtm, const PeriodAssignment& assignment,
                                            std::string_view period, std::size_t k) {
  const std::size_t p = assignment.spec().index_of(period);
  const PeriodTable table = tabulate(dtm, assignment);
  if (table.row_totals[p] <= 0.0) {
    throw Error(ErrorCode::empty_period, "period '" + std::string(period) + "' has no in-vocabulary tokens");
  }
  std::vector<TermScore> scores;
  for (std::size_t j = 0; j < dtm.cols(); ++j) {
    const double expected = table.row_totals[p] * table.col_totals[j] / table.grand_total;
    if (expected <= 0.0) continue;
    scores.push_back({dtm.terms[j], (table.cells[p][j] - expected) / std::sqrt(expected)});
  }
  std::stable_sort(scores.begin(), scores.end(), [](const TermScore& a, const TermScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.term < b.term;
  });
  if (scores.size() > k) scores.resize(k);
  return scores;
}

std::vector<const Document*> pioneer_documents(const Corpus& corpus, const PeriodAssignment& assignment,
                                               std::string_view period, std::size_t k) {
  const std::size_t p = assignment.spec().index_of(period);
  std::vector<const Document*> docs;
  for (const Document& doc : corpus.documents()) {
    if (assignment.period_of(doc.id) == p) docs.push_back(&doc);
  }
  if (docs.empty()) throw Error(ErrorCode::empty_period, "period '" + std::string(period) + "' has no documents");
  std::stable_sort(docs.begin(), docs.end(), [](const Document* a, const Document* b) {
    if (a->citations != b->citations) return a->citations > b->citations;
    if (a->year != b->year) return a->year < b->year;
    return a->title < b->title;
  });
  if (docs.size() > k) docs.resize(k);
  return docs;
}

PeriodSummary period_report(const Corpus& corpus, const DocTermMatrix& dtm, const PeriodSpec& spec,
                            std::size_t k_terms, std::size_t k_docs) {
  const PeriodAssignment assignment(corpus, spec);
  const PeriodTable table = tabulate(dtm, assignment);
  const double n = static_cast<double>(corpus.size());
  PeriodSummary summary;
  for (std::size_t p = 0; p < spec.size(); ++p) {
    PeriodReport report;
    report.period = spec.periods()[p];
    report.doc_count = assignment.count(p);
    report.share_of_corpus = n > 0.0 ? static_cast<double>(report.doc_count) / n : 0.0;
    if (table.row_totals[p] > 0.0) {
      report.characteristic_terms = characteristic_terms(dtm, assignment, report.period.name, k_terms);
    }
    if (report.doc_count > 0) {
      report.pioneer_docs = pioneer_documents(corpus, assignment, report.period.name, k_docs);
    }
    summary.periods.push_back(std::move(report));
  }
  summary.unassigned = assignment.unassigned();
  summary.unassigned_share = n > 0.0 ? static_cast<double>(summary.unassigned) / n : 0.0;
  return summary;
}

std::string format_period_json(const PeriodSummary& summary) {
  nlohmann::json periods = nlohmann::json::array();
  for (const PeriodReport& r : summary.periods) {
    nlohmann::json terms = nlohmann::json::array();
    for (const TermScore& t : r.characteristic_terms) terms.push_back({{"term", t.term}, {"score", t.score}});
    nlohmann::json docs = nlohmann::json::array();
    for (const Document* d : r.pioneer_docs) {
      docs.push_back({{"id", d->id}, {"title", d->title}, {"year", d->year}, {"citations", d->citations}});
    }
    periods.push_back({{"name", r.period.name},
                       {"first_year", r.period.first_year},
                       {"last_year", r.period.last_year},
                       {"doc_count", r.doc_count},
                       {"share_of_corpus", r.share_of_corpus},
                       {"characteristic_terms", terms},
                       {"pioneer_documents", docs}});
  }
  nlohmann::json j{{"periods", periods},
                   {"unassigned", summary.unassigned},
                   {"unassigned_share", summary.unassigned_share}};
  return j.dump(2) + "\n";
}

std::string format_period_markdown(const PeriodSummary& summary) {
  std::string out = "# Periods\n\n| Period | Years | Documents | Share |\n|---|---|---:|---:|\n";
  for (const PeriodReport& r : summary.periods) {
    out += "| " + r.period.name + " | " + std::to_string(r.period.first_year) + "-" +
           std::to_string(r.period.last_year) + " | " + format_thousands(static_cast<std::int64_t>(r.doc_count)) +
           " | " + format_fixed(100.0 * r.share_of_corpus, 1) + "% |\n";
  }
  out += "| (unassigned) | - | " + format_thousands(static_cast<std::int64_t>(summary.unassigned)) + " | " +
         format_fixed(100.0 * summary.unassigned_share, 1) + "% |\n";
  for (const PeriodReport& r : summary.periods) {
    out += "\n## " + r.period.name + " (" + std::to_string(r.period.first_year) + "-" +
           std::to_string(r.period.last_year) + ")\n\n";
    out += "Characteristic terms:\n\n";
    if (r.characteristic_terms.empty()) out += "- (none)\n";
    for (const TermScore& t : r.characteristic_terms) {
      out += "- " + t.term + " (" + format_fixed(t.score, 3) + ")\n";
    }
    out += "\nPioneer documents:\n\n";
    if (r.pioneer_docs.empty()) out += "- (none)\n";
    for (const Document* d : r.pioneer_docs) {
      std::string title = d->title;
      std::replace(title.begin(), title.end(), '\n', ' ');
      out += "- " + title + " (" + std::to_string(d->year) + ", " +
             format_thousands(static_cast<std::int64_t>(d->citations)) + " citations)\n";
    }
  }
  return out;
}

}  // namespace lexevo
