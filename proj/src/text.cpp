#include "lexevo/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "lexevo/error.hpp"
#include "lexevo/io.hpp"

namespace lexevo {

std::vector<std::string> tokenize(std::string_view text, std::size_t min_length) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t current_length = 0;
  auto flush = [&] {
    if (current_length >= min_length && current_length > 0) tokens.push_back(current);
    current.clear();
    current_length = 0;
  };

  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0 || !u_isalpha(c)) {
      flush();
      continue;
    }
    const UChar32 lower = u_tolower(c);
    std::uint8_t buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, lower);
    current.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
    ++current_length;
  }
  flush();
  return tokens;
}

Stoplist Stoplist::english() {
  static const std::set<std::string> terms = {
#include "stoplist_english.inc"
  };
  return Stoplist(terms);
}

Stoplist Stoplist::parse(std::string_view text) {
  Stoplist out;
  for (const std::string& raw : split_lines(text)) {
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) out.insert(std::string(line));
  }
  return out;
}

Stoplist Stoplist::load(const std::filesystem::path& path) { return parse(read_file(path)); }

TokenStream remove_stopwords(const TokenStream& stream, const Stoplist& stoplist) {
  TokenStream out{stream.doc_id, {}};
  out.tokens.reserve(stream.tokens.size());
  std::copy_if(stream.tokens.begin(), stream.tokens.end(), std::back_inserter(out.tokens),
               [&](const std::string& token) { return !stoplist.contains(token); });
  return out;
}

std::vector<std::string> high_document_frequency_terms(std::span<const TokenStream> streams,
                                                       double fraction) {
  std::map<std::string, std::size_t> df;
  for (const TokenStream& stream : streams) {
    std::unordered_set<std::string_view> seen(stream.tokens.begin(), stream.tokens.end());
    for (std::string_view term : seen) ++df[std::string(term)];
  }
  std::vector<std::string> out;
  const double n = static_cast<double>(streams.size());
  for (const auto& [term, count] : df) {
    if (static_cast<double>(count) > fraction * n) out.push_back(term);
  }
  return out;
}

UniquenessStats uniqueness_stats(std::span<const TokenStream> streams) {
  if (streams.empty()) throw Error(ErrorCode::degenerate, "uniqueness statistics need at least one document");
  double tokens = 0.0;
  double unique = 0.0;
  double ratio_sum = 0.0;
  std::size_t nonempty = 0;
  for (const TokenStream& stream : streams) {
    const std::unordered_set<std::string_view> distinct(stream.tokens.begin(), stream.tokens.end());
    tokens += static_cast<double>(stream.tokens.size());
    unique += static_cast<double>(distinct.size());
    if (!stream.tokens.empty()) {
      ratio_sum += static_cast<double>(distinct.size()) / static_cast<double>(stream.tokens.size());
      ++nonempty;
    }
  }
  if (nonempty == 0) throw Error(ErrorCode::degenerate, "every document has zero tokens");
  const double n = static_cast<double>(streams.size());
  UniquenessStats stats;
  stats.mean_tokens = tokens / n;
  stats.mean_unique = unique / n;
  stats.unique_ratio = ratio_sum / static_cast<double>(nonempty);
  stats.ratio_of_means = unique / tokens;
  return stats;
}

Vocabulary::Vocabulary(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    if (a.total_frequency != b.total_frequency) return a.total_frequency > b.total_frequency;
    return a.term < b.term;
  });
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].term, i).second) {
      throw Error(ErrorCode::consistency, "duplicate vocabulary term '" + entries_[i].term + "'");
    }
  }
}

std::size_t Vocabulary::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  return it == index_.end() ? npos : it->second;
}

std::uint64_t Vocabulary::total_tokens() const noexcept {
  std::uint64_t total = 0;
  for (const Entry& e : entries_) total += e.total_frequency;
  return total;
}

Vocabulary build_vocabulary(std::span<const TokenStream> streams,
                            std::uint64_t min_total_frequency) {
  if (min_total_frequency < 1) {
    throw Error(ErrorCode::config, "minimum term frequency must be at least 1");
  }
  struct Counts {
    std::uint64_t total = 0;
    std::uint64_t docs = 0;
  };
  std::unordered_map<std::string, Counts> counts;
  for (const TokenStream& stream : streams) {
    std::unordered_set<std::string_view> seen;
    for (const std::string& token : stream.tokens) {
      auto& c = counts[token];
      ++c.total;
      if (seen.insert(token).second) ++c.docs;
    }
  }
  std::vector<Vocabulary::Entry> entries;
  for (auto& [term, c] : counts) {
    if (c.total >= min_total_frequency) entries.push_back({term, c.total, c.docs});
  }
  if (entries.empty()) {
    throw Error(ErrorCode::config, "no term reaches the minimum term frequency of " +
                                       std::to_string(min_total_frequency));
  }
  return Vocabulary(std::move(entries));
}

std::string format_vocabulary_tsv(const Vocabulary& vocab) {
  std::string out = "term\ttotal_frequency\tdoc_frequency\n";
  for (const auto& e : vocab.entries()) {
    out += e.term + '\t' + std::to_string(e.total_frequency) + '\t' +
           std::to_string(e.doc_frequency) + '\n';
  }
  return out;
}

DocTermMatrix build_dtm(std::span<const TokenStream> streams, const Vocabulary& vocab) {
  if (vocab.empty()) throw Error(ErrorCode::argument, "vocabulary is empty");

  std::vector<std::string> row_ids;
  std::vector<std::map<std::size_t, std::uint64_t>> rows;
  std::vector<std::string> pruned_rows;
  std::vector<std::uint64_t> vocab_margins(vocab.size(), 0);
  for (const TokenStream& stream : streams) {
    std::map<std::size_t, std::uint64_t> row;
    for (const std::string& token : stream.tokens) {
      const auto col = vocab.index_of(token);
      if (col != Vocabulary::npos) ++row[col];
    }
    if (row.empty()) {
      pruned_rows.push_back(stream.doc_id);
      continue;
    }
    for (const auto& [col, n] : row) vocab_margins[col] += n;
    row_ids.push_back(stream.doc_id);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::empty_matrix, "every document row was pruned");

  // Renumber columns, dropping vocabulary terms that no row uses.
  DocTermMatrix dtm;
  std::vector<std::size_t> remap(vocab.size(), Vocabulary::npos);
  for (std::size_t j = 0; j < vocab.size(); ++j) {
    if (vocab_margins[j] == 0) {
      dtm.pruned_terms.push_back(vocab[j].term);
      continue;
    }
    remap[j] = dtm.terms.size();
    dtm.terms.push_back(vocab[j].term);
  }

  dtm.row_ids = std::move(row_ids);
  dtm.pruned_rows = std::move(pruned_rows);
  dtm.counts.cols = dtm.terms.size();
  dtm.col_margins.assign(dtm.terms.size(), 0);
  dtm.doc_frequency.assign(dtm.terms.size(), 0);
  std::vector<std::pair<std::size_t, std::uint64_t>> entries;
  for (const auto& row : rows) {
    entries.clear();
    std::uint64_t margin = 0;
    for (const auto& [col, n] : row) {
      const auto j = remap[col];
      entries.emplace_back(j, n);
      margin += n;
      dtm.col_margins[j] += n;
      ++dtm.doc_frequency[j];
    }
    // remap preserves order, so entries stay sorted by column
    dtm.counts.push_row(entries);
    dtm.row_margins.push_back(margin);
    dtm.grand_total += margin;
  }
  return dtm;
}

std::string_view to_string(WeightingScheme scheme) noexcept {
  switch (scheme) {
    case WeightingScheme::relative_frequency: return "relative-frequency";
    case WeightingScheme::tf_idf: return "tf-idf";
    case WeightingScheme::entropy: return "entropy";
  }
  return "relative-frequency";
}

WeightingScheme parse_weighting_scheme(std::string_view name) {
  for (auto scheme : {WeightingScheme::relative_frequency, WeightingScheme::tf_idf,
                      WeightingScheme::entropy}) {
    if (to_string(scheme) == name) return scheme;
  }
  throw Error(ErrorCode::config, "unknown weighting scheme '" + std::string(name) + "'");
}

WeightedMatrix weight_matrix(const DocTermMatrix& dtm, WeightingScheme scheme) {
  const std::size_t n_rows = dtm.rows();
  if (scheme != WeightingScheme::relative_frequency && n_rows < 2) {
    throw Error(ErrorCode::degenerate,
                std::string(to_string(scheme)) + " weighting needs at least two documents");
  }
  const double log_n = std::log(static_cast<double>(n_rows));

  std::vector<double> global(dtm.cols(), 1.0);
  if (scheme == WeightingScheme::tf_idf) {
    for (std::size_t j = 0; j < dtm.cols(); ++j) {
      global[j] = std::log(static_cast<double>(n_rows) / static_cast<double>(dtm.doc_frequency[j]));
    }
  } else if (scheme == WeightingScheme::entropy) {
    std::vector<double> plogp(dtm.cols(), 0.0);
    for (std::size_t i = 0; i < n_rows; ++i) {
      const auto cols = dtm.counts.row_columns(i);
      const auto vals = dtm.counts.row_values(i);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        const double p = static_cast<double>(vals[k]) / static_cast<double>(dtm.col_margins[cols[k]]);
        plogp[cols[k]] += p * std::log(p);
      }
    }
    for (std::size_t j = 0; j < dtm.cols(); ++j) {
      // a term spread evenly over every row has weight 0; rounding can dip below
      global[j] = std::max(0.0, 1.0 + plogp[j] / log_n);
      if (global[j] < 1e-14) global[j] = 0.0;
    }
  }

  WeightedMatrix out{dtm.row_ids, dtm.terms, {}, scheme};
  out.values.cols = dtm.cols();
  std::vector<std::pair<std::size_t, double>> entries;
  for (std::size_t i = 0; i < n_rows; ++i) {
    entries.clear();
    const auto cols = dtm.counts.row_columns(i);
    const auto vals = dtm.counts.row_values(i);
    const double row_total = static_cast<double>(dtm.row_margins[i]);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const double f = static_cast<double>(vals[k]);
      double w = 0.0;
      switch (scheme) {
        case WeightingScheme::relative_frequency: w = f / row_total; break;
        case WeightingScheme::tf_idf: w = (f / row_total) * global[cols[k]]; break;
        case WeightingScheme::entropy: w = std::log1p(f) * global[cols[k]]; break;
      }
      if (w != 0.0) entries.emplace_back(cols[k], w);
    }
    out.values.push_row(entries);
  }
  return out;
}

}  // namespace lexevo
