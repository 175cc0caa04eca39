#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "lexevo/corpus.hpp"
#include "lexevo/error.hpp"
#include "lexevo/io.hpp"
#include "lexevo/text.hpp"
#include "support.hpp"

using namespace lexevo;
using Tokens = std::vector<std::string>;

namespace {

std::vector<TokenStream> streams(std::initializer_list<Tokens> docs) {
  std::vector<TokenStream> out;
  int i = 0;
  for (const auto& d : docs) out.push_back({"d" + std::to_string(i++), d});
  return out;
}

std::vector<TokenStream> synthetic_streams() {
  const auto corpus = filter_corpus(parse_bibliographic_csv(read_file(testkit::data_path("synthetic_corpus.csv"))).corpus);
  const auto stop = Stoplist::english();
  std::vector<TokenStream> out;
  for (const auto& d : corpus.documents()) out.push_back(remove_stopwords({d.id, tokenize(d.abstract)}, stop));
  return out;
}

}  // namespace

TEST(Tokenize, Examples) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("Data Science: 50 years of data-analysis."),
            (Tokens{"data", "science", "years", "of", "data", "analysis"}));
  EXPECT_EQ(tokenize("Niño/NIÑO"), (Tokens{"niño", "niño"}));
}

TEST(Tokenize, MinimumLengthCountsCodePoints) {
  EXPECT_EQ(tokenize("a é io x2y"), (Tokens{"io"}));
  EXPECT_EQ(tokenize("ñu a", 2), (Tokens{"ñu"}));
  EXPECT_EQ(tokenize("one three", 4), (Tokens{"three"}));
  EXPECT_EQ(tokenize("a b", 1), (Tokens{"a", "b"}));
}

TEST(Tokenize, DigitsAndPunctuationSplit) {
  EXPECT_EQ(tokenize("COVID19 h2o 2020"), (Tokens{"covid"}));
  EXPECT_EQ(tokenize("state-of-the-art\tdata\nscience"), (Tokens{"state", "of", "the", "art", "data", "science"}));
}

TEST(Tokenize, IsIdempotentOnItsOutput) {
  const std::string text = read_file(testkit::data_path("synthetic_corpus.csv"));
  const auto once = tokenize(text);
  std::string joined;
  for (const auto& t : once) joined += t + " ";
  EXPECT_EQ(tokenize(joined), once);
  for (const auto& t : once) {
    EXPECT_GE(t.size(), 2u);
    EXPECT_TRUE(std::none_of(t.begin(), t.end(), [](char c) { return c >= 'A' && c <= 'Z'; }));
  }
}

TEST(Stopwords, Examples) {
  const TokenStream s{"d", {"the", "data", "of", "science"}};
  const auto out = remove_stopwords(s, Stoplist::english());
  EXPECT_EQ(out.tokens, (Tokens{"data", "science"}));
  EXPECT_EQ(remove_stopwords(s, Stoplist{}), s);
  EXPECT_EQ(remove_stopwords(out, Stoplist::english()), out);
}

TEST(Stopwords, BuiltinMatchesBundledFile) {
  EXPECT_EQ(Stoplist::english().terms(), Stoplist::load(testkit::data_path("stoplist_english.txt")).terms());
  EXPECT_GT(Stoplist::english().size(), 100u);
}

TEST(Stopwords, FileGrammar) {
  const auto list = Stoplist::parse("# header\nfoo\n\n  bar  \n# baz\n");
  EXPECT_EQ(list.terms(), (std::set<std::string>{"bar", "foo"}));
}

TEST(Stopwords, HighDocumentFrequency) {
  const auto s = streams({{"a", "b"}, {"a", "c"}, {"a", "b"}, {"d"}});
  EXPECT_EQ(high_document_frequency_terms(s, 0.5), (Tokens{"a"}));
  EXPECT_EQ(high_document_frequency_terms(s, 0.4), (Tokens{"a", "b"}));
}

TEST(Uniqueness, Examples) {
  auto one = uniqueness_stats(streams({{"a", "b", "a", "c"}}));
  EXPECT_DOUBLE_EQ(one.mean_tokens, 4);
  EXPECT_DOUBLE_EQ(one.mean_unique, 3);
  EXPECT_DOUBLE_EQ(one.unique_ratio, 0.75);
  auto two = uniqueness_stats(streams({{"a", "a"}, {"a", "b"}}));
  EXPECT_DOUBLE_EQ(two.mean_tokens, 2);
  EXPECT_DOUBLE_EQ(two.mean_unique, 1.5);
  EXPECT_DOUBLE_EQ(two.unique_ratio, 0.75);
  EXPECT_DOUBLE_EQ(two.ratio_of_means, 0.75);
}

TEST(Uniqueness, EmptyDocsSkippedInRatio) {
  auto s = uniqueness_stats(streams({{"a", "a"}, {}}));
  EXPECT_DOUBLE_EQ(s.mean_tokens, 1);
  EXPECT_DOUBLE_EQ(s.unique_ratio, 0.5);
  EXPECT_THROW(uniqueness_stats(streams({{}, {}})), Error);
  EXPECT_THROW(uniqueness_stats(std::vector<TokenStream>{}), Error);
}

TEST(Vocabulary, Examples) {
  const auto s = streams({{"a", "a", "b"}, {"b", "c"}});
  const auto v = build_vocabulary(s, 2);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].term, "a");
  EXPECT_EQ(v[0].doc_frequency, 1u);
  EXPECT_EQ(v[1].term, "b");
  EXPECT_EQ(v[1].doc_frequency, 2u);
  EXPECT_EQ(v.index_of("c"), Vocabulary::npos);
  EXPECT_EQ(build_vocabulary(s, 1).size(), 3u);
}

TEST(Vocabulary, EmptyResultNamesThreshold) {
  try {
    build_vocabulary(streams({{"a"}}), 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
    EXPECT_NE(std::string(e.what()).find('7'), std::string::npos);
  }
  EXPECT_THROW(build_vocabulary(streams({{"a"}}), 0), Error);
}

TEST(Vocabulary, MonotoneInThreshold) {
  const auto s = synthetic_streams();
  std::size_t previous = build_vocabulary(s, 1).size();
  for (std::uint64_t t = 2; t <= 40; ++t) {
    std::size_t size = 0;
    try {
      const auto v = build_vocabulary(s, t);
      size = v.size();
      for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_EQ(v.index_of(v[i].term), i);
        if (i > 0) {
          const bool ordered = v[i - 1].total_frequency > v[i].total_frequency ||
                               (v[i - 1].total_frequency == v[i].total_frequency && v[i - 1].term < v[i].term);
          EXPECT_TRUE(ordered);
        }
      }
    } catch (const Error&) {
      size = 0;
    }
    EXPECT_LE(size, previous);
    previous = size;
  }
}

TEST(Dtm, Examples) {
  const auto s = streams({{"a", "b", "a"}});
  const auto v = build_vocabulary(s, 1);
  const auto m = build_dtm(s, v);
  EXPECT_EQ(m.counts.at(0, v.index_of("a")), 2u);
  EXPECT_EQ(m.counts.at(0, v.index_of("b")), 1u);
  EXPECT_EQ(m.row_margins[0], 3u);
}

TEST(Dtm, PrunesEmptyRowsAndTerms) {
  const auto s = streams({{"a", "a"}, {"zz"}, {"a", "b"}});
  Vocabulary v({{"a", 3, 2}, {"b", 1, 1}, {"q", 1, 1}});
  const auto m = build_dtm(s, v);
  EXPECT_EQ(m.row_ids, (Tokens{"d0", "d2"}));
  EXPECT_EQ(m.pruned_rows, (Tokens{"d1"}));
  EXPECT_EQ(m.terms, (Tokens{"a", "b"}));
  EXPECT_EQ(m.pruned_terms, (Tokens{"q"}));
  EXPECT_EQ(m.grand_total, 4u);
  EXPECT_THROW(build_dtm(streams({{"zz"}}), v), Error);
}

TEST(Dtm, SyntheticMatchesOracle) {
  const auto golden = nlohmann::json::parse(read_file(testkit::golden_path("synthetic_text.json")));
  const auto s = synthetic_streams();
  const auto v = build_vocabulary(s, 5);
  ASSERT_EQ(v.size(), golden["vocabulary"].size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& g = golden["vocabulary"][i];
    EXPECT_EQ(v[i].term, g[0].get<std::string>());
    EXPECT_EQ(v[i].total_frequency, g[1].get<std::uint64_t>());
    EXPECT_EQ(v[i].doc_frequency, g[2].get<std::uint64_t>());
  }
  EXPECT_EQ(format_vocabulary_tsv(v).substr(0, 32).find("term\ttotal_frequency"), 0u);
  const auto m = build_dtm(s, v);
  const auto& gd = golden["dtm"];
  EXPECT_EQ(m.row_ids, gd["row_ids"].get<Tokens>());
  EXPECT_EQ(m.terms, gd["terms"].get<Tokens>());
  EXPECT_EQ(m.row_margins, gd["row_margins"].get<std::vector<std::uint64_t>>());
  EXPECT_EQ(m.col_margins, gd["col_margins"].get<std::vector<std::uint64_t>>());
  EXPECT_EQ(m.grand_total, gd["grand_total"].get<std::uint64_t>());
}

TEST(DtmProperties, MarginalConservation) {
  const auto s = synthetic_streams();
  const auto m = build_dtm(s, build_vocabulary(s, 2));
  std::vector<std::uint64_t> cols(m.cols(), 0);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::uint64_t row = 0;
    const auto c = m.counts.row_columns(i);
    const auto x = m.counts.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) {
      row += x[k];
      cols[c[k]] += x[k];
    }
    EXPECT_EQ(row, m.row_margins[i]);
    EXPECT_GT(row, 0u);
    total += row;
  }
  EXPECT_EQ(cols, m.col_margins);
  EXPECT_EQ(total, m.grand_total);
  EXPECT_TRUE(std::all_of(cols.begin(), cols.end(), [](auto c) { return c > 0; }));
}

TEST(DtmProperties, PermutationInvariance) {
  auto s = synthetic_streams();
  const auto v = build_vocabulary(s, 3);
  const auto base = build_dtm(s, v);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(s.begin(), s.end(), rng);
    const auto m = build_dtm(s, v);
    EXPECT_EQ(m.terms, base.terms);
    EXPECT_EQ(m.col_margins, base.col_margins);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto b = static_cast<std::size_t>(std::find(base.row_ids.begin(), base.row_ids.end(), m.row_ids[i]) -
                                              base.row_ids.begin());
      ASSERT_LT(b, base.rows());
      for (std::size_t j = 0; j < m.cols(); ++j) EXPECT_EQ(m.counts.at(i, j), base.counts.at(b, j));
    }
  }
}

TEST(Weighting, RelativeFrequency) {
  const auto s = streams({{"a", "b", "a"}, {"b", "c", "c", "c"}});
  const auto m = build_dtm(s, build_vocabulary(s, 1));
  const auto w = weight_matrix(m, WeightingScheme::relative_frequency);
  const auto a = std::find(m.terms.begin(), m.terms.end(), "a") - m.terms.begin();
  const auto b = std::find(m.terms.begin(), m.terms.end(), "b") - m.terms.begin();
  EXPECT_DOUBLE_EQ(w.values.at(0, static_cast<std::size_t>(a)), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(w.values.at(0, static_cast<std::size_t>(b)), 1.0 / 3.0);
}

TEST(Weighting, RelativeRowsSumToOne) {
  const auto s = synthetic_streams();
  const auto w = weight_matrix(build_dtm(s, build_vocabulary(s, 2)), WeightingScheme::relative_frequency);
  for (std::size_t i = 0; i < w.values.rows; ++i) {
    double sum = 0;
    for (double x : w.values.row_values(i)) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Weighting, TfIdfZeroForUbiquitousTerm) {
  const auto s = streams({{"a", "b"}, {"a", "c"}, {"a", "a", "b"}});
  const auto m = build_dtm(s, build_vocabulary(s, 1));
  const auto w = weight_matrix(m, WeightingScheme::tf_idf);
  const auto a = static_cast<std::size_t>(std::find(m.terms.begin(), m.terms.end(), "a") - m.terms.begin());
  const auto b = static_cast<std::size_t>(std::find(m.terms.begin(), m.terms.end(), "b") - m.terms.begin());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(w.values.at(i, a), 0.0);
  EXPECT_NEAR(w.values.at(0, b), 0.5 * std::log(1.5), 1e-15);
  EXPECT_LE(w.values.nnz(), m.counts.nnz());
}

TEST(Weighting, EntropyHandEvaluation) {
  // 3 x 2 table: rows (2,0) (1,1) (1,3); columns x, y.
  const auto s = streams({{"x", "x"}, {"x", "y"}, {"x", "y", "y", "y"}});
  const auto m = build_dtm(s, build_vocabulary(s, 1));
  ASSERT_EQ(m.terms, (Tokens{"x", "y"}));
  const auto w = weight_matrix(m, WeightingScheme::entropy);
  const double ln3 = std::log(3.0);
  // column x: p = (.5, .25, .25); column y: p = (0, .25, .75)
  const double gx = 1 + (0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25)) / ln3;
  const double gy = 1 + (0.25 * std::log(0.25) + 0.75 * std::log(0.75)) / ln3;
  EXPECT_NEAR(w.values.at(0, 0), std::log(3.0) * gx, 1e-12);
  EXPECT_NEAR(w.values.at(1, 0), std::log(2.0) * gx, 1e-12);
  EXPECT_NEAR(w.values.at(2, 0), std::log(2.0) * gx, 1e-12);
  EXPECT_EQ(w.values.at(0, 1), 0.0);
  EXPECT_NEAR(w.values.at(1, 1), std::log(2.0) * gy, 1e-12);
  EXPECT_NEAR(w.values.at(2, 1), std::log(4.0) * gy, 1e-12);
}

TEST(Weighting, SingleRowIsDegenerate) {
  const auto s = streams({{"a", "b"}});
  const auto m = build_dtm(s, build_vocabulary(s, 1));
  EXPECT_THROW(weight_matrix(m, WeightingScheme::tf_idf), Error);
  EXPECT_THROW(weight_matrix(m, WeightingScheme::entropy), Error);
  EXPECT_NO_THROW(weight_matrix(m, WeightingScheme::relative_frequency));
}

TEST(Weighting, SchemeNames) {
  for (auto scheme : {WeightingScheme::relative_frequency, WeightingScheme::tf_idf, WeightingScheme::entropy}) {
    EXPECT_EQ(parse_weighting_scheme(to_string(scheme)), scheme);
  }
  EXPECT_THROW(parse_weighting_scheme("bm25"), Error);
}
