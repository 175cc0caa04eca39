#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "lexevo/error.hpp"
#include "lexevo/io.hpp"
#include "lexevo/viz.hpp"
#include "support.hpp"

using namespace lexevo;
namespace pt = boost::property_tree;

namespace {

pt::ptree parse_svg(const std::string& svg) {
  std::istringstream in(svg);
  pt::ptree tree;
  pt::read_xml(in, tree);
  return tree;
}

void expect_well_formed(const std::string& svg) {
  pt::ptree tree;
  ASSERT_NO_THROW(tree = parse_svg(svg));
  ASSERT_EQ(tree.size(), 1u);
  EXPECT_EQ(tree.begin()->first, "svg");
  const auto& root = tree.begin()->second;
  EXPECT_TRUE(root.get_optional<std::string>("<xmlattr>.width"));
  EXPECT_TRUE(root.get_optional<std::string>("<xmlattr>.height"));
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<double> bar_widths(const std::string& svg) {
  std::vector<double> out;
  const std::regex bar(R"re(<rect class="bar"[^>]*width="([0-9.]+)")re");
  for (std::sregex_iterator it(svg.begin(), svg.end(), bar), end; it != end; ++it) out.push_back(std::stod((*it)[1]));
  return out;
}

// Compares with a frozen file; LEXEVO_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string& name, const std::string& svg) {
  const auto path = testkit::golden_path(name);
  if (std::getenv("LEXEVO_UPDATE_GOLDEN")) write_file(path, svg);
  ASSERT_TRUE(std::filesystem::exists(path)) << "missing golden " << name;
  EXPECT_EQ(read_file(path), svg) << name;
}

CaModel fixture_model() {
  CaInput in;
  in.matrix.resize(5, 4);
  in.matrix << 8, 1, 0, 2,
               3, 6, 1, 0,
               0, 2, 7, 3,
               1, 0, 3, 9,
               4, 4, 2, 1;
  in.row_labels = {"d1", "d2", "d3", "d4", "d5"};
  in.col_labels = {"learning", "cloud", "deep", "health"};
  return compute_ca(in, 2);
}

std::vector<SupplementaryProjection> year_points(const CaModel& model) {
  std::vector<SupplementaryProjection> out;
  const std::vector<std::vector<double>> profiles{{5, 1, 0, 1}, {3, 4, 1, 1}, {1, 3, 4, 2}, {0, 1, 4, 6}};
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    out.push_back(project_supplementary(model, profiles[i], std::to_string(2009 + i)));
  }
  return out;
}

std::vector<std::pair<std::string, double>> cloud_terms(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(1.0, 100.0);
  const char* words[] = {"learning", "analysis", "model", "paper", "methods", "machine", "data", "network",
                         "deep", "health", "students", "education", "python", "cloud", "hadoop", "business",
                         "visualization", "platform", "mining", "statistics", "accuracy", "clustering",
                         "regression", "database", "prediction", "pandemic", "covid", "neural", "volume", "process"};
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(words[i % 30], w(rng));
  return out;
}

std::vector<testkit::Rect> rects(const CloudLayout& layout) {
  std::vector<testkit::Rect> out;
  for (const auto& p : layout.placements) out.push_back({p.box.x0, p.box.y0, p.box.x1, p.box.y1});
  return out;
}

}  // namespace

TEST(BarChart, ProportionalBars) {
  const auto svg = render_bar_chart({{"a", 2}, {"b", 1}});
  expect_well_formed(svg);
  const auto widths = bar_widths(svg);
  ASSERT_EQ(widths.size(), 2u);
  EXPECT_NEAR(widths[0], 2 * widths[1], 0.011);
}

TEST(BarChart, SingleCategoryIsFullScale) {
  BarChartOptions opts;
  const auto widths = bar_widths(render_bar_chart({{"only", 7}}, opts));
  ASSERT_EQ(widths.size(), 1u);
  EXPECT_NEAR(widths[0], opts.width - opts.label_width - opts.right_margin, 1e-9);
}

TEST(BarChart, Errors) {
  EXPECT_THROW(render_bar_chart({}), Error);
  EXPECT_THROW(render_bar_chart({{"a", -1}}), Error);
  EXPECT_THROW(render_bar_chart({{"a", std::nan("")}}), Error);
}

TEST(BarChart, EscapesLabels) {
  const auto svg = render_bar_chart({{"a<b & \"c\"", 1}});
  expect_well_formed(svg);
  EXPECT_NE(svg.find("a&lt;b &amp;"), std::string::npos);
}

TEST(BarChart, Golden) {
  BarChartOptions opts;
  opts.title = "Most frequent terms";
  const auto svg = render_bar_chart({{"learning", 8996}, {"analysis", 6980}, {"model", 6818}, {"paper", 6591}}, opts);
  EXPECT_EQ(svg, render_bar_chart({{"learning", 8996}, {"analysis", 6980}, {"model", 6818}, {"paper", 6591}}, opts));
  expect_golden("bar_chart.svg", svg);
}

TEST(CaMap, TrajectorySegments) {
  const auto model = fixture_model();
  const auto svg = render_ca_map(model, year_points(model));
  expect_well_formed(svg);
  EXPECT_EQ(count(svg, "class=\"trajectory-segment\""), 3u);
  EXPECT_EQ(count(svg, "class=\"supplementary-point\""), 4u);
  EXPECT_NE(svg.find("Dim 1 ("), std::string::npos);
}

TEST(CaMap, TermsOnly) {
  const auto svg = render_ca_map(fixture_model(), {});
  expect_well_formed(svg);
  EXPECT_EQ(svg.find("class=\"trajectory\""), std::string::npos);
  EXPECT_NE(svg.find(">learning<"), std::string::npos);
}

TEST(CaMap, NeedsTwoDimensions) {
  CaInput in;
  in.matrix = Eigen::MatrixXd::Identity(2, 2);
  in.row_labels = {"a", "b"};
  in.col_labels = {"x", "y"};
  try {
    render_ca_map(compute_ca(in, 1), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimensionality);
  }
}

TEST(CaMap, ChronologicalOrder) {
  const auto model = fixture_model();
  auto points = year_points(model);
  std::reverse(points.begin(), points.end());
  EXPECT_EQ(render_ca_map(model, points), render_ca_map(model, year_points(model)));
}

TEST(CaMap, Golden) {
  const auto model = fixture_model();
  CaMapOptions opts;
  opts.title = "Terms and years";
  expect_golden("ca_map.svg", render_ca_map(model, year_points(model), opts));
}

TEST(TrendChart, ForecastMarkersUseThousands) {
  const YearlyCounts series{2009, {1, 1, 2, 2, 2, 3, 3, 4, 4, 5, 7, 8, 9, 9}};
  const TrendFit fit{46.9, -370.1, 579, std::nullopt, 2009};
  const auto svg = render_trend_chart(series.through(2021), fit, 2);
  expect_well_formed(svg);
  EXPECT_EQ(count(svg, "class=\"forecast-point\""), 2u);
  EXPECT_NE(svg.find(">4,590<"), std::string::npos);
  EXPECT_NE(svg.find(">5,580<"), std::string::npos);
}

TEST(TrendChart, HorizonZeroAndErrors) {
  const YearlyCounts series{2009, {1, 3, 2, 5}};
  const auto fit = fit_quadratic_trend(series);
  const auto svg = render_trend_chart(series, fit, 0);
  expect_well_formed(svg);
  EXPECT_EQ(svg.find("forecast-point"), std::string::npos);
  EXPECT_EQ(count(svg, "<rect class=\"bar\""), 4u);
  EXPECT_THROW(render_trend_chart(series, fit, -1), Error);
}

TEST(TrendChart, Golden) {
  const YearlyCounts series{2009, {1, 1, 2, 2, 2, 3, 3, 4, 4, 5, 7, 8, 9, 9}};
  TrendChartOptions opts;
  opts.title = "Publications per year";
  expect_golden("trend_chart.svg", render_trend_chart(series, fit_quadratic_trend(series), 2, opts));
}

TEST(WordCloud, SingleTermIsCentred) {
  const Canvas canvas{800, 500};
  const auto layout = layout_word_cloud({{"data", 3}}, canvas, 9);
  ASSERT_EQ(layout.placements.size(), 1u);
  EXPECT_NEAR(layout.placements[0].x, 400, 1e-9);
  EXPECT_NEAR(layout.placements[0].y, 250, 1e-9);
  EXPECT_NEAR(layout.placements[0].font_size, 0.12 * 500, 1e-9);
}

TEST(WordCloud, DeterministicPerSeed) {
  const auto terms = cloud_terms(20, 1);
  const auto a = layout_word_cloud(terms, {}, 7);
  const auto b = layout_word_cloud(terms, {}, 7);
  EXPECT_EQ(format_cloud_layout_tsv(a), format_cloud_layout_tsv(b));
  EXPECT_EQ(render_word_cloud(a), render_word_cloud(b));
  expect_well_formed(render_word_cloud(a, "cloud"));
}

TEST(WordCloud, TwentyTermsNoOverlap) {
  const auto layout = layout_word_cloud(cloud_terms(20, 2), {}, 3);
  EXPECT_EQ(layout.placements.size() + layout.dropped.size(), 20u);
  EXPECT_EQ(testkit::count_overlaps(rects(layout)), 0u);
}

TEST(WordCloud, FontSizeFollowsSqrtWeight) {
  const auto layout = layout_word_cloud({{"big", 100}, {"small", 25}}, {}, 1);
  ASSERT_EQ(layout.placements.size(), 2u);
  EXPECT_NEAR(layout.placements[1].font_size, layout.placements[0].font_size / 2, 1e-9);
}

TEST(WordCloud, OverflowDropsLightestAndAccounts) {
  const auto terms = cloud_terms(30, 4);
  CloudOptions big;
  big.max_font_fraction = 0.45;
  const auto layout = layout_word_cloud(terms, {300, 120}, 5, big);
  EXPECT_FALSE(layout.dropped.empty());
  EXPECT_EQ(layout.placements.size() + layout.dropped.size(), 30u);
  EXPECT_EQ(testkit::count_overlaps(rects(layout)), 0u);
  for (const auto& p : layout.placements) {
    EXPECT_GE(p.box.x0, 0);
    EXPECT_GE(p.box.y0, 0);
    EXPECT_LE(p.box.x1, 300);
    EXPECT_LE(p.box.y1, 120);
  }
}

TEST(WordCloud, CanvasTooSmall) {
  try {
    layout_word_cloud({{"enormousword", 1}}, {20, 500}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::layout);
    EXPECT_NE(std::string(e.what()).find("enormousword"), std::string::npos);
  }
  EXPECT_THROW(layout_word_cloud({}, {}, 1), Error);
  EXPECT_THROW(layout_word_cloud({{"a", 0}}, {}, 1), Error);
}

TEST(WordCloud, NoOverlapAcrossSeeds) {
  const auto terms = cloud_terms(30, 8);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto layout = layout_word_cloud(terms, {}, seed);
    EXPECT_EQ(testkit::count_overlaps(rects(layout)), 0u) << "seed " << seed;
  }
}

TEST(TextWidth, TableMetrics) {
  EXPECT_NEAR(text_width("i", 1000), 222, 1e-9);
  EXPECT_NEAR(text_width("W", 1000), 944, 1e-9);
  EXPECT_NEAR(text_width("ñ", 1000), 556, 1e-9);
  EXPECT_NEAR(text_width("ab", 10), text_width("a", 10) + text_width("b", 10), 1e-12);
}
