#pragma once

// Deterministic SVG figures: bar charts, the publication trend, word clouds
// and the CA planar map.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexevo/ca.hpp"
#include "lexevo/stats.hpp"

namespace lexevo {

struct Canvas {
  double width = 800.0;
  double height = 500.0;
};

struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  bool overlaps(const Box& other) const noexcept {
    return x0 < other.x1 && other.x0 < x1 && y0 < other.y1 && other.y0 < y1;
  }
};

/// Advance width of `text` at `font_size`, from a fixed per-character table
/// (Helvetica metrics; non-ASCII code points use the digit width).
double text_width(std::string_view text, double font_size);

struct CloudPlacement {
  std::string term;
  double x = 0.0;  // box center
  double y = 0.0;
  double font_size = 0.0;
  Box box;
};

struct CloudLayout {
  Canvas canvas;
  std::vector<CloudPlacement> placements;
  std::vector<std::string> dropped;  // did not fit, lowest weights first out
};

struct CloudOptions {
  double max_font_fraction = 0.12;  // largest term's font size / canvas height
  double padding = 1.0;             // added around every box
  double spiral_step = 0.05;        // radians between candidate positions
};

/// Places terms by descending weight along an outward spiral from the
/// center; the first collision-free position wins. Font size is
/// proportional to sqrt(weight). Throws Error(layout) if the heaviest term
/// cannot fit the canvas, Error(argument) on empty input or bad weights.
CloudLayout layout_word_cloud(const std::vector<std::pair<std::string, double>>& weights, Canvas canvas,
                              std::uint64_t seed, const CloudOptions& options = {});

std::string render_word_cloud(const CloudLayout& layout, std::string_view title = {});

/// TSV: term, x, y, size.
std::string format_cloud_layout_tsv(const CloudLayout& layout);

struct BarChartOptions {
  std::string title;
  double width = 800.0;
  double label_width = 140.0;
  double right_margin = 60.0;
  double bar_height = 18.0;
  double bar_gap = 6.0;
  int value_decimals = 0;
};

/// Horizontal bars, length proportional to value. Throws Error(argument)
/// on an empty list or negative/non-finite values.
std::string render_bar_chart(const std::vector<std::pair<std::string, double>>& categories,
                             const BarChartOptions& options = {});

struct CaMapOptions {
  std::string title;
  double width = 800.0;
  double height = 600.0;
  double margin = 60.0;
  bool show_rows = false;
};

/// Dimensions 1-2 as x/y: column points, supplementary points joined in
/// chronological order. Throws Error(dimensionality) below 2 dimensions.
std::string render_ca_map(const CaModel& model, const std::vector<SupplementaryProjection>& supplementary,
                          const CaMapOptions& options = {});

struct TrendChartOptions {
  std::string title;
  double width = 800.0;
  double height = 450.0;
  double margin = 60.0;
};

/// Observed bars, the fitted curve sampled yearly and forecast markers for
/// `horizon` years past the series. Throws Error(argument) if horizon < 0.
std::string render_trend_chart(const YearlyCounts& series, const TrendFit& fit, int horizon,
                               const TrendChartOptions& options = {});

}  // namespace lexevo
