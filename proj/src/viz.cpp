#include "lexevo/viz.hpp"

#include <unicode/utf8.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "lexevo/error.hpp"
#include "lexevo/io.hpp"

namespace lexevo {
namespace {

// Helvetica advance widths in 1/1000 em for ' ' (32) through '~' (126).
constexpr int kAsciiWidths[95] = {
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333, 278, 278,  //  !"#$%&'()*+,-./
    556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 278, 278, 584, 584, 584, 556,  // 0-9:;<=>?
    1015, 667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833, 722, 778, // @A-O
    667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611, 278, 278, 278, 469, 556,  // P-Z[\]^_
    333, 556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833, 556, 556,  // `a-o
    556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500, 334, 260, 334, 584,       // p-z{|}~
};
constexpr int kFallbackWidth = 556;

const char* const kPalette[] = {"#1f4e79", "#2e75b6", "#c55a11", "#548235", "#7030a0", "#bf9000"};

std::string num(double v) { return format_fixed(v, 2); }

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n':
      case '\r':
      case '\t': out += ' '; break;
      default: out.push_back(c);
    }
  }
  return out;
}

class SvgWriter {
 public:
  SvgWriter(double width, double height) {
    out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
            "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    out_ += "<rect class=\"background\" x=\"0.00\" y=\"0.00\" width=\"" + num(width) + "\" height=\"" +
            num(height) + "\" fill=\"#ffffff\"/>\n";
  }

  void open_group(std::string_view cls) { out_ += "<g class=\"" + std::string(cls) + "\">\n"; }
  void close_group() { out_ += "</g>\n"; }

  void rect(std::string_view cls, double x, double y, double w, double h, std::string_view fill,
            std::string_view extra = {}) {
    out_ += "<rect class=\"" + std::string(cls) + "\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
            "\" height=\"" + num(h) + "\" fill=\"" + std::string(fill) + "\"" + std::string(extra) + "/>\n";
  }

  void line(std::string_view cls, double x1, double y1, double x2, double y2, std::string_view stroke,
            double stroke_width = 1.0, std::string_view extra = {}) {
    out_ += "<line class=\"" + std::string(cls) + "\" x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" +
            num(x2) + "\" y2=\"" + num(y2) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" +
            num(stroke_width) + "\"" + std::string(extra) + "/>\n";
  }

  void circle(std::string_view cls, double cx, double cy, double r, std::string_view fill) {
    out_ += "<circle class=\"" + std::string(cls) + "\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
            num(r) + "\" fill=\"" + std::string(fill) + "\"/>\n";
  }

  void polyline(std::string_view cls, const std::vector<std::pair<double, double>>& points,
                std::string_view stroke, double stroke_width) {
    out_ += "<polyline class=\"" + std::string(cls) + "\" fill=\"none\" stroke=\"" + std::string(stroke) +
            "\" stroke-width=\"" + num(stroke_width) + "\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i > 0) out_ += ' ';
      out_ += num(points[i].first) + "," + num(points[i].second);
    }
    out_ += "\"/>\n";
  }

  void text(std::string_view cls, double x, double y, double size, std::string_view anchor, std::string_view body,
            std::string_view fill = "#222222", std::string_view extra = {}) {
    out_ += "<text class=\"" + std::string(cls) + "\" x=\"" + num(x) + "\" y=\"" + num(y) +
            "\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"" + num(size) + "\" text-anchor=\"" +
            std::string(anchor) + "\" fill=\"" + std::string(fill) + "\"" + std::string(extra) + ">" +
            xml_escape(body) + "</text>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  std::string out_;
};

// Uniform in [0, 1) from the raw engine output, identical on every platform.
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Axis-aligned box of a term centered at (x, y).
Box text_box(double x, double y, double width, double font_size, double padding) {
  return {x - width / 2 - padding, y - font_size / 2 - padding, x + width / 2 + padding,
          y + font_size / 2 + padding};
}

std::optional<int> as_year(std::string_view label) {
  int year = 0;
  auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), year);
  if (ec != std::errc{} || ptr != label.data() + label.size()) return std::nullopt;
  return year;
}

}  // namespace

double text_width(std::string_view text, double font_size) {
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  long total = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    total += (c >= 32 && c <= 126) ? kAsciiWidths[c - 32] : kFallbackWidth;
  }
  return static_cast<double>(total) * font_size / 1000.0;
}

CloudLayout layout_word_cloud(const std::vector<std::pair<std::string, double>>& weights, Canvas canvas,
                              std::uint64_t seed, const CloudOptions& options) {
  if (weights.empty()) throw Error(ErrorCode::argument, "word cloud needs at least one term");
  if (!(canvas.width > 0.0) || !(canvas.height > 0.0)) {
    throw Error(ErrorCode::argument, "word cloud canvas must have positive size");
  }
  for (const auto& [term, w] : weights) {
    if (!std::isfinite(w) || w <= 0.0) {
      throw Error(ErrorCode::argument, "word cloud weight for '" + term + "' must be positive");
    }
  }

  std::vector<std::pair<std::string, double>> ordered = weights;
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const double max_weight = ordered.front().second;
  const double max_font = options.max_font_fraction * canvas.height;

  std::mt19937_64 rng(seed);
  const double start_angle = 2.0 * std::numbers::pi * unit_interval(rng);
  const double direction = (rng() & 1U) ? 1.0 : -1.0;
  const double cx = canvas.width / 2;
  const double cy = canvas.height / 2;
  const double aspect = canvas.width / canvas.height;
  const double max_radius = std::hypot(cx, cy);
  const double growth = 1.5 / (2.0 * std::numbers::pi) * 4.0;  // radial units per radian

  CloudLayout layout{canvas, {}, {}};
  for (std::size_t n = 0; n < ordered.size(); ++n) {
    const auto& [term, weight] = ordered[n];
    const double font_size = max_font * std::sqrt(weight / max_weight);
    const double width = text_width(term, font_size);
    if (n == 0 && (width + 2 * options.padding > canvas.width || font_size + 2 * options.padding > canvas.height)) {
      throw Error(ErrorCode::layout, "canvas too small for term '" + term + "'");
    }

    std::optional<CloudPlacement> found;
    for (double t = 0.0;; t += options.spiral_step) {
      const double r = growth * t;
      if (r > max_radius) break;
      const double angle = start_angle + direction * t;
      const double x = cx + r * std::cos(angle) * std::sqrt(aspect);
      const double y = cy + r * std::sin(angle) / std::sqrt(aspect);
      const Box box = text_box(x, y, width, font_size, options.padding);
      if (box.x0 < 0.0 || box.y0 < 0.0 || box.x1 > canvas.width || box.y1 > canvas.height) continue;
      const bool collides = std::any_of(layout.placements.begin(), layout.placements.end(),
                                        [&](const CloudPlacement& p) { return p.box.overlaps(box); });
      if (!collides) {
        found = CloudPlacement{term, x, y, font_size, box};
        break;
      }
    }
    if (found) {
      layout.placements.push_back(std::move(*found));
    } else {
      layout.dropped.push_back(term);
    }
  }
  return layout;
}

std::string render_word_cloud(const CloudLayout& layout, std::string_view title) {
  SvgWriter svg(layout.canvas.width, layout.canvas.height);
  if (!title.empty()) {
    svg.text("title", layout.canvas.width / 2, 18.0, 14.0, "middle", title);
  }
  svg.open_group("cloud");
  for (std::size_t i = 0; i < layout.placements.size(); ++i) {
    const CloudPlacement& p = layout.placements[i];
    // baseline sits 0.35 em below the box center for Helvetica-like fonts
    svg.text("term", p.x, p.y + 0.35 * p.font_size, p.font_size, "middle", p.term,
             kPalette[i % std::size(kPalette)]);
  }
  svg.close_group();
  return svg.finish();
}

std::string format_cloud_layout_tsv(const CloudLayout& layout) {
  std::string out = "term\tx\ty\tsize\n";
  for (const CloudPlacement& p : layout.placements) {
    out += p.term + '\t' + num(p.x) + '\t' + num(p.y) + '\t' + num(p.font_size) + '\n';
  }
  for (const std::string& term : layout.dropped) out += term + "\t\t\t\n";
  return out;
}

std::string render_bar_chart(const std::vector<std::pair<std::string, double>>& categories,
                             const BarChartOptions& options) {
  if (categories.empty()) throw Error(ErrorCode::argument, "bar chart needs at least one category");
  double max_value = 0.0;
  for (const auto& [label, value] : categories) {
    if (!std::isfinite(value)) throw Error(ErrorCode::argument, "bar value for '" + label + "' is not finite");
    if (value < 0.0) throw Error(ErrorCode::argument, "bar value for '" + label + "' is negative");
    max_value = std::max(max_value, value);
  }
  const double top = options.title.empty() ? 10.0 : 34.0;
  const double step = options.bar_height + options.bar_gap;
  const double height = top + step * static_cast<double>(categories.size()) + 10.0;
  const double plot_width = options.width - options.label_width - options.right_margin;

  SvgWriter svg(options.width, height);
  if (!options.title.empty()) svg.text("title", options.width / 2, 20.0, 14.0, "middle", options.title);
  svg.open_group("bars");
  for (std::size_t i = 0; i < categories.size(); ++i) {
    const auto& [label, value] = categories[i];
    const double y = top + step * static_cast<double>(i);
    const double length = max_value > 0.0 ? plot_width * value / max_value : 0.0;
    svg.text("label", options.label_width - 6.0, y + options.bar_height * 0.72, 12.0, "end", label);
    svg.rect("bar", options.label_width, y, length, options.bar_height, kPalette[0]);
    svg.text("value", options.label_width + length + 4.0, y + options.bar_height * 0.72, 11.0, "start",
             format_fixed(value, options.value_decimals));
  }
  svg.close_group();
  return svg.finish();
}

std::string render_ca_map(const CaModel& model, const std::vector<SupplementaryProjection>& supplementary,
                          const CaMapOptions& options) {
  if (model.dims() < 2) {
    throw Error(ErrorCode::dimensionality,
                "CA map needs 2 dimensions, model has " + std::to_string(model.dims()));
  }
  std::vector<const SupplementaryProjection*> trail;
  for (const auto& s : supplementary) {
    if (s.coords.size() < 2) throw Error(ErrorCode::shape, "supplementary point '" + s.label + "' lacks 2 dimensions");
    trail.push_back(&s);
  }
  const bool all_years = std::all_of(trail.begin(), trail.end(), [](const auto* s) { return as_year(s->label).has_value(); });
  if (all_years) {
    std::stable_sort(trail.begin(), trail.end(),
                     [](const auto* a, const auto* b) { return *as_year(a->label) < *as_year(b->label); });
  }

  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  auto extend = [&](double x, double y) {
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  };
  const auto& cols = model.principal(Side::column);
  for (Eigen::Index j = 0; j < cols.rows(); ++j) extend(cols(j, 0), cols(j, 1));
  const auto& rows = model.principal(Side::row);
  if (options.show_rows) {
    for (Eigen::Index i = 0; i < rows.rows(); ++i) extend(rows(i, 0), rows(i, 1));
  }
  for (const auto* s : trail) extend(s->coords[0], s->coords[1]);

  const double top = options.title.empty() ? options.margin : options.margin + 16.0;
  const double plot_w = options.width - 2 * options.margin;
  const double plot_h = options.height - top - options.margin;
  const double span_x = x_max - x_min > 0.0 ? x_max - x_min : 1.0;
  const double span_y = y_max - y_min > 0.0 ? y_max - y_min : 1.0;
  const double scale = std::min(plot_w / span_x, plot_h / span_y);  // same scale on both axes
  const double off_x = options.margin + (plot_w - span_x * scale) / 2;
  const double off_y = top + (plot_h - span_y * scale) / 2;
  auto px = [&](double x) { return off_x + (x - x_min) * scale; };
  auto py = [&](double y) { return off_y + (y_max - y) * scale; };

  SvgWriter svg(options.width, options.height);
  if (!options.title.empty()) svg.text("title", options.width / 2, 24.0, 14.0, "middle", options.title);
  svg.open_group("axes");
  svg.line("axis", options.margin, py(0.0), options.width - options.margin, py(0.0), "#999999", 1.0,
           " stroke-dasharray=\"4 3\"");
  svg.line("axis", px(0.0), top, px(0.0), options.height - options.margin, "#999999", 1.0,
           " stroke-dasharray=\"4 3\"");
  const auto& share = model.inertia_share();
  svg.text("axis-label", options.width / 2, options.height - options.margin / 3, 12.0, "middle",
           "Dim 1 (" + format_fixed(100.0 * share[0], 1) + "%)");
  svg.text("axis-label", options.margin / 3, top + plot_h / 2, 12.0, "middle",
           "Dim 2 (" + format_fixed(100.0 * share[1], 1) + "%)",
           "#222222",
           " transform=\"rotate(-90 " + num(options.margin / 3) + " " + num(top + plot_h / 2) + ")\"");
  svg.close_group();

  if (options.show_rows) {
    svg.open_group("rows");
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      svg.circle("row-point", px(rows(i, 0)), py(rows(i, 1)), 2.0, "#bbbbbb");
    }
    svg.close_group();
  }

  svg.open_group("columns");
  const auto& labels = model.labels(Side::column);
  for (Eigen::Index j = 0; j < cols.rows(); ++j) {
    const double x = px(cols(j, 0));
    const double y = py(cols(j, 1));
    svg.circle("column-point", x, y, 2.5, kPalette[1]);
    svg.text("column-label", x + 4.0, y - 3.0, 10.0, "start", labels[static_cast<std::size_t>(j)], kPalette[1]);
  }
  svg.close_group();

  if (!trail.empty()) {
    svg.open_group("trajectory");
    for (std::size_t i = 1; i < trail.size(); ++i) {
      svg.line("trajectory-segment", px(trail[i - 1]->coords[0]), py(trail[i - 1]->coords[1]),
               px(trail[i]->coords[0]), py(trail[i]->coords[1]), kPalette[2], 1.5);
    }
    for (const auto* s : trail) {
      const double x = px(s->coords[0]);
      const double y = py(s->coords[1]);
      svg.rect("supplementary-point", x - 3.5, y - 3.5, 7.0, 7.0, kPalette[2]);
      svg.text("supplementary-label", x + 6.0, y + 4.0, 11.0, "start", s->label, kPalette[2],
               " font-weight=\"bold\"");
    }
    svg.close_group();
  }
  return svg.finish();
}

std::string render_trend_chart(const YearlyCounts& series, const TrendFit& fit, int horizon,
                               const TrendChartOptions& options) {
  if (horizon < 0) throw Error(ErrorCode::argument, "forecast horizon must be non-negative");
  if (series.counts.empty()) throw Error(ErrorCode::argument, "trend chart needs at least one year");

  const int first = series.first_year;
  const int last_observed = series.last_year();
  const int last = last_observed + horizon;
  const auto n_years = static_cast<double>(last - first + 1);

  double y_max = 0.0;
  double y_min = 0.0;
  for (auto c : series.counts) y_max = std::max(y_max, static_cast<double>(c));
  for (int year = first; year <= last; ++year) {
    const double v = predict_trend(fit, year);
    y_max = std::max(y_max, v);
    y_min = std::min(y_min, v);
  }
  if (y_max - y_min <= 0.0) y_max = y_min + 1.0;
  y_max *= 1.08;

  const double top = options.title.empty() ? options.margin / 2 : options.margin;
  const double plot_w = options.width - 2 * options.margin;
  const double plot_h = options.height - top - options.margin;
  const double slot = plot_w / n_years;
  auto px = [&](int year) { return options.margin + slot * (static_cast<double>(year - first) + 0.5); };
  auto py = [&](double v) { return top + plot_h * (y_max - v) / (y_max - y_min); };

  SvgWriter svg(options.width, options.height);
  if (!options.title.empty()) svg.text("title", options.width / 2, 24.0, 14.0, "middle", options.title);
  svg.open_group("axes");
  svg.line("axis", options.margin, py(0.0), options.width - options.margin, py(0.0), "#444444");
  for (int year = first; year <= last; ++year) {
    svg.text("year-label", px(year), options.height - options.margin + 16.0, 10.0, "middle", std::to_string(year));
  }
  svg.close_group();

  svg.open_group("observed");
  for (std::size_t i = 0; i < series.counts.size(); ++i) {
    const int year = first + static_cast<int>(i);
    const double v = static_cast<double>(series.counts[i]);
    svg.rect("bar", px(year) - slot * 0.35, py(v), slot * 0.7, py(0.0) - py(v), kPalette[1]);
  }
  svg.close_group();

  std::vector<std::pair<double, double>> curve;
  for (int year = first; year <= last; ++year) curve.emplace_back(px(year), py(predict_trend(fit, year)));
  svg.polyline("trend", curve, kPalette[2], 2.0);

  if (horizon > 0) {
    svg.open_group("forecast");
    for (int year = last_observed + 1; year <= last; ++year) {
      const double v = predict_trend(fit, year);
      svg.circle("forecast-point", px(year), py(v), 4.0, kPalette[2]);
      svg.text("forecast-label", px(year), py(v) - 8.0, 11.0, "middle",
               format_thousands(static_cast<std::int64_t>(std::llround(v))), kPalette[2]);
    }
    svg.close_group();
  }
  return svg.finish();
}

}  // namespace lexevo
