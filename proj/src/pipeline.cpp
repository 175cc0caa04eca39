#include "lexevo/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>

#include "lexevo/ca.hpp"
#include "lexevo/error.hpp"
#include "lexevo/io.hpp"
#include "lexevo/stats.hpp"
#include "lexevo/viz.hpp"

namespace lexevo {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kManifest = "manifest.json";
constexpr std::string_view kTimings = "timings.json";
constexpr std::string_view kConfigEcho = "config.echo";

// ---------------------------------------------------------------- config

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    const auto item = trim(value.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  value = trim(value);
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::config, "'" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const auto v = lower_ascii(trim(value));
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw Error(ErrorCode::config, "'" + std::string(key) + "' expects true/false, got '" + std::string(value) + "'");
}

fs::path resolve(const fs::path& base_dir, std::string_view value) {
  fs::path p{std::string(trim(value))};
  if (p.is_relative()) p = base_dir / p;
  return p.lexically_normal();
}

std::string optional_column(const std::optional<std::string>& column) { return column.value_or(""); }

std::optional<std::string> column_or_unset(std::string_view value) {
  const auto v = trim(value);
  if (v.empty()) return std::nullopt;
  return std::string(v);
}

// ---------------------------------------------------------------- helpers

std::string period_slug(std::string_view name) {
  std::string out;
  for (char c : name) {
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if (alnum) {
      out.push_back(c);
    } else if (!out.empty() && out.back() != '-') {
      out.push_back('-');
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "period" : out;
}

void require(const fs::path& dir, std::string_view file, Stage producer) {
  if (!fs::exists(dir / file)) {
    throw Error(ErrorCode::dependency, "missing upstream artifact '" + std::string(file) + "'; run `lexevo " +
                                           std::string(to_string(producer)) + "` first");
  }
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, path.filename().string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

json filter_report_json(const FilterReport& r) {
  return {{"loaded", r.loaded},
          {"excluded_non_research", r.excluded_non_research},
          {"excluded_no_abstract", r.excluded_no_abstract},
          {"retained", r.retained}};
}

Corpus load_ingested_corpus(const fs::path& dir) {
  require(dir, "corpus.csv", Stage::ingest);
  require(dir, "filter_report.json", Stage::ingest);
  IngestOptions options;
  options.schema = CsvSchema::canonical();
  options.years = {std::numeric_limits<int>::min(), std::numeric_limits<int>::max()};
  auto result = parse_bibliographic_csv(read_file(dir / "corpus.csv"), options);
  if (!result.rejects.empty()) {
    throw Error(ErrorCode::parse, "corpus.csv row " + std::to_string(result.rejects.front().row) + ": " +
                                      result.rejects.front().reason);
  }
  const json report = read_json(dir / "filter_report.json");
  const FilterReport provenance{report.at("loaded").get<std::uint64_t>(),
                                report.at("excluded_non_research").get<std::uint64_t>(),
                                report.at("excluded_no_abstract").get<std::uint64_t>(),
                                report.at("retained").get<std::uint64_t>()};
  std::vector<Document> docs = result.corpus.documents();
  return Corpus(std::move(docs), provenance);
}

struct TextModel {
  std::vector<TokenStream> tokenized;
  std::vector<TokenStream> filtered;
  std::vector<std::string> auto_stopwords;
  Vocabulary vocab;
  DocTermMatrix dtm;
};

TextModel build_text_model(const Corpus& corpus, const RunConfig& config) {
  TextModel model;
  model.tokenized.reserve(corpus.size());
  for (const Document& doc : corpus.documents()) {
    model.tokenized.push_back({doc.id, tokenize(doc.abstract, config.min_token_length)});
  }
  Stoplist stoplist = config.builtin_stoplist ? Stoplist::english() : Stoplist{};
  for (const auto& path : config.stoplists) stoplist.merge(Stoplist::load(path));
  for (const TokenStream& s : model.tokenized) model.filtered.push_back(remove_stopwords(s, stoplist));
  if (config.auto_stopword_fraction > 0.0) {
    model.auto_stopwords = high_document_frequency_terms(model.filtered, config.auto_stopword_fraction);
    Stoplist extra(std::set<std::string>(model.auto_stopwords.begin(), model.auto_stopwords.end()));
    for (TokenStream& s : model.filtered) s = remove_stopwords(s, extra);
  }
  model.vocab = build_vocabulary(model.filtered, config.min_term_frequency);
  model.dtm = build_dtm(model.filtered, model.vocab);
  return model;
}

// ---------------------------------------------------------------- manifest

json load_manifest(const fs::path& dir) {
  const auto path = dir / kManifest;
  if (!fs::exists(path)) return json::object();
  try {
    return json::parse(read_file(path));
  } catch (const json::exception&) {
    return json::object();
  }
}

json config_json(const RunConfig& config) {
  json j = json::object();
  for (const std::string& line : split_lines(config.echo())) {
    const auto eq = line.find('=');
    if (line.empty() || line.front() == '#' || eq == std::string::npos) continue;
    j[std::string(trim(std::string_view(line).substr(0, eq)))] = std::string(trim(std::string_view(line).substr(eq + 1)));
  }
  return j;
}

void record_stage(const RunConfig& config, Stage stage, const json& details, double millis) {
  const fs::path& dir = config.output;
  json manifest = stage == Stage::ingest ? json::object() : load_manifest(dir);
  manifest["tool"] = "lexevo";
  manifest["format_version"] = 1;
  manifest["config"] = config_json(config);
  manifest["status"] = "OK";
  manifest.erase("failed_stage");
  manifest.erase("error");
  manifest["stages"][std::string(to_string(stage))] = details;
  json artifacts = manifest.value("artifacts", json::object());
  for (const std::string& name : stage_artifacts(stage, config)) {
    artifacts[name] = fnv1a_hex(read_file(dir / name));
  }
  manifest["artifacts"] = artifacts;
  write_json(dir / kManifest, manifest);
  write_file(dir / kConfigEcho, config.echo());

  json timings = json::object();
  if (stage != Stage::ingest && fs::exists(dir / kTimings)) {
    try {
      timings = json::parse(read_file(dir / kTimings));
    } catch (const json::exception&) {
      timings = json::object();
    }
  }
  timings[std::string(to_string(stage))] = {{"milliseconds", millis}};
  write_json(dir / kTimings, timings);
}

void record_failure(const RunConfig& config, Stage stage, const std::string& message) {
  try {
    fs::create_directories(config.output);
    json manifest = load_manifest(config.output);
    manifest["tool"] = "lexevo";
    manifest["format_version"] = 1;
    manifest["config"] = config_json(config);
    manifest["status"] = "FAILED";
    manifest["failed_stage"] = std::string(to_string(stage));
    manifest["error"] = message;
    write_json(config.output / kManifest, manifest);
  } catch (...) {
    // best effort
  }
}

// ---------------------------------------------------------------- stages

json stage_ingest(const RunConfig& config) {
  const fs::path& dir = config.output;
  const std::string bytes = read_file(config.input);
  IngestOptions options;
  options.schema = config.schema;
  options.years = config.years;
  const IngestResult parsed = parse_bibliographic_csv(bytes, options);
  if (parsed.corpus.empty()) throw Error(ErrorCode::parse, "input holds no usable records");
  const Corpus corpus = filter_corpus(parsed.corpus, config.excluded_types);
  if (corpus.empty()) throw Error(ErrorCode::parse, "no documents survive filtering");

  write_file(dir / "corpus.csv", write_canonical_csv(corpus));
  write_json(dir / "filter_report.json", filter_report_json(corpus.provenance()));
  write_file(dir / "rejects.tsv", format_rejects(parsed.rejects));
  std::clog << "lexevo: ingest: " << corpus.provenance().loaded << " loaded, " << parsed.rejects.size()
            << " rejected rows, " << corpus.size() << " retained\n";
  return {{"input_hash", fnv1a_hex(bytes)},
          {"corpus_hash", fnv1a_hex(read_file(dir / "corpus.csv"))},
          {"rejected_rows", parsed.rejects.size()},
          {"filter_report", filter_report_json(corpus.provenance())}};
}

json stage_stats(const RunConfig& config) {
  const fs::path& dir = config.output;
  const Corpus corpus = load_ingested_corpus(dir);
  const TextModel text = build_text_model(corpus, config);

  write_file(dir / "vocabulary.tsv", format_vocabulary_tsv(text.vocab));

  const TermFrequencyTable top = term_frequency_table(text.vocab, config.top_terms);
  std::string terms_tsv = "rank\tterm\tfrequency\tshare\n";
  for (std::size_t i = 0; i < top.entries.size(); ++i) {
    const auto& e = top.entries[i];
    terms_tsv += std::to_string(i + 1) + '\t' + e.term + '\t' + std::to_string(e.frequency) + '\t' +
                 format_double(e.share) + '\n';
  }
  write_file(dir / "term_frequencies.tsv", terms_tsv);

  const YearlyCounts yearly = publications_per_year(corpus);
  std::string yearly_tsv = "year\tcount\n";
  for (std::size_t i = 0; i < yearly.counts.size(); ++i) {
    yearly_tsv += std::to_string(yearly.first_year + static_cast<int>(i)) + '\t' + std::to_string(yearly.counts[i]) + '\n';
  }
  write_file(dir / "yearly_counts.tsv", yearly_tsv);

  std::string types_tsv = "doc_type\tcount\tproportion\n";
  for (const TypeShare& s : publication_type_shares(corpus)) {
    types_tsv += std::string(to_string(s.type)) + '\t' + std::to_string(s.count) + '\t' + format_double(s.proportion) + '\n';
  }
  write_file(dir / "type_shares.tsv", types_tsv);

  const YearlyCounts fitted = config.trend_last_year ? yearly.through(*config.trend_last_year) : yearly;
  const TrendFit fit = fit_quadratic_trend(fitted);
  json forecasts = json::array();
  for (int h = 1; h <= config.forecast_horizon; ++h) {
    const int year = fitted.last_year() + h;
    forecasts.push_back({{"year", year}, {"value", predict_trend(fit, year)}});
  }
  const UniquenessStats uniq = uniqueness_stats(text.tokenized);

  json stats{
      {"documents", corpus.size()},
      {"filter_report", filter_report_json(corpus.provenance())},
      {"uniqueness",
       {{"mean_tokens", uniq.mean_tokens},
        {"mean_unique", uniq.mean_unique},
        {"unique_ratio", uniq.unique_ratio},
        {"ratio_of_means", uniq.ratio_of_means}}},
      {"vocabulary_size", text.vocab.size()},
      {"min_term_frequency", config.min_term_frequency},
      {"auto_stopwords", text.auto_stopwords},
      {"dtm",
       {{"rows", text.dtm.rows()},
        {"cols", text.dtm.cols()},
        {"grand_total", text.dtm.grand_total},
        {"pruned_documents", text.dtm.pruned_rows}}},
      {"top_terms", {{"requested", top.requested}, {"truncated", top.truncated}, {"share_of_total", top.share_of_total}}},
      {"trend",
       {{"c2", fit.c2},
        {"c1", fit.c1},
        {"c0", fit.c0},
        {"r_squared", fit.r_squared ? json(*fit.r_squared) : json(nullptr)},
        {"first_year", fit.first_year},
        {"last_year_fitted", fitted.last_year()}}},
      {"forecasts", forecasts},
  };
  write_json(dir / "stats.json", stats);
  std::clog << "lexevo: stats: vocabulary " << text.vocab.size() << " terms, matrix " << text.dtm.rows() << "x"
            << text.dtm.cols() << "\n";
  return {{"vocabulary_size", text.vocab.size()},
          {"dtm_rows", text.dtm.rows()},
          {"dtm_cols", text.dtm.cols()},
          {"pruned_documents", text.dtm.pruned_rows.size()}};
}

json stage_ca(const RunConfig& config) {
  const fs::path& dir = config.output;
  const Corpus corpus = load_ingested_corpus(dir);
  const TextModel text = build_text_model(corpus, config);

  CaInput input = config.ca_matrix == CaMatrixSource::counts
                      ? CaInput::from_counts(text.dtm)
                      : CaInput::from_weighted(weight_matrix(text.dtm, config.weighting)).pruned();
  const CaModel model = compute_ca(input, config.ca_dims);
  write_file(dir / "ca_coordinates.tsv", format_coordinates_tsv(model));
  write_file(dir / "ca_model.json", format_model_manifest(model));

  const YearProfiles years = aggregate_year_profiles(text.dtm, corpus);
  for (int y : years.omitted_years) std::clog << "lexevo: ca: warning: year " << y << " has an empty profile\n";
  std::string proj_tsv = "label";
  for (std::size_t k = 1; k <= model.dims(); ++k) proj_tsv += "\tdim" + std::to_string(k);
  proj_tsv += '\n';
  std::string near_tsv = "year\trank\tterm\tdistance\n";
  for (const YearProfile& yp : years.profiles) {
    const auto aligned = align_to_columns(model, text.dtm.terms, yp.profile);
    if (std::all_of(aligned.begin(), aligned.end(), [](double v) { return v == 0.0; })) {
      std::clog << "lexevo: ca: warning: year " << yp.year << " has no active terms\n";
      continue;
    }
    const auto proj = project_supplementary(model, aligned, std::to_string(yp.year));
    proj_tsv += proj.label;
    for (double c : proj.coords) proj_tsv += '\t' + format_double(c);
    proj_tsv += '\n';
    if (model.dims() > 0) {
      const auto near = nearest_points(model, Side::column, proj.coords, config.year_neighbors);
      for (std::size_t r = 0; r < near.size(); ++r) {
        near_tsv += proj.label + '\t' + std::to_string(r + 1) + '\t' + near[r].label + '\t' +
                    format_double(near[r].distance) + '\n';
      }
    }
  }
  write_file(dir / "year_projections.tsv", proj_tsv);
  write_file(dir / "year_neighbors.tsv", near_tsv);
  std::clog << "lexevo: ca: " << model.dims() << " dimensions, inertia " << model.inertia_total() << "\n";
  return {{"dims", model.dims()},
          {"singular_values", model.singular_values()},
          {"inertia_total", model.inertia_total()},
          {"matrix", config.ca_matrix == CaMatrixSource::counts ? "counts" : std::string(to_string(config.weighting))}};
}

json stage_periods(const RunConfig& config) {
  const fs::path& dir = config.output;
  const Corpus corpus = load_ingested_corpus(dir);
  const TextModel text = build_text_model(corpus, config);
  const PeriodSummary summary =
      period_report(corpus, text.dtm, config.periods, config.period_terms, config.period_docs);
  write_file(dir / "periods.json", format_period_json(summary));
  write_file(dir / "periods.md", format_period_markdown(summary));
  json counts = json::object();
  for (const auto& r : summary.periods) counts[r.period.name] = r.doc_count;
  return {{"doc_counts", counts}, {"unassigned", summary.unassigned}};
}

std::vector<std::vector<std::string>> read_tsv(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  const auto lines = split_lines(read_file(path));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (!lines[i].empty()) rows.push_back(split_tabs(lines[i]));
  }
  return rows;
}

json stage_figures(const RunConfig& config) {
  const fs::path& dir = config.output;
  for (const char* f : {"vocabulary.tsv", "term_frequencies.tsv", "yearly_counts.tsv", "type_shares.tsv", "stats.json"}) {
    require(dir, f, Stage::stats);
  }
  for (const char* f : {"ca_coordinates.tsv", "ca_model.json", "year_projections.tsv"}) require(dir, f, Stage::ca);
  require(dir, "periods.json", Stage::periods);

  std::vector<std::pair<std::string, double>> bars;
  for (const auto& row : read_tsv(dir / "term_frequencies.tsv")) bars.emplace_back(row.at(1), parse_double(row.at(2)));
  BarChartOptions term_options;
  term_options.title = "Most frequent terms";
  write_file(dir / "fig_top_terms.svg", render_bar_chart(bars, term_options));

  std::vector<std::pair<std::string, double>> types;
  for (const auto& row : read_tsv(dir / "type_shares.tsv")) types.emplace_back(row.at(0), 100.0 * parse_double(row.at(2)));
  BarChartOptions type_options;
  type_options.title = "Publication types (% of documents)";
  type_options.value_decimals = 1;
  write_file(dir / "fig_publication_types.svg", render_bar_chart(types, type_options));

  YearlyCounts yearly;
  for (const auto& row : read_tsv(dir / "yearly_counts.tsv")) {
    if (yearly.counts.empty()) yearly.first_year = static_cast<int>(parse_double(row.at(0)));
    yearly.counts.push_back(static_cast<std::uint64_t>(parse_double(row.at(1))));
  }
  const json stats = read_json(dir / "stats.json");
  const json& trend = stats.at("trend");
  TrendFit fit{trend.at("c2").get<double>(), trend.at("c1").get<double>(), trend.at("c0").get<double>(),
               std::nullopt, trend.at("first_year").get<int>()};
  if (!trend.at("r_squared").is_null()) fit.r_squared = trend.at("r_squared").get<double>();
  const YearlyCounts fitted = yearly.through(trend.at("last_year_fitted").get<int>());
  TrendChartOptions trend_options;
  trend_options.title = "Publications per year with quadratic trend";
  write_file(dir / "fig_yearly_trend.svg", render_trend_chart(fitted, fit, config.forecast_horizon, trend_options));

  const CaModel model = parse_model(read_file(dir / "ca_coordinates.tsv"), read_file(dir / "ca_model.json"));
  std::vector<SupplementaryProjection> years;
  for (const auto& row : read_tsv(dir / "year_projections.tsv")) {
    SupplementaryProjection p;
    p.label = row.at(0);
    for (std::size_t k = 1; k < row.size(); ++k) p.coords.push_back(parse_double(row[k]));
    years.push_back(std::move(p));
  }
  json files = json::array({"fig_top_terms.svg", "fig_publication_types.svg", "fig_yearly_trend.svg"});
  if (model.dims() >= 2) {
    CaMapOptions map_options;
    map_options.title = "Correspondence analysis: terms and years";
    write_file(dir / "fig_ca_map.svg", render_ca_map(model, years, map_options));
  } else {
    // one-dimensional solutions have no planar map; leave a marker figure
    write_file(dir / "fig_ca_map.svg", render_bar_chart({{"dimensions retained", static_cast<double>(model.dims())}}));
  }
  files.push_back("fig_ca_map.svg");

  std::vector<std::pair<std::string, double>> cloud_weights;
  for (const auto& row : read_tsv(dir / "vocabulary.tsv")) {
    if (cloud_weights.size() >= config.cloud_terms) break;
    cloud_weights.emplace_back(row.at(0), parse_double(row.at(1)));
  }
  const Canvas canvas{config.cloud_width, config.cloud_height};
  const CloudLayout cloud = layout_word_cloud(cloud_weights, canvas, config.seed);
  write_file(dir / "fig_word_cloud.svg", render_word_cloud(cloud, "Vocabulary"));
  write_file(dir / "word_cloud_layout.tsv", format_cloud_layout_tsv(cloud));
  files.push_back("fig_word_cloud.svg");

  const json periods = read_json(dir / "periods.json");
  for (const json& p : periods.at("periods")) {
    const auto name = p.at("name").get<std::string>();
    std::vector<std::pair<std::string, double>> weights;
    for (const json& t : p.at("characteristic_terms")) {
      const double score = t.at("score").get<double>();
      if (score > 0.0) weights.emplace_back(t.at("term").get<std::string>(), score);
    }
    const std::string file = "fig_cloud_" + period_slug(name) + ".svg";
    if (weights.empty()) {
      write_file(dir / file, render_word_cloud(CloudLayout{canvas, {}, {}}, name));
    } else {
      write_file(dir / file, render_word_cloud(layout_word_cloud(weights, canvas, config.seed), name));
    }
    files.push_back(file);
  }
  std::clog << "lexevo: figures: " << files.size() << " SVG files\n";
  return {{"files", files}, {"cloud_dropped", cloud.dropped}};
}

}  // namespace

// ---------------------------------------------------------------- RunConfig

RunConfig RunConfig::parse(std::string_view text, const fs::path& base_dir) {
  RunConfig config;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = trim(lines[n]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::config, "config line " + std::to_string(n + 1) + ": expected key = value");
    }
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base_dir);
  }
  return config;
}

RunConfig RunConfig::load(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::config, e.what());
  }
  return parse(text, fs::absolute(path).parent_path());
}

void RunConfig::set(std::string_view key, std::string_view value, const fs::path& base_dir) {
  const std::string k(key);
  if (k == "input") {
    input = resolve(base_dir, value);
  } else if (k == "schema.id") {
    schema.id = column_or_unset(value);
  } else if (k == "schema.title") {
    schema.title = std::string(trim(value));
  } else if (k == "schema.abstract") {
    schema.abstract = std::string(trim(value));
  } else if (k == "schema.keywords") {
    schema.keywords = column_or_unset(value);
  } else if (k == "schema.year") {
    schema.year = std::string(trim(value));
  } else if (k == "schema.doc_type") {
    schema.doc_type = std::string(trim(value));
  } else if (k == "schema.citations") {
    schema.citations = column_or_unset(value);
  } else if (k == "exclude_types") {
    excluded_types.clear();
    for (const auto& name : split_list(value)) {
      const auto type = parse_doc_type(name);
      if (!type) throw Error(ErrorCode::config, "unknown document type '" + name + "'");
      excluded_types.insert(*type);
    }
  } else if (k == "year_min") {
    years.first = parse_number<int>(key, value);
  } else if (k == "year_max") {
    years.last = parse_number<int>(key, value);
  } else if (k == "builtin_stoplist") {
    builtin_stoplist = parse_bool(key, value);
  } else if (k == "stoplists") {
    stoplists.clear();
    for (const auto& p : split_list(value)) stoplists.push_back(resolve(base_dir, p));
  } else if (k == "auto_stopword_fraction") {
    auto_stopword_fraction = parse_number<double>(key, value);
  } else if (k == "min_token_length") {
    min_token_length = parse_number<std::size_t>(key, value);
  } else if (k == "min_term_frequency") {
    min_term_frequency = parse_number<std::uint64_t>(key, value);
  } else if (k == "weighting") {
    weighting = parse_weighting_scheme(trim(value));
  } else if (k == "ca_matrix") {
    const auto v = trim(value);
    if (v == "counts") {
      ca_matrix = CaMatrixSource::counts;
    } else if (v == "weighted") {
      ca_matrix = CaMatrixSource::weighted;
    } else {
      throw Error(ErrorCode::config, "ca_matrix must be 'counts' or 'weighted'");
    }
  } else if (k == "ca_dims") {
    ca_dims = parse_number<std::size_t>(key, value);
  } else if (k == "periods") {
    periods = PeriodSpec::parse(value);
  } else if (k == "top_terms") {
    top_terms = parse_number<std::size_t>(key, value);
  } else if (k == "cloud_terms") {
    cloud_terms = parse_number<std::size_t>(key, value);
  } else if (k == "period_terms") {
    period_terms = parse_number<std::size_t>(key, value);
  } else if (k == "period_docs") {
    period_docs = parse_number<std::size_t>(key, value);
  } else if (k == "year_neighbors") {
    year_neighbors = parse_number<std::size_t>(key, value);
  } else if (k == "trend_last_year") {
    trend_last_year = trim(value).empty() ? std::nullopt : std::optional<int>(parse_number<int>(key, value));
  } else if (k == "forecast_horizon") {
    forecast_horizon = parse_number<int>(key, value);
  } else if (k == "cloud_width") {
    cloud_width = parse_number<double>(key, value);
  } else if (k == "cloud_height") {
    cloud_height = parse_number<double>(key, value);
  } else if (k == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (k == "output") {
    output = resolve(base_dir, value);
  } else {
    throw Error(ErrorCode::config, "unknown config key '" + k + "'");
  }
}

void RunConfig::validate() const {
  if (input.empty()) throw Error(ErrorCode::config, "'input' is not set");
  if (!fs::is_regular_file(input)) throw Error(ErrorCode::config, "input file not found: " + input.string());
  for (const auto& p : stoplists) {
    if (!fs::is_regular_file(p)) throw Error(ErrorCode::config, "stoplist not found: " + p.string());
  }
  auto check = [](bool ok, const std::string& message) {
    if (!ok) throw Error(ErrorCode::config, message);
  };
  check(years.first <= years.last, "year_min must not exceed year_max");
  check(auto_stopword_fraction >= 0.0 && auto_stopword_fraction < 1.0, "auto_stopword_fraction must be in [0, 1)");
  check(min_token_length >= 1, "min_token_length must be at least 1");
  check(min_term_frequency >= 1, "min_term_frequency must be at least 1");
  check(ca_dims >= 1, "ca_dims must be at least 1");
  check(top_terms >= 1 && cloud_terms >= 1 && period_terms >= 1 && period_docs >= 1 && year_neighbors >= 1,
        "top-k settings must be at least 1");
  check(forecast_horizon >= 0, "forecast_horizon must be non-negative");
  check(cloud_width > 0.0 && cloud_height > 0.0, "cloud canvas must have positive size");
  check(!output.empty(), "'output' is not set");
}

std::string RunConfig::echo() const {
  std::string types;
  for (DocType t : excluded_types) {
    if (!types.empty()) types += ", ";
    types += to_string(t);
  }
  std::string lists;
  for (const auto& p : stoplists) {
    if (!lists.empty()) lists += ", ";
    lists += fs::absolute(p).lexically_normal().string();
  }
  std::string out = "# lexevo run configuration (output directory omitted)\n";
  auto line = [&](std::string_view key, const std::string& value) {
    out += std::string(key) + " = " + value + "\n";
  };
  line("input", fs::absolute(input).lexically_normal().string());
  line("schema.id", optional_column(schema.id));
  line("schema.title", schema.title);
  line("schema.abstract", schema.abstract);
  line("schema.keywords", optional_column(schema.keywords));
  line("schema.year", schema.year);
  line("schema.doc_type", schema.doc_type);
  line("schema.citations", optional_column(schema.citations));
  line("exclude_types", types);
  line("year_min", std::to_string(years.first));
  line("year_max", std::to_string(years.last));
  line("builtin_stoplist", builtin_stoplist ? "true" : "false");
  line("stoplists", lists);
  line("auto_stopword_fraction", format_double(auto_stopword_fraction));
  line("min_token_length", std::to_string(min_token_length));
  line("min_term_frequency", std::to_string(min_term_frequency));
  line("weighting", std::string(to_string(weighting)));
  line("ca_matrix", ca_matrix == CaMatrixSource::counts ? "counts" : "weighted");
  line("ca_dims", std::to_string(ca_dims));
  line("periods", periods.to_string());
  line("top_terms", std::to_string(top_terms));
  line("cloud_terms", std::to_string(cloud_terms));
  line("period_terms", std::to_string(period_terms));
  line("period_docs", std::to_string(period_docs));
  line("year_neighbors", std::to_string(year_neighbors));
  line("trend_last_year", trend_last_year ? std::to_string(*trend_last_year) : "");
  line("forecast_horizon", std::to_string(forecast_horizon));
  line("cloud_width", format_double(cloud_width));
  line("cloud_height", format_double(cloud_height));
  line("seed", std::to_string(seed));
  return out;
}

// ---------------------------------------------------------------- stages

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::ingest: return "ingest";
    case Stage::stats: return "stats";
    case Stage::ca: return "ca";
    case Stage::periods: return "periods";
    case Stage::figures: return "figures";
  }
  return "ingest";
}

Stage parse_stage(std::string_view name) {
  for (Stage s : {Stage::ingest, Stage::stats, Stage::ca, Stage::periods, Stage::figures}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::config, "unknown stage '" + std::string(name) + "'");
}

std::vector<std::string> stage_artifacts(Stage stage, const RunConfig& config) {
  switch (stage) {
    case Stage::ingest: return {"corpus.csv", "filter_report.json", "rejects.tsv"};
    case Stage::stats:
      return {"vocabulary.tsv", "term_frequencies.tsv", "yearly_counts.tsv", "type_shares.tsv", "stats.json"};
    case Stage::ca: return {"ca_coordinates.tsv", "ca_model.json", "year_projections.tsv", "year_neighbors.tsv"};
    case Stage::periods: return {"periods.json", "periods.md"};
    case Stage::figures: {
      std::vector<std::string> out{"fig_top_terms.svg", "fig_publication_types.svg", "fig_yearly_trend.svg",
                                   "fig_ca_map.svg",    "fig_word_cloud.svg",        "word_cloud_layout.tsv"};
      for (const Period& p : config.periods.periods()) out.push_back("fig_cloud_" + period_slug(p.name) + ".svg");
      return out;
    }
  }
  return {};
}

void run_stage(Stage stage, const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  try {
    if (stage == Stage::ingest) config.validate();
    fs::create_directories(config.output);
    json details;
    switch (stage) {
      case Stage::ingest: details = stage_ingest(config); break;
      case Stage::stats: details = stage_stats(config); break;
      case Stage::ca: details = stage_ca(config); break;
      case Stage::periods: details = stage_periods(config); break;
      case Stage::figures: details = stage_figures(config); break;
    }
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - started;
    record_stage(config, stage, details, elapsed.count());
  } catch (const Error& e) {
    const std::string message = "stage '" + std::string(to_string(stage)) + "': " + e.what();
    record_failure(config, stage, message);
    throw Error(e.code(), message);
  } catch (const fs::filesystem_error& e) {
    const std::string message = "stage '" + std::string(to_string(stage)) + "': " + e.what();
    record_failure(config, stage, message);
    throw Error(ErrorCode::io, message);
  } catch (const std::exception& e) {
    const std::string message = "stage '" + std::string(to_string(stage)) + "': " + e.what();
    record_failure(config, stage, message);
    throw Error(ErrorCode::internal, message);
  }
}

std::string run_pipeline(const RunConfig& config) {
  config.validate();
  for (Stage s : {Stage::ingest, Stage::stats, Stage::ca, Stage::periods, Stage::figures}) run_stage(s, config);
  return read_file(config.output / kManifest);
}

}  // namespace lexevo
