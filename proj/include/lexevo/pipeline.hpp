#pragma once

// Config-driven orchestration of the analysis stages. Every stage reads its
// inputs from the output directory and writes its artifacts back there, so a
// full run and a sequence of single-stage runs produce the same files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexevo/corpus.hpp"
#include "lexevo/diachronic.hpp"
#include "lexevo/text.hpp"

namespace lexevo {

enum class CaMatrixSource { counts, weighted };

/// Config file grammar: UTF-8, one `key = value` per line, '#' starts a
/// comment line, lists are comma-separated. Relative paths resolve against
/// the config file's directory.
struct RunConfig {
  std::filesystem::path input;
  CsvSchema schema;
  std::set<DocType> excluded_types{DocType::other};
  YearWindow years;
  bool builtin_stoplist = true;
  std::vector<std::filesystem::path> stoplists;
  double auto_stopword_fraction = 0.0;  // 0 disables document-frequency stopwords
  std::size_t min_token_length = kDefaultMinTokenLength;
  std::uint64_t min_term_frequency = 5;
  WeightingScheme weighting = WeightingScheme::relative_frequency;
  CaMatrixSource ca_matrix = CaMatrixSource::counts;
  std::size_t ca_dims = 2;
  PeriodSpec periods = PeriodSpec::emergence_growth_boom();
  std::size_t top_terms = 30;
  std::size_t cloud_terms = 40;
  std::size_t period_terms = 10;
  std::size_t period_docs = 3;
  std::size_t year_neighbors = 5;
  std::optional<int> trend_last_year;
  int forecast_horizon = 2;
  double cloud_width = 800.0;
  double cloud_height = 500.0;
  std::uint64_t seed = 1;
  std::filesystem::path output = "lexevo-out";

  static RunConfig parse(std::string_view text, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  /// Applies one setting; throws Error(config) for unknown keys or values.
  void set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir);

  /// Range checks plus existence of every referenced input file.
  void validate() const;

  /// Canonical config text (absolute paths, every key, no output directory).
  /// Loading it reproduces this configuration.
  std::string echo() const;
};

enum class Stage { ingest, stats, ca, periods, figures };

std::string_view to_string(Stage stage) noexcept;
Stage parse_stage(std::string_view name);

/// Runs one stage against `config.output`. Missing upstream artifacts throw
/// Error(dependency) naming the stage that produces them. Any failure marks
/// the manifest FAILED and rethrows with the stage name in the message.
void run_stage(Stage stage, const RunConfig& config);

/// ingest -> stats -> ca -> periods -> figures. Returns the manifest text.
std::string run_pipeline(const RunConfig& config);

/// Artifact names each stage writes, in writing order.
std::vector<std::string> stage_artifacts(Stage stage, const RunConfig& config);

}  // namespace lexevo
