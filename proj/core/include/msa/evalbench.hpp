#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msa/correlation.hpp"
#include "msa/relatedness.hpp"

namespace msa {

enum class DatasetFormat { tsv, csv };

DatasetFormat parse_dataset_format(std::string_view name);
// ".csv" -> csv, anything else -> tsv.
DatasetFormat dataset_format_for(const std::filesystem::path& path);

struct WordPair {
  std::string word1;
  std::string word2;
  double gold = 0.0;
};

struct Scale {
  double min = 0.0;
  double max = 0.0;
};

struct WordPairDataset {
  std::string name;
  std::vector<WordPair> pairs;
  Scale scale;

  std::vector<double> gold() const;
};

// Rows are "word1 <sep> word2 <sep> score [<sep> ...]"; the separator is TAB
// for tsv (runs of whitespace if a row has no TAB) and ',' for csv. Blank
// lines and '#' comments are skipped, as is a leading header row whose score
// column is not numeric. Without `scale` the observed gold range is used.
// Throws ParseError naming the row on any malformed, duplicate or
// out-of-scale row, or when the file holds no pairs.
WordPairDataset load_dataset(const std::filesystem::path& path, DatasetFormat format, std::string name = {},
                             std::optional<Scale> scale = std::nullopt);

struct DatasetEntry {
  std::string name;
  std::filesystem::path path;  // resolved against the manifest's directory
  DatasetFormat format = DatasetFormat::tsv;
  std::optional<Scale> scale;
};

// {"datasets": [{"name", "path", "format"?, "scale"?: [min, max]}]}
std::vector<DatasetEntry> load_dataset_manifest(const std::filesystem::path& path);
WordPairDataset load_dataset(const DatasetEntry& entry);

struct PairScore {
  double score = 0.0;
  bool oov = false;  // at least one side had no concept representation
};

using PairScorer = std::function<PairScore(std::string_view, std::string_view)>;

struct ScoredPair {
  std::string word1;
  std::string word2;
  double gold = 0.0;
  double predicted = 0.0;
  bool oov = false;
};

struct CorrelationReport {
  std::string dataset;
  double pearson = 0.0;
  double spearman = 0.0;
  std::size_t n = 0;
  std::size_t oov_pairs = 0;
  std::vector<ScoredPair> per_pair;
  std::optional<PipelineParams> params;  // set when produced by the MSA pipeline
};

// Scores every pair (OOV pairs keep their score, normally 0, and are
// counted) and correlates against gold. Degenerate correlations are
// rethrown with the dataset name.
CorrelationReport evaluate(const WordPairDataset& dataset, const PairScorer& scorer);

// MSA relatedness scorer; concept vectors are cached per distinct word.
PairScorer make_msa_scorer(const PostingsIndex& index, const RuleStore& rules, const PipelineParams& params);

std::string report_json(const CorrelationReport& report, bool include_pairs = true);
CorrelationReport report_from_json(std::string_view json_text);
std::string report_table(std::span<const CorrelationReport> reports);

struct ParamGrid {
  std::vector<std::size_t> min_article_chars;          // L
  std::vector<std::size_t> max_concepts;               // M
  std::vector<std::size_t> max_title_words;            // tau_s
  std::vector<std::size_t> max_latent_title_words;     // tau_p
  std::vector<std::uint32_t> min_support;              // epsilon
  std::vector<double> min_confidence;                  // upsilon
  std::vector<double> lambda;

  // The single-point grid holding `base`.
  static ParamGrid single(const PipelineParams& base);
  // Keys "L", "M", "tau_s", "tau_p", "min_support", "min_confidence",
  // "lambda"; a missing key keeps the value from `base`.
  static ParamGrid from_json(std::string_view json_text, const PipelineParams& base);
  static ParamGrid load(const std::filesystem::path& path, const PipelineParams& base);

  void validate() const;  // every list non-empty
  std::size_t size() const;
  // Combination i of the Cartesian product, lambda varying fastest and L
  // slowest.
  PipelineParams at(std::size_t i) const;
};

enum class Objective { pearson, spearman };

Objective parse_objective(std::string_view name);

struct GridRow {
  PipelineParams params;
  std::optional<double> pearson;
  std::optional<double> spearman;
  std::size_t oov_pairs = 0;
  std::string error;  // non-empty when the combination failed

  std::optional<double> objective(Objective which) const { return which == Objective::pearson ? pearson : spearman; }
};

struct GridResult {
  Objective objective = Objective::pearson;
  std::size_t best_index = 0;
  PipelineParams best;
  double best_score = 0.0;
  std::vector<GridRow> trace;  // one row per combination, in iteration order
};

using ScorerFactory = std::function<PairScorer(const PipelineParams&)>;

// Exhaustive search; ties go to the earliest combination. Failing
// combinations are recorded in the trace. Throws Error if none succeeds.
// With threads > 1 the combinations are split across worker threads; the
// factory must then be safe to call concurrently.
GridResult grid_search(const WordPairDataset& dataset, const ParamGrid& grid, Objective objective,
                       const ScorerFactory& factory, unsigned threads = 1);

GridResult grid_search(const WordPairDataset& dataset, const ParamGrid& grid, Objective objective,
                       const PostingsIndex& index, const RuleStore& rules, unsigned threads = 1);

std::string trace_csv(const GridResult& result);

// Stable JSON rendering of a parameter set (also used inside reports).
std::string params_json(const PipelineParams& params);

}  // namespace msa
