#include "msa/evalbench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <utility>

#include <json.hpp>

#include "msa/error.hpp"
#include "msa/tokenizer.hpp"

namespace msa {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> split_on(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

// Comma-separated with double-quoted fields ("" escapes a quote).
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back(trim(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.emplace_back(trim(field));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

ojson params_to_json(const PipelineParams& p) {
  const auto& cs = p.concept_space;
  return ojson{{"L", cs.search.min_article_chars},
               {"M", cs.search.max_concepts},
               {"tau_s", cs.search.max_title_words},
               {"tau_p", cs.max_latent_title_words},
               {"min_support", cs.min_support},
               {"min_confidence", cs.min_confidence},
               {"lambda", p.relatedness.lambda}};
}

template <typename T>
std::vector<T> grid_values(const nlohmann::json& doc, const char* key, T fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return {fallback};
  if (it->is_array()) return it->get<std::vector<T>>();
  return {it->get<T>()};
}

}  // namespace

DatasetFormat parse_dataset_format(std::string_view name) {
  if (name == "tsv") return DatasetFormat::tsv;
  if (name == "csv") return DatasetFormat::csv;
  throw ParseError("unknown dataset format '" + std::string(name) + "' (expected tsv or csv)");
}

DatasetFormat dataset_format_for(const fs::path& path) {
  return path.extension() == ".csv" ? DatasetFormat::csv : DatasetFormat::tsv;
}

std::vector<double> WordPairDataset::gold() const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.gold);
  return out;
}

WordPairDataset load_dataset(const fs::path& path, DatasetFormat format, std::string name, std::optional<Scale> scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open dataset " + path.string());

  WordPairDataset ds;
  ds.name = name.empty() ? path.stem().string() : std::move(name);
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t row = 0;
  bool first_data_row = true;
  const auto fail = [&](const std::string& why) {
    throw ParseError(path.string() + ": row " + std::to_string(row) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;

    std::vector<std::string> fields;
    if (format == DatasetFormat::csv) {
      fields = split_csv(t);
    } else if (t.find('\t') != std::string_view::npos) {
      fields = split_on(t, '\t');
    } else {
      fields = split_whitespace(t);
    }
    if (fields.size() < 3) fail("expected word1, word2 and a score, found " + std::to_string(fields.size()) + " field(s)");

    const auto score = parse_number(fields[2]);
    if (!score) {
      if (first_data_row) {  // header
        first_data_row = false;
        continue;
      }
      fail("score '" + fields[2] + "' is not a number");
    }
    first_data_row = false;
    if (fields[0].empty() || fields[1].empty()) fail("empty word");
    if (!seen.emplace(fields[0], fields[1]).second) fail("duplicate pair (" + fields[0] + ", " + fields[1] + ")");
    if (scale && (*score < scale->min || *score > scale->max)) {
      fail("score " + fields[2] + " outside declared scale [" + format_double(scale->min) + ", " +
           format_double(scale->max) + "]");
    }
    ds.pairs.push_back(WordPair{fields[0], fields[1], *score});
  }
  if (in.bad()) throw ParseError("error reading dataset " + path.string());
  if (ds.pairs.empty()) throw ParseError(path.string() + ": dataset has no pairs");

  if (scale) {
    ds.scale = *scale;
  } else {
    const auto [lo, hi] = std::minmax_element(ds.pairs.begin(), ds.pairs.end(),
                                              [](const WordPair& a, const WordPair& b) { return a.gold < b.gold; });
    ds.scale = Scale{lo->gold, hi->gold};
  }
  return ds;
}

std::vector<DatasetEntry> load_dataset_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset manifest " + path.string());
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.contains("datasets") || !doc["datasets"].is_array()) {
    throw ParseError(path.string() + ": expected {\"datasets\": [...]}");
  }
  std::vector<DatasetEntry> out;
  std::size_t i = 0;
  for (const auto& item : doc["datasets"]) {
    ++i;
    try {
      DatasetEntry e;
      e.name = item.at("name").get<std::string>();
      e.path = item.at("path").get<std::string>();
      if (e.path.is_relative()) e.path = path.parent_path() / e.path;
      e.format = item.contains("format") ? parse_dataset_format(item["format"].get<std::string>())
                                         : dataset_format_for(e.path);
      if (item.contains("scale")) {
        const auto s = item["scale"].get<std::vector<double>>();
        if (s.size() != 2 || s[0] > s[1]) throw ParseError("scale must be [min, max]");
        e.scale = Scale{s[0], s[1]};
      }
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(path.string() + ": dataset entry " + std::to_string(i) + ": " + ex.what());
    }
  }
  return out;
}

WordPairDataset load_dataset(const DatasetEntry& entry) {
  return load_dataset(entry.path, entry.format, entry.name, entry.scale);
}

CorrelationReport evaluate(const WordPairDataset& dataset, const PairScorer& scorer) {
  CorrelationReport report;
  report.dataset = dataset.name;
  report.per_pair.reserve(dataset.pairs.size());
  std::vector<double> gold;
  std::vector<double> predicted;
  for (const auto& p : dataset.pairs) {
    const PairScore s = scorer(p.word1, p.word2);
    report.per_pair.push_back(ScoredPair{p.word1, p.word2, p.gold, s.score, s.oov});
    gold.push_back(p.gold);
    predicted.push_back(s.score);
    if (s.oov) ++report.oov_pairs;
  }
  report.n = report.per_pair.size();
  try {
    report.pearson = pearson(predicted, gold);
    report.spearman = spearman(predicted, gold);
  } catch (const DegenerateCorrelation& e) {
    throw DegenerateCorrelation("dataset " + dataset.name + ": " + e.what() + " (predicted scores first, gold second; " +
                                std::to_string(report.oov_pairs) + " of " + std::to_string(report.n) +
                                " pairs out of vocabulary)");
  }
  return report;
}

PairScorer make_msa_scorer(const PostingsIndex& index, const RuleStore& rules, const PipelineParams& params) {
  params.validate();
  auto cache = std::make_shared<std::unordered_map<std::string, ConceptVector>>();
  return [&index, &rules, params, cache](std::string_view w1, std::string_view w2) {
    const auto vec = [&](std::string_view w) -> const ConceptVector& {
      auto it = cache->find(std::string(w));
      if (it == cache->end()) {
        it = cache->emplace(std::string(w), build_concept_vector(w, index, rules, params.concept_space)).first;
      }
      return it->second;
    };
    const ConceptVector& a = vec(w1);
    const ConceptVector& b = vec(w2);
    const RelatednessResult r = relate_vectors(a, b, params.relatedness);
    return PairScore{r.score, !r.covered()};
  };
}

std::string params_json(const PipelineParams& params) { return params_to_json(params).dump(); }

std::string report_json(const CorrelationReport& report, bool include_pairs) {
  ojson doc = {{"name", report.dataset},
               {"n", report.n},
               {"oov_pairs", report.oov_pairs},
               {"pearson", report.pearson},
               {"spearman", report.spearman}};
  if (report.params) doc["params"] = params_to_json(*report.params);
  if (include_pairs) {
    ojson pairs = ojson::array();
    for (const auto& p : report.per_pair) {
      pairs.push_back(
          {{"word1", p.word1}, {"word2", p.word2}, {"gold", p.gold}, {"predicted", p.predicted}, {"oov", p.oov}});
    }
    doc["per_pair"] = std::move(pairs);
  }
  return doc.dump(2);
}

CorrelationReport report_from_json(std::string_view json_text) {
  const auto doc = nlohmann::json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ParseError("report is not a JSON object");
  try {
    CorrelationReport r;
    r.dataset = doc.value("name", std::string());
    r.pearson = doc.value("pearson", 0.0);
    r.spearman = doc.value("spearman", 0.0);
    r.oov_pairs = doc.value("oov_pairs", std::size_t{0});
    for (const auto& p : doc.at("per_pair")) {
      r.per_pair.push_back(ScoredPair{p.at("word1").get<std::string>(), p.at("word2").get<std::string>(),
                                      p.at("gold").get<double>(), p.at("predicted").get<double>(),
                                      p.value("oov", false)});
    }
    r.n = r.per_pair.size();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
}

std::string report_table(std::span<const CorrelationReport> reports) {
  std::size_t name_width = 7;
  for (const auto& r : reports) name_width = std::max(name_width, r.dataset.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width)) << "dataset" << std::right << std::setw(7) << "n"
      << std::setw(7) << "oov" << std::setw(10) << "pearson" << std::setw(10) << "spearman" << '\n';
  out << std::fixed << std::setprecision(4);
  for (const auto& r : reports) {
    out << std::left << std::setw(static_cast<int>(name_width)) << r.dataset << std::right << std::setw(7) << r.n
        << std::setw(7) << r.oov_pairs << std::setw(10) << r.pearson << std::setw(10) << r.spearman << '\n';
  }
  return out.str();
}

ParamGrid ParamGrid::single(const PipelineParams& base) {
  const auto& cs = base.concept_space;
  return ParamGrid{{cs.search.min_article_chars},
                   {cs.search.max_concepts},
                   {cs.search.max_title_words},
                   {cs.max_latent_title_words},
                   {cs.min_support},
                   {cs.min_confidence},
                   {base.relatedness.lambda}};
}

ParamGrid ParamGrid::from_json(std::string_view json_text, const PipelineParams& base) {
  const auto doc = nlohmann::json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ParseError("parameter grid is not a JSON object");
  static const std::set<std::string> known = {"L", "M", "tau_s", "tau_p", "min_support", "min_confidence", "lambda"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ParseError("unknown parameter grid key '" + key + "'");
  }
  try {
    const auto& cs = base.concept_space;
    ParamGrid g;
    g.min_article_chars = grid_values<std::size_t>(doc, "L", cs.search.min_article_chars);
    g.max_concepts = grid_values<std::size_t>(doc, "M", cs.search.max_concepts);
    g.max_title_words = grid_values<std::size_t>(doc, "tau_s", cs.search.max_title_words);
    g.max_latent_title_words = grid_values<std::size_t>(doc, "tau_p", cs.max_latent_title_words);
    g.min_support = grid_values<std::uint32_t>(doc, "min_support", cs.min_support);
    g.min_confidence = grid_values<double>(doc, "min_confidence", cs.min_confidence);
    g.lambda = grid_values<double>(doc, "lambda", base.relatedness.lambda);
    g.validate();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed parameter grid: ") + e.what());
  }
}

ParamGrid ParamGrid::load(const fs::path& path, const PipelineParams& base) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open parameter grid " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return from_json(buf.str(), base);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void ParamGrid::validate() const {
  if (min_article_chars.empty() || max_concepts.empty() || max_title_words.empty() || max_latent_title_words.empty() ||
      min_support.empty() || min_confidence.empty() || lambda.empty()) {
    throw ParseError("every parameter grid list must be non-empty");
  }
}

std::size_t ParamGrid::size() const {
  return min_article_chars.size() * max_concepts.size() * max_title_words.size() * max_latent_title_words.size() *
         min_support.size() * min_confidence.size() * lambda.size();
}

PipelineParams ParamGrid::at(std::size_t i) const {
  PipelineParams p;
  auto pick = [&i](const auto& values) {
    const auto v = values[i % values.size()];
    i /= values.size();
    return v;
  };
  p.relatedness.lambda = pick(lambda);
  p.concept_space.min_confidence = pick(min_confidence);
  p.concept_space.min_support = pick(min_support);
  p.concept_space.max_latent_title_words = pick(max_latent_title_words);
  p.concept_space.search.max_title_words = pick(max_title_words);
  p.concept_space.search.max_concepts = pick(max_concepts);
  p.concept_space.search.min_article_chars = pick(min_article_chars);
  return p;
}

Objective parse_objective(std::string_view name) {
  if (name == "pearson") return Objective::pearson;
  if (name == "spearman") return Objective::spearman;
  throw ParseError("unknown objective '" + std::string(name) + "' (expected pearson or spearman)");
}

GridResult grid_search(const WordPairDataset& dataset, const ParamGrid& grid, Objective objective,
                       const ScorerFactory& factory, unsigned threads) {
  grid.validate();
  const std::size_t total = grid.size();
  GridResult result;
  result.objective = objective;
  result.trace.resize(total);

  const auto run_one = [&](std::size_t i) {
    GridRow& row = result.trace[i];
    row.params = grid.at(i);
    try {
      const auto report = evaluate(dataset, factory(row.params));
      row.pearson = report.pearson;
      row.spearman = report.spearman;
      row.oov_pairs = report.oov_pairs;
    } catch (const Error& e) {
      row.error = e.what();
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::size_t>(total, 256))));
  if (threads == 1) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) run_one(i);
      });
    }
  }

  bool found = false;
  for (std::size_t i = 0; i < total; ++i) {
    const auto score = result.trace[i].objective(objective);
    if (score && (!found || *score > result.best_score)) {
      found = true;
      result.best_index = i;
      result.best_score = *score;
    }
  }
  if (!found) {
    throw Error("grid search on " + dataset.name + ": all " + std::to_string(total) +
                " combinations failed; first error: " + result.trace.front().error);
  }
  result.best = result.trace[result.best_index].params;
  return result;
}

GridResult grid_search(const WordPairDataset& dataset, const ParamGrid& grid, Objective objective,
                       const PostingsIndex& index, const RuleStore& rules, unsigned threads) {
  return grid_search(
      dataset, grid, objective,
      [&](const PipelineParams& p) { return make_msa_scorer(index, rules, p); }, threads);
}

std::string trace_csv(const GridResult& result) {
  std::ostringstream out;
  out << "index,L,M,tau_s,tau_p,min_support,min_confidence,lambda,pearson,spearman,oov_pairs,error\n";
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const auto& row = result.trace[i];
    const auto& cs = row.params.concept_space;
    std::string error = row.error;
    std::replace(error.begin(), error.end(), '"', '\'');
    out << i << ',' << cs.search.min_article_chars << ',' << cs.search.max_concepts << ','
        << cs.search.max_title_words << ',' << cs.max_latent_title_words << ',' << cs.min_support << ','
        << format_double(cs.min_confidence) << ',' << format_double(row.params.relatedness.lambda) << ','
        << (row.pearson ? format_double(*row.pearson) : "") << ',' << (row.spearman ? format_double(*row.spearman) : "")
        << ',' << row.oov_pairs << ',' << (error.empty() ? "" : "\"" + error + "\"") << '\n';
  }
  return out.str();
}

}  // namespace msa
