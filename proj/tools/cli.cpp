#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msa/msa.hpp"

namespace msa::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

// Flag values; unset optionals fall through to the config file, then to the
// built-in defaults.
struct Overrides {
  std::optional<fs::path> config;
  std::optional<fs::path> corpus;
  std::optional<std::string> corpus_format;
  std::optional<fs::path> index;
  std::optional<fs::path> rules;
  std::optional<fs::path> datasets;
  std::optional<std::size_t> min_article_chars;
  std::optional<std::size_t> max_concepts;
  std::optional<std::size_t> tau_s;
  std::optional<std::size_t> tau_p;
  std::optional<std::size_t> consequent_size;
  std::optional<std::uint32_t> min_support;
  std::optional<double> min_confidence;
  std::optional<double> lambda;
};

void add_artifact_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "JSON pipeline config");
  cmd->add_option("--index", o.index, "Index artifact directory");
  cmd->add_option("--rules", o.rules, "Rule store artifact directory");
}

void add_query_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--L", o.min_article_chars, "Minimum article length in characters");
  cmd->add_option("--M", o.max_concepts, "Maximum number of explicit concepts");
  cmd->add_option("--tau-s", o.tau_s, "Maximum title words of explicit concepts");
  cmd->add_option("--tau-p", o.tau_p, "Maximum title words of latent concepts");
  cmd->add_option("--min-support", o.min_support, "Minimum rule support (epsilon)");
  cmd->add_option("--min-confidence", o.min_confidence, "Minimum rule confidence (upsilon)");
  cmd->add_option("--lambda", o.lambda, "Relatedness normalization factor");
}

fs::path resolve_relative(const fs::path& base_dir, const std::string& value) {
  fs::path p(value);
  return p.is_relative() ? base_dir / p : p;
}

PipelineConfig resolve(const Overrides& o) {
  PipelineConfig cfg = o.config ? load_config(*o.config) : PipelineConfig{};
  if (o.corpus) cfg.corpus = *o.corpus;
  if (o.corpus_format) cfg.corpus_format = parse_corpus_format(*o.corpus_format);
  if (o.index) cfg.index = *o.index;
  if (o.rules) cfg.rules = *o.rules;
  if (o.datasets) cfg.datasets = *o.datasets;
  auto& cs = cfg.params.concept_space;
  if (o.min_article_chars) cs.search.min_article_chars = *o.min_article_chars;
  if (o.max_concepts) cs.search.max_concepts = *o.max_concepts;
  if (o.tau_s) cs.search.max_title_words = *o.tau_s;
  if (o.tau_p) cs.max_latent_title_words = *o.tau_p;
  if (o.consequent_size) cfg.mining.consequent_size = *o.consequent_size;
  if (o.min_support) {
    cfg.mining.min_support = *o.min_support;
    cs.min_support = *o.min_support;
  }
  if (o.min_confidence) {
    cfg.mining.min_confidence = *o.min_confidence;
    cs.min_confidence = *o.min_confidence;
  }
  if (o.lambda) cfg.params.relatedness.lambda = *o.lambda;
  cfg.mining.validate();
  cfg.params.validate();
  return cfg;
}

struct Artifacts {
  PostingsIndex index;
  RuleStore rules;
};

Artifacts load_artifacts(const PipelineConfig& cfg) {
  Artifacts a{PostingsIndex::load(cfg.index), RuleStore::load(cfg.rules)};
  if (a.rules.concept_count() > a.index.doc_count()) {
    throw ArtifactError("rule store " + cfg.rules.string() + " does not match index " + cfg.index.string() +
                        " (rebuild both with `msa build --force`)");
  }
  const auto& built = a.rules.params();
  const auto& cs = cfg.params.concept_space;
  if (cs.min_support < built.min_support || cs.min_confidence < built.min_confidence) {
    throw ContractViolation("query thresholds (min-support " + std::to_string(cs.min_support) + ", min-confidence " +
                            std::to_string(cs.min_confidence) + ") are looser than the rule store's build thresholds (" +
                            std::to_string(built.min_support) + ", " + std::to_string(built.min_confidence) +
                            "); rebuild the rules with lower thresholds");
  }
  return a;
}

std::string format_fixed(double v, int places) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(places);
  s << v;
  return s.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path.string());
  f << content;
  if (!f) throw Error("cannot write " + path.string());
}

// ---------------------------------------------------------------- build

int cmd_build(const PipelineConfig& cfg, bool force, std::ostream& out, std::ostream& err) {
  if (cfg.corpus.empty()) throw Error("no corpus given (use --corpus or the config's \"corpus\" key)");
  if (!fs::exists(cfg.corpus)) throw IngestError("corpus source does not exist: " + cfg.corpus.string());
  for (const auto& target : {cfg.index, cfg.rules}) {
    if (fs::exists(target) && !force) {
      throw ArtifactError("artifact already exists: " + target.string() + " (pass --force to overwrite)");
    }
  }

  const Corpus corpus =
      load_corpus(cfg.corpus, cfg.corpus_format, [&err](std::string_view msg) { err << "warning: " << msg << '\n'; });
  const PostingsIndex index = PostingsIndex::build(corpus.articles());
  const TransactionSet tx =
      build_transactions(corpus.articles(), [&corpus](std::string_view t) { return corpus.resolve(t); });
  const RuleStore rules = mine_rules(tx.transactions, cfg.mining);

  index.save(cfg.index, force);
  rules.save(cfg.rules, force);

  const auto& s = corpus.stats();
  out << "articles: " << s.article_count << '\n'
      << "pruned_redirects: " << s.pruned_redirects << '\n'
      << "pruned_namespace: " << s.pruned_namespace << '\n'
      << "malformed_records: " << s.malformed_records << '\n'
      << "see_also_bearing: " << s.see_also_bearing << '\n'
      << "vocabulary: " << index.vocabulary_size() << '\n'
      << "postings: " << index.posting_count() << '\n'
      << "transactions: " << tx.transactions.size() << '\n'
      << "unresolved_see_also: " << tx.skipped_titles << '\n'
      << "rules: " << rules.rule_count() << '\n';
  return 0;
}

// ---------------------------------------------------------------- relate / dump-vector

int cmd_relate(const PipelineConfig& cfg, const std::string& t1, const std::string& t2, bool explain,
               std::ostream& out, std::ostream& err) {
  const Artifacts a = load_artifacts(cfg);
  const auto v1 = build_concept_vector(t1, a.index, a.rules, cfg.params.concept_space);
  const auto v2 = build_concept_vector(t2, a.index, a.rules, cfg.params.concept_space);
  const RelatednessResult r = relate_vectors(v1, v2, cfg.params.relatedness);
  if (r.first_empty) err << "warning: '" << t1 << "' has no concept representation; score is 0\n";
  if (r.second_empty) err << "warning: '" << t2 << "' has no concept representation; score is 0\n";
  out << format_fixed(r.score, 4) << '\n';
  if (explain) {
    out << concept_vector_json(t1, v1, a.index) << '\n';
    out << concept_vector_json(t2, v2, a.index) << '\n';
  }
  return 0;
}

int cmd_dump_vector(const PipelineConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  const Artifacts a = load_artifacts(cfg);
  const auto v = build_concept_vector(text, a.index, a.rules, cfg.params.concept_space);
  if (v.empty()) err << "warning: '" << text << "' has no concept representation\n";
  out << concept_vector_json(text, v, a.index) << '\n';
  return 0;
}

// ---------------------------------------------------------------- eval / grid

struct EvalOptions {
  std::vector<std::string> datasets;
  std::optional<std::string> format;
  std::optional<std::string> scale;
  std::optional<fs::path> grid;
  std::string objective = "pearson";
  bool gold_as_scorer = false;
  bool json = false;
  std::optional<fs::path> report;
  std::optional<fs::path> trace;
  unsigned threads = 1;
};

std::optional<Scale> parse_scale(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  const auto comma = text->find(',');
  if (comma == std::string::npos) throw ParseError("--scale expects MIN,MAX");
  try {
    Scale s{std::stod(text->substr(0, comma)), std::stod(text->substr(comma + 1))};
    if (s.min > s.max) throw ParseError("--scale MIN must not exceed MAX");
    return s;
  } catch (const std::logic_error&) {
    throw ParseError("--scale expects MIN,MAX");
  }
}

WordPairDataset resolve_dataset(const PipelineConfig& cfg, const EvalOptions& opt, const std::string& spec) {
  if (!cfg.datasets.empty()) {
    for (const auto& entry : load_dataset_manifest(cfg.datasets)) {
      if (entry.name == spec) return load_dataset(entry);
    }
  }
  const fs::path path(spec);
  if (!fs::exists(path)) {
    throw ParseError("dataset '" + spec + "' is neither a manifest entry nor an existing file");
  }
  const DatasetFormat format = opt.format ? parse_dataset_format(*opt.format) : dataset_format_for(path);
  return load_dataset(path, format, {}, parse_scale(opt.scale));
}

PairScorer gold_scorer(const WordPairDataset& ds) {
  std::map<std::pair<std::string, std::string>, double> gold;
  for (const auto& p : ds.pairs) gold.emplace(std::pair{p.word1, p.word2}, p.gold);
  return [gold = std::move(gold)](std::string_view a, std::string_view b) {
    const auto it = gold.find(std::pair{std::string(a), std::string(b)});
    return it == gold.end() ? PairScore{0.0, true} : PairScore{it->second, false};
  };
}

int cmd_eval(const PipelineConfig& cfg, const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<WordPairDataset> datasets;
  if (opt.datasets.empty()) {
    if (cfg.datasets.empty()) throw ParseError("no dataset given (use --dataset or a --datasets manifest)");
    for (const auto& entry : load_dataset_manifest(cfg.datasets)) datasets.push_back(load_dataset(entry));
    if (datasets.empty()) throw ParseError(cfg.datasets.string() + ": manifest lists no datasets");
  }
  for (const auto& spec : opt.datasets) datasets.push_back(resolve_dataset(cfg, opt, spec));

  std::optional<Artifacts> artifacts;
  if (!opt.gold_as_scorer) artifacts.emplace(load_artifacts(cfg));

  PipelineParams params = cfg.params;
  std::optional<GridResult> grid;
  if (opt.grid) {
    const ParamGrid pg = ParamGrid::load(*opt.grid, cfg.params);
    const Objective objective = parse_objective(opt.objective);
    if (opt.gold_as_scorer) {
      grid = grid_search(datasets.front(), pg, objective, [&](const PipelineParams&) {
        return gold_scorer(datasets.front());
      }, opt.threads);
    } else {
      grid = grid_search(datasets.front(), pg, objective, artifacts->index, artifacts->rules, opt.threads);
    }
    params = grid->best;
    std::size_t failed = 0;
    for (const auto& row : grid->trace) failed += row.error.empty() ? 0 : 1;
    if (failed > 0) err << "warning: " << failed << " of " << grid->trace.size() << " grid combinations failed\n";
    if (opt.trace) write_text_file(*opt.trace, trace_csv(*grid));
  }

  std::vector<CorrelationReport> reports;
  for (const auto& ds : datasets) {
    const PairScorer scorer =
        opt.gold_as_scorer ? gold_scorer(ds) : make_msa_scorer(artifacts->index, artifacts->rules, params);
    CorrelationReport report = evaluate(ds, scorer);
    if (!opt.gold_as_scorer) report.params = params;
    if (report.oov_pairs > 0) {
      err << "warning: " << ds.name << ": " << report.oov_pairs << " of " << report.n
          << " pairs had an empty concept vector (scored 0)\n";
    }
    reports.push_back(std::move(report));
  }

  ojson doc = ojson::object();
  if (grid) {
    doc["grid"] = {{"dev_dataset", datasets.front().name},
                   {"objective", grid->objective == Objective::pearson ? "pearson" : "spearman"},
                   {"combinations", grid->trace.size()},
                   {"best_index", grid->best_index},
                   {"best_score", grid->best_score},
                   {"best_params", ojson::parse(params_json(grid->best))}};
  }
  doc["reports"] = ojson::array();
  for (const auto& r : reports) doc["reports"].push_back(ojson::parse(report_json(r)));
  const std::string json_text = doc.dump(2) + "\n";
  if (opt.report) write_text_file(*opt.report, json_text);

  if (opt.json) {
    out << json_text;
  } else {
    if (grid) {
      out << "best " << (grid->objective == Objective::pearson ? "pearson" : "spearman") << " on "
          << datasets.front().name << ": " << format_fixed(grid->best_score, 4) << " with "
          << params_json(grid->best) << '\n';
    }
    out << report_table(reports);
  }
  return 0;
}

// ---------------------------------------------------------------- significance

struct SignificanceOptions {
  std::optional<fs::path> gold;
  std::optional<fs::path> a;
  std::optional<fs::path> b;
  std::optional<fs::path> report_a;
  std::optional<fs::path> report_b;
  std::string tails = "one";
  double alpha = 0.05;
  bool pearson = false;
  bool json = false;
};

std::vector<double> read_scores(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open score file " + path.string());
  std::vector<double> values;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(t), &used);
      if (used != t.size()) throw std::invalid_argument("trailing");
      values.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError(path.string() + ": row " + std::to_string(row) + ": '" + std::string(t) + "' is not a number");
    }
  }
  return values;
}

CorrelationReport read_report(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open report " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto doc = nlohmann::json::parse(buf.str(), nullptr, false);
  if (!doc.is_discarded() && doc.is_object() && doc.contains("reports")) {
    if (doc["reports"].empty()) throw ParseError(path.string() + ": no reports");
    return report_from_json(doc["reports"][0].dump());
  }
  return report_from_json(buf.str());
}

int cmd_significance(const SignificanceOptions& opt, std::ostream& out) {
  std::vector<double> gold;
  std::vector<double> a;
  std::vector<double> b;
  if (opt.report_a || opt.report_b) {
    if (!opt.report_a || !opt.report_b) throw Error("--report-a and --report-b must be given together");
    const auto ra = read_report(*opt.report_a);
    const auto rb = read_report(*opt.report_b);
    if (ra.per_pair.size() != rb.per_pair.size()) throw ParseError("reports cover different numbers of pairs");
    for (std::size_t i = 0; i < ra.per_pair.size(); ++i) {
      const auto& pa = ra.per_pair[i];
      const auto& pb = rb.per_pair[i];
      if (pa.word1 != pb.word1 || pa.word2 != pb.word2 || pa.gold != pb.gold) {
        throw ParseError("reports are not aligned at pair " + std::to_string(i + 1) + " (" + pa.word1 + ", " +
                         pa.word2 + ")");
      }
      gold.push_back(pa.gold);
      a.push_back(pa.predicted);
      b.push_back(pb.predicted);
    }
  } else {
    if (!opt.gold || !opt.a || !opt.b) throw Error("give --gold, --a and --b, or --report-a and --report-b");
    gold = read_scores(*opt.gold);
    a = read_scores(*opt.a);
    b = read_scores(*opt.b);
  }

  const auto t = compare_methods(gold, a, b, parse_tails(opt.tails), opt.alpha, !opt.pearson);
  const std::string tails_name = t.tails == Tails::one ? "one-tailed" : "two-tailed";
  if (opt.json) {
    ojson doc = {{"correlation", t.rank_based ? "spearman" : "pearson"},
                 {"n", t.n},
                 {"r_a_gold", t.r12},
                 {"r_b_gold", t.r13},
                 {"r_a_b", t.r23},
                 {"z", t.z},
                 {"p", t.p},
                 {"tails", t.tails == Tails::one ? "one" : "two"},
                 {"alpha", t.alpha},
                 {"significant", t.significant()}};
    out << doc.dump(2) << '\n';
  } else {
    const char* sym = t.rank_based ? "rho" : "r";
    out << sym << "_a\t" << sym << "_b\t" << sym << "_ab\tz\tp\tverdict\n";
    out << format_fixed(t.r12, 4) << '\t' << format_fixed(t.r13, 4) << '\t' << format_fixed(t.r23, 4) << '\t'
        << format_fixed(t.z, 4) << '\t' << format_fixed(t.p, 4) << '\t'
        << (t.significant() ? "significant" : "not significant") << " (alpha=" << t.alpha << ", " << tails_name
        << ", n=" << t.n << ")\n";
  }
  return 0;
}

}  // namespace

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path.string());
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ParseError(path.string() + ": config is not a JSON object");

  static const std::set<std::string> known = {"corpus", "corpus_format", "index",        "rules",
                                              "datasets", "L",           "M",            "tau_s",
                                              "tau_p",  "consequent_size", "min_support", "min_confidence",
                                              "lambda"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ParseError(path.string() + ": unknown config key '" + key + "'");
  }

  const fs::path base = path.parent_path();
  PipelineConfig cfg;
  try {
    if (doc.contains("corpus")) cfg.corpus = resolve_relative(base, doc["corpus"].get<std::string>());
    if (doc.contains("corpus_format")) cfg.corpus_format = parse_corpus_format(doc["corpus_format"].get<std::string>());
    if (doc.contains("index")) cfg.index = resolve_relative(base, doc["index"].get<std::string>());
    if (doc.contains("rules")) cfg.rules = resolve_relative(base, doc["rules"].get<std::string>());
    if (doc.contains("datasets")) cfg.datasets = resolve_relative(base, doc["datasets"].get<std::string>());
    auto& cs = cfg.params.concept_space;
    cs.search.min_article_chars = doc.value("L", cs.search.min_article_chars);
    cs.search.max_concepts = doc.value("M", cs.search.max_concepts);
    cs.search.max_title_words = doc.value("tau_s", cs.search.max_title_words);
    cs.max_latent_title_words = doc.value("tau_p", cs.max_latent_title_words);
    cfg.mining.consequent_size = doc.value("consequent_size", cfg.mining.consequent_size);
    cfg.mining.min_support = doc.value("min_support", cfg.mining.min_support);
    cfg.mining.min_confidence = doc.value("min_confidence", cfg.mining.min_confidence);
    cs.min_support = cfg.mining.min_support;
    cs.min_confidence = cfg.mining.min_confidence;
    cfg.params.relatedness.lambda = doc.value("lambda", cfg.params.relatedness.lambda);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mined Semantic Analysis: concept-space relatedness from a search index and mined \"See also\" rules",
               "msa"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Overrides o;

  auto* build = app.add_subcommand("build", "Ingest a corpus, build the search index and mine the rule store");
  bool force = false;
  add_artifact_options(build, o);
  build->add_option("--corpus", o.corpus, "Corpus source (JSONL file or wikitext directory)");
  build->add_option("--format", o.corpus_format, "Corpus format: jsonl or wikitext_dir");
  build->add_option("--consequent-size", o.consequent_size, "Rule consequent size |Y|");
  build->add_option("--min-support", o.min_support, "Minimum rule support kept in the store (epsilon)");
  build->add_option("--min-confidence", o.min_confidence, "Minimum rule confidence kept in the store (upsilon)");
  build->add_flag("--force", force, "Overwrite existing artifacts");

  auto* relate_cmd = app.add_subcommand("relate", "Score the relatedness of two terms");
  std::string t1;
  std::string t2;
  bool explain = false;
  add_artifact_options(relate_cmd, o);
  add_query_options(relate_cmd, o);
  relate_cmd->add_option("t1", t1, "First term")->required();
  relate_cmd->add_option("t2", t2, "Second term")->required();
  relate_cmd->add_flag("--explain", explain, "Also dump both concept vectors as JSON");

  auto* dump = app.add_subcommand("dump-vector", "Print the concept vector of a text as JSON");
  std::string text;
  add_artifact_options(dump, o);
  add_query_options(dump, o);
  dump->add_option("text", text, "Input text")->required();

  EvalOptions eval_opt;
  const auto add_eval_options = [&](CLI::App* cmd, bool grid_required) {
    add_artifact_options(cmd, o);
    add_query_options(cmd, o);
    cmd->add_option("--datasets", o.datasets, "Dataset manifest (JSON)");
    cmd->add_option("-d,--dataset", eval_opt.datasets,
                    "Dataset name from the manifest or a file path (default: every manifest entry); with a grid "
                    "the first is the tuning set");
    cmd->add_option("--format", eval_opt.format, "Dataset file format: tsv or csv (default by extension)");
    cmd->add_option("--scale", eval_opt.scale, "Gold score scale MIN,MAX for dataset files");
    auto* g = cmd->add_option("--grid", eval_opt.grid, "Parameter grid (JSON)");
    if (grid_required) g->required();
    cmd->add_option("--objective", eval_opt.objective, "Grid objective: pearson or spearman");
    cmd->add_option("--trace", eval_opt.trace, "Write the grid trace as CSV");
    cmd->add_option("--threads", eval_opt.threads, "Worker threads for the grid search");
    cmd->add_option("--report", eval_opt.report, "Write the JSON report to a file");
    cmd->add_flag("--json", eval_opt.json, "Print the JSON report instead of a table");
    cmd->add_flag("--gold-as-scorer", eval_opt.gold_as_scorer, "Debug: score pairs with their gold value");
  };
  auto* eval_cmd = app.add_subcommand("eval", "Correlate MSA scores with a word-pair benchmark");
  add_eval_options(eval_cmd, false);
  auto* grid_cmd = app.add_subcommand("grid", "Grid-search parameters on a tuning set, then apply them");
  add_eval_options(grid_cmd, true);

  SignificanceOptions sig;
  auto* sig_cmd = app.add_subcommand("significance", "Steiger's Z test between two methods scored on one benchmark");
  sig_cmd->add_option("--gold", sig.gold, "Gold scores, one per line");
  sig_cmd->add_option("--a", sig.a, "Method A scores, one per line");
  sig_cmd->add_option("--b", sig.b, "Method B scores, one per line");
  sig_cmd->add_option("--report-a", sig.report_a, "Method A per-pair JSON report (from eval --report)");
  sig_cmd->add_option("--report-b", sig.report_b, "Method B per-pair JSON report (from eval --report)");
  sig_cmd->add_option("--tails", sig.tails, "one or two");
  sig_cmd->add_option("--alpha", sig.alpha, "Significance level");
  sig_cmd->add_flag("--pearson", sig.pearson, "Use Pearson instead of Spearman correlations");
  sig_cmd->add_flag("--json", sig.json, "Print JSON instead of a table row");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  PipelineConfig cfg;
  try {
    if (!*sig_cmd) cfg = resolve(o);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*sig_cmd) return cmd_significance(sig, out);
    if (*build) return cmd_build(cfg, force, out, err);
    if (*relate_cmd) return cmd_relate(cfg, t1, t2, explain, out, err);
    if (*dump) return cmd_dump_vector(cfg, text, out, err);
    if (*eval_cmd || *grid_cmd) return cmd_eval(cfg, eval_opt, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace msa::cli
