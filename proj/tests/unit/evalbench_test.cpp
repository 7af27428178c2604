#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "msa/error.hpp"
#include "msa/evalbench.hpp"
#include "oracles/oracles.hpp"
#include "toy_pipeline.hpp"

using msa::PairScore;
using msa::ParamGrid;
using msa::PipelineParams;
using msa::WordPairDataset;
using testing_support::TempDir;
using testing_support::write_file;

namespace {

WordPairDataset synthetic(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  WordPairDataset ds;
  ds.name = "synthetic";
  for (std::size_t i = 0; i < n; ++i) ds.pairs.push_back({"w" + std::to_string(i), "v" + std::to_string(i), u(rng)});
  ds.scale = {0.0, 10.0};
  return ds;
}

msa::PairScorer lookup_scorer(const WordPairDataset& ds, double scale, double shift) {
  std::map<std::string, double> gold;
  for (const auto& p : ds.pairs) gold[p.word1] = p.gold;
  return [gold, scale, shift](std::string_view a, std::string_view) {
    return PairScore{scale * gold.at(std::string(a)) + shift, false};
  };
}

std::string rows(std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += "a" + std::to_string(i) + "\tb" + std::to_string(i) + "\t" + std::to_string(i % 5) + "\n";
  return out;
}

}  // namespace

TEST_CASE("dataset files of the published sizes") {
  TempDir dir;
  for (std::size_t n : {30u, 65u, 1000u}) {
    write_file(dir / "d.tsv", rows(n));
    CHECK(msa::load_dataset(dir / "d.tsv", msa::DatasetFormat::tsv).pairs.size() == n);
  }
  write_file(dir / "rg.tsv", rows(65));
  const auto rg = msa::load_dataset(dir / "rg.tsv", msa::DatasetFormat::tsv, "RG", msa::Scale{0, 4});
  CHECK(rg.name == "RG");
  CHECK(rg.scale.min == 0.0);
  CHECK(rg.scale.max == 4.0);
}

TEST_CASE("dataset parsing accepts headers, comments, whitespace and csv") {
  TempDir dir;
  write_file(dir / "a.tsv", "Word 1\tWord 2\tHuman (mean)\n# comment\n\ntiger\tcat\t7.35\r\nbook paper 7.46\n");
  const auto a = msa::load_dataset(dir / "a.tsv", msa::DatasetFormat::tsv);
  REQUIRE(a.pairs.size() == 2);
  CHECK(a.name == "a");
  CHECK(a.pairs[1].word2 == "paper");
  CHECK(a.scale.min == 7.35);

  write_file(dir / "b.csv", "w1,w2,score\n\"new york\",city,8.5\nsun,\"moon, the\",6\n");
  const auto b = msa::load_dataset(dir / "b.csv", msa::dataset_format_for(dir / "b.csv"));
  REQUIRE(b.pairs.size() == 2);
  CHECK(b.pairs[0].word1 == "new york");
  CHECK(b.pairs[1].word2 == "moon, the");
}

TEST_CASE("malformed datasets name the row") {
  TempDir dir;
  const auto fails_with = [&](const std::string& text, const std::string& needle, std::optional<msa::Scale> s = {}) {
    write_file(dir / "x.tsv", text);
    try {
      msa::load_dataset(dir / "x.tsv", msa::DatasetFormat::tsv, {}, s);
      FAIL("expected ParseError for: " << text);
    } catch (const msa::ParseError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  fails_with("a\tb\t1\nc\td\n", "row 2");
  fails_with("a\tb\t1\nc\td\tx\n", "row 2");
  fails_with("a\tb\t1\na\tb\t2\n", "duplicate");
  fails_with("a\tb\t1\nc\td\t5\n", "row 2", msa::Scale{0, 4});
  fails_with("# only a comment\n", "no pairs");
  CHECK_THROWS_AS(msa::load_dataset(dir / "missing.tsv", msa::DatasetFormat::tsv), msa::ParseError);
  CHECK_THROWS_AS(msa::parse_dataset_format("xls"), msa::ParseError);
}

TEST_CASE("dataset manifest resolves relative paths") {
  const auto entries = msa::load_dataset_manifest(testing_support::toy_dir() / "datasets.json");
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].name == "toy-pairs");
  REQUIRE(entries[0].scale);
  const auto ds = msa::load_dataset(entries[0]);
  CHECK(ds.pairs.size() == 24);
  CHECK(ds.scale.max == 10.0);
}

TEST_CASE("evaluate: gold, negated gold and shifted scorers") {
  const auto ds = synthetic(40, 1);
  const auto gold = msa::evaluate(ds, lookup_scorer(ds, 1.0, 0.0));
  CHECK(gold.pearson == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gold.spearman == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gold.n == 40);
  CHECK(gold.oov_pairs == 0);

  const auto neg = msa::evaluate(ds, lookup_scorer(ds, -1.0, 0.0));
  CHECK(neg.pearson == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(neg.spearman == doctest::Approx(-1.0).epsilon(1e-14));

  const auto noisy = msa::evaluate(ds, [](std::string_view a, std::string_view) {
    return PairScore{static_cast<double>(a.size() % 3) + a.back() * 0.01, false};
  });
  const auto shifted = msa::evaluate(ds, [](std::string_view a, std::string_view) {
    return PairScore{static_cast<double>(a.size() % 3) + a.back() * 0.01 + 42.0, false};
  });
  CHECK(shifted.pearson == doctest::Approx(noisy.pearson).epsilon(1e-12));
  CHECK(shifted.spearman == noisy.spearman);
}

TEST_CASE("evaluate keeps OOV pairs and reports degenerate scorers") {
  const auto ds = synthetic(10, 2);
  const auto r = msa::evaluate(ds, [](std::string_view a, std::string_view) {
    return a == "w3" ? PairScore{0.0, true} : PairScore{static_cast<double>(a.back()), false};
  });
  CHECK(r.n == 10);
  CHECK(r.oov_pairs == 1);
  CHECK(r.per_pair[3].oov);
  CHECK(r.per_pair[3].predicted == 0.0);
  try {
    msa::evaluate(ds, [](std::string_view, std::string_view) { return PairScore{0.0, true}; });
    FAIL("expected DegenerateCorrelation");
  } catch (const msa::DegenerateCorrelation& e) {
    CHECK(std::string(e.what()).find("synthetic") != std::string::npos);
  }
}

TEST_CASE("report JSON round-trip and table") {
  const auto ds = synthetic(12, 3);
  auto r = msa::evaluate(ds, lookup_scorer(ds, 2.0, 1.0));
  r.params = PipelineParams{};
  const auto back = msa::report_from_json(msa::report_json(r));
  CHECK(back.dataset == r.dataset);
  CHECK(back.n == 12);
  REQUIRE(back.per_pair.size() == 12);
  CHECK(back.per_pair[5].predicted == r.per_pair[5].predicted);
  CHECK(msa::report_json(r).find("\"lambda\": 0.25") != std::string::npos);
  const std::vector<msa::CorrelationReport> reports = {r};
  CHECK(msa::report_table(reports).find("synthetic") != std::string::npos);
  CHECK_THROWS_AS(msa::report_from_json("[1, 2]"), msa::ParseError);
}

TEST_CASE("parameter grid enumeration") {
  const auto g = ParamGrid::from_json(R"({"L": [100, 200], "M": [10], "lambda": [0.1, 0.5, 1.0]})", PipelineParams{});
  CHECK(g.size() == 6);
  CHECK(g.at(0).relatedness.lambda == 0.1);
  CHECK(g.at(1).relatedness.lambda == 0.5);
  CHECK(g.at(3).concept_space.search.min_article_chars == 200);
  CHECK(g.at(5).concept_space.search.max_concepts == 10);
  CHECK(g.at(5).concept_space.max_latent_title_words == 3);
  CHECK(ParamGrid::single(PipelineParams{}).size() == 1);
  CHECK_THROWS_AS(ParamGrid::from_json(R"({"L": []})", PipelineParams{}), msa::ParseError);
  CHECK_THROWS_AS(ParamGrid::from_json(R"({"bogus": [1]})", PipelineParams{}), msa::ParseError);
  CHECK_THROWS_AS(ParamGrid::from_json(R"({"L": ["x"]})", PipelineParams{}), msa::ParseError);
  CHECK(ParamGrid::load(testing_support::data_dir() / "grids" / "default.json", PipelineParams{}).size() ==
        4 * 5 * 3 * 3 * 3 * 1 * 4);
}

TEST_CASE("grid search picks the best point and records every row") {
  const auto ds = synthetic(30, 4);
  PipelineParams base;
  SUBCASE("single point") {
    const auto result = msa::grid_search(ds, ParamGrid::single(base), msa::Objective::pearson,
                                         [&](const PipelineParams&) { return lookup_scorer(ds, 1.0, 0.0); });
    CHECK(result.best_index == 0);
    CHECK(result.best_score == doctest::Approx(1.0));
    CHECK(result.trace.size() == 1);
  }
  SUBCASE("two points, one strictly better") {
    const auto grid = ParamGrid::from_json(R"({"lambda": [0.5, 1.0]})", base);
    const auto factory = [&](const PipelineParams& p) {
      if (p.relatedness.lambda == 1.0) return lookup_scorer(ds, 1.0, 0.0);
      return msa::PairScorer([](std::string_view a, std::string_view) { return PairScore{double(a.back() % 7), false}; });
    };
    const auto result = msa::grid_search(ds, grid, msa::Objective::spearman, factory);
    CHECK(result.best_index == 1);
    CHECK(result.best.relatedness.lambda == 1.0);
    for (const auto& row : result.trace) CHECK(result.best_score >= *row.spearman);
  }
  SUBCASE("failing combinations are traced, all failing throws") {
    const auto grid = ParamGrid::from_json(R"({"M": [1, 2, 3]})", base);
    const auto factory = [&](const PipelineParams& p) {
      if (p.concept_space.search.max_concepts == 2) {
        return msa::PairScorer([](std::string_view, std::string_view) { return PairScore{1.0, false}; });
      }
      return lookup_scorer(ds, 1.0, 0.0);
    };
    const auto result = msa::grid_search(ds, grid, msa::Objective::pearson, factory);
    CHECK(result.best_index == 0);  // ties go to the earliest
    CHECK(!result.trace[1].error.empty());
    CHECK(!result.trace[1].pearson);
    CHECK(msa::trace_csv(result).find("zero variance") != std::string::npos);

    const auto broken = [](const PipelineParams&) {
      return msa::PairScorer([](std::string_view, std::string_view) { return PairScore{1.0, false}; });
    };
    CHECK_THROWS_AS(msa::grid_search(ds, grid, msa::Objective::pearson, broken), msa::Error);
  }
}

TEST_CASE("toy benchmark: report equals the composed pipeline and threads do not matter") {
  const auto& toy = testing_support::toy();
  const auto ds = msa::load_dataset(msa::load_dataset_manifest(testing_support::toy_dir() / "datasets.json")[0]);
  PipelineParams p;
  p.concept_space.search = msa::SearchParams{100, 50, 2};

  const auto report = msa::evaluate(ds, msa::make_msa_scorer(toy.index, toy.rules, p));
  std::vector<double> predicted;
  std::size_t oov = 0;
  for (const auto& pair : ds.pairs) {
    const auto r = msa::relate(pair.word1, pair.word2, toy.index, toy.rules, p);
    predicted.push_back(r.score);
    oov += r.covered() ? 0 : 1;
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) CHECK(report.per_pair[i].predicted == predicted[i]);
  CHECK(report.oov_pairs == oov);
  CHECK(oov == 1);
  CHECK(std::fabs(report.pearson - oracle::textbook_pearson(predicted, ds.gold())) <= 1e-12);
  CHECK(std::fabs(report.spearman - oracle::rank_then_pearson(predicted, ds.gold())) <= 1e-12);
  CHECK(report.pearson > 0.5);

  const auto grid = ParamGrid::load(testing_support::toy_dir() / "grid.json", p);
  const auto serial = msa::grid_search(ds, grid, msa::Objective::pearson, toy.index, toy.rules, 1);
  const auto parallel = msa::grid_search(ds, grid, msa::Objective::pearson, toy.index, toy.rules, 4);
  CHECK(serial.best_index == parallel.best_index);
  CHECK(msa::trace_csv(serial) == msa::trace_csv(parallel));
  for (const auto& row : serial.trace) {
    if (row.pearson) CHECK(serial.best_score >= *row.pearson);
  }
}
