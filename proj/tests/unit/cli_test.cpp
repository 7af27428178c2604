#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "msa/error.hpp"
#include "msa/miner.hpp"
#include "oracles/oracles.hpp"
#include "toy_pipeline.hpp"

namespace fs = std::filesystem;
using testing_support::TempDir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run msa_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = msa::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Copies the toy data into a scratch directory so artifacts land there.
struct Workspace {
  TempDir dir;
  fs::path config;

  Workspace() {
    for (const char* f : {"corpus.jsonl", "pairs.tsv", "datasets.json", "config.json", "grid.json"}) {
      fs::copy_file(testing_support::toy_dir() / f, dir / f);
    }
    config = dir / "config.json";
  }

  Run build(std::vector<std::string> extra = {}) {
    std::vector<std::string> args = {"build", "-c", config.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return msa_cli(args);
  }
};

}  // namespace

TEST_CASE("build on the toy corpus") {
  Workspace ws;
  const auto r = ws.build();
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(fs::exists(ws.dir / "out" / "index" / "manifest.json"));
  CHECK(fs::exists(ws.dir / "out" / "rules" / "manifest.json"));

  // rule count equals the brute-force miner over the same transactions
  const auto& toy = testing_support::toy();
  std::vector<std::vector<std::uint32_t>> raw;
  for (const auto& t : toy.transactions.transactions) raw.emplace_back(t.members.begin(), t.members.end());
  const auto expected = oracle::brute_force_pair_rules(raw, 1, 0.0).size();
  CHECK(r.out.find("rules: " + std::to_string(expected) + "\n") != std::string::npos);
  CHECK(r.out.find("pruned_redirects: 2\n") != std::string::npos);
}

TEST_CASE("build refuses to overwrite without --force") {
  Workspace ws;
  REQUIRE(ws.build().code == 0);
  const auto again = ws.build();
  CHECK(again.code != 0);
  CHECK(again.err.find("--force") != std::string::npos);
  CHECK(ws.build({"--force"}).code == 0);
}

TEST_CASE("missing corpus names the path") {
  TempDir dir;
  const auto r = msa_cli({"build", "--corpus", (dir / "nope.jsonl").string(), "--index", (dir / "i").string(),
                          "--rules", (dir / "r").string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("nope.jsonl") != std::string::npos);
  CHECK(!fs::exists(dir / "i"));
}

TEST_CASE("relate and dump-vector") {
  Workspace ws;
  REQUIRE(ws.build().code == 0);
  const std::string cfg = ws.config.string();

  const auto same = msa_cli({"relate", "cat", "cat", "-c", cfg});
  CHECK(same.code == 0);
  CHECK(same.out == "1.0000\n");

  const auto oov = msa_cli({"relate", "zebra", "cat", "-c", cfg});
  CHECK(oov.code == 0);
  CHECK(oov.out == "0.0000\n");
  CHECK(oov.err.find("zebra") != std::string::npos);

  // four places of the library pipeline with the same parameters
  msa::PipelineParams p;
  p.concept_space.search = msa::SearchParams{100, 50, 2};
  p.relatedness.lambda = 1.0;
  const auto& toy = testing_support::toy();
  const double want = msa::relate("coffee", "milk", toy.index, toy.rules, p).score;
  std::ostringstream expected;
  expected.setf(std::ios::fixed);
  expected.precision(4);
  expected << want << '\n';
  const auto pair = msa_cli({"relate", "coffee", "milk", "-c", cfg, "--lambda", "1"});
  CHECK(pair.out == expected.str());

  const auto explained = msa_cli({"relate", "coffee", "milk", "-c", cfg, "--explain"});
  CHECK(explained.out.find("\"kind\": \"latent\"") != std::string::npos);

  const auto dump = msa_cli({"dump-vector", "computational linguistics", "-c", cfg});
  REQUIRE(dump.code == 0);
  const auto doc = nlohmann::json::parse(dump.out);
  CHECK(doc["text"] == "computational linguistics");
  CHECK(!doc["concepts"].empty());

  CHECK(msa_cli({"relate", "cat", "dog", "-c", cfg, "--min-support", "0"}).code == 2);
  CHECK(msa_cli({"relate", "cat", "dog", "-c", cfg, "--lambda", "0"}).code == 2);
  CHECK(msa_cli({"relate", "cat", "dog", "--index", (ws.dir / "missing").string()}).code == 1);
}

TEST_CASE("eval, grid and significance") {
  Workspace ws;
  REQUIRE(ws.build().code == 0);
  const std::string cfg = ws.config.string();

  const auto gold = msa_cli({"eval", "-c", cfg, "--gold-as-scorer", "--json"});
  REQUIRE_MESSAGE(gold.code == 0, gold.err);
  const auto g = nlohmann::json::parse(gold.out);
  CHECK(g["reports"][0]["pearson"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g["reports"][0]["spearman"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  const auto eval = msa_cli({"eval", "-c", cfg, "--report", (ws.dir / "a.json").string()});
  REQUIRE_MESSAGE(eval.code == 0, eval.err);
  CHECK(eval.out.find("toy-pairs") != std::string::npos);
  CHECK(eval.err.find("1 of 24") != std::string::npos);

  const auto path_eval = msa_cli({"eval", "-c", cfg, "-d", (ws.dir / "pairs.tsv").string(), "--json"});
  REQUIRE_MESSAGE(path_eval.code == 0, path_eval.err);
  const auto a = nlohmann::json::parse(testing_support::read_file(ws.dir / "a.json"));
  CHECK(nlohmann::json::parse(path_eval.out)["reports"][0]["pearson"] == a["reports"][0]["pearson"]);

  const auto grid = msa_cli({"grid", "-c", cfg, "--grid", (ws.dir / "grid.json").string(), "--trace",
                             (ws.dir / "trace.csv").string(), "--json", "--report", (ws.dir / "b.json").string()});
  REQUIRE_MESSAGE(grid.code == 0, grid.err);
  const auto gr = nlohmann::json::parse(grid.out);
  CHECK(gr["grid"]["combinations"] == 36);
  CHECK(gr["reports"][0]["pearson"] == gr["grid"]["best_score"]);
  CHECK(gr["reports"][0]["pearson"].get<double>() >= a["reports"][0]["pearson"].get<double>());
  const auto trace = testing_support::read_file(ws.dir / "trace.csv");
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 37);

  const auto sig = msa_cli({"significance", "--report-a", (ws.dir / "b.json").string(), "--report-b",
                            (ws.dir / "a.json").string(), "--json"});
  REQUIRE_MESSAGE(sig.code == 0, sig.err);
  const auto s = nlohmann::json::parse(sig.out);
  CHECK(s.contains("z"));
  CHECK(s["p"].get<double>() <= 0.5);

  CHECK(msa_cli({"grid", "-c", cfg}).code == 2);
  CHECK(msa_cli({"eval", "-c", cfg, "-d", "nonexistent"}).code == 2);
}

TEST_CASE("significance from score files") {
  TempDir dir;
  testing_support::write_file(dir / "gold.txt", "1\n2\n3\n4\n5\n6\n7\n8\n");
  testing_support::write_file(dir / "a.txt", "1.1\n2.2\n3.9\n3.1\n5.3\n5.9\n7.2\n7.9\n");
  testing_support::write_file(dir / "b.txt", "2\n1\n4\n3\n6\n5\n8\n7\n");
  const auto r = msa_cli({"significance", "--gold", (dir / "gold.txt").string(), "--a", (dir / "a.txt").string(),
                          "--b", (dir / "b.txt").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.out.find("rho_a") != std::string::npos);
  const auto same = msa_cli({"significance", "--gold", (dir / "gold.txt").string(), "--a", (dir / "a.txt").string(),
                             "--b", (dir / "a.txt").string(), "--json"});
  REQUIRE(same.code == 0);
  CHECK(nlohmann::json::parse(same.out)["p"] == 0.5);
}

TEST_CASE("config precedence and usage errors") {
  Workspace ws;
  const auto cfg = msa::cli::load_config(ws.config);
  CHECK(cfg.corpus == ws.dir / "corpus.jsonl");
  CHECK(cfg.params.concept_space.search.min_article_chars == 100);
  CHECK(cfg.params.concept_space.search.max_concepts == 50);
  CHECK(cfg.params.concept_space.max_latent_title_words == 3);

  testing_support::write_file(ws.dir / "bad.json", R"({"corpus": "c.jsonl", "colour": "red"})");
  CHECK_THROWS_AS(msa::cli::load_config(ws.dir / "bad.json"), msa::ParseError);

  CHECK(msa_cli({}).code == 2);
  CHECK(msa_cli({"frobnicate"}).code == 2);
  const auto help = msa_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("relate") != std::string::npos);
}
