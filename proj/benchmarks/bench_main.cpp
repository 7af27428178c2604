#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <vector>

#include "msa/msa.hpp"

namespace {

const std::filesystem::path kToyCorpus = std::filesystem::path(MSA_DATA_DIR) / "toy" / "corpus.jsonl";

struct Toy {
  msa::Corpus corpus = msa::load_corpus(kToyCorpus, msa::CorpusFormat::jsonl, [](std::string_view) {});
  msa::PostingsIndex index = msa::PostingsIndex::build(corpus.articles());
  msa::TransactionSet transactions =
      msa::build_transactions(corpus.articles(), [this](std::string_view t) { return corpus.resolve(t); });
  msa::RuleStore rules = msa::mine_rules(transactions.transactions, {});
};

const Toy& toy() {
  static const Toy instance;
  return instance;
}

std::vector<msa::Transaction> random_transactions(std::size_t count, std::uint32_t universe) {
  std::mt19937_64 rng(7);
  std::vector<msa::Transaction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<msa::ConceptId> members;
    for (std::size_t k = 2 + rng() % 10; k > 0; --k) members.push_back(static_cast<msa::ConceptId>(rng() % universe));
    out.push_back(msa::make_transaction(std::move(members)));
  }
  return out;
}

}  // namespace

static void BM_IndexBuild(benchmark::State& state) {
  const auto& t = toy();
  for (auto _ : state) benchmark::DoNotOptimize(msa::PostingsIndex::build(t.corpus.articles()));
}
BENCHMARK(BM_IndexBuild);

static void BM_Search(benchmark::State& state) {
  const auto& t = toy();
  const msa::SearchParams p{100, static_cast<std::size_t>(state.range(0)), 2};
  for (auto _ : state) benchmark::DoNotOptimize(t.index.search("computational linguistics parse tree", p));
}
BENCHMARK(BM_Search)->Arg(10)->Arg(50);

static void BM_MineRules(benchmark::State& state) {
  const auto txs = random_transactions(static_cast<std::size_t>(state.range(0)), 500);
  for (auto _ : state) benchmark::DoNotOptimize(msa::mine_rules(txs, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MineRules)->Arg(1000)->Arg(10000);

static void BM_Relate(benchmark::State& state) {
  const auto& t = toy();
  msa::PipelineParams params;
  params.concept_space.search = msa::SearchParams{100, 50, 2};
  for (auto _ : state) benchmark::DoNotOptimize(msa::relate("coffee", "milk", t.index, t.rules, params));
}
BENCHMARK(BM_Relate);

static void BM_Cosine(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto make = [&] {
    std::vector<msa::ConceptEntry> e;
    msa::ConceptId id = 0;
    for (int i = 0; i < state.range(0); ++i) {
      id += 1 + static_cast<msa::ConceptId>(rng() % 8);
      e.push_back({id, 1.0 + static_cast<double>(rng() % 100), msa::ConceptKind::explicit_concept});
    }
    return msa::ConceptVector(std::move(e));
  };
  const auto a = make();
  const auto b = make();
  for (auto _ : state) benchmark::DoNotOptimize(msa::cosine(a, b));
}
BENCHMARK(BM_Cosine)->Arg(100)->Arg(1600);

static void BM_Spearman(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<double> x(static_cast<std::size_t>(state.range(0))), y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<double>(rng() % 11);
    y[i] = static_cast<double>(rng() % 1000) / 7.0;
  }
  for (auto _ : state) benchmark::DoNotOptimize(msa::spearman(x, y));
}
BENCHMARK(BM_Spearman)->Arg(30)->Arg(3000);

static void BM_SteigerZ(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(msa::steiger_z(0.63, 0.60, 0.80, 100));
}
BENCHMARK(BM_SteigerZ);
