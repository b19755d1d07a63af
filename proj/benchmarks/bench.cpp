#include <benchmark/benchmark.h>

#include <random>

#include "msym/characters.hpp"
#include "msym/matmodel.hpp"
#include "msym/verify.hpp"

using namespace msym;

namespace {

Multigraph graph(const char* name) { return load_graph(std::string(MSYM_DATA_DIR) + "/" + name); }

void BM_Automorphisms(benchmark::State& state) {
  const auto g = graph("figure1.json");
  for (auto _ : state) benchmark::DoNotOptimize(automorphisms(g).size());
}
BENCHMARK(BM_Automorphisms)->Unit(benchmark::kMillisecond);

void BM_BuildPresentation(benchmark::State& state) {
  const auto g = graph("figure1.json");
  for (auto _ : state) benchmark::DoNotOptimize(build_presentation(g)->rules().extra_pair_count());
}
BENCHMARK(BM_BuildPresentation)->Unit(benchmark::kMillisecond);

void BM_Reduce(benchmark::State& state) {
  const auto q = build_presentation(graph("triangle2.txt"));
  const auto& a = q->alphabet();
  std::mt19937 rng(1);
  std::uniform_int_distribution<GenId> gen(0, static_cast<GenId>(a->generator_count() - 1));
  NCPolynomial p(a);
  for (int t = 0; t < 512; ++t) {
    Word w;
    for (int k = 0; k < static_cast<int>(state.range(0)); ++k) w.push_back(gen(rng));
    p.add_term(w, 1);
  }
  for (auto _ : state) benchmark::DoNotOptimize(reduce(p, q->rules()).size());
}
BENCHMARK(BM_Reduce)->Arg(2)->Arg(4)->Arg(8);

void BM_Characters(benchmark::State& state) {
  const auto g = graph("figure1.json");
  const auto q = build_presentation(g);
  const auto sub = permissible_subpresentation(*q, g);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_characters(*sub.presentation).size());
}
BENCHMARK(BM_Characters)->Unit(benchmark::kMillisecond);

void BM_VertexMagicSuite(benchmark::State& state) {
  const auto q = build_presentation(graph("figure1.json"));
  for (auto _ : state) benchmark::DoNotOptimize(verify_vertex_magic(q).obligations.size());
}
BENCHMARK(BM_VertexMagicSuite)->Unit(benchmark::kMillisecond);

void BM_BimoduleSuite(benchmark::State& state) {
  const auto g = graph("triangle2.txt");
  const auto q = build_presentation(g);
  for (auto _ : state) benchmark::DoNotOptimize(verify_bimodule(q, g).obligations.size());
}
BENCHMARK(BM_BimoduleSuite)->Unit(benchmark::kMillisecond);

void BM_PauliWitness(benchmark::State& state) {
  const auto g = graph("k4_doubled.txt");
  const auto q = build_presentation(g);
  const auto em = edge_matrix(*q, g);
  for (auto _ : state) {
    const auto m = pauli_witness(g, 0.7853981633974483);
    benchmark::DoNotOptimize(check_relations(m, *q, 1e-10).pass);
    benchmark::DoNotOptimize(evaluate_edge_matrix(m, em, g).magic);
  }
}
BENCHMARK(BM_PauliWitness)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
