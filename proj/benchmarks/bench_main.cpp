#include <benchmark/benchmark.h>

#include "pacsem/backends.hpp"
#include "random_instances.hpp"

using namespace pacsem;
using namespace pacsem::testing;

namespace {

// Unsatisfiable: every sign pattern over n variables.
Cnf full_cube(std::size_t n) {
  std::vector<Clause> clauses;
  for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
    std::vector<Literal> lits;
    for (std::uint32_t v = 0; v < n; ++v) lits.emplace_back(VarId(v + 1), (bits >> v) & 1);
    clauses.emplace_back(lits);
  }
  return Cnf(n, clauses);
}

void BM_SearchSpaceCube(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Cnf phi = full_cube(n);
  for (auto _ : state) benchmark::DoNotOptimize(search_space(phi, n + 1, Clause()));
}
BENCHMARK(BM_SearchSpaceCube)->DenseRange(2, 6);

void BM_SearchSpaceRandom(benchmark::State& state) {
  Rng rng(1);
  std::vector<Cnf> corpus;
  for (int i = 0; i < 64; ++i) corpus.push_back(random_cnf(rng, 5, 12, 3));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(search_space(corpus[i++ % corpus.size()], 4, Clause()));
}
BENCHMARK(BM_SearchSpaceRandom);

void BM_DecideResk(benchmark::State& state) {
  Rng rng(2);
  std::vector<std::vector<KDnf>> corpus;
  for (int i = 0; i < 32; ++i) {
    std::vector<KDnf> hyps;
    for (int h = 0; h < 6; ++h) hyps.push_back(random_kdnf(rng, 4, 2, 2));
    corpus.push_back(hyps);
  }
  const auto w = static_cast<std::size_t>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decide_resk_width(corpus[i++ % corpus.size()], KDnf::bottom(), 2, w));
}
BENCHMARK(BM_DecideResk)->DenseRange(1, 3);

void BM_DecidePc(benchmark::State& state) {
  Rng rng(3);
  const auto d = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<Polynomial>> corpus;
  for (int i = 0; i < 32; ++i) {
    std::vector<Polynomial> hyps;
    for (int h = 0; h < 3; ++h) hyps.push_back(random_polynomial(rng, 5, 2, true));
    corpus.push_back(hyps);
  }
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(decide_pc(corpus[i++ % corpus.size()], Polynomial::constant(1), d, PcMode::PCR));
}
BENCHMARK(BM_DecidePc)->DenseRange(2, 3);

void BM_DecideCp(benchmark::State& state) {
  Rng rng(4);
  const Integer L(state.range(0));
  std::vector<std::vector<LinIneq>> corpus;
  for (int i = 0; i < 32; ++i) {
    std::vector<LinIneq> hyps;
    for (const auto& c : random_cnf(rng, 4, 8, 2).clauses())
      if (!c.is_tautology()) hyps.push_back(encode_clause_cp(c));
    corpus.push_back(hyps);
  }
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(decide_cp(corpus[i++ % corpus.size()], LinIneq({}, Integer(1)), 2, L));
}
BENCHMARK(BM_DecideCp)->DenseRange(2, 4);

void BM_DecidePac(benchmark::State& state) {
  const Cnf kb(3, {Clause::from_dimacs(std::vector<int>{-2, 3})});
  SpaceResolutionBackend backend(kb, Clause::from_dimacs(std::vector<int>{3}), 2);
  ExplicitDistribution d(3, {{{false, true, true}, Rational(9, 10)}, {{false, false, true}, Rational(1, 10)}});
  const auto examples = draw_masked_examples(d, IndependentMask{Rational(1, 2)}, 2000, 7);
  const PacParams params{Rational(1, 5), Rational(1, 10), Rational(1, 20)};
  const PacOptions options{static_cast<std::size_t>(state.range(0)), false};
  for (auto _ : state) benchmark::DoNotOptimize(decide_pac(backend, params, examples, options));
}
BENCHMARK(BM_DecidePac)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
