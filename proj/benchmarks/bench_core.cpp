#include <benchmark/benchmark.h>

#include <vector>

#include "quatmob/classify.hpp"
#include "quatmob/moebius.hpp"
#include "quatmob/reversibility.hpp"
#include "quatmob/sampling.hpp"

namespace {

using namespace quatmob;

std::vector<QMatrix2> corpus(const char* family, std::size_t n = 256) {
  std::vector<QMatrix2> out;
  for (std::size_t k = 0; k < n; ++k) {
    auto rng = sample_rng(7, 0, k);
    out.push_back(sample_family(family, rng).matrix);
  }
  return out;
}

template <typename Fn>
void over_corpus(benchmark::State& state, const std::vector<QMatrix2>& ms, Fn fn) {
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fn(ms[k++ % ms.size()]));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}

void BM_CharPoly(benchmark::State& state) {
  over_corpus(state, corpus("case-1"), [](const QMatrix2& m) { return char_poly(m); });
}

void BM_CharPolyNewton(benchmark::State& state) {
  over_corpus(state, corpus("case-1"), [](const QMatrix2& m) { return char_poly_newton(m); });
}

void BM_NormalForm(benchmark::State& state) {
  over_corpus(state, corpus("case-1"), [](const QMatrix2& m) { return normal_form(m).form; });
}

void BM_NormalFormParabolic(benchmark::State& state) {
  over_corpus(state, corpus("parabolic"), [](const QMatrix2& m) { return normal_form(m).form; });
}

void BM_AlgebraicClass(benchmark::State& state) {
  over_corpus(state, corpus("case-5"),
              [](const QMatrix2& m) { return algebraic_class(char_poly(m), is_diagonalizable(m)).case_id; });
}

void BM_PslReport(benchmark::State& state) {
  over_corpus(state, corpus("case-4"), [](const QMatrix2& m) { return psl_report(m).strongly_reversible_psl; });
}

void BM_FixedPoints(benchmark::State& state) {
  over_corpus(state, corpus("case-1"), [](const QMatrix2& m) { return fixed_points(m).size(); });
}

void BM_ApplyMoebius(benchmark::State& state) {
  const Quaternion z{0.3, -0.2, 0.5, 0.1};
  over_corpus(state, corpus("case-1"), [&](const QMatrix2& m) { return apply_moebius(m, z); });
}

}  // namespace

BENCHMARK(BM_CharPoly);
BENCHMARK(BM_CharPolyNewton);
BENCHMARK(BM_NormalForm);
BENCHMARK(BM_NormalFormParabolic);
BENCHMARK(BM_AlgebraicClass);
BENCHMARK(BM_PslReport);
BENCHMARK(BM_FixedPoints);
BENCHMARK(BM_ApplyMoebius);

BENCHMARK_MAIN();
