#include <benchmark/benchmark.h>

#include "polydist/cli/pipeline.hpp"
#include "polydist/corrector.hpp"
#include "polydist/pencil.hpp"

namespace {

using namespace polydist;

// Diagonal quadratic 3x3 with a coalescing pair at gamma* = 1 for mu = 3.
MatrixPolynomial demo_poly() {
  Matrix a0 = Matrix::Zero(3, 3);
  a0.diagonal() << Complex(2, 0), Complex(0, 0), Complex(2, 0);
  Matrix a1 = Matrix::Zero(3, 3);
  a1.diagonal() << Complex(-3, 0), Complex(-1, 0), Complex(3, 0);
  Matrix a2 = Matrix::Identity(3, 3);
  return MatrixPolynomial({a0, a1, a2});
}

const Complex kMu{3.0, 0.0};

void BM_BuildAndSvdF(benchmark::State& state) {
  const MatrixPolynomial p = demo_poly();
  for (auto _ : state) {
    benchmark::DoNotOptimize(svd(build_F(p, kMu, 1.0)));
  }
}
BENCHMARK(BM_BuildAndSvdF);

void BM_MaximizeGamma(benchmark::State& state) {
  const MatrixPolynomial p = demo_poly();
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_gamma(p, kMu));
  }
}
BENCHMARK(BM_MaximizeGamma);

void BM_SampleCurve101(benchmark::State& state) {
  const MatrixPolynomial p = demo_poly();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_curve(p, kMu, 0.0, 10.0, 101));
  }
}
BENCHMARK(BM_SampleCurve101);

void BM_FullAnalysis(benchmark::State& state) {
  cli::ProblemSpec spec{demo_poly(), WeightSet::ones(2), kMu, {}, cli::Mode::automatic};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cli::run_analysis(spec));
  }
}
BENCHMARK(BM_FullAnalysis);

}  // namespace

BENCHMARK_MAIN();
