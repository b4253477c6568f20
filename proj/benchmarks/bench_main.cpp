#include "eds/cartan.hpp"

#include <benchmark/benchmark.h>

using namespace eds;

namespace {

RationalPoint base_pt() {
  return RationalPoint::of({{"x", 0}, {"y", 0}, {"z", 0}, {"p", 0}, {"q", 0}, {"t", 1}});
}

void BM_ParseAndNormalize(benchmark::State& state) {
  for (auto _ : state) {
    Expr e = parse_expr("(x^2 - y^2)/(x - y) + t^3/3 - (x + y)");
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(BM_ParseAndNormalize);

void BM_PolynomialGcd(benchmark::State& state) {
  Expr a = parse_expr("(x + y + t)^4");
  Expr b = parse_expr("(x + y + t)^2 * (x - t)^2");
  for (auto _ : state) {
    Polynomial g = gcd(a.num(), b.num());
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_PolynomialGcd);

void BM_WeakDerivedFlag(benchmark::State& state) {
  PfaffSystem s = cartan_chart().pfaff();
  for (auto _ : state) {
    DerivedFlag flag = weak_derived_flag(s);
    benchmark::DoNotOptimize(flag);
  }
}
BENCHMARK(BM_WeakDerivedFlag);

void BM_Classify(benchmark::State& state) {
  EquationChart eq = cartan_chart();
  RationalPoint pt = base_pt();
  for (auto _ : state) {
    Classification c = classify_type(eq, pt);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Classify);

void BM_Prolong(benchmark::State& state) {
  EquationChart eq = cartan_chart();
  RationalPoint pt = base_pt();
  for (auto _ : state) {
    Prolongation pr = prolong(eq, pt);
    benchmark::DoNotOptimize(pr);
  }
}
BENCHMARK(BM_Prolong);

void BM_SolveAndVerify(benchmark::State& state) {
  Expr y0 = parse_expr("t^4");
  for (auto _ : state) {
    SolutionReport rep = verify_solution(solve_i(y0));
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_SolveAndVerify);

}  // namespace

BENCHMARK_MAIN();
