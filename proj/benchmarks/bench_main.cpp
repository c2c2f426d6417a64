#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "ncpgd/instances.hpp"
#include "ncpgd/objective.hpp"
#include "ncpgd/sets.hpp"
#include "ncpgd/solver.hpp"

namespace {

using namespace ncpgd;

const std::vector<std::string> kSets = {"sparse:n=100,s=10", "nonneg-sparse:n=100,s=10", "lowrank:m=30,n=30,r=3",
                                        "psd:n=30,r=3",      "curve",                    "epigraph"};

// Projection of Gaussian ambient points; arg 0 indexes kSets.
void BM_Project(benchmark::State& state) {
  const SetPtr set = parse_set_spec(kSets[static_cast<std::size_t>(state.range(0))]);
  InstanceGenerator gen(1);
  std::vector<Point> pts;
  for (int i = 0; i < 64; ++i) pts.push_back(gen.ambient(set->ambient_shape()));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(set->project(pts[k++ % pts.size()]));
  }
  state.SetLabel(set->spec());
}
BENCHMARK(BM_Project)->DenseRange(0, static_cast<int>(kSets.size()) - 1);

// Regular normal cone distance at a feasible point of the top stratum.
void BM_RegularNormal(benchmark::State& state) {
  const SetPtr set = parse_set_spec(kSets[static_cast<std::size_t>(state.range(0))]);
  InstanceGenerator gen(2);
  const Point x = gen.feasible(*set, set->top_stratum());
  const Point v = gen.ambient(set->ambient_shape());
  for (auto _ : state) {
    benchmark::DoNotOptimize(set->dist_regular_normal(x, v));
  }
  state.SetLabel(set->spec());
}
BENCHMARK(BM_RegularNormal)->DenseRange(0, static_cast<int>(kSets.size()) - 1);

// PGD and P2GD on the 1-sparse plane with target (1, 0) from (0, 1), where
// P2GD converges to the origin and PGD to the target.
void BM_SparsePlane(benchmark::State& state) {
  const SetPtr set = parse_set_spec("sparse:n=2,s=1");
  const Objective f = least_squares(Point::of({1.0, 0.0}));
  const Point x0 = Point::of({0.0, 1.0});
  SolverConfig cfg;
  cfg.alpha_min = cfg.alpha_max = 0.4;
  cfg.max_iters = 200;
  const bool tangent = state.range(0) == 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tangent ? p2gd(*set, f, x0, cfg) : pgd(*set, f, x0, cfg));
  }
  state.SetLabel(tangent ? "p2gd" : "pgd");
}
BENCHMARK(BM_SparsePlane)->Arg(0)->Arg(1);

// Nonmonotone PGD for low-rank least squares; arg is the matrix size.
void BM_LowRankLeastSquares(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SetPtr set = parse_set_spec("lowrank:m=" + std::to_string(n) + ",n=" + std::to_string(n) + ",r=3");
  InstanceGenerator gen(3);
  const Objective f = least_squares(gen.ambient(set->ambient_shape()));
  const Point x0 = gen.feasible(*set, 3);
  SolverConfig cfg;
  cfg.rule = MaxRule{5};
  cfg.max_iters = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pgd(*set, f, x0, cfg));
  }
}
BENCHMARK(BM_LowRankLeastSquares)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
