#include <benchmark/benchmark.h>

#include <cmath>

#include "shoot/shoot.hpp"

namespace {

using shoot::JacobianMode;

void BM_Solve(benchmark::State& state, const char* name, JacobianMode mode) {
  const auto ex = shoot::make_example(name);
  shoot::SolveOptions opts;
  opts.jacobian_mode = mode;
  for (auto _ : state) {
    auto report = shoot::solve_bvp(ex.problem, ex.default_guesses.front(), opts);
    benchmark::DoNotOptimize(report.c_final.data());
  }
}

void BM_Jacobian(benchmark::State& state, const char* name, JacobianMode mode) {
  const auto ex = shoot::make_example(name);
  const auto c = shoot::solve_bvp(ex.problem, ex.default_guesses.front()).c_final;
  for (auto _ : state) {
    auto it = shoot::evaluate_shooting(ex.problem, c, mode, {});
    benchmark::DoNotOptimize(it.jacobian.data());
  }
}

void BM_Integrate(benchmark::State& state) {
  const auto ex = shoot::make_example("ex2");
  const shoot::Vector x0{0.0, 1.0, -1.0013962170, 1.0, -0.4755620637};
  shoot::IntegratorConfig cfg;
  cfg.rtol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto traj = shoot::integrate(ex.problem.rhs(), 0.0, 5.0, x0, cfg);
    benchmark::DoNotOptimize(traj.size());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Solve, ex1_forward, "ex1", JacobianMode::Forward);
BENCHMARK_CAPTURE(BM_Solve, ex1_adjoint, "ex1", JacobianMode::Adjoint);
BENCHMARK_CAPTURE(BM_Solve, ex1_fd, "ex1", JacobianMode::FiniteDifference);
BENCHMARK_CAPTURE(BM_Solve, ex2_forward, "ex2", JacobianMode::Forward);
BENCHMARK_CAPTURE(BM_Solve, ex2_adjoint, "ex2", JacobianMode::Adjoint);
BENCHMARK_CAPTURE(BM_Solve, ex2_fd, "ex2", JacobianMode::FiniteDifference);
BENCHMARK_CAPTURE(BM_Solve, ex3_forward, "ex3", JacobianMode::Forward);
BENCHMARK_CAPTURE(BM_Solve, ex4_forward, "ex4", JacobianMode::Forward);

BENCHMARK_CAPTURE(BM_Jacobian, ex2_forward, "ex2", JacobianMode::Forward);
BENCHMARK_CAPTURE(BM_Jacobian, ex2_adjoint, "ex2", JacobianMode::Adjoint);
BENCHMARK_CAPTURE(BM_Jacobian, ex2_fd, "ex2", JacobianMode::FiniteDifference);

BENCHMARK(BM_Integrate)->DenseRange(6, 12, 2);

BENCHMARK_MAIN();
