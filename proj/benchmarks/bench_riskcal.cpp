// Microbenchmarks for the hot paths: measure evaluation on large spaces,
// randomized axiom batteries, envelope verification, inf-convolution
// searches, and the portfolio grid scan.

#include <benchmark/benchmark.h>

#include <vector>

#include "riskcal/axioms.hpp"
#include "riskcal/envelopes.hpp"
#include "riskcal/infconv.hpp"
#include "riskcal/measures.hpp"
#include "riskcal/portfolio.hpp"
#include "riskcal/rng.hpp"

namespace {

using namespace riskcal;

Rv make_variable(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return rng.rv(rng.space(n), -5.0, 5.0);
}

void bm_var(benchmark::State& state) {
  const Rv x = make_variable(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(var_value(x, 0.3));
}
BENCHMARK(bm_var)->Arg(100)->Arg(10000);

void bm_es(benchmark::State& state) {
  const Rv x = make_variable(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(es_value(x, 0.3));
}
BENCHMARK(bm_es)->Arg(100)->Arg(10000);

void bm_lambda_var(benchmark::State& state) {
  const Rv x = make_variable(static_cast<std::size_t>(state.range(0)), 3);
  const LambdaFn lf({-1.0, 0.5, 2.0}, {0.9, 0.6, 0.3, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(lambda_var_value(x, lf));
}
BENCHMARK(bm_lambda_var)->Arg(100)->Arg(10000);

void bm_lambda_var_envelope_form(benchmark::State& state) {
  const Rv x = make_variable(static_cast<std::size_t>(state.range(0)), 3);
  const LambdaFn lf({-1.0, 0.5, 2.0}, {0.9, 0.6, 0.3, 0.1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda_var_value(x, lf, LambdaVarMode::inf_envelope));
  }
}
BENCHMARK(bm_lambda_var_envelope_form)->Arg(100)->Arg(10000);

void bm_rdeu(benchmark::State& state) {
  const Rv x = make_variable(static_cast<std::size_t>(state.range(0)), 4);
  const RiskFunctional rho = make_rdeu_ce(UtilityFn::exponential(1.0), 0.3, DistortionFn::power(2.0),
                                          DistortionFn::dual_power(2.0), {0.5, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(rho.eval(x));
}
BENCHMARK(bm_rdeu)->Arg(100)->Arg(10000);

void bm_axiom_battery(benchmark::State& state) {
  const RiskFunctional rho = make_es(0.3);
  CheckConfig cfg;
  cfg.trials = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_axiom(Axiom::quasi_convexity, rho, cfg));
}
BENCHMARK(bm_axiom_battery)->Arg(50)->Arg(200);

void bm_envelope_verify(benchmark::State& state) {
  Rng rng(5);
  const SpacePtr sp = FiniteSpace::uniform(6);
  const Rv x = rng.rv(sp, -2.0, 2.0);
  std::vector<Rv> anchors{x};
  for (int i = 0; i < 20; ++i) anchors.push_back(rng.rv(sp, -2.0, 2.0));
  const RiskFunctional rho = make_var(0.5);
  CheckConfig cfg;
  cfg.trials = 60;
  cfg.fixed_space = sp;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_envelope(rho, EnvelopeKind::tilde_rho_z, x, anchors, cfg));
  }
}
BENCHMARK(bm_envelope_verify);

void bm_infconv_grid(benchmark::State& state) {
  const Rv x = make_variable(4, 6);
  const std::vector<RiskFunctional> rhos{make_es(0.25), make_es(0.75)};
  InfConvConfig cfg;
  cfg.grid_points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(infconv_bruteforce(rhos, x, cfg));
}
BENCHMARK(bm_infconv_grid)->Arg(11)->Arg(21);

void bm_infconv_comonotone(benchmark::State& state) {
  const Rv x = make_variable(5, 7);
  const std::vector<RiskFunctional> rhos{make_es(0.25), make_es(0.75)};
  InfConvConfig cfg;
  cfg.fraction_steps = 8;
  for (auto _ : state) benchmark::DoNotOptimize(infconv_comonotone(rhos, x, cfg));
}
BENCHMARK(bm_infconv_comonotone);

void bm_portfolio_scan(benchmark::State& state) {
  Rng rng(8);
  const SpacePtr sp = FiniteSpace::uniform(5);
  std::vector<std::vector<double>> losses(5, std::vector<double>(4));
  for (auto& row : losses) {
    for (double& v : row) v = rng.uniform(-4.0, 6.0);
  }
  const ScenarioMatrix matrix(sp, std::move(losses));
  const LambdaFn lf({0.5}, {0.7, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        optimize_portfolio(matrix, lf, 1.0, PortfolioObjective::min_expected_loss,
                           static_cast<int>(state.range(0))));
  }
}
BENCHMARK(bm_portfolio_scan)->Arg(12)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
