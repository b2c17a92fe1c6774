#include <benchmark/benchmark.h>

#include "lqre/auctions.hpp"
#include "lqre/dynamics.hpp"
#include "lqre/game_library.hpp"
#include "lqre/limit_qre.hpp"
#include "lqre/trembles.hpp"

using namespace lqre;

namespace {

PathOptions nu(double v) {
  PathOptions o;
  o.nu = v;
  o.keep_points = false;
  return o;
}

void BM_LogitResponse(benchmark::State& state) {
  const auto g = travelers_dilemma(10);
  const auto p = uniform_profile(g);
  for (auto _ : state) benchmark::DoNotOptimize(logit_response(g, p, 0.3));
}
BENCHMARK(BM_LogitResponse);

void BM_JacobianSpectralRadius(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto g = travelers_dilemma(10, traveler_claims(200 - n + 1, 200));
  const auto p = uniform_profile(g);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(jacobian(g, p, 0.3)));
}
BENCHMARK(BM_JacobianSpectralRadius)->Arg(11)->Arg(41)->Arg(121);

void BM_PathFourAction(benchmark::State& state) {
  const auto g = four_action_game(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(evolutionary_path(g, ChoiceModel::logit(), nu(0.02)));
}
BENCHMARK(BM_PathFourAction)->Unit(benchmark::kMillisecond);

void BM_PathTravelers(benchmark::State& state) {
  const auto g = travelers_dilemma(25);
  for (auto _ : state) benchmark::DoNotOptimize(evolutionary_path(g, ChoiceModel::logit(), nu(0.01)));
}
BENCHMARK(BM_PathTravelers)->Unit(benchmark::kMillisecond);

void BM_TargetGame(benchmark::State& state) {
  const auto g = travelers_dilemma(10);
  const TrembleModel t{0.6};
  for (auto _ : state) benchmark::DoNotOptimize(target_game(g, t));
}
BENCHMARK(BM_TargetGame)->Unit(benchmark::kMillisecond);

void BM_AuctionGame(benchmark::State& state) {
  AuctionSpec spec;
  spec.sigma = {{0.3, 1.0}};
  spec.extra_strategies = {BidFunction::bayesian_allpay(0.3)};
  for (auto _ : state) benchmark::DoNotOptimize(auction_game(spec));
}
BENCHMARK(BM_AuctionGame)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
