#include <benchmark/benchmark.h>

#include <random>

#include "e1forge/autos.hpp"
#include "e1forge/certify.hpp"
#include "e1forge/charpoly_enum.hpp"
#include "e1forge/gf2k.hpp"
#include "e1forge/oracle.hpp"
#include "e1forge/poly.hpp"

namespace {

using namespace e1forge;

void BM_FieldMul(benchmark::State& state) {
  const auto& k = gf2k::make_field(static_cast<unsigned>(state.range(0)), 1);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<gf2k::Elem> any(1, k.size() - 1);
  std::vector<gf2k::Elem> xs(1024);
  for (auto& x : xs) x = any(rng);
  gf2k::Elem acc = 1;
  for (auto _ : state) {
    for (auto x : xs) acc = k.mul(acc, x);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_FieldMul)->Arg(2)->Arg(4)->Arg(8);

void BM_Factor(benchmark::State& state) {
  const auto& k = gf2k::make_field(4, 1);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<gf2k::Elem> any(0, k.size() - 1);
  std::vector<gf2k::Elem> c(static_cast<std::size_t>(state.range(0)));
  for (auto& x : c) x = any(rng);
  c[0] = 1;
  const auto p = poly::MonicPoly::from_lower(k, c);
  for (auto _ : state) benchmark::DoNotOptimize(poly::poly_factor(p));
}
BENCHMARK(BM_Factor)->Arg(8)->Arg(16)->Arg(32);

void BM_EnumerateRealCharpolys(benchmark::State& state) {
  const auto& k = gf2k::make_field(2, 1);
  const auto d = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(poly::enumerate_charpolys(d, k, {.real = true}));
}
BENCHMARK(BM_EnumerateRealCharpolys)->Arg(4)->Arg(6);

void BM_EnumerateGL32(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::enumerate_gl(3, 2).size());
}
BENCHMARK(BM_EnumerateGL32);

void BM_CertifyRegistry(benchmark::State& state) {
  const auto entries = bounds::load_registry(bounds::default_registry_path());
  for (auto _ : state) benchmark::DoNotOptimize(bounds::certify_all(entries, 1));
}
BENCHMARK(BM_CertifyRegistry)->Unit(benchmark::kMillisecond);

void BM_TwistedNorm(benchmark::State& state) {
  const auto m = autos::TorusModel::make(5, 4, -1);
  std::mt19937_64 rng(3);
  const auto beta = autos::random_word(m, rng);
  const auto l = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(autos::twisted_norm(m, beta, l));
}
BENCHMARK(BM_TwistedNorm)->Arg(24)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
