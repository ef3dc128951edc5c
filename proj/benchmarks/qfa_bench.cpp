#include <benchmark/benchmark.h>

#include "qfa/block_map.hpp"
#include "qfa/entangle.hpp"
#include "qfa/fusion_ring.hpp"
#include "qfa/group_model.hpp"
#include "qfa/inequality.hpp"
#include "qfa/obstruction.hpp"
#include "qfa/random.hpp"

using namespace qfa;

namespace {

const FusionRing& rank7() {
  static const FusionRing r = load_ring(QFA_DATA_DIR "/rank7_paper.json");
  return r;
}

void BM_CharacterTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(character_table(rank7()));
}
BENCHMARK(BM_CharacterTable);

void BM_ObstructionScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan(rank7()));
}
BENCHMARK(BM_ObstructionScan);

void BM_CyclicScan(benchmark::State& state) {
  const FusionRing ring = cyclic_group_ring(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan(ring));
}
BENCHMARK(BM_CyclicScan)->Arg(6)->Arg(12)->Arg(24);

void BM_InequalityCheck(benchmark::State& state) {
  const auto id = static_cast<InequalityId>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_check(rank7(), id, 100, 42));
  state.SetLabel(std::string(inequality_name(id)));
}
BENCHMARK(BM_InequalityCheck)->DenseRange(0, static_cast<int>(kAllInequalities.size()) - 1);

void BM_BlockStep(benchmark::State& state) {
  const GroupModel m(FiniteGroup::cyclic(static_cast<std::size_t>(state.range(0))));
  std::mt19937_64 rng = sample_rng(1, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXcd f(static_cast<Eigen::Index>(m.order()));
  for (Eigen::Index g = 0; g < f.size(); ++g) f[g] = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(block_step(m, f, 0.5, calibrated_decoding()));
}
BENCHMARK(BM_BlockStep)->Arg(12)->Arg(32)->Arg(64);

void BM_Iterate(benchmark::State& state) {
  const GroupModel m(FiniteGroup::cyclic(12));
  std::mt19937_64 rng = sample_rng(2, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXcd f(12);
  for (Eigen::Index g = 0; g < 12; ++g) f[g] = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(iterate(m, f, 0.5, 500, calibrated_decoding()));
}
BENCHMARK(BM_Iterate);

void BM_ReqUp(benchmark::State& state) {
  const GroupModel m(FiniteGroup::symmetric3());
  std::mt19937_64 rng = sample_rng(3, 0);
  const DensityState omega = random_state(m, Side::A, rng);
  const DensityState phi = random_state(m, Side::A, rng);
  const DensityState psi = random_state(m, Side::B, rng);
  for (auto _ : state) benchmark::DoNotOptimize(req_up_check(m, omega, phi, psi));
}
BENCHMARK(BM_ReqUp);

void BM_EntanglementEntropy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QuditState s = max_state(n, 4);
  std::vector<std::size_t> cut(n / 2);
  for (std::size_t i = 0; i < cut.size(); ++i) cut[i] = i;
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_entropy(s, cut));
}
BENCHMARK(BM_EntanglementEntropy)->DenseRange(2, 8, 2);

}  // namespace

BENCHMARK_MAIN();
