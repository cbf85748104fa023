#include <benchmark/benchmark.h>

#include <qsl/bounds_qsl.hpp>
#include <qsl/evolution.hpp>
#include <qsl/matrix_core.hpp>
#include <qsl/qubit_oracle.hpp>

#include <qslbound/random.hpp>

namespace {

constexpr double kPi = 3.14159265358979323846;

qsl::QubitScenario reference_scenario() {
  qsl::QubitScenario sc;
  sc.r = 0.25;
  sc.theta = kPi / 4;
  sc.phi = kPi / 4;
  sc.drive.axis = qsl::LZAxis{0.5, 1.0};
  return sc;
}

void BM_Eigendecompose(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  qslcli::Rng rng = qslcli::Rng::stream(7, static_cast<std::uint64_t>(d));
  const qsl::Matrix h = rng.hermitian(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsl::eigendecompose(h));
  }
}
BENCHMARK(BM_Eigendecompose)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Propagate(benchmark::State& state) {
  const std::size_t steps = static_cast<std::size_t>(state.range(0));
  const qsl::HamiltonianSpec spec(reference_scenario().drive);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsl::propagate(spec, 5.0, steps));
  }
}
BENCHMARK(BM_Propagate)->Arg(128)->Arg(512)->Arg(2048);

void BM_ScanEngineBuild(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  qslcli::Rng rng = qslcli::Rng::stream(11, static_cast<std::uint64_t>(d));
  const qsl::DensityMatrix rho = rng.density_matrix(d);
  const qsl::HamiltonianSpec spec{qsl::ConstantHamiltonian{rng.hermitian(d)}};
  const qsl::PropagatorTrajectory traj = qsl::propagate(spec, 1.0, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsl::ScanEngine(rho, traj));
  }
}
BENCHMARK(BM_ScanEngineBuild)->Arg(2)->Arg(4)->Arg(8);

void BM_AlphaFamily(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  qslcli::Rng rng = qslcli::Rng::stream(13, static_cast<std::uint64_t>(d));
  const qsl::DensityMatrix rho = rng.density_matrix(d);
  const qsl::HamiltonianSpec spec{qsl::ConstantHamiltonian{rng.hermitian(d)}};
  const qsl::PropagatorTrajectory traj = qsl::propagate(spec, 1.0, 64);
  const qsl::ScanEngine engine(rho, traj);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.alpha_family(
        qsl::EntropyKind::Renyi, 0.3, qsl::GConvention::Appendix));
  }
}
BENCHMARK(BM_AlphaFamily)->Arg(2)->Arg(4)->Arg(8);

void BM_ClosedQsl(benchmark::State& state) {
  const qsl::QubitScenario sc = reference_scenario();
  const std::size_t steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsl::qsl_closed(sc, qsl::QslFamily::Tsallis, 0.3,
                                             2.0, qsl::GConvention::Appendix,
                                             steps));
  }
}
BENCHMARK(BM_ClosedQsl)->Arg(128)->Arg(512);

void BM_ClosedContextGridRow(benchmark::State& state) {
  const qsl::QubitScenario sc = reference_scenario();
  for (auto _ : state) {
    const qsl::ClosedContext ctx = qsl::closed_context(sc, 2.0, 512);
    double acc = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double alpha = 0.01 + 0.98 * i / 99.0;
      acc += qsl::qsl_closed_at(sc, ctx, qsl::QslFamily::Renyi, alpha).tau_max;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_ClosedContextGridRow);

}  // namespace

BENCHMARK_MAIN();
