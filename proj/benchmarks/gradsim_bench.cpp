#include <benchmark/benchmark.h>

#include <vector>

#include "gradsim/field.hpp"
#include "gradsim/interferometer.hpp"
#include "gradsim/survey.hpp"

namespace {

using namespace gradsim;

DensityModel sphere_line(int count) {
  std::vector<MassBody> bodies;
  for (int i = 0; i < count; ++i) {
    bodies.push_back(MassBody::uniform_sphere(
        Vec3(15.0 * i, 0, -60), 5.0, i % 2 == 0 ? 1325.0 : 725.0));
  }
  return DensityModel(std::move(bodies), 1025.0);
}

InterferometerConfig bench_config() {
  return InterferometerConfig::from_effective_wave_vector(
      1.44316060e-25, Vec3::Zero(), 0.1, 1.6e7, 0.1);
}

void BM_GradientTensorPointMass(benchmark::State& state) {
  const DensityModel model({MassBody::point_mass(Vec3::Zero(), 1e7)});
  const Vec3 p(30, 20, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gradient_tensor(model, p));
  }
}
BENCHMARK(BM_GradientTensorPointMass);

void BM_GradientTensorSphereLine(benchmark::State& state) {
  const DensityModel model = sphere_line(static_cast<int>(state.range(0)));
  const Vec3 p(30, 20, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gradient_tensor(model, p));
  }
}
BENCHMARK(BM_GradientTensorSphereLine)->Arg(2)->Arg(8)->Arg(32);

void BM_FiniteDifferenceTensor(benchmark::State& state) {
  const DensityModel model = sphere_line(8);
  const Vec3 p(30, 20, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(finite_difference_tensor(model, p));
  }
}
BENCHMARK(BM_FiniteDifferenceTensor);

void BM_PhasePathIntegralUniform(benchmark::State& state) {
  const InterferometerConfig config = bench_config();
  const PotentialFn potential_fn = [](const Vec3& p) { return 9.8 * p.z(); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_path_integral(config, potential_fn));
  }
}
BENCHMARK(BM_PhasePathIntegralUniform);

void BM_PhasePathIntegralEarthModel(benchmark::State& state) {
  const InterferometerConfig config = bench_config();
  const DensityModel model({MassBody::point_mass(Vec3(0, 0, -6.371e6), 5.9722e24)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_path_integral(config, model));
  }
}
BENCHMARK(BM_PhasePathIntegralEarthModel);

void BM_SimulateSurvey(benchmark::State& state) {
  const DensityModel model = sphere_line(8);
  Route route;
  route.setup_time_s = 900.0;
  for (int i = 0; i < 6; ++i) {
    route.waypoints.push_back(Waypoint{Vec3(200.0 * i, 0, 2), 120.0});
  }
  const InstrumentSpec instrument{"bench", 1.0, 360.0, 37e-9, ""};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_survey(route, model, instrument, seed++));
  }
}
BENCHMARK(BM_SimulateSurvey);

}  // namespace

BENCHMARK_MAIN();
