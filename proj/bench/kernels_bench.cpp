#include <benchmark/benchmark.h>

#include <map>
#include <omp.h>

#include "poro/fem/assembly.hpp"
#include "poro/linalg/kernels.hpp"
#include "poro/model/material.hpp"

using namespace poro;

namespace {

fem::BoundarySpec clamped() {
  fem::MarkerCondition c;
  c.displacement = fem::DisplacementCondition::Fixed;
  c.pressure = fem::PressureCondition::Dirichlet;
  return fem::BoundarySpec::uniform({1, 2, 3, 4}, c);
}

const linalg::SparseMatrix& stiffness(std::size_t n) {
  static std::map<std::size_t, linalg::SparseMatrix> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto fs = fem::assemble(fem::make_unit_square_mesh(n), model::materials::shale(), clamped());
    it = cache.emplace(n, fs.system.a).first;
  }
  return it->second;
}

void BM_SpmvSerial(benchmark::State& state) {
  const auto& a = stiffness(static_cast<std::size_t>(state.range(0)));
  linalg::Vector x(a.cols(), 1.0), y(a.rows());
  for (auto _ : state) {
    linalg::serial::spmv(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["nnz"] = static_cast<double>(a.nnz());
}

void BM_SpmvParallel(benchmark::State& state) {
  const auto& a = stiffness(static_cast<std::size_t>(state.range(0)));
  linalg::Vector x(a.cols(), 1.0), y(a.rows());
  for (auto _ : state) {
    linalg::spmv(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["nnz"] = static_cast<double>(a.nnz());
}

void BM_DotSerial(benchmark::State& state) {
  const linalg::Vector x(static_cast<std::size_t>(state.range(0)), 1.5), y(x.size(), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::serial::dot(x, y));
}

void BM_DotParallel(benchmark::State& state) {
  const linalg::Vector x(static_cast<std::size_t>(state.range(0)), 1.5), y(x.size(), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::dot(x, y));
}

void BM_AxpySerial(benchmark::State& state) {
  const linalg::Vector x(static_cast<std::size_t>(state.range(0)), 1.5);
  linalg::Vector y(x.size(), 0.5);
  for (auto _ : state) {
    linalg::serial::axpy(1e-9, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_AxpyParallel(benchmark::State& state) {
  const linalg::Vector x(static_cast<std::size_t>(state.range(0)), 1.5);
  linalg::Vector y(x.size(), 0.5);
  for (auto _ : state) {
    linalg::axpy(1e-9, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

// range(1): thread count, 0 for the OpenMP default.
void BM_Assembly(benchmark::State& state) {
  const auto mesh = fem::make_unit_square_mesh(static_cast<std::size_t>(state.range(0)));
  const int saved = omp_get_max_threads();
  if (state.range(1) > 0) omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto fs = fem::assemble(mesh, model::materials::shale(), clamped());
    benchmark::DoNotOptimize(fs.system.a.values().data());
  }
  omp_set_num_threads(saved);
}

}  // namespace

BENCHMARK(BM_SpmvSerial)->Arg(32)->Arg(128);
BENCHMARK(BM_SpmvParallel)->Arg(32)->Arg(128);
BENCHMARK(BM_DotSerial)->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_DotParallel)->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_AxpySerial)->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_AxpyParallel)->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_Assembly)->Args({64, 1})->Args({64, 0})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
