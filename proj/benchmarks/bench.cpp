#include <benchmark/benchmark.h>

#include "exsum/dwork.hpp"
#include "exsum/instance.hpp"
#include "exsum/lseries.hpp"

namespace {

exsum::RationalFunction amusing() {
    // x^2 + x^{-2} over F_3
    auto F = exsum::Field::make(3, 1);
    std::vector<exsum::PoleBlock> poles(2);
    poles[0].coeffs = {F->zero(), F->one()};
    poles[1].location = F->zero();
    poles[1].coeffs = {F->zero(), F->one()};
    return exsum::RationalFunction::validate(F, poles);
}

void field_mul(benchmark::State& state) {
    auto F = exsum::Field::make(3, 6);
    auto x = F->element({1, 2, 0, 1, 0, 2});
    auto y = F->element({2, 1, 1, 0, 2, 1});
    for (auto _ : state) benchmark::DoNotOptimize(F->mul(x, y));
}
BENCHMARK(field_mul);

void cyclotomic_mul(benchmark::State& state) {
    exsum::CyclotomicInteger a(7, {1, 5, 2, 9, 3, 4});
    exsum::CyclotomicInteger b(7, {8, 1, 7, 2, 6, 5});
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(cyclotomic_mul);

void l_polynomial_direct(benchmark::State& state) {
    auto f = amusing();
    for (auto _ : state) benchmark::DoNotOptimize(exsum::l_polynomial(f));
}
BENCHMARK(l_polynomial_direct);

void fredholm(benchmark::State& state) {
    auto f = amusing();
    auto M = exsum::frobenius_matrix(f, 8);
    for (auto _ : state) benchmark::DoNotOptimize(exsum::fredholm_char_series(M, 3));
}
BENCHMARK(fredholm);

}  // namespace

BENCHMARK_MAIN();
