#include "qhardy/pipeline.hpp"
#include "qhardy/scale_space.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace qhardy;

namespace {

ScalarField test_image(int n) {
    ScalarField img(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) img.at(r, c) = 128.0 + 100.0 * std::sin(0.11 * r) * std::cos(0.07 * c);
    }
    return img;
}

// Direct 2-D correlation with the outer-product kernel, replicate border.
ScalarField naive_filter(const ScalarField& img, const std::vector<double>& k1, const std::vector<double>& k2) {
    const int h1 = static_cast<int>(k1.size()) / 2;
    const int h2 = static_cast<int>(k2.size()) / 2;
    ScalarField out(img.height(), img.width());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            double acc = 0.0;
            for (int n2 = -h2; n2 <= h2; ++n2) {
                for (int n1 = -h1; n1 <= h1; ++n1) acc += k2[n2 + h2] * k1[n1 + h1] * img.clamped(r - n2, c - n1);
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

std::vector<double> taps(double y) {
    return sample_kernel(KernelSpec::with_default_truncation(y), KernelKind::poisson, 1.0);
}

void BM_SeparableFilter(benchmark::State& state) {
    const ScalarField img = test_image(static_cast<int>(state.range(0)));
    const std::vector<double> k = taps(static_cast<double>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(separable_filter(img, k, k));
}

void BM_NaiveFilter(benchmark::State& state) {
    const ScalarField img = test_image(static_cast<int>(state.range(0)));
    const std::vector<double> k = taps(static_cast<double>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(naive_filter(img, k, k));
}

void BM_HardyLift(benchmark::State& state) {
    const ScalarField img = test_image(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hardy_lift(img, 0.3, 0.3));
}

void BM_Detect(benchmark::State& state) {
    const ScalarField img = test_image(512);
    PipelineConfig cfg;
    cfg.detector = static_cast<DetectorKind>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(img, cfg));
    state.SetLabel(std::string(to_string(cfg.detector)));
}

}  // namespace

BENCHMARK(BM_SeparableFilter)->Args({512, 2})->Args({512, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NaiveFilter)->Args({512, 2})->Args({512, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HardyLift)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Detect)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
