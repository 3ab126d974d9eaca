// Copyright 2026 The qseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference loop vs the OpenMP kernels on synthetic images.

#include <random>

#include <benchmark/benchmark.h>

#include "qseg/baselines.hpp"
#include "qseg/iqft.hpp"
#include "qseg/segment.hpp"

namespace {

qseg::RgbImage noise_image(std::size_t side) {
    std::mt19937_64 rng(1);
    qseg::RgbImage img(side, side);
    for (auto &v : img.data) {
        v = static_cast<std::uint8_t>(rng());
    }
    return img;
}

qseg::GrayImage noise_gray(std::size_t side) {
    std::mt19937_64 rng(2);
    qseg::GrayImage img(side, side);
    for (auto &v : img.data) {
        v = static_cast<double>(rng() % 256) / 255.0;
    }
    return img;
}

void BM_RgbSerial(benchmark::State &state) {
    const auto img = noise_image(static_cast<std::size_t>(state.range(0)));
    const auto params = qseg::AngleParams::uniform(qseg::kPi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qseg::reference::segment_rgb_serial(img, params));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.pixel_count()));
}

void BM_RgbOpenMP(benchmark::State &state) {
    const auto img = noise_image(static_cast<std::size_t>(state.range(0)));
    const auto params = qseg::AngleParams::uniform(qseg::kPi);
    const int saved = qseg::max_threads();
    qseg::set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qseg::segment_rgb(img, params));
    }
    qseg::set_num_threads(saved);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.pixel_count()));
}

void BM_GraySerial(benchmark::State &state) {
    const auto img = noise_gray(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qseg::reference::segment_gray_serial(img, qseg::kPi));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.pixel_count()));
}

void BM_GrayOpenMP(benchmark::State &state) {
    const auto img = noise_gray(static_cast<std::size_t>(state.range(0)));
    const int saved = qseg::max_threads();
    qseg::set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qseg::segment_gray(img, qseg::kPi));
    }
    qseg::set_num_threads(saved);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.pixel_count()));
}

void BM_KMeans(benchmark::State &state) {
    const auto img = noise_image(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qseg::kmeans_segment_image(img, 2, 0));
    }
}

void thread_args(benchmark::internal::Benchmark *b) {
    for (int side : {256, 512}) {
        for (int threads : {1, 2, 4}) {
            b->Args({side, threads});
        }
    }
}

} // namespace

BENCHMARK(BM_RgbSerial)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RgbOpenMP)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GraySerial)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GrayOpenMP)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KMeans)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
