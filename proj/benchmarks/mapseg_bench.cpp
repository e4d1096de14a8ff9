#include <benchmark/benchmark.h>

#include <random>

#include "mapseg/mapseg.hpp"

namespace {

mapseg::QuantizedImage random_image(std::size_t side, std::size_t m) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<mapseg::ClassIndex> cls(0, static_cast<mapseg::ClassIndex>(m - 1));
  std::vector<mapseg::ClassIndex> idx(side * side);
  for (auto& c : idx) c = cls(rng);
  return mapseg::QuantizedImage::from_indices(side, side, std::move(idx));
}

void BM_Matvec(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto img = random_image(side, 16);
  const mapseg::AffinityOperator op(img, mapseg::MrfParams{});
  std::vector<double> v(op.size(), 1.0), out(op.size());
  mapseg::AffinityOperator::Workspace ws;
  for (auto _ : state) {
    op.apply(v, out, ws);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * op.size()));
}
BENCHMARK(BM_Matvec)->Arg(100)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMicrosecond);

void BM_Segment(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  std::vector<mapseg::Rgb> px(side * side);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> noise(-20, 20);
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const int base = x < side / 2 ? 200 : 50;
      const auto c = static_cast<std::uint8_t>(base + noise(rng));
      px[y * side + x] = mapseg::Rgb{c, static_cast<std::uint8_t>(255 - c), 90};
    }
  }
  const mapseg::RgbImage img(side, side, std::move(px));
  for (auto _ : state) {
    auto r = mapseg::segment(img);
    benchmark::DoNotOptimize(r.labels);
  }
}
BENCHMARK(BM_Segment)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
