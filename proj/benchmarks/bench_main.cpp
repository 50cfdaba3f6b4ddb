#include "mds/algtop.hpp"
#include "mds/bisim.hpp"
#include "mds/natsys.hpp"
#include "mds/reparam.hpp"
#include "mds/sample.hpp"
#include "mds/text_io.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

namespace {

mds::GlobularComplex decl(const std::string& file) {
  std::ifstream in(std::string(FIXTURES_DIR) + "/" + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return mds::parse_gcx(ss.str(), file);
}

/// n filled squares glued corner to corner.
mds::GlobularComplex square_chain(int n) {
  mds::GlobularComplex x;
  auto s = [](int i) { return "p" + std::to_string(i); };
  x.states.push_back(s(0));
  for (int i = 0; i < n; ++i) {
    const std::string k = std::to_string(i);
    x.states.push_back("u" + k);
    x.states.push_back("l" + k);
    x.states.push_back(s(i + 1));
    x.edges.push_back({"a" + k, s(i), "u" + k});
    x.edges.push_back({"b" + k, "u" + k, s(i + 1)});
    x.edges.push_back({"c" + k, s(i), "l" + k});
    x.edges.push_back({"d" + k, "l" + k, s(i + 1)});
    x.cells2.push_back({"q" + k, {"a" + k, "b" + k}, {"c" + k, "d" + k}});
  }
  return x;
}

void BM_PathComplex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto x = mds::Complex::build(square_chain(n));
  const auto a = x.state("p0"), b = x.state("p" + std::to_string(n));
  for (auto _ : state) benchmark::DoNotOptimize(mds::path_complex(x, a, b));
}
BENCHMARK(BM_PathComplex)->DenseRange(2, 8, 2);

void BM_Homology(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto x = mds::Complex::build(square_chain(n));
  auto p = mds::path_complex(x, x.state("p0"), x.state("p" + std::to_string(n)));
  auto c = mds::chain_complex(p);
  for (auto _ : state) benchmark::DoNotOptimize(mds::homology(c, 1));
}
BENCHMARK(BM_Homology)->DenseRange(2, 6, 2);

void BM_SmithNormalForm(benchmark::State& state) {
  mds::Sampler rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  mds::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-9, 9);
  for (auto _ : state) benchmark::DoNotOptimize(mds::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(6)->Arg(12)->Arg(24);

void BM_NaturalSystem(benchmark::State& state) {
  auto x = mds::Complex::build(square_chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(mds::natural_system(x, mds::Valuation::homology(1)));
}
BENCHMARK(BM_NaturalSystem)->DenseRange(1, 3);

void BM_Bisimilar(benchmark::State& state) {
  auto x = mds::Complex::build(decl("fig_a.gcx"));
  auto y = mds::Complex::build(mds::subdivide_2cell(x.decl(), "c2", static_cast<int>(state.range(0))).complex);
  const auto val = mds::Valuation::pi0();
  auto f = mds::natural_system(x, val);
  auto g = mds::natural_system(y, val);
  mds::ValueAdapter adapter(val);
  for (auto _ : state) benchmark::DoNotOptimize(mds::bisimilar(f.diagram, g.diagram, adapter));
}
BENCHMARK(BM_Bisimilar)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Renormalize(benchmark::State& state) {
  mds::Sampler rng(8);
  auto word = rng.word(static_cast<std::size_t>(state.range(0)));
  mds::Clock phi(rng.clock(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(mds::renormalize(word, phi));
}
BENCHMARK(BM_Renormalize)->Arg(2)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
