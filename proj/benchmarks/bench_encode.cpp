#include "benchmark/benchmark.h"
#include "varmap/graph.hpp"
#include "varmap/model.hpp"
#include "varmap/parse.hpp"
#include "varmap/train.hpp"

namespace {

const char* kSortThree = R"(int main() {
    int a, b, c, t;
    scanf("%d %d %d", &a, &b, &c);
    if (a > b) {
        t = a;
        a = b;
        b = t;
    }
    if (b > c) {
        t = b;
        b = c;
        c = t;
    }
    if (a > b) {
        t = a;
        a = b;
        b = t;
    }
    printf("%d %d %d\n", a, b, c);
    return 0;
}
)";

void BM_BuildGraph(benchmark::State& state) {
  auto p = varmap::lang::parse(kSortThree);
  for (auto _ : state) {
    auto g = varmap::graph::build_graph(p);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_BuildGraph);

void BM_Encode(benchmark::State& state) {
  auto p = varmap::lang::parse(kSortThree);
  auto g = varmap::graph::build_graph(p);
  auto params = varmap::model::init_params(static_cast<int>(state.range(0)), 31, 1);
  for (auto _ : state) {
    auto x = varmap::model::rgcn_encode(g, varmap::model::Side::Buggy, params);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Encode)->Arg(16)->Arg(64);

void BM_TrainStep(benchmark::State& state) {
  auto p = varmap::lang::parse(kSortThree);
  varmap::model::TrainSample s;
  s.buggy_graph = varmap::graph::build_graph(p);
  s.correct_graph = s.buggy_graph;
  for (int i = 0; i < s.buggy_graph.num_vars(); ++i) s.labels.push_back(i);
  s.prepare();
  auto params = varmap::model::init_params(static_cast<int>(state.range(0)), 31, 1);
  auto grads = varmap::model::zeros_like_params(params);
  for (auto _ : state) {
    double loss = varmap::model::loss_and_gradients(s, params, grads);
    benchmark::DoNotOptimize(loss);
  }
}
BENCHMARK(BM_TrainStep)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
