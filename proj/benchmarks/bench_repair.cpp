#include "benchmark/benchmark.h"
#include "varmap/mapping.hpp"
#include "varmap/parse.hpp"
#include "varmap/repair.hpp"

namespace {

const char* kBuggy = R"(void loop(int j, int l) {
    while (l >= j) {
        printf("%d\n", j);
        ++j;
    }
}

int main() {
    int j, l;
    scanf("%d", &l);
    loop(j, l);
    return 0;
}
)";

const char* kCorrect = R"(int main() {
    int n, i;
    scanf("%d", &n);
    for (i = 1; i <= n; i++) {
        printf("%d\n", i);
    }
    return 0;
}
)";

varmap::lang::TestSuite counting_suite() {
  varmap::lang::TestSuite suite;
  suite.cases.push_back({"01", "1", "1\n"});
  suite.cases.push_back({"02", "4", "1\n2\n3\n4\n"});
  suite.cases.push_back({"03", "6", "1\n2\n3\n4\n5\n6\n"});
  return suite;
}

void BM_RepairWithOracleMapping(benchmark::State& state) {
  auto buggy = varmap::lang::parse(kBuggy);
  auto correct = varmap::lang::parse(kCorrect);
  auto bg = varmap::graph::build_graph(buggy);
  auto cg = varmap::graph::build_graph(correct);
  auto suite = counting_suite();
  for (auto _ : state) {
    auto stream = varmap::model::single_mapping(
        varmap::model::mapping_from_assignment(bg, cg, {1, 0, 1, 0}));
    auto outcome = varmap::repair::repair(buggy, correct, *stream, suite);
    benchmark::DoNotOptimize(outcome);
  }
}
BENCHMARK(BM_RepairWithOracleMapping);

void BM_CandidateGeneration(benchmark::State& state) {
  auto buggy = varmap::lang::parse(kBuggy);
  auto correct = varmap::lang::parse(kCorrect);
  auto bg = varmap::graph::build_graph(buggy);
  auto cg = varmap::graph::build_graph(correct);
  auto mapping = varmap::model::mapping_from_assignment(bg, cg, {1, 0, 1, 0});
  for (auto _ : state) {
    auto candidates = varmap::repair::repair_me(buggy, correct, mapping);
    benchmark::DoNotOptimize(candidates);
  }
}
BENCHMARK(BM_CandidateGeneration);

void BM_SuiteRun(benchmark::State& state) {
  auto p = varmap::lang::parse(kCorrect);
  auto suite = counting_suite();
  for (auto _ : state) {
    bool ok = varmap::lang::passes_suite(p, suite);
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_SuiteRun);

}  // namespace

BENCHMARK_MAIN();
