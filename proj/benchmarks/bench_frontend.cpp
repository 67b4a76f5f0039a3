#include <string>

#include "benchmark/benchmark.h"
#include "varmap/interp.hpp"
#include "varmap/parse.hpp"
#include "varmap/print.hpp"

namespace {

const char* kCounting = R"(int main() {
    int n, i;
    scanf("%d", &n);
    for (i = 1; i <= n; i++) {
        printf("%d\n", i);
    }
    return 0;
}
)";

const char* kDivisors = R"(int is_divisor(int n, int d) {
    if (n % d == 0) {
        return 1;
    }
    return 0;
}

int main() {
    int num, k, divisors;
    scanf("%d", &num);
    divisors = 0;
    for (k = 1; k <= num; k++) {
        divisors = divisors + is_divisor(num, k);
    }
    printf("%d\n", divisors);
    return 0;
}
)";

void BM_Parse(benchmark::State& state) {
  std::string src = kDivisors;
  for (auto _ : state) {
    auto p = varmap::lang::parse(src);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_Parse);

void BM_PrettyPrint(benchmark::State& state) {
  auto p = varmap::lang::parse(kDivisors);
  for (auto _ : state) {
    auto text = varmap::lang::pretty_print(p);
    benchmark::DoNotOptimize(text);
  }
}
BENCHMARK(BM_PrettyPrint);

void BM_Interpret(benchmark::State& state) {
  auto p = varmap::lang::parse(kCounting);
  std::string input = std::to_string(state.range(0));
  for (auto _ : state) {
    auto r = varmap::lang::interpret(p, input);
    benchmark::DoNotOptimize(r.output);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Interpret)->Arg(10)->Arg(100)->Arg(1000);

void BM_InterpretCallHeavy(benchmark::State& state) {
  auto p = varmap::lang::parse(kDivisors);
  std::string input = std::to_string(state.range(0));
  for (auto _ : state) {
    auto r = varmap::lang::interpret(p, input);
    benchmark::DoNotOptimize(r.output);
  }
}
BENCHMARK(BM_InterpretCallHeavy)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
