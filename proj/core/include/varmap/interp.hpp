#pragma once

// Deterministic tree-walking interpreter for the mini-C subset, plus
// input/output test suites and the pass/fail judge.

#include <cstdint>
#include <string>
#include <vector>

#include "varmap/ast.hpp"

namespace varmap::lang {

inline constexpr std::uint64_t kDefaultStepLimit = 10'000'000;

// Reads of never-written variables yield these sentinels and set a flag.
inline constexpr std::int32_t kUninitInt = 0x7FFF0001;

struct ExecutionResult {
  enum class Status { Ok, RuntimeError, StepLimitExceeded };

  std::string output;  // complete up to the point of failure
  Status status = Status::Ok;
  std::string error;   // RuntimeError detail
  bool used_uninitialized = false;
  std::uint64_t steps = 0;

  bool ok() const { return status == Status::Ok; }
};

ExecutionResult interpret(const Program& p, const std::string& stdin_text,
                          std::uint64_t step_limit = kDefaultStepLimit);

struct TestCase {
  std::string name;
  std::string input;
  std::string expected;
};

struct TestSuite {
  std::vector<TestCase> cases;
};

struct TestReport {
  int passed = 0;
  int total = 0;
  bool all_passed() const { return passed == total && total > 0; }
};

// Directory of paired files NN.in / NN.out. Throws std::runtime_error when
// empty or unpaired.
TestSuite load_test_suite(const std::string& dir);

// Strip trailing whitespace per line and trailing newlines.
std::string normalize_output(const std::string& text);

TestReport run_test_suite(const Program& p, const TestSuite& suite,
                          std::uint64_t step_limit = kDefaultStepLimit);

// Early-exits on the first failing case.
bool passes_suite(const Program& p, const TestSuite& suite,
                  std::uint64_t step_limit = kDefaultStepLimit);

}  // namespace varmap::lang
