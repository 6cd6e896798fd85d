#pragma once

// Command-line front end as a library, so that tests can drive the exact
// code paths of the executable in-process.

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stab::cli {

/// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kDomainFailure = 1, kInputError = 2 };

/// `args` excludes the program name, e.g. {"lex", "obj.json", "--level", "2"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SuiteOptions {
  std::uint64_t seed = 0;
  int count = 100;
  unsigned threads = 1;
  bool inject_fault = false;
};

struct PropertyResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string first_failure;
};

struct SuiteReport {
  SuiteOptions options;
  std::vector<PropertyResult> properties;

  bool pass() const;
  nlohmann::json to_json() const;
};

SuiteReport run_suite(const SuiteOptions& options);

}  // namespace stab::cli
