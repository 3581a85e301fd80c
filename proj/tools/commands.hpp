#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "nonarch/rational.hpp"

namespace cli {

enum Exit { kOk = 0, kUsage = 1, kVerification = 2, kPrecision = 3 };

struct RunConfig {
  nonarch::Rational order{4};
  double tau_c = 1e-9;
  int depth = 8;
  std::string format;  // empty: the command's own default
  std::uint64_t seed = 42;
};

struct Outcome {
  int code = kOk;
  std::string text;  // rendered in the requested format
  bool to_stderr = false;
};

struct FolkloreArgs {
  std::string space;
  nonarch::Rational energy{1}, e1{1}, e2{1};
  int n = 2;
};

struct SelftestArgs {
  std::string suite;
  nonarch::Rational cutoff{2};
  int trials = 20;
};

struct EvalArgs {
  std::string expr;
  std::string at;
};

struct SampleArgs {
  int count = 1000;
};

Outcome cmd_folklore(const RunConfig& cfg, const FolkloreArgs& a);
Outcome cmd_selftest(const RunConfig& cfg, const SelftestArgs& a);
Outcome cmd_eval(const RunConfig& cfg, const EvalArgs& a);
Outcome cmd_fibration_sample(const RunConfig& cfg, const SampleArgs& a);

// Exit code for a library error, and the report carrying it.
Outcome error_outcome(const RunConfig& cfg, const char* default_format, const std::string& command,
                      const nlohmann::ordered_json& inputs, const std::exception& e);

nlohmann::ordered_json config_json(const RunConfig& cfg);

}  // namespace cli
