// Copyright 2026 The fqharmonic Authors.
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


#ifndef FQHARMONIC_RUNNER_HPP_
#define FQHARMONIC_RUNNER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fqh {

struct RunConfig {
  std::string command = "verify";  // verify | construct | sweep | report
  std::string target = "gauss";    // gauss | fourier | energy | scheme |
                                   // distance | extension | sharp
  std::vector<int> q;
  std::vector<int> d;
  int m = 2;
  std::optional<int> j;
  std::string kind = "para";
  int rsize = 2;
  int trials = 50;
  std::uint64_t seed = 1;
  double c_test = 8.0;
  int qmax = 121;
  unsigned threads = 0;
};

enum class CheckStatus { kPass, kFail, kSkip };

std::string to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::kSkip;
  std::string lhs;
  std::string rhs;
  double tolerance = 0;
  double elapsed_ms = 0;
  int q = 0;
  int d = 0;
  std::string detail;
};

struct Report {
  std::string command;
  nlohmann::ordered_json params;
  std::vector<CheckRecord> checks;
  nlohmann::ordered_json extra;  // construction output, if any

  int count(CheckStatus s) const;
};

// Twelve significant digits.
std::string decimal(double x);

// Throws Error for invalid parameters.
Report run(const RunConfig& config);

nlohmann::ordered_json to_json(const Report& r, bool timing = true);
std::string to_csv(const Report& r, bool timing = true);

// 0 when nothing failed, 1 otherwise.
int exit_code(const Report& r);

}  // namespace fqh

#endif  // FQHARMONIC_RUNNER_HPP_
