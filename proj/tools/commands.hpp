// Copyright 2026 The sal Authors
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

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sal/linalg.hpp"

namespace sal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 2;
inline constexpr int kExitConfig = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string protocol;  // cost-sweep / qsl-check: teleport | sce | cae
  // teleport
  std::vector<std::size_t> n_sectors{1};
  std::string gate = "none";
  std::optional<Operator> custom_gate;
  std::string mode = "superadiabatic";
  std::string cd = "analytic";
  std::vector<std::string> schedules{"linear"};
  // controlled
  std::size_t n_controls = 0;
  std::array<double, 3> axis{1.0, 0.0, 0.0};
  double phi = 3.14159265358979323846;
  std::vector<double> theta0s{3.14159265358979323846};
  std::optional<std::size_t> activation;
  // shared
  std::vector<double> taus{1.0};
  double omega = 1.0;
  std::size_t grid = 2001;
  std::size_t steps = 0;
  std::size_t states = 1;
  std::uint64_t seed = 1;
  std::size_t jobs = 0;  // 0: logical cores
  std::string output;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string csv;
  std::vector<std::string> violations;
};

// Throws ConfigError on values outside their documented domains.
void validate(const RunConfig& config);

// Merges a JSON object (keys named like the long flags) into config.
void apply_json(RunConfig& config, const std::string& json_text);

// "pi", "pi/2", "3pi/4", "0.5", ...
double parse_angle(const std::string& text);
std::array<double, 3> parse_axis(const std::string& text);

CommandResult run_command(const RunConfig& config);

CommandResult cmd_teleport(const RunConfig& config);
CommandResult cmd_controlled(const RunConfig& config);  // cae and sce
CommandResult cmd_cost_sweep(const RunConfig& config);
CommandResult cmd_theta_opt(const RunConfig& config);
CommandResult cmd_qsl_check(const RunConfig& config);
CommandResult cmd_selftest(const RunConfig& config);

// Worker count: SAL_JOBS, else config.jobs, else hardware concurrency.
std::size_t resolve_jobs(std::size_t requested);

// Runs fn(0..count-1) on a pool; results are returned in index order and the
// first exception (by index) is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, std::size_t jobs,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

// Full CLI entry point; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace sal::cli
