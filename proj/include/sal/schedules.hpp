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

#include <optional>
#include <string_view>

// Interpolation schedules s -> (eta_i, eta_f) on [0, 1], with exact
// derivatives, and the linear angle law of the controlled protocols.

namespace sal {

enum class ScheduleFamily { kLinear, kTrig, kExp };

struct ScheduleValue {
  double eta_i;
  double eta_f;
  double d_eta_i;
  double d_eta_f;
};

class Schedule {
 public:
  explicit Schedule(ScheduleFamily family = ScheduleFamily::kLinear)
      : family_(family) {}

  ScheduleFamily family() const noexcept { return family_; }
  std::string_view name() const noexcept;

  // Throws InvalidArgument for s outside [0, 1].
  ScheduleValue operator()(double s) const;

  // sqrt(eta_i^2 + eta_f^2); the teleport gap is 2*omega times this.
  double chi(double s) const;

 private:
  ScheduleFamily family_;
};

// "linear", "trig", "exp".
std::optional<ScheduleFamily> parse_schedule(std::string_view name);

// theta(s) = theta0 * s with theta0 in (0, pi].
class AngleLaw {
 public:
  explicit AngleLaw(double theta0);
  double theta0() const noexcept { return theta0_; }
  double operator()(double s) const noexcept { return theta0_ * s; }
  double rate() const noexcept { return theta0_; }

 private:
  double theta0_;
};

}  // namespace sal
