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

#include "sal/schedules.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sal/errors.hpp"

namespace sal {

std::string_view Schedule::name() const noexcept {
  switch (family_) {
    case ScheduleFamily::kLinear: return "linear";
    case ScheduleFamily::kTrig: return "trig";
    case ScheduleFamily::kExp: return "exp";
  }
  return "linear";
}

ScheduleValue Schedule::operator()(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidArgument("schedule parameter " + std::to_string(s) +
                          " outside [0, 1]");
  }
  using std::numbers::pi;
  using std::numbers::e;
  switch (family_) {
    case ScheduleFamily::kLinear:
      return {1.0 - s, s, -1.0, 1.0};
    case ScheduleFamily::kTrig: {
      const double c = std::cos(0.5 * pi * s), sn = std::sin(0.5 * pi * s);
      return {c, sn, -0.5 * pi * sn, 0.5 * pi * c};
    }
    case ScheduleFamily::kExp: {
      const double norm = e - 1.0;
      const double a = std::exp(1.0 - s), b = std::exp(s);
      return {(a - 1.0) / norm, (b - 1.0) / norm, -a / norm, b / norm};
    }
  }
  throw InvalidArgument("unknown schedule family");
}

double Schedule::chi(double s) const {
  const ScheduleValue v = (*this)(s);
  return std::hypot(v.eta_i, v.eta_f);
}

std::optional<ScheduleFamily> parse_schedule(std::string_view name) {
  if (name == "linear") return ScheduleFamily::kLinear;
  if (name == "trig") return ScheduleFamily::kTrig;
  if (name == "exp") return ScheduleFamily::kExp;
  return std::nullopt;
}

AngleLaw::AngleLaw(double theta0) : theta0_(theta0) {
  if (!(theta0 > 0.0 && theta0 <= std::numbers::pi)) {
    throw InvalidArgument("theta0 must lie in (0, pi], got " + std::to_string(theta0));
  }
}

}  // namespace sal
