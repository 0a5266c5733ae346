// Copyright 2026 The eprlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <numbers>
#include <string>
#include <variant>

#include "eprlab/errors.hpp"
#include "eprlab/operator_core.hpp"

namespace eprlab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Rotation angle of a quadrature q(alpha) = q cos(alpha) - p sin(alpha),
/// stored reduced to [0, 2 pi).
class QuadratureSetting {
 public:
  explicit QuadratureSetting(double alpha);
  double alpha() const { return alpha_; }
  bool operator==(const QuadratureSetting&) const = default;

 private:
  double alpha_;
};

/// Position (alpha = 0).
inline const QuadratureSetting kPositionAngle{0.0};
/// Momentum: q(3 pi / 2) = p.
inline const QuadratureSetting kMomentumAngle{1.5 * std::numbers::pi};

/// Free-evolution time for q(t) = q + p t.
class TimeSetting {
 public:
  explicit TimeSetting(double t);
  double t() const { return t_; }
  bool operator==(const TimeSetting&) const = default;

 private:
  double t_;
};

using Setting = std::variant<op::UnitVector3, QuadratureSetting, TimeSetting>;

enum class SettingKind { kDirection = 0, kQuadrature = 1, kTime = 2 };

inline SettingKind kind_of(const Setting& s) { return static_cast<SettingKind>(s.index()); }

std::string to_string(SettingKind kind);

/// Typed access that reports a kind mismatch as ValidationError.
template <typename T>
const T& setting_as(const Setting& s) {
  if (const T* p = std::get_if<T>(&s)) return *p;
  throw ValidationError("setting kind mismatch: got " + to_string(kind_of(s)));
}

}  // namespace eprlab
