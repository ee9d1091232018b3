// Copyright 2026 The qrc Authors
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

// Input signals and pointwise targets for the benchmark tasks.

#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qrc {

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  double step = 0.0;

  std::size_t size() const noexcept { return values.size(); }
};

// Inclusive uniform grid on [t_start, t_end]; values = times.
// Throws ArgumentError for n < 2 or t_end <= t_start.
TimeSeries gen_grid_input(double t_start, double t_end, int n);

struct SinusoidTerms {
  std::vector<double> frequencies;  // omega_j ~ Normal(2 f0, f0)
  std::vector<double> phases;       // phi_j ~ Uniform[0, 2 pi)
};

// std::mt19937_64(seed): all frequencies first, then all phases.
SinusoidTerms sample_sinusoid_terms(std::uint64_t seed, double f0, int n_terms);

// u(t) = sum_j sin(omega_j t - phi_j) on an inclusive grid over
// [t_start, t_end] (default [0, 2 pi]).
TimeSeries gen_random_sinusoid(std::uint64_t seed, double f0 = 20.0, int n_terms = 5, int n = 1000,
                               double t_start = 0.0, double t_end = 2.0 * std::numbers::pi);

// Pointwise target functions: poly1 (u), poly2 (u^2), poly3 (u^3), sin, cos,
// u2_minus_u3 (u^2 - u^3) and
//   trigpoly(t) = t sin t + t^2 cos(2t - 0.2) + t^3 sin(5t + 0.4) + t^4 cos(4t - 0.3).
// Throws ArgumentError for unknown names.
double named_target(std::string_view name, double u);
std::vector<double> named_target(std::string_view name, std::span<const double> u);

// Expands "group1" -> {poly1, poly2, poly3}, "group2" -> {sin, cos}; any
// single target name maps to itself.
std::vector<std::string> target_group(std::string_view name);

bool is_known_target(std::string_view name);

}  // namespace qrc
