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

#include "qrc/signals.hpp"

#include <cmath>
#include <random>

#include "qrc/errors.hpp"

namespace qrc {

TimeSeries gen_grid_input(double t_start, double t_end, int n) {
  if (n < 2) throw ArgumentError("gen_grid_input: need n >= 2");
  if (!(t_end > t_start)) throw ArgumentError("gen_grid_input: need t_end > t_start");
  TimeSeries ts;
  ts.step = (t_end - t_start) / static_cast<double>(n - 1);
  ts.times.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ts.times[static_cast<std::size_t>(i)] = t_start + i * ts.step;
  ts.times.back() = t_end;
  ts.values = ts.times;
  return ts;
}

SinusoidTerms sample_sinusoid_terms(std::uint64_t seed, double f0, int n_terms) {
  if (n_terms < 1) throw ArgumentError("sample_sinusoid_terms: need n_terms >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> freq(2.0 * f0, std::abs(f0));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  SinusoidTerms out;
  for (int j = 0; j < n_terms; ++j) out.frequencies.push_back(freq(rng));
  for (int j = 0; j < n_terms; ++j) out.phases.push_back(phase(rng));
  return out;
}

TimeSeries gen_random_sinusoid(std::uint64_t seed, double f0, int n_terms, int n, double t_start, double t_end) {
  TimeSeries ts = gen_grid_input(t_start, t_end, n);
  const SinusoidTerms terms = sample_sinusoid_terms(seed, f0, n_terms);
  for (std::size_t i = 0; i < ts.times.size(); ++i) {
    double u = 0.0;
    for (std::size_t j = 0; j < terms.frequencies.size(); ++j) {
      u += std::sin(terms.frequencies[j] * ts.times[i] - terms.phases[j]);
    }
    ts.values[i] = u;
  }
  return ts;
}

double named_target(std::string_view name, double u) {
  if (name == "poly1") return u;
  if (name == "poly2") return u * u;
  if (name == "poly3") return u * u * u;
  if (name == "sin") return std::sin(u);
  if (name == "cos") return std::cos(u);
  if (name == "u2_minus_u3") return u * u - u * u * u;
  if (name == "trigpoly") {
    return u * std::sin(u) + u * u * std::cos(2.0 * u - 0.2) + u * u * u * std::sin(5.0 * u + 0.4) +
           u * u * u * u * std::cos(4.0 * u - 0.3);
  }
  throw ArgumentError("unknown target function '" + std::string(name) + "'");
}

std::vector<double> named_target(std::string_view name, std::span<const double> u) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = named_target(name, u[i]);
  return out;
}

std::vector<std::string> target_group(std::string_view name) {
  if (name == "group1") return {"poly1", "poly2", "poly3"};
  if (name == "group2") return {"sin", "cos"};
  named_target(name, 0.0);  // validates
  return {std::string(name)};
}

bool is_known_target(std::string_view name) {
  try {
    target_group(name);
    return true;
  } catch (const ArgumentError&) {
    return false;
  }
}

}  // namespace qrc
