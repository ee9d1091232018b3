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

// Readout training: delay embedding, ridge regression and error metrics.

#include <optional>
#include <span>
#include <vector>

#include "qrc/quantum_ops.hpp"

namespace qrc {

inline constexpr double kDefaultRidge = 1e-4;
inline constexpr double kDefaultVptsThreshold = 0.4;

/// Delay-augmented features.
///
/// Column c (0-based on the shortened axis) belongs to original sample
/// t = c + delays and stacks [phi(t); phi(t-1); ...; phi(t-delays)], followed
/// by a constant 1 when `bias` is set. Rows: base_k * (delays + 1) (+1).
struct EmbeddedFeatures {
  RealMatrix values;
  Eigen::Index base_k = 0;
  int delays = 0;
  bool bias = false;

  // Original sample index of embedded column c.
  Eigen::Index sample_index(Eigen::Index c) const { return c + delays; }
};

// Throws ArgumentError unless 0 <= delta < T.
EmbeddedFeatures delay_embed(const RealMatrix& features, int delta, bool bias = false);

// One embedded column from a history ordered newest first
// (history[0] = phi(t), history[j] = phi(t - j)); identical to the matching
// delay_embed column.
RealVector embed_window(std::span<const RealVector> newest_first, bool bias);

struct ReadoutWeights {
  RealMatrix w;  // out_dim x feature_dim
  double lambda = kDefaultRidge;
  bool bias = false;

  Eigen::Index feature_dim() const { return w.cols(); }
  Eigen::Index out_dim() const { return w.rows(); }
};

/// Ridge regression W = Y R^T (R R^T + lambda I)^-1.
///
/// Solved as (R R^T + lambda I) W^T = R Y^T with a Cholesky factorization of
/// the K' x K' Gram matrix plus two rounds of iterative refinement. `features`
/// is K' x T', `targets` D x T'. `bias` is only recorded in the result; a bias
/// row must already be part of `features`.
///
/// Throws ArgumentError for lambda <= 0 or mismatched column counts and
/// ValidationError for non-finite data.
ReadoutWeights ridge_fit(const RealMatrix& features, const RealMatrix& targets, double lambda = kDefaultRidge,
                         bool bias = false);

// W * features, accumulated column by column in a fixed order so that a
// single column reproduces the batch result bitwise.
RealMatrix predict(const ReadoutWeights& weights, const RealMatrix& features);
double predict_one(const ReadoutWeights& weights, const RealVector& column, Eigen::Index output = 0);

/// sum (y - yhat)^2 / sum (y - mean y)^2.
///
/// 0 for a perfect fit, 1 for the mean predictor. Throws ArgumentError for
/// length mismatch or fewer than 2 samples and UndefinedMetricError for a
/// constant target.
double nmse(std::span<const double> targets, std::span<const double> predictions);

// e_t = (y_t - yhat_t)^2 / Var(y), Var = mean squared deviation over the window.
std::vector<double> normalized_errors(std::span<const double> targets, std::span<const double> predictions);

// Index of the first t with e_t >= threshold; the full length if there is none.
int vpts(std::span<const double> targets, std::span<const double> predictions,
         double threshold = kDefaultVptsThreshold);
int vpts_from_errors(std::span<const double> errors, double threshold = kDefaultVptsThreshold);

double pearson(std::span<const double> a, std::span<const double> b);

struct MetricReport {
  double nmse = 0.0;
  std::optional<int> vpts;
  std::vector<double> step_errors;
};

}  // namespace qrc
