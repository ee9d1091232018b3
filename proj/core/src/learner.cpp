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

#include "qrc/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>

#include "qrc/errors.hpp"

namespace qrc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_same_length(std::size_t a, std::size_t b, const char* who) {
  if (a != b) throw ArgumentError(std::string(who) + ": targets and predictions differ in length");
}

// Sum of squared deviations from the mean. A constant series leaves a
// round-off residue of order n (eps |y|)^2 rather than an exact zero.
double centered_sum_squares(std::span<const double> y, const char* who) {
  if (y.size() < 2) throw ArgumentError(std::string(who) + ": need at least 2 samples");
  double mean = 0.0, peak = 0.0;
  for (double v : y) {
    mean += v;
    peak = std::max(peak, std::abs(v));
  }
  mean /= static_cast<double>(y.size());
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  const double floor = static_cast<double>(y.size()) * std::pow(64.0 * kEps * peak, 2);
  if (!(ss > floor)) throw UndefinedMetricError(std::string(who) + ": target has zero variance");
  return ss;
}

}  // namespace

EmbeddedFeatures delay_embed(const RealMatrix& features, int delta, bool bias) {
  const Eigen::Index k = features.rows();
  const Eigen::Index t = features.cols();
  if (delta < 0 || delta >= t) {
    throw ArgumentError("delay_embed: need 0 <= delta < T (delta = " + std::to_string(delta) +
                        ", T = " + std::to_string(t) + ")");
  }
  EmbeddedFeatures out;
  out.base_k = k;
  out.delays = delta;
  out.bias = bias;
  const Eigen::Index cols = t - delta;
  out.values.resize(k * (delta + 1) + (bias ? 1 : 0), cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (int j = 0; j <= delta; ++j) {
      out.values.col(c).segment(j * k, k) = features.col(c + delta - j);
    }
    if (bias) out.values(out.values.rows() - 1, c) = 1.0;
  }
  return out;
}

RealVector embed_window(std::span<const RealVector> newest_first, bool bias) {
  if (newest_first.empty()) throw ArgumentError("embed_window: empty history");
  const Eigen::Index k = newest_first.front().size();
  const auto depth = static_cast<Eigen::Index>(newest_first.size());
  RealVector out(k * depth + (bias ? 1 : 0));
  for (Eigen::Index j = 0; j < depth; ++j) {
    if (newest_first[static_cast<std::size_t>(j)].size() != k) {
      throw ArgumentError("embed_window: ragged history");
    }
    out.segment(j * k, k) = newest_first[static_cast<std::size_t>(j)];
  }
  if (bias) out[out.size() - 1] = 1.0;
  return out;
}

ReadoutWeights ridge_fit(const RealMatrix& features, const RealMatrix& targets, double lambda, bool bias) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ArgumentError("ridge_fit: lambda must be finite and > 0");
  }
  if (features.cols() != targets.cols()) {
    throw ArgumentError("ridge_fit: features have " + std::to_string(features.cols()) + " columns, targets " +
                        std::to_string(targets.cols()));
  }
  if (!features.allFinite() || !targets.allFinite()) {
    throw ValidationError("ridge_fit: non-finite features or targets");
  }
  const Eigen::Index k = features.rows();
  RealMatrix gram = RealMatrix::Identity(k, k) * lambda;
  gram.selfadjointView<Eigen::Lower>().rankUpdate(features);
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
  const RealMatrix rhs = features * targets.transpose();  // K' x D

  Eigen::LLT<RealMatrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw NumericalIntegrityError("ridge_fit: Gram matrix is not numerically positive definite");
  }
  RealMatrix wt = llt.solve(rhs);
  for (int pass = 0; pass < 2; ++pass) {
    const RealMatrix residual = rhs - gram * wt;
    wt += llt.solve(residual);
  }
  ReadoutWeights out;
  out.w = wt.transpose();
  out.lambda = lambda;
  out.bias = bias;
  return out;
}

double predict_one(const ReadoutWeights& weights, const RealVector& column, Eigen::Index output) {
  if (column.size() != weights.feature_dim()) {
    throw ArgumentError("predict: feature dimension " + std::to_string(column.size()) + " does not match weights (" +
                        std::to_string(weights.feature_dim()) + ")");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < column.size(); ++i) acc += weights.w(output, i) * column[i];
  return acc;
}

RealMatrix predict(const ReadoutWeights& weights, const RealMatrix& features) {
  if (features.rows() != weights.feature_dim()) {
    throw ArgumentError("predict: feature dimension " + std::to_string(features.rows()) +
                        " does not match weights (" + std::to_string(weights.feature_dim()) + ")");
  }
  RealMatrix out(weights.out_dim(), features.cols());
  for (Eigen::Index c = 0; c < features.cols(); ++c) {
    for (Eigen::Index d = 0; d < weights.out_dim(); ++d) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < features.rows(); ++i) acc += weights.w(d, i) * features(i, c);
      out(d, c) = acc;
    }
  }
  return out;
}

double nmse(std::span<const double> targets, std::span<const double> predictions) {
  require_same_length(targets.size(), predictions.size(), "nmse");
  const double ss = centered_sum_squares(targets, "nmse");
  double err = 0.0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const double e = targets[t] - predictions[t];
    err += e * e;
  }
  return err / ss;
}

std::vector<double> normalized_errors(std::span<const double> targets, std::span<const double> predictions) {
  require_same_length(targets.size(), predictions.size(), "normalized_errors");
  const double var = centered_sum_squares(targets, "normalized_errors") / static_cast<double>(targets.size());
  std::vector<double> out(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const double e = targets[t] - predictions[t];
    out[t] = std::isfinite(e) ? e * e / var : std::numeric_limits<double>::infinity();
  }
  return out;
}

int vpts_from_errors(std::span<const double> errors, double threshold) {
  for (std::size_t t = 0; t < errors.size(); ++t) {
    if (!(errors[t] < threshold)) return static_cast<int>(t);
  }
  return static_cast<int>(errors.size());
}

int vpts(std::span<const double> targets, std::span<const double> predictions, double threshold) {
  return vpts_from_errors(normalized_errors(targets, predictions), threshold);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "pearson");
  if (a.size() < 2) throw ArgumentError("pearson: need at least 2 samples");
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(b.size());
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw UndefinedMetricError("pearson: zero variance");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace qrc
