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


#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qrc/errors.hpp"
#include "qrc/learner.hpp"

namespace qrc {
namespace {

RealMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  RealMatrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j) {
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = z(rng);
  }
  return m;
}

double ridge_objective(const RealMatrix& w, const RealMatrix& r, const RealMatrix& y, double lambda) {
  return (y - w * r).squaredNorm() + lambda * w.squaredNorm();
}

TEST(DelayEmbed, ConstructionOracle) {
  RealMatrix f(2, 6);
  for (int t = 0; t < 6; ++t) {
    f(0, t) = 10 * t;
    f(1, t) = 10 * t + 1;
  }
  const EmbeddedFeatures e = delay_embed(f, 2, true);
  ASSERT_EQ(e.values.rows(), 2 * 3 + 1);
  ASSERT_EQ(e.values.cols(), 4);
  for (Eigen::Index c = 0; c < 4; ++c) {
    const Eigen::Index t = e.sample_index(c);
    EXPECT_EQ(t, c + 2);
    for (int j = 0; j <= 2; ++j) {
      EXPECT_EQ(e.values(2 * j, c), 10.0 * (t - j));
      EXPECT_EQ(e.values(2 * j + 1, c), 10.0 * (t - j) + 1);
    }
    EXPECT_EQ(e.values(6, c), 1.0);
  }
}

TEST(DelayEmbed, ZeroDelayIsIdentity) {
  const RealMatrix f = random_matrix(3, 7, 1);
  EXPECT_EQ(delay_embed(f, 0).values, f);
}

TEST(DelayEmbed, RejectsBadDelta) {
  const RealMatrix f = random_matrix(3, 5, 1);
  EXPECT_THROW(delay_embed(f, 5), ArgumentError);
  EXPECT_THROW(delay_embed(f, -1), ArgumentError);
  EXPECT_NO_THROW(delay_embed(f, 4));
}

TEST(DelayEmbed, WindowMatchesColumn) {
  const RealMatrix f = random_matrix(4, 20, 2);
  const EmbeddedFeatures e = delay_embed(f, 5, true);
  std::vector<RealVector> history;
  for (int j = 0; j <= 5; ++j) history.push_back(f.col(12 - j));
  EXPECT_EQ(embed_window(history, true), e.values.col(12 - 5));
}

TEST(Ridge, RecoversPlantedSolution) {
  const RealMatrix r = random_matrix(6, 200, 3);
  const RealMatrix w_true = random_matrix(2, 6, 4);
  const RealMatrix y = w_true * r;
  const ReadoutWeights w = ridge_fit(r, y, 1e-12);
  EXPECT_LT((w.w - w_true).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Ridge, MinimizesObjectiveUnderPerturbation) {
  const RealMatrix r = random_matrix(8, 60, 5);
  const RealMatrix y = random_matrix(2, 60, 6);
  const double lambda = 0.3;
  const ReadoutWeights w = ridge_fit(r, y, lambda);
  const double best = ridge_objective(w.w, r, y, lambda);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> z(0.0, 1e-3);
  for (int trial = 0; trial < 50; ++trial) {
    RealMatrix delta(2, 8);
    for (Eigen::Index i = 0; i < delta.size(); ++i) delta.data()[i] = z(rng);
    EXPECT_GT(ridge_objective(w.w + delta, r, y, lambda), best) << "trial " << trial;
  }
}

TEST(Ridge, NormShrinksAndErrorGrowsWithLambda) {
  const RealMatrix r = random_matrix(10, 40, 8);
  const RealMatrix y = random_matrix(1, 40, 9);
  double last_norm = std::numeric_limits<double>::infinity();
  double last_err = -1.0;
  for (double lambda : {1e-6, 1e-3, 1e-1, 1.0, 10.0, 1e3}) {
    const ReadoutWeights w = ridge_fit(r, y, lambda);
    const double norm = w.w.norm();
    const double err = (y - w.w * r).squaredNorm();
    EXPECT_LT(norm, last_norm);
    EXPECT_GT(err, last_err);
    last_norm = norm;
    last_err = err;
  }
}

TEST(Ridge, ErrorPaths) {
  const RealMatrix r = random_matrix(3, 10, 1);
  const RealMatrix y = random_matrix(1, 10, 2);
  EXPECT_THROW(ridge_fit(r, y, 0.0), ArgumentError);
  EXPECT_THROW(ridge_fit(r, y, -1.0), ArgumentError);
  EXPECT_THROW(ridge_fit(r, random_matrix(1, 9, 2), 1e-4), ArgumentError);
  RealMatrix bad = r;
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ridge_fit(bad, y, 1e-4), ValidationError);
}

TEST(Predict, MatchesNaiveProduct) {
  const RealMatrix r = random_matrix(5, 30, 10);
  ReadoutWeights w;
  w.w = random_matrix(3, 5, 11);
  const RealMatrix p = predict(w, r);
  for (Eigen::Index c = 0; c < 30; ++c) {
    for (Eigen::Index d = 0; d < 3; ++d) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < 5; ++i) acc += w.w(d, i) * r(i, c);
      EXPECT_NEAR(p(d, c), acc, 1e-13);
      EXPECT_EQ(predict_one(w, r.col(c), d), p(d, c));
    }
  }
  EXPECT_THROW(predict(w, random_matrix(4, 2, 1)), ArgumentError);
}

TEST(Metrics, NmseReferencePoints) {
  const std::vector<double> y{1.0, 3.0, 2.0, 6.0};
  EXPECT_EQ(nmse(y, y), 0.0);
  const std::vector<double> mean(4, 3.0);
  EXPECT_NEAR(nmse(y, mean), 1.0, 1e-15);
}

TEST(Metrics, NmseScaleInvariance) {
  const RealMatrix a = random_matrix(2, 50, 12);
  std::vector<double> y(50), p(50);
  for (int i = 0; i < 50; ++i) {
    y[i] = a(0, i);
    p[i] = a(0, i) + 0.1 * a(1, i);
  }
  const double base = nmse(y, p);
  for (double scale : {1e-6, 0.3, 7.0, 1e5}) {
    std::vector<double> ys(50), ps(50);
    for (int i = 0; i < 50; ++i) {
      ys[i] = scale * y[i];
      ps[i] = scale * p[i];
    }
    EXPECT_NEAR(nmse(ys, ps), base, 1e-12 * base);
  }
}

TEST(Metrics, NmseErrors) {
  const std::vector<double> c(5, 2.0);
  EXPECT_THROW(nmse(c, c), UndefinedMetricError);
  EXPECT_THROW(nmse(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0}), ArgumentError);
  EXPECT_THROW(nmse(std::vector<double>{1.0}, std::vector<double>{1.0}), ArgumentError);
}

TEST(Metrics, Vpts) {
  // Var(y) = 1.25 for y = {0, 1, 2, 3}.
  const std::vector<double> y{0.0, 1.0, 2.0, 3.0};
  EXPECT_EQ(vpts(y, y), 4);
  const std::vector<double> p{0.0, 1.5, 2.0, 3.0};  // e_1 = 0.25 / 1.25 = 0.2
  EXPECT_EQ(vpts(y, p), 4);
  const std::vector<double> q{0.0, 1.0, 2.8, 0.0};  // e_2 = 0.64 / 1.25 = 0.512
  EXPECT_EQ(vpts(y, q), 2);
  const std::vector<double> errors{0.1, 0.39, 0.4, 0.1};
  EXPECT_EQ(vpts_from_errors(errors), 2);
  EXPECT_EQ(vpts_from_errors(std::vector<double>{}), 0);
  const std::vector<double> nan_pred{0.0, std::nan(""), 0.0, 0.0};
  EXPECT_EQ(vpts(y, nan_pred), 1);
}

TEST(Metrics, Pearson) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  const std::vector<double> c{5, 4, 3, 2, 1};
  EXPECT_NEAR(pearson(a, b), 1.0, 1e-15);
  EXPECT_NEAR(pearson(a, c), -1.0, 1e-15);
  EXPECT_THROW(pearson(a, std::vector<double>(5, 1.0)), UndefinedMetricError);
}

}  // namespace
}  // namespace qrc
