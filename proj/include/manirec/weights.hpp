// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "manirec/errors.hpp"

namespace manirec {

struct SampleCloud;

// Intrinsic dimension and neighborhood radius of the weight field. The field
// around a sample has support radius exactly m * gamma.
template <class Scalar>
struct WeightParamsT {
  int m = 1;
  Scalar gamma = Scalar(0);

  WeightParamsT(int m_, Scalar gamma_) : m(m_), gamma(gamma_) {
    if (m < 1) throw DomainError("WeightParams: m must be >= 1");
    if (!(gamma > Scalar(0))) throw DomainError("WeightParams: gamma must be positive");
  }

  Scalar support_radius() const { return Scalar(m) * gamma; }
};

using WeightParams = WeightParamsT<double>;

// Compactly supported bump kernel
//   (1 - s/(m*gamma))^(2m) * (2s/gamma + 1)  for s in [0, m*gamma],
//   0                                        for s > m*gamma.
// Continuous and once-differentiable at the support boundary.
template <class Scalar>
Scalar bump(Scalar s, const WeightParamsT<Scalar>& params) {
  if (s < Scalar(0)) throw DomainError("bump: distance must be nonnegative");
  const Scalar radius = params.support_radius();
  if (s > radius) return Scalar(0);
  const Scalar base = Scalar(1) - s / radius;
  Scalar power = Scalar(1);
  for (int i = 0; i < 2 * params.m; ++i) power *= base;
  return power * (Scalar(2) * s / params.gamma + Scalar(1));
}

// Normalized weights of the samples strictly inside the support radius of x,
// as (sample index, weight) pairs sorted by index. The kernel values are
// accumulated first and divided in a second pass so the weights sum to one up
// to rounding. Throws OutOfSupportError when no sample is strictly inside.
std::vector<std::pair<int, double>> normalized_weights(const Eigen::VectorXd& x,
                                                       const SampleCloud& cloud);

}  // namespace manirec
