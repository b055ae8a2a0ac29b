// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "manirec/linalg.hpp"
#include "manirec/sampling.hpp"

namespace manirec {

enum class SupportStatus { InSupport, OutOfSupport };

// One evaluation of the implicit field at a query point. In support, `value`
// is the component of (x - centroid) along the local normal frame; out of
// support the field is zero by definition and the frames are absent.
struct EvalResult {
  Eigen::VectorXd value;              // (d - m)-vector
  std::optional<Frame> normal_frame;  // d x (d - m)
  std::optional<Frame> tangent_frame; // d x m
  Eigen::VectorXd eigenvalues;        // ascending, empty out of support
  Eigen::VectorXd centroid;           // weighted sample centroid
  SupportStatus status = SupportStatus::OutOfSupport;
  double spectral_gap = 0.0;
  bool degenerate_spectrum = false;

  double value_norm() const { return value.norm(); }
};

// Sample indices strictly inside the support radius m * gamma, ascending.
std::vector<int> neighbors(const Eigen::VectorXd& x, const SampleCloud& cloud);

// Weighted tangent covariance: sum of w_p * T_p T_p^t over the neighbors.
// Symmetric positive semidefinite with trace m. Throws OutOfSupportError
// when x has no neighbor.
Eigen::MatrixXd tangent_covariance(const Eigen::VectorXd& x, const SampleCloud& cloud);

struct NormalFrameResult {
  Frame frame;                 // d x (d - m), the least dominant eigenvectors
  Eigen::VectorXd eigenvalues; // ascending
  double spectral_gap = 0.0;   // lambda_{d-m+1} - lambda_{d-m}, ascending indexing
  bool degenerate = false;     // gap below 0.1: the split is not meaningful
};

// Eigen-split of a covariance matrix into the local normal frame.
NormalFrameResult local_normal_frame(const Eigen::MatrixXd& covariance, int m);

// Full field evaluation. Never throws for out-of-support queries: the field
// is zero there and the status records it.
EvalResult evaluate(const Eigen::VectorXd& x, const SampleCloud& cloud);

}  // namespace manirec
