// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "manirec/implicit_fn.hpp"

namespace manirec {

struct ProjectionOptions {
  int max_iters = 100;
  double step_tol = 1e-12;
  double residual_tol = 1e-11;

  void validate() const {
    if (max_iters < 0) throw DomainError("ProjectionOptions: max_iters must be >= 0");
    if (!(step_tol > 0) || !(residual_tol > 0))
      throw DomainError("ProjectionOptions: tolerances must be positive");
  }
};

enum class ProjectionStatus { Converged, MaxIters, LeftSupport };

struct ProjectionTrace {
  std::vector<Eigen::VectorXd> iterates;  // x_0 ... x_k
  std::vector<double> residuals;          // field norm at each iterate
  ProjectionStatus status = ProjectionStatus::MaxIters;

  const Eigen::VectorXd& limit() const { return iterates.back(); }
  int iterations() const { return static_cast<int>(iterates.size()) - 1; }
};

// One application of the projection operator: the projection of the weighted
// centroid onto the affine subspace through x spanned by the local normal
// frame. Throws LeftSupportError when x has no neighbor.
Eigen::VectorXd step(const Eigen::VectorXd& x, const SampleCloud& cloud);

// Iterates `step` from x0 until the step length or the residual drops below
// tolerance, the iteration budget is exhausted, or an iterate leaves the
// support. x0 itself must be within the support radius of some sample
// (DomainError otherwise).
ProjectionTrace project(const Eigen::VectorXd& x0, const SampleCloud& cloud,
                        const ProjectionOptions& opts = {});

// Geometric-mean ratio of successive residuals over the tail of the trace
// (iterations 2..k), using residuals above `residual_tol` only. Requires at
// least three such residuals (InsufficientDataError otherwise).
double contraction_factor(const ProjectionTrace& trace, double residual_tol = 1e-11);

}  // namespace manirec
