// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#include "manirec/projector.hpp"

#include <cmath>

namespace manirec {

Eigen::VectorXd step(const Eigen::VectorXd& x, const SampleCloud& cloud) {
  const EvalResult eval = evaluate(x, cloud);
  if (eval.status == SupportStatus::OutOfSupport)
    throw LeftSupportError("step: point has no sample within the support radius");
  // x + B B^t (a - x) == x - B * value, and the step length equals the
  // residual norm because B has orthonormal columns
  return x - eval.normal_frame->matrix() * eval.value;
}

ProjectionTrace project(const Eigen::VectorXd& x0, const SampleCloud& cloud,
                        const ProjectionOptions& opts) {
  opts.validate();

  ProjectionTrace trace;
  EvalResult eval = evaluate(x0, cloud);
  if (eval.status == SupportStatus::OutOfSupport)
    throw DomainError("project: x0 is not within the support radius of any sample");

  trace.iterates.push_back(x0);
  trace.residuals.push_back(eval.value_norm());
  if (trace.residuals.back() <= opts.residual_tol) {
    trace.status = ProjectionStatus::Converged;
    return trace;
  }

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const Eigen::VectorXd& x = trace.iterates.back();
    const Eigen::VectorXd next = x - eval.normal_frame->matrix() * eval.value;
    const double step_length = (next - x).norm();

    eval = evaluate(next, cloud);
    if (eval.status == SupportStatus::OutOfSupport) {
      trace.iterates.push_back(next);
      trace.residuals.push_back(0.0);
      trace.status = ProjectionStatus::LeftSupport;
      return trace;
    }
    trace.iterates.push_back(next);
    trace.residuals.push_back(eval.value_norm());
    if (step_length <= opts.step_tol || trace.residuals.back() <= opts.residual_tol) {
      trace.status = ProjectionStatus::Converged;
      return trace;
    }
  }
  trace.status = ProjectionStatus::MaxIters;
  return trace;
}

double contraction_factor(const ProjectionTrace& trace, double residual_tol) {
  std::size_t above = 0;
  while (above < trace.residuals.size() && trace.residuals[above] > residual_tol) ++above;
  if (above < 3)
    throw InsufficientDataError("contraction_factor: need at least three residuals above tolerance");
  const std::size_t last = above - 1;
  return std::pow(trace.residuals[last] / trace.residuals[1], 1.0 / static_cast<double>(last - 1));
}

}  // namespace manirec
