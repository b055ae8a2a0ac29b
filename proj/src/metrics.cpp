// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#include "manirec/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "manirec/parallel.hpp"

namespace manirec {

AngleErrorReport normal_angle_error(const SampleCloud& cloud, const SyntheticManifold& manifold,
                                    int n_points, double offset, std::uint64_t seed,
                                    int threads) {
  if (n_points < 1) throw DomainError("normal_angle_error: n_points must be positive");
  if (offset > cloud.eps + 1e-15)
    throw DomainError("normal_angle_error: offset must not exceed eps");

  std::vector<double> angles(n_points, -1.0);
  parallel_for(n_points, threads, [&](int i) {
    Rng rng(substream_seed(seed, i));
    const Eigen::VectorXd z = manifold.random_point(rng);
    const Frame normal = manifold.normal_frame(z);
    const Eigen::VectorXd x =
        z + rng.uniform(0.0, offset) * (normal.matrix() * rng.unit_vector(normal.cols()));
    const EvalResult eval = evaluate(x, cloud);
    if (eval.status == SupportStatus::OutOfSupport) return;
    const Eigen::VectorXd foot = manifold.nearest_point(x);
    angles[i] = subspace_angle(*eval.normal_frame, manifold.normal_frame(foot));
  });

  AngleErrorReport report;
  double sum = 0.0;
  for (double a : angles) {
    if (a < 0.0) {
      ++report.n_excluded;
      continue;
    }
    ++report.n_used;
    sum += a;
    report.max_angle = std::max(report.max_angle, a);
  }
  if (report.n_used > 0) report.mean_angle = sum / report.n_used;
  return report;
}

HausdorffReport hausdorff_upper(const SampleCloud& cloud, const SyntheticManifold& manifold,
                                int n_seeds, std::uint64_t seed, const ProjectionOptions& opts,
                                int threads) {
  if (n_seeds < 1) throw DomainError("hausdorff_upper: n_seeds must be positive");

  std::vector<double> to_zero_set(n_seeds, -1.0);
  std::vector<double> to_manifold(n_seeds, -1.0);
  parallel_for(n_seeds, threads, [&](int i) {
    Rng rng(substream_seed(seed, i));
    const Eigen::VectorXd z = manifold.random_point(rng);
    const ProjectionTrace trace = project(z, cloud, opts);
    if (trace.status != ProjectionStatus::Converged) return;
    const Eigen::VectorXd& limit = trace.limit();
    to_zero_set[i] = (limit - z).norm();
    to_manifold[i] = (limit - manifold.nearest_point(limit)).norm();
  });

  HausdorffReport report;
  report.n_seeds = n_seeds;
  for (int i = 0; i < n_seeds; ++i) {
    if (to_zero_set[i] < 0.0) {
      ++report.n_failed;
      continue;
    }
    report.m_to_zero_set = std::max(report.m_to_zero_set, to_zero_set[i]);
    report.zero_set_to_m = std::max(report.zero_set_to_m, to_manifold[i]);
  }
  report.reliability_warning = report.n_failed * 100 > n_seeds;
  return report;
}

ZeroOffsetReport zero_offset(const SampleCloud& cloud, const SyntheticManifold& manifold,
                             int n_points, std::uint64_t seed, const ProjectionOptions& opts,
                             int threads) {
  if (n_points < 1) throw DomainError("zero_offset: n_points must be positive");

  std::vector<double> offsets(n_points, -1.0);
  parallel_for(n_points, threads, [&](int i) {
    Rng rng(substream_seed(seed, i));
    const Eigen::VectorXd z = manifold.random_point(rng);
    const ProjectionTrace trace = project(z, cloud, opts);
    if (trace.status != ProjectionStatus::Converged) return;
    offsets[i] = (trace.limit() - z).norm();
  });

  ZeroOffsetReport report;
  for (double v : offsets) {
    if (v < 0.0) {
      ++report.n_excluded;
      continue;
    }
    report.offsets.push_back(v);
    report.max_offset = std::max(report.max_offset, v);
  }
  return report;
}

ConvergenceReport convergence_report(const std::vector<ProjectionTrace>& traces) {
  if (traces.empty()) throw DomainError("convergence_report: need at least one trace");

  ConvergenceReport report;
  report.n_traces = static_cast<int>(traces.size());
  std::vector<double> factors;
  for (const ProjectionTrace& trace : traces) {
    report.max_iterations = std::max(report.max_iterations, trace.iterations());
    if (trace.status != ProjectionStatus::Converged) ++report.n_failures;
    try {
      factors.push_back(contraction_factor(trace));
    } catch (const InsufficientDataError&) {
      // short traces carry no rate information
    }
  }
  if (!factors.empty()) {
    std::sort(factors.begin(), factors.end());
    const std::size_t n = factors.size();
    report.median_contraction =
        n % 2 == 1 ? factors[n / 2] : 0.5 * (factors[n / 2 - 1] + factors[n / 2]);
  }
  return report;
}

FidelityReport fidelity_report(const SampleCloud& cloud, const SyntheticManifold& manifold,
                               int n_points, int n_seeds, std::uint64_t seed, int threads) {
  const AngleErrorReport angles =
      normal_angle_error(cloud, manifold, n_points, cloud.eps, splitmix64(seed ^ 1), threads);
  const HausdorffReport hausdorff =
      hausdorff_upper(cloud, manifold, n_seeds, splitmix64(seed ^ 2), {}, threads);
  const ZeroOffsetReport offsets =
      zero_offset(cloud, manifold, n_seeds, splitmix64(seed ^ 3), {}, threads);

  std::vector<ProjectionTrace> traces(n_seeds);
  parallel_for(n_seeds, threads, [&](int i) {
    Rng rng(substream_seed(splitmix64(seed ^ 4), i));
    traces[i] = project(manifold.random_point(rng), cloud, {});
  });
  const ConvergenceReport convergence = convergence_report(traces);

  FidelityReport report;
  report.eps = cloud.eps;
  report.max_normal_angle = angles.max_angle;
  report.hausdorff_m_to_zero_set = hausdorff.m_to_zero_set;
  report.hausdorff_zero_set_to_m = hausdorff.zero_set_to_m;
  report.zero_offset_max = offsets.max_offset;
  report.contraction_median = convergence.median_contraction;
  report.n_test_points = n_points;
  return report;
}

}  // namespace manirec
