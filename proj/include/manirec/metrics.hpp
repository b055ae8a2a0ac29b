// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "manirec/manifold.hpp"
#include "manirec/projector.hpp"
#include "manirec/sampling.hpp"

namespace manirec {

struct AngleErrorReport {
  double max_angle = 0.0;
  double mean_angle = 0.0;
  int n_used = 0;
  int n_excluded = 0;
};

// Angle between the estimated normal frame and the true normal space at the
// nearest manifold point, over random points within `offset` of the manifold.
// Out-of-support draws are excluded and counted.
AngleErrorReport normal_angle_error(const SampleCloud& cloud, const SyntheticManifold& manifold,
                                    int n_points, double offset, std::uint64_t seed,
                                    int threads = 1);

struct HausdorffReport {
  double m_to_zero_set = 0.0;  // max over seeds z of ||limit(z) - z||
  double zero_set_to_m = 0.0;  // max over limits y of ||y - nearest(y)||
  int n_seeds = 0;
  int n_failed = 0;
  bool reliability_warning = false;  // more than 1% of seeds did not converge
};

// Directed Hausdorff estimates between the manifold and the zero set, using
// projector limits as certified zero-set members.
HausdorffReport hausdorff_upper(const SampleCloud& cloud, const SyntheticManifold& manifold,
                                int n_seeds, std::uint64_t seed,
                                const ProjectionOptions& opts = {}, int threads = 1);

struct ZeroOffsetReport {
  std::vector<double> offsets;  // per converged seed
  double max_offset = 0.0;
  int n_excluded = 0;
};

// Landing distance ||limit(z) - z|| for random points z on the manifold.
ZeroOffsetReport zero_offset(const SampleCloud& cloud, const SyntheticManifold& manifold,
                             int n_points, std::uint64_t seed,
                             const ProjectionOptions& opts = {}, int threads = 1);

struct ConvergenceReport {
  std::optional<double> median_contraction;  // absent when no trace qualifies
  int max_iterations = 0;
  int n_failures = 0;
  int n_traces = 0;
};

ConvergenceReport convergence_report(const std::vector<ProjectionTrace>& traces);

struct FidelityReport {
  double eps = 0.0;
  double max_normal_angle = 0.0;
  double hausdorff_m_to_zero_set = 0.0;
  double hausdorff_zero_set_to_m = 0.0;
  double zero_offset_max = 0.0;
  std::optional<double> contraction_median;
  int n_test_points = 0;
};

// Full verification pass: composes the angle, Hausdorff, landing-offset, and
// convergence measurements over one cloud/manifold pair.
FidelityReport fidelity_report(const SampleCloud& cloud, const SyntheticManifold& manifold,
                               int n_points, int n_seeds, std::uint64_t seed, int threads = 1);

}  // namespace manirec
