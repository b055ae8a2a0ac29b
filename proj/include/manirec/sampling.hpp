// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "manirec/grid_index.hpp"
#include "manirec/linalg.hpp"
#include "manirec/manifold.hpp"

namespace manirec {

struct FrameMode {
  enum class Kind { Exact, Perturbed, Pca };
  Kind kind = Kind::Exact;
  double parameter = 0.0;  // max angle (perturbed) or radius (pca)

  static FrameMode exact() { return {Kind::Exact, 0.0}; }
  static FrameMode perturbed(double max_angle) { return {Kind::Perturbed, max_angle}; }
  static FrameMode pca(double radius) { return {Kind::Pca, radius}; }
};

// Point sample of a manifold with one tangent frame per point. gamma is
// always exactly 4 * eps. The spatial index uses cells of the support radius
// m * gamma; rebuild_index() must be called after editing points directly.
struct SampleCloud {
  int d = 0;
  int m = 0;
  double eps = 0.0;
  double gamma = 0.0;
  Eigen::MatrixXd points;      // d x n, one column per sample
  std::vector<Frame> frames;   // n frames, each d x m
  int kappa_measured = 0;
  FrameMode frame_mode = FrameMode::exact();
  std::uint64_t seed = 0;
  bool degenerate = false;
  std::optional<ManifoldDescriptor> manifold;  // provenance, when generated

  GridIndex index;

  int size() const { return static_cast<int>(points.cols()); }
  double support_radius() const { return m * gamma; }

  void rebuild_index();

  // Sample indices with ||x - p|| strictly below `radius`, ascending.
  std::vector<int> indices_within(const Eigen::VectorXd& x, double radius) const;
  // Same with non-strict comparison.
  std::vector<int> indices_within_closed(const Eigen::VectorXd& x, double radius) const;
};

// Poisson-disk sample of the manifold: uniform candidate darts rejected below
// eps/2 ambient separation, then densified on a metric-aware parameter
// lattice until every lattice point has a sample within eps. Frames are the
// exact tangent frames. Requires eps in (0, reach/4].
SampleCloud generate_sample(const SyntheticManifold& manifold, double eps, std::uint64_t seed);

// Copy of the cloud with every frame rotated in a random tangent-normal
// 2-plane by an independent uniform angle in [0, max_angle). Requires
// 0 <= max_angle < pi/4; the realized angles are verified against the budget.
SampleCloud perturb_frames(const SampleCloud& cloud, double max_angle, std::uint64_t seed);

// Copy of the cloud with frames re-estimated as the m most dominant
// eigenvectors of the centered second-moment matrix of the neighbors within
// `radius` (>= 2 * eps). Throws InsufficientNeighborsError if any point has
// fewer than m + 1 neighbors.
SampleCloud estimate_frames_pca(const SampleCloud& cloud, double radius);

struct PackingReport {
  int max_count = 0;
  double bound = 0.0;
  bool pass = false;
  int n_centers = 0;
};

// Counts samples in balls of radius t * eps at random centers within 2*eps of
// the sampled manifold and compares against the (4t+1)^m * kappa bound.
// Requires t in [1, 1/sqrt(2*eps)].
PackingReport verify_packing(const SampleCloud& cloud, double t, int n_centers,
                             std::uint64_t seed);

}  // namespace manirec
