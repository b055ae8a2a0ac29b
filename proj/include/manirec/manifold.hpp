// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "manirec/linalg.hpp"
#include "manirec/rng.hpp"

namespace manirec {

enum class ManifoldKind { Circle, Sphere2, Torus3, FlatTorus4, TrigCurve };

std::string to_string(ManifoldKind kind);
ManifoldKind manifold_kind_from_string(const std::string& name);

// Shape parameters are stored pre-scaling; every manifold is scaled at
// construction so its reach is exactly 1. `seed` selects a fixed random
// orthogonal orientation of the embedding (0 keeps it axis-aligned), which
// exercises codimensions beyond d = m + 1 for the curve families.
struct ManifoldDescriptor {
  ManifoldKind kind = ManifoldKind::Circle;
  int d = 2;
  std::uint64_t seed = 0;
  double major_radius = 3.0;           // torus3
  double minor_radius = 1.0;           // torus3
  std::vector<int> frequencies = {3};  // trig_curve harmonics
  double amplitude = 0.25;             // trig_curve
};

// Parametric ground-truth manifold with exact nearest-point map, tangent and
// normal frames, and unit reach. Immutable after construction; all queries
// are pure.
class SyntheticManifold {
 public:
  explicit SyntheticManifold(ManifoldDescriptor desc);

  const ManifoldDescriptor& descriptor() const { return desc_; }
  int ambient_dim() const { return desc_.d; }
  int intrinsic_dim() const { return m_; }
  double reach() const { return 1.0; }
  // Factor applied to the pre-scaling shape so the reach is 1.
  double scale() const { return scale_; }

  // Lower/upper parameter bounds, one row per intrinsic dimension.
  Eigen::MatrixXd parameter_box() const;

  Eigen::VectorXd embed(const Eigen::VectorXd& u) const;
  // Columns are the partial derivatives of embed at u.
  Eigen::MatrixXd differential(const Eigen::VectorXd& u) const;

  // Nearest point on the manifold. Queries within 1e-9 * reach of the medial
  // axis are rejected with MedialAxisError rather than resolved arbitrarily.
  Eigen::VectorXd nearest_point(const Eigen::VectorXd& x) const;

  // Max absolute violation of the defining equations at x.
  double implicit_residual(const Eigen::VectorXd& x) const;

  // Chart parameters of an on-manifold point.
  Eigen::VectorXd parameters_of(const Eigen::VectorXd& z) const;

  // Frames at an on-manifold point (implicit_residual <= 1e-9 required).
  Frame tangent_frame(const Eigen::VectorXd& z) const;
  Frame normal_frame(const Eigen::VectorXd& z) const;

  // Tangent frame straight from chart parameters; used by the sampler where
  // the parameters are already known.
  Frame tangent_frame_at(const Eigen::VectorXd& u) const;

  // Uniform draw with respect to the surface measure (Jacobian rejection).
  Eigen::VectorXd random_point(Rng& rng) const;
  Eigen::VectorXd random_parameters(Rng& rng) const;

  // Total length/area.
  double measure() const { return measure_; }

  // Per-axis max differential norm, for metric-aware parameter lattices.
  const Eigen::VectorXd& axis_stretch() const { return axis_stretch_; }

 private:
  Eigen::VectorXd base_embed(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd base_differential(const Eigen::VectorXd& u) const;
  void check_arity(const Eigen::VectorXd& u) const;
  Eigen::VectorXd to_base(const Eigen::VectorXd& x) const;    // rotation inverse
  Eigen::VectorXd from_base(const Eigen::VectorXd& x) const;  // rotation forward
  Eigen::VectorXd curve_nearest_param(const Eigen::VectorXd& x_base) const;

  ManifoldDescriptor desc_;
  int m_ = 1;
  double scale_ = 1.0;
  double torus_major_ = 3.0;  // post-scaling major radius; minor is 1
  Eigen::MatrixXd rotation_;  // d x d orthogonal
  bool rotated_ = false;
  double measure_ = 0.0;
  Eigen::VectorXd axis_stretch_;
  double jacobian_max_ = 1.0;
  Eigen::MatrixXd curve_grid_;   // cached curve polyline for nearest queries
  Eigen::VectorXd curve_params_;
};

}  // namespace manirec
