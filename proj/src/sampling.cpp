// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#include "manirec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "manirec/errors.hpp"
#include "manirec/rng.hpp"

namespace manirec {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Saturation density of sequential disk insertion, used only to size the
// dart budget: ~0.75 per unit length in 1D, ~0.55 disk packing in 2D.
double estimated_sample_count(const SyntheticManifold& manifold, double eps) {
  if (manifold.intrinsic_dim() == 1) return 0.75 * manifold.measure() / (eps / 2.0);
  const double disk = M_PI * (eps / 4.0) * (eps / 4.0);
  return 0.55 * manifold.measure() / disk;
}

}  // namespace

void SampleCloud::rebuild_index() {
  index = GridIndex(d, support_radius());
  for (int i = 0; i < size(); ++i) index.insert(i, points.col(i));
}

std::vector<int> SampleCloud::indices_within(const Eigen::VectorXd& x, double radius) const {
  return index.query_lt(x, radius, points);
}

std::vector<int> SampleCloud::indices_within_closed(const Eigen::VectorXd& x,
                                                    double radius) const {
  return index.query_le(x, radius, points);
}

SampleCloud generate_sample(const SyntheticManifold& manifold, double eps, std::uint64_t seed) {
  if (!(eps > 0.0) || eps > 0.25 * manifold.reach())
    throw DomainError("generate_sample: eps must be in (0, reach/4]");

  const int d = manifold.ambient_dim();
  const int m = manifold.intrinsic_dim();
  const double separation = eps / 2.0;

  Eigen::Index count = 0;
  Eigen::MatrixXd accepted(d, 1024);
  Eigen::MatrixXd params(m, 1024);
  GridIndex dart_index(d, eps);

  auto try_insert = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& p) {
    if (dart_index.any_within(p, separation, accepted)) return false;
    if (count == accepted.cols()) {
      accepted.conservativeResize(Eigen::NoChange, accepted.cols() * 2);
      params.conservativeResize(Eigen::NoChange, params.cols() * 2);
    }
    accepted.col(count) = p;
    params.col(count) = u;
    dart_index.insert(static_cast<int>(count), p);
    ++count;
    return true;
  };

  // Phase 1: dart throwing, uniform on the manifold.
  Rng rng(seed);
  const double target = estimated_sample_count(manifold, eps);
  const long attempts = std::min<long>(static_cast<long>(10.0 * target) + 64, 60000000L);
  const Eigen::MatrixXd box = manifold.parameter_box();
  for (long a = 0; a < attempts; ++a) {
    const Eigen::VectorXd u = manifold.random_parameters(rng);
    try_insert(u, manifold.embed(u));
  }

  // Phase 2: densify on a parameter lattice whose ambient spacing is at most
  // eps/2 per axis, inserting any lattice point not covered within 0.75*eps.
  // A clean pass doubles as the density check.
  Eigen::VectorXi lattice(m);
  for (int k = 0; k < m; ++k) {
    const double range = box(k, 1) - box(k, 0);
    const double stretch = std::max(manifold.axis_stretch()[k], 1e-12);
    lattice[k] =
        std::max<int>(m == 1 ? 10000 : 200, static_cast<int>(std::ceil(range * stretch / separation)));
  }
  const double cover_radius = 0.75 * eps;
  for (int pass = 0; pass < 8; ++pass) {
    long inserted = 0;
    Eigen::VectorXd u(m);
    if (m == 1) {
      for (int i = 0; i < lattice[0]; ++i) {
        u[0] = box(0, 0) + (box(0, 1) - box(0, 0)) * i / lattice[0];
        const Eigen::VectorXd p = manifold.embed(u);
        if (!dart_index.any_within(p, cover_radius, accepted) && try_insert(u, p)) ++inserted;
      }
    } else {
      for (int i = 0; i < lattice[0]; ++i) {
        u[0] = box(0, 0) + (box(0, 1) - box(0, 0)) * i / lattice[0];
        for (int j = 0; j < lattice[1]; ++j) {
          u[1] = box(1, 0) + (box(1, 1) - box(1, 0)) * j / lattice[1];
          const Eigen::VectorXd p = manifold.embed(u);
          if (!dart_index.any_within(p, cover_radius, accepted) && try_insert(u, p)) ++inserted;
        }
      }
    }
    if (inserted == 0) break;
  }

  SampleCloud cloud;
  cloud.d = d;
  cloud.m = m;
  cloud.eps = eps;
  cloud.gamma = 4.0 * eps;
  cloud.seed = seed;
  cloud.frame_mode = FrameMode::exact();
  cloud.manifold = manifold.descriptor();
  const int n = static_cast<int>(count);
  cloud.points = accepted.leftCols(n);
  cloud.frames.reserve(n);
  for (int i = 0; i < n; ++i) cloud.frames.push_back(manifold.tangent_frame_at(params.col(i)));
  cloud.degenerate = n < 2;
  cloud.rebuild_index();

  // kappa is measured, not assumed: max ball count at 100 random centers.
  int kappa = 0;
  if (n > 0) {
    for (int c = 0; c < 100; ++c) {
      const int idx = static_cast<int>(rng.uniform_index(n));
      kappa = std::max(kappa,
                       static_cast<int>(cloud.indices_within_closed(cloud.points.col(idx), eps).size()));
    }
  }
  cloud.kappa_measured = kappa;
  return cloud;
}

SampleCloud perturb_frames(const SampleCloud& cloud, double max_angle, std::uint64_t seed) {
  if (max_angle < 0.0 || max_angle >= M_PI / 4.0)
    throw DomainError("perturb_frames: max_angle must be in [0, pi/4)");

  SampleCloud out = cloud;
  out.frame_mode = FrameMode::perturbed(max_angle);
  out.seed = seed;
  if (max_angle == 0.0) return out;

  Rng rng(seed);
  const int d = cloud.d;
  for (int i = 0; i < cloud.size(); ++i) {
    const Frame& tangent = cloud.frames[i];
    const Frame normal = orthogonal_complement(tangent);
    const Eigen::VectorXd t = (tangent.matrix() * rng.unit_vector(tangent.cols())).normalized();
    const Eigen::VectorXd n = (normal.matrix() * rng.unit_vector(normal.cols())).normalized();
    const double angle = rng.uniform(0.0, max_angle);
    // rotation by `angle` in the span{t, n} plane
    Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(d, d);
    rot += (std::cos(angle) - 1.0) * (t * t.transpose() + n * n.transpose());
    rot += std::sin(angle) * (n * t.transpose() - t * n.transpose());
    out.frames[i] = Frame(rot * tangent.matrix());
    const double realized = subspace_angle(out.frames[i], tangent);
    if (realized > max_angle + 1e-10)
      throw NumericError("perturb_frames: realized angle exceeded the budget");
  }
  return out;
}

SampleCloud estimate_frames_pca(const SampleCloud& cloud, double radius) {
  if (radius < 2.0 * cloud.eps)
    throw DomainError("estimate_frames_pca: radius must be at least 2 * eps");

  SampleCloud out = cloud;
  out.frame_mode = FrameMode::pca(radius);
  for (int i = 0; i < cloud.size(); ++i) {
    const std::vector<int> nbrs = cloud.indices_within_closed(cloud.points.col(i), radius);
    if (static_cast<int>(nbrs.size()) < cloud.m + 1)
      throw InsufficientNeighborsError("estimate_frames_pca: point " + std::to_string(i) +
                                       " has fewer than m + 1 neighbors");
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(cloud.d);
    for (int j : nbrs) mean += cloud.points.col(j);
    mean /= static_cast<double>(nbrs.size());
    Eigen::MatrixXd second_moment = Eigen::MatrixXd::Zero(cloud.d, cloud.d);
    for (int j : nbrs) {
      const Eigen::VectorXd delta = cloud.points.col(j) - mean;
      second_moment += delta * delta.transpose();
    }
    const SymmetricSpectrum spectrum = sym_eig(second_moment);
    out.frames[i] = Frame(spectrum.eigenvectors.matrix().rightCols(cloud.m));
  }
  return out;
}

PackingReport verify_packing(const SampleCloud& cloud, double t, int n_centers,
                             std::uint64_t seed) {
  if (t < 1.0 || (cloud.eps > 0.0 && t > 1.0 / std::sqrt(2.0 * cloud.eps)))
    throw DomainError("verify_packing: t outside [1, 1/sqrt(2 eps)]");

  PackingReport report;
  report.n_centers = n_centers;
  report.bound = std::pow(4.0 * t + 1.0, cloud.m) * cloud.kappa_measured;
  if (cloud.size() == 0) {
    report.pass = true;
    return report;
  }

  Rng rng(seed);
  for (int c = 0; c < n_centers; ++c) {
    const int idx = static_cast<int>(rng.uniform_index(cloud.size()));
    const Eigen::VectorXd center =
        cloud.points.col(idx) + rng.uniform(0.0, 2.0 * cloud.eps) * rng.unit_vector(cloud.d);
    const int count =
        static_cast<int>(cloud.indices_within_closed(center, t * cloud.eps).size());
    report.max_count = std::max(report.max_count, count);
  }
  report.pass = report.max_count <= report.bound;
  return report;
}

}  // namespace manirec
