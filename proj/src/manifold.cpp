// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#include "manirec/manifold.hpp"

#include <algorithm>
#include <cmath>

#include "manirec/errors.hpp"

namespace manirec {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kMedialGuard = 1e-9;  // times reach, which is 1
constexpr int kCurveGridSize = 4096;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w;
}

}  // namespace

std::string to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Circle: return "circle";
    case ManifoldKind::Sphere2: return "sphere2";
    case ManifoldKind::Torus3: return "torus3";
    case ManifoldKind::FlatTorus4: return "flat_torus4";
    case ManifoldKind::TrigCurve: return "trig_curve";
  }
  throw DomainError("unknown manifold kind");
}

ManifoldKind manifold_kind_from_string(const std::string& name) {
  if (name == "circle") return ManifoldKind::Circle;
  if (name == "sphere2") return ManifoldKind::Sphere2;
  if (name == "torus3") return ManifoldKind::Torus3;
  if (name == "flat_torus4") return ManifoldKind::FlatTorus4;
  if (name == "trig_curve") return ManifoldKind::TrigCurve;
  throw DomainError("unknown manifold kind: " + name);
}

SyntheticManifold::SyntheticManifold(ManifoldDescriptor desc) : desc_(std::move(desc)) {
  const int d = desc_.d;
  switch (desc_.kind) {
    case ManifoldKind::Circle:
      if (d < 2) throw DomainError("circle: ambient dimension must be >= 2");
      m_ = 1;
      measure_ = kTwoPi;
      break;
    case ManifoldKind::Sphere2:
      if (d != 3) throw DomainError("sphere2: ambient dimension must be 3");
      m_ = 2;
      measure_ = 4.0 * M_PI;
      break;
    case ManifoldKind::Torus3: {
      if (d != 3) throw DomainError("torus3: ambient dimension must be 3");
      if (!(desc_.minor_radius > 0) || !(desc_.major_radius > 2.0 * desc_.minor_radius))
        throw DomainError("torus3: need major_radius > 2 * minor_radius > 0");
      m_ = 2;
      // reach = minor radius; normalize it to 1
      scale_ = 1.0 / desc_.minor_radius;
      torus_major_ = desc_.major_radius * scale_;
      measure_ = 4.0 * M_PI * M_PI * torus_major_;
      break;
    }
    case ManifoldKind::FlatTorus4:
      if (d != 4) throw DomainError("flat_torus4: ambient dimension must be 4");
      m_ = 2;
      measure_ = kTwoPi * kTwoPi;
      break;
    case ManifoldKind::TrigCurve: {
      const int needed = 2 + 2 * static_cast<int>(desc_.frequencies.size());
      if (d < 4 || d < needed)
        throw DomainError("trig_curve: ambient dimension too small for the frequency list");
      if (desc_.frequencies.empty()) throw DomainError("trig_curve: need at least one frequency");
      if (!(desc_.amplitude > 0)) throw DomainError("trig_curve: amplitude must be positive");
      m_ = 1;
      break;
    }
  }

  if (desc_.seed != 0) {
    Rng rng(desc_.seed);
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = rng.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    rotation_ = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    // sign-fix against the R diagonal so the orientation is a pure function
    // of the seed
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
      if (r(j, j) < 0) rotation_.col(j) = -rotation_.col(j);
    rotated_ = true;
  }

  if (desc_.kind == ManifoldKind::TrigCurve) {
    // Normalize the reach to 1 numerically: the reach of a closed curve is
    // min(1/max curvature, half the bottleneck distance).
    const int n = kCurveGridSize;
    double max_curvature = 0.0;
    std::vector<Eigen::VectorXd> pts(n);
    for (int i = 0; i < n; ++i) {
      const double t = kTwoPi * i / n;
      Eigen::VectorXd c(d), c1 = Eigen::VectorXd::Zero(d), c2 = Eigen::VectorXd::Zero(d);
      c = Eigen::VectorXd::Zero(d);
      c[0] = std::cos(t);
      c[1] = std::sin(t);
      c1[0] = -std::sin(t);
      c1[1] = std::cos(t);
      c2[0] = -std::cos(t);
      c2[1] = -std::sin(t);
      for (std::size_t k = 0; k < desc_.frequencies.size(); ++k) {
        const double f = desc_.frequencies[k];
        const double a = desc_.amplitude;
        c[2 + 2 * k] = a * std::cos(f * t);
        c[3 + 2 * k] = a * std::sin(f * t);
        c1[2 + 2 * k] = -a * f * std::sin(f * t);
        c1[3 + 2 * k] = a * f * std::cos(f * t);
        c2[2 + 2 * k] = -a * f * f * std::cos(f * t);
        c2[3 + 2 * k] = -a * f * f * std::sin(f * t);
      }
      const double speed2 = c1.squaredNorm();
      const double num = speed2 * c2.squaredNorm() - std::pow(c1.dot(c2), 2);
      const double curvature = std::sqrt(std::max(0.0, num)) / std::pow(speed2, 1.5);
      max_curvature = std::max(max_curvature, curvature);
      pts[i] = c;
    }
    double bottleneck = std::numeric_limits<double>::infinity();
    const int min_sep = n / 16;
    for (int i = 0; i < n; ++i)
      for (int j = i + min_sep; j < std::min(n, i + n - min_sep); ++j)
        bottleneck = std::min(bottleneck, (pts[i] - pts[j]).norm());
    const double reach_raw = std::min(1.0 / max_curvature, bottleneck / 2.0);
    scale_ = 1.0 / reach_raw;

    curve_params_.resize(n);
    curve_grid_.resize(d, n);
    for (int i = 0; i < n; ++i) {
      curve_params_[i] = kTwoPi * i / n;
      curve_grid_.col(i) = from_base(pts[i] * scale_);
    }
    Eigen::VectorXd u(1);
    double length = 0.0;
    jacobian_max_ = 0.0;
    for (int i = 0; i < n; ++i) {
      u[0] = curve_params_[i];
      const double speed = base_differential(u).col(0).norm();
      jacobian_max_ = std::max(jacobian_max_, speed);
      length += speed * (kTwoPi / n);
    }
    measure_ = length;
  }

  // Per-axis stretch for lattice construction.
  axis_stretch_ = Eigen::VectorXd::Zero(m_);
  const Eigen::MatrixXd box = parameter_box();
  const int probe = 257;
  Eigen::VectorXd u(m_);
  if (m_ == 1) {
    for (int i = 0; i < probe; ++i) {
      u[0] = box(0, 0) + (box(0, 1) - box(0, 0)) * i / (probe - 1.0);
      axis_stretch_[0] = std::max(axis_stretch_[0], base_differential(u).col(0).norm());
    }
  } else {
    for (int i = 0; i < probe; ++i)
      for (int j = 0; j < probe; ++j) {
        u[0] = box(0, 0) + (box(0, 1) - box(0, 0)) * i / (probe - 1.0);
        u[1] = box(1, 0) + (box(1, 1) - box(1, 0)) * j / (probe - 1.0);
        const Eigen::MatrixXd diff = base_differential(u);
        for (int k = 0; k < m_; ++k)
          axis_stretch_[k] = std::max(axis_stretch_[k], diff.col(k).norm());
      }
  }
}

Eigen::MatrixXd SyntheticManifold::parameter_box() const {
  Eigen::MatrixXd box(m_, 2);
  for (int i = 0; i < m_; ++i) {
    box(i, 0) = 0.0;
    box(i, 1) = kTwoPi;
  }
  if (desc_.kind == ManifoldKind::Sphere2) box(0, 1) = M_PI;  // polar angle
  return box;
}

void SyntheticManifold::check_arity(const Eigen::VectorXd& u) const {
  if (u.size() != m_) throw DomainError("manifold: wrong parameter arity");
}

Eigen::VectorXd SyntheticManifold::to_base(const Eigen::VectorXd& x) const {
  return rotated_ ? Eigen::VectorXd(rotation_.transpose() * x) : x;
}

Eigen::VectorXd SyntheticManifold::from_base(const Eigen::VectorXd& x) const {
  return rotated_ ? Eigen::VectorXd(rotation_ * x) : x;
}

Eigen::VectorXd SyntheticManifold::base_embed(const Eigen::VectorXd& u) const {
  const int d = desc_.d;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
  switch (desc_.kind) {
    case ManifoldKind::Circle:
      p[0] = std::cos(u[0]);
      p[1] = std::sin(u[0]);
      break;
    case ManifoldKind::Sphere2:
      p[0] = std::sin(u[0]) * std::cos(u[1]);
      p[1] = std::sin(u[0]) * std::sin(u[1]);
      p[2] = std::cos(u[0]);
      break;
    case ManifoldKind::Torus3: {
      const double ring = torus_major_ + std::cos(u[1]);
      p[0] = ring * std::cos(u[0]);
      p[1] = ring * std::sin(u[0]);
      p[2] = std::sin(u[1]);
      break;
    }
    case ManifoldKind::FlatTorus4:
      p[0] = std::cos(u[0]);
      p[1] = std::sin(u[0]);
      p[2] = std::cos(u[1]);
      p[3] = std::sin(u[1]);
      break;
    case ManifoldKind::TrigCurve: {
      p[0] = std::cos(u[0]);
      p[1] = std::sin(u[0]);
      for (std::size_t k = 0; k < desc_.frequencies.size(); ++k) {
        const double f = desc_.frequencies[k];
        p[2 + 2 * k] = desc_.amplitude * std::cos(f * u[0]);
        p[3 + 2 * k] = desc_.amplitude * std::sin(f * u[0]);
      }
      p *= scale_;
      break;
    }
  }
  return p;
}

Eigen::MatrixXd SyntheticManifold::base_differential(const Eigen::VectorXd& u) const {
  const int d = desc_.d;
  Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(d, m_);
  switch (desc_.kind) {
    case ManifoldKind::Circle:
      diff(0, 0) = -std::sin(u[0]);
      diff(1, 0) = std::cos(u[0]);
      break;
    case ManifoldKind::Sphere2:
      diff(0, 0) = std::cos(u[0]) * std::cos(u[1]);
      diff(1, 0) = std::cos(u[0]) * std::sin(u[1]);
      diff(2, 0) = -std::sin(u[0]);
      diff(0, 1) = -std::sin(u[0]) * std::sin(u[1]);
      diff(1, 1) = std::sin(u[0]) * std::cos(u[1]);
      break;
    case ManifoldKind::Torus3: {
      const double ring = torus_major_ + std::cos(u[1]);
      diff(0, 0) = -ring * std::sin(u[0]);
      diff(1, 0) = ring * std::cos(u[0]);
      diff(0, 1) = -std::sin(u[1]) * std::cos(u[0]);
      diff(1, 1) = -std::sin(u[1]) * std::sin(u[0]);
      diff(2, 1) = std::cos(u[1]);
      break;
    }
    case ManifoldKind::FlatTorus4:
      diff(0, 0) = -std::sin(u[0]);
      diff(1, 0) = std::cos(u[0]);
      diff(2, 1) = -std::sin(u[1]);
      diff(3, 1) = std::cos(u[1]);
      break;
    case ManifoldKind::TrigCurve: {
      diff(0, 0) = -std::sin(u[0]);
      diff(1, 0) = std::cos(u[0]);
      for (std::size_t k = 0; k < desc_.frequencies.size(); ++k) {
        const double f = desc_.frequencies[k];
        diff(2 + 2 * k, 0) = -desc_.amplitude * f * std::sin(f * u[0]);
        diff(3 + 2 * k, 0) = desc_.amplitude * f * std::cos(f * u[0]);
      }
      diff *= scale_;
      break;
    }
  }
  return diff;
}

Eigen::VectorXd SyntheticManifold::embed(const Eigen::VectorXd& u) const {
  check_arity(u);
  return from_base(base_embed(u));
}

Eigen::MatrixXd SyntheticManifold::differential(const Eigen::VectorXd& u) const {
  check_arity(u);
  const Eigen::MatrixXd diff = base_differential(u);
  return rotated_ ? Eigen::MatrixXd(rotation_ * diff) : diff;
}

Eigen::VectorXd SyntheticManifold::curve_nearest_param(const Eigen::VectorXd& x_base) const {
  // Coarse scan over the cached polyline, then Newton on |c(t) - x|^2.
  const int n = static_cast<int>(curve_params_.size());
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  double second_d2 = best_d2;
  int second = -1;
  const Eigen::VectorXd x_world = from_base(x_base);
  for (int i = 0; i < n; ++i) {
    const double d2 = (curve_grid_.col(i) - x_world).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  for (int i = 0; i < n; ++i) {
    const int sep = std::min(std::abs(i - best), n - std::abs(i - best));
    if (sep > n / 32 && (curve_grid_.col(i) - x_world).squaredNorm() < second_d2) {
      second_d2 = (curve_grid_.col(i) - x_world).squaredNorm();
      second = i;
    }
  }
  if (second >= 0 && std::sqrt(second_d2) - std::sqrt(best_d2) < kMedialGuard)
    throw MedialAxisError("trig_curve: ambiguous nearest point");

  Eigen::VectorXd u(1);
  u[0] = curve_params_[best];
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::VectorXd c = base_embed(u);
    const Eigen::VectorXd c1 = base_differential(u).col(0);
    // second derivative by central difference of the analytic first
    const double h = 1e-6;
    Eigen::VectorXd up = u, um = u;
    up[0] += h;
    um[0] -= h;
    const Eigen::VectorXd c2 =
        (base_differential(up).col(0) - base_differential(um).col(0)) / (2 * h);
    const Eigen::VectorXd r = c - x_base;
    const double g = r.dot(c1);
    const double gg = c1.squaredNorm() + r.dot(c2);
    if (std::abs(gg) < 1e-18) break;
    const double step = g / gg;
    u[0] -= step;
    if (std::abs(step) < 1e-15) break;
  }
  u[0] = wrap_angle(u[0]);
  return u;
}

Eigen::VectorXd SyntheticManifold::nearest_point(const Eigen::VectorXd& x) const {
  if (x.size() != desc_.d) throw DomainError("nearest_point: wrong ambient dimension");
  const Eigen::VectorXd xb = to_base(x);
  Eigen::VectorXd zb = Eigen::VectorXd::Zero(desc_.d);
  switch (desc_.kind) {
    case ManifoldKind::Circle: {
      const double rho = std::hypot(xb[0], xb[1]);
      if (rho < kMedialGuard) throw MedialAxisError("circle: query on the axis of the circle");
      zb[0] = xb[0] / rho;
      zb[1] = xb[1] / rho;
      break;
    }
    case ManifoldKind::Sphere2: {
      const double rho = xb.norm();
      if (rho < kMedialGuard) throw MedialAxisError("sphere2: query at the center");
      zb = xb / rho;
      break;
    }
    case ManifoldKind::Torus3: {
      const double rho = std::hypot(xb[0], xb[1]);
      if (rho < kMedialGuard) throw MedialAxisError("torus3: query on the symmetry axis");
      Eigen::Vector3d ring(torus_major_ * xb[0] / rho, torus_major_ * xb[1] / rho, 0.0);
      Eigen::Vector3d w = xb.head<3>() - ring;
      const double wn = w.norm();
      if (wn < kMedialGuard) throw MedialAxisError("torus3: query on the core circle");
      zb.head<3>() = ring + w / wn;
      break;
    }
    case ManifoldKind::FlatTorus4: {
      const double r1 = std::hypot(xb[0], xb[1]);
      const double r2 = std::hypot(xb[2], xb[3]);
      if (r1 < kMedialGuard || r2 < kMedialGuard)
        throw MedialAxisError("flat_torus4: query on a factor axis");
      zb[0] = xb[0] / r1;
      zb[1] = xb[1] / r1;
      zb[2] = xb[2] / r2;
      zb[3] = xb[3] / r2;
      break;
    }
    case ManifoldKind::TrigCurve:
      return embed(curve_nearest_param(xb));
  }
  return from_base(zb);
}

double SyntheticManifold::implicit_residual(const Eigen::VectorXd& x) const {
  if (x.size() != desc_.d) throw DomainError("implicit_residual: wrong ambient dimension");
  const Eigen::VectorXd xb = to_base(x);
  switch (desc_.kind) {
    case ManifoldKind::Circle: {
      double res = std::abs(std::hypot(xb[0], xb[1]) - 1.0);
      for (int i = 2; i < desc_.d; ++i) res = std::max(res, std::abs(xb[i]));
      return res;
    }
    case ManifoldKind::Sphere2:
      return std::abs(xb.norm() - 1.0);
    case ManifoldKind::Torus3: {
      const double rho = std::hypot(xb[0], xb[1]);
      return std::abs(std::hypot(rho - torus_major_, xb[2]) - 1.0);
    }
    case ManifoldKind::FlatTorus4:
      return std::max(std::abs(std::hypot(xb[0], xb[1]) - 1.0),
                      std::abs(std::hypot(xb[2], xb[3]) - 1.0));
    case ManifoldKind::TrigCurve: {
      const Eigen::VectorXd z = embed(curve_nearest_param(xb));
      return (x - z).norm();
    }
  }
  throw DomainError("unknown manifold kind");
}

Eigen::VectorXd SyntheticManifold::parameters_of(const Eigen::VectorXd& z) const {
  const Eigen::VectorXd zb = to_base(z);
  Eigen::VectorXd u(m_);
  switch (desc_.kind) {
    case ManifoldKind::Circle:
      u[0] = wrap_angle(std::atan2(zb[1], zb[0]));
      break;
    case ManifoldKind::Sphere2:
      u[0] = std::acos(std::clamp(zb[2], -1.0, 1.0));
      u[1] = wrap_angle(std::atan2(zb[1], zb[0]));
      break;
    case ManifoldKind::Torus3: {
      const double rho = std::hypot(zb[0], zb[1]);
      u[0] = wrap_angle(std::atan2(zb[1], zb[0]));
      u[1] = wrap_angle(std::atan2(zb[2], rho - torus_major_));
      break;
    }
    case ManifoldKind::FlatTorus4:
      u[0] = wrap_angle(std::atan2(zb[1], zb[0]));
      u[1] = wrap_angle(std::atan2(zb[3], zb[2]));
      break;
    case ManifoldKind::TrigCurve:
      return curve_nearest_param(zb);
  }
  return u;
}

Frame SyntheticManifold::tangent_frame_at(const Eigen::VectorXd& u) const {
  check_arity(u);
  if (desc_.kind == ManifoldKind::Sphere2) {
    // chart degenerates at the poles; the radial normal never does
    const Eigen::VectorXd z = embed(u);
    const Eigen::VectorXd n = to_base(z).normalized();
    return FrameT<double>(from_base(orthogonal_complement(Frame(n)).matrix()));
  }
  return orthonormalize(differential(u));
}

Frame SyntheticManifold::tangent_frame(const Eigen::VectorXd& z) const {
  if (implicit_residual(z) > 1e-9) throw DomainError("tangent_frame: point is off the manifold");
  return tangent_frame_at(parameters_of(z));
}

Frame SyntheticManifold::normal_frame(const Eigen::VectorXd& z) const {
  return orthogonal_complement(tangent_frame(z));
}

Eigen::VectorXd SyntheticManifold::random_point(Rng& rng) const {
  return embed(random_parameters(rng));
}

Eigen::VectorXd SyntheticManifold::random_parameters(Rng& rng) const {
  Eigen::VectorXd u(m_);
  switch (desc_.kind) {
    case ManifoldKind::Circle:
      u[0] = rng.uniform(0.0, kTwoPi);
      break;
    case ManifoldKind::Sphere2:
      // area element sin(theta) dtheta dphi
      u[0] = std::acos(std::clamp(1.0 - 2.0 * rng.uniform(), -1.0, 1.0));
      u[1] = rng.uniform(0.0, kTwoPi);
      break;
    case ManifoldKind::Torus3: {
      u[0] = rng.uniform(0.0, kTwoPi);
      while (true) {
        const double v = rng.uniform(0.0, kTwoPi);
        const double accept = (torus_major_ + std::cos(v)) / (torus_major_ + 1.0);
        if (rng.uniform() <= accept) {
          u[1] = v;
          break;
        }
      }
      break;
    }
    case ManifoldKind::FlatTorus4:
      u[0] = rng.uniform(0.0, kTwoPi);
      u[1] = rng.uniform(0.0, kTwoPi);
      break;
    case ManifoldKind::TrigCurve:
      while (true) {
        const double t = rng.uniform(0.0, kTwoPi);
        Eigen::VectorXd ut(1);
        ut[0] = t;
        const double speed = base_differential(ut).col(0).norm();
        if (rng.uniform() * jacobian_max_ <= speed) {
          u[0] = t;
          break;
        }
      }
      break;
  }
  return u;
}

}  // namespace manirec
