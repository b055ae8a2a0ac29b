// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "manirec/errors.hpp"

namespace manirec {

// Uniform hash grid over points in R^d. Cells are addressed by the floor of
// the coordinates divided by the cell size; hash collisions between cells are
// harmless because every query filters by exact distance.
class GridIndex {
 public:
  GridIndex() = default;

  GridIndex(int dim, double cell_size) : dim_(dim), cell_(cell_size) {
    if (dim < 1) throw DomainError("GridIndex: dimension must be positive");
    if (!(cell_size > 0)) throw DomainError("GridIndex: cell size must be positive");
  }

  int dim() const { return dim_; }
  double cell_size() const { return cell_; }
  std::size_t size() const { return count_; }

  void insert(int index, const Eigen::VectorXd& p) {
    cells_[cell_key(p)].push_back(index);
    ++count_;
  }

  // True iff some stored point (looked up in `points`, one column per point)
  // lies within `radius` of x (strict comparison). Early-exits on first hit.
  bool any_within(const Eigen::VectorXd& x, double radius, const Eigen::MatrixXd& points) const {
    const double r2 = radius * radius;
    bool hit = false;
    visit_cells(x, radius, [&](const std::vector<int>& bucket) {
      for (int i : bucket) {
        if ((points.col(i) - x).squaredNorm() < r2) {
          hit = true;
          return false;
        }
      }
      return true;
    });
    return hit;
  }

  // Indices of stored points with ||p - x|| < radius (strict), ascending.
  std::vector<int> query_lt(const Eigen::VectorXd& x, double radius,
                            const Eigen::MatrixXd& points) const {
    return query_impl(x, radius, points, /*strict=*/true);
  }

  // Indices of stored points with ||p - x|| <= radius, ascending.
  std::vector<int> query_le(const Eigen::VectorXd& x, double radius,
                            const Eigen::MatrixXd& points) const {
    return query_impl(x, radius, points, /*strict=*/false);
  }

 private:
  std::vector<int> query_impl(const Eigen::VectorXd& x, double radius,
                              const Eigen::MatrixXd& points, bool strict) const {
    const double r2 = radius * radius;
    std::vector<int> out;
    visit_cells(x, radius, [&](const std::vector<int>& bucket) {
      for (int i : bucket) {
        const double d2 = (points.col(i) - x).squaredNorm();
        if (strict ? d2 < r2 : d2 <= r2) out.push_back(i);
      }
      return true;
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  std::int64_t coord(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }

  std::uint64_t key_of(const std::vector<std::int64_t>& c) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : c) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::uint64_t cell_key(const Eigen::VectorXd& p) const {
    std::vector<std::int64_t> c(dim_);
    for (int i = 0; i < dim_; ++i) c[i] = coord(p[i]);
    return key_of(c);
  }

  // Odometer walk over all cells intersecting the ball B(x, radius).
  template <class Visit>
  void visit_cells(const Eigen::VectorXd& x, double radius, Visit&& visit) const {
    std::vector<std::int64_t> lo(dim_), hi(dim_), cur(dim_);
    for (int i = 0; i < dim_; ++i) {
      lo[i] = coord(x[i] - radius);
      hi[i] = coord(x[i] + radius);
      cur[i] = lo[i];
    }
    while (true) {
      auto it = cells_.find(key_of(cur));
      if (it != cells_.end() && !visit(it->second)) return;
      int axis = 0;
      while (axis < dim_) {
        if (++cur[axis] <= hi[axis]) break;
        cur[axis] = lo[axis];
        ++axis;
      }
      if (axis == dim_) return;
    }
  }

  int dim_ = 0;
  double cell_ = 1.0;
  std::size_t count_ = 0;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

}  // namespace manirec
