// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#include "manirec/implicit_fn.hpp"

#include "manirec/errors.hpp"
#include "manirec/weights.hpp"

namespace manirec {

std::vector<int> neighbors(const Eigen::VectorXd& x, const SampleCloud& cloud) {
  return cloud.indices_within(x, cloud.support_radius());
}

std::vector<std::pair<int, double>> normalized_weights(const Eigen::VectorXd& x,
                                                       const SampleCloud& cloud) {
  if (cloud.size() == 0) throw DomainError("normalized_weights: empty cloud");
  const std::vector<int> nbrs = neighbors(x, cloud);
  if (nbrs.empty())
    throw OutOfSupportError("normalized_weights: no sample strictly inside the support radius");

  const WeightParams params(cloud.m, cloud.gamma);
  std::vector<std::pair<int, double>> result;
  result.reserve(nbrs.size());
  double total = 0.0;
  for (int i : nbrs) {
    const double h = bump((x - cloud.points.col(i)).norm(), params);
    total += h;
    result.emplace_back(i, h);
  }
  for (auto& entry : result) entry.second /= total;
  return result;
}

Eigen::MatrixXd tangent_covariance(const Eigen::VectorXd& x, const SampleCloud& cloud) {
  const auto weights = normalized_weights(x, cloud);
  Eigen::MatrixXd covariance = Eigen::MatrixXd::Zero(cloud.d, cloud.d);
  for (const auto& [i, w] : weights) {
    const Eigen::MatrixXd& tangent = cloud.frames[i].matrix();
    covariance.noalias() += w * (tangent * tangent.transpose());
  }
  return covariance;
}

NormalFrameResult local_normal_frame(const Eigen::MatrixXd& covariance, int m) {
  const int d = static_cast<int>(covariance.rows());
  if (m < 1 || m >= d) throw DomainError("local_normal_frame: need 1 <= m < d");
  const SymmetricSpectrum spectrum = sym_eig(covariance);
  NormalFrameResult result{Frame(spectrum.eigenvectors.matrix().leftCols(d - m)),
                           spectrum.eigenvalues, 0.0, false};
  result.spectral_gap = spectrum.eigenvalues[d - m] - spectrum.eigenvalues[d - m - 1];
  result.degenerate = result.spectral_gap < 0.1;
  return result;
}

EvalResult evaluate(const Eigen::VectorXd& x, const SampleCloud& cloud) {
  EvalResult out;
  const std::vector<int> nbrs = neighbors(x, cloud);
  if (nbrs.empty()) {
    // the field is identically zero away from the samples
    out.value = Eigen::VectorXd::Zero(cloud.d - cloud.m);
    out.centroid = Eigen::VectorXd::Zero(cloud.d);
    return out;
  }

  const WeightParams params(cloud.m, cloud.gamma);
  std::vector<double> kernel(nbrs.size());
  double total = 0.0;
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    kernel[k] = bump((x - cloud.points.col(nbrs[k])).norm(), params);
    total += kernel[k];
  }

  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(cloud.d);
  Eigen::MatrixXd covariance = Eigen::MatrixXd::Zero(cloud.d, cloud.d);
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    const double w = kernel[k] / total;
    centroid.noalias() += w * cloud.points.col(nbrs[k]);
    const Eigen::MatrixXd& tangent = cloud.frames[nbrs[k]].matrix();
    covariance.noalias() += w * (tangent * tangent.transpose());
  }

  const SymmetricSpectrum spectrum = sym_eig(covariance);
  const int d = cloud.d;
  const int codim = d - cloud.m;
  Frame normal(spectrum.eigenvectors.matrix().leftCols(codim));

  out.status = SupportStatus::InSupport;
  out.value = normal.matrix().transpose() * (x - centroid);
  out.tangent_frame = Frame(spectrum.eigenvectors.matrix().rightCols(cloud.m));
  out.normal_frame = std::move(normal);
  out.eigenvalues = spectrum.eigenvalues;
  out.centroid = std::move(centroid);
  out.spectral_gap = spectrum.eigenvalues[codim] - spectrum.eigenvalues[codim - 1];
  out.degenerate_spectrum = out.spectral_gap < 0.1;
  return out;
}

}  // namespace manirec
