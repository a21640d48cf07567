// Copyright 2026 The MeshPrior Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "meshprior/losses.h"

#include <cmath>
#include <iostream>

#include "meshprior/error.h"

namespace meshprior {

namespace {

void check_recon_shapes(const Eigen::MatrixXd &original, const Eigen::MatrixXd &smoothed,
                        const Eigen::MatrixXd &predicted, const std::vector<bool> *mask,
                        double eps) {
  if (eps <= 0.0) throw Error("reconstruction_loss: eps must be > 0");
  if (original.rows() != smoothed.rows() || original.rows() != predicted.rows() ||
      original.cols() != 3 || smoothed.cols() != 3 || predicted.cols() != 3) {
    throw Error("reconstruction_loss: position matrices must all be (n x 3)");
  }
  if (mask && static_cast<Eigen::Index>(mask->size()) != original.rows()) {
    throw Error("reconstruction_loss: mask length does not match vertex count");
  }
}

}  // namespace

LossValue reconstruction_loss_with_gradient(const Eigen::MatrixXd &original_positions,
                                            const Eigen::MatrixXd &smoothed_positions,
                                            const Eigen::MatrixXd &predicted_displacements,
                                            const std::vector<bool> *mask, double eps) {
  check_recon_shapes(original_positions, smoothed_positions, predicted_displacements, mask, eps);
  const Eigen::Index n = original_positions.rows();

  LossValue out;
  out.gradient = Eigen::MatrixXd::Zero(n, 3);

  bool any = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mask && !(*mask)[static_cast<std::size_t>(i)]) continue;
    any = true;
    const Eigen::RowVector3d residual = original_positions.row(i) - smoothed_positions.row(i) -
                                        predicted_displacements.row(i);
    const double e = std::sqrt(residual.squaredNorm() + eps);
    out.value += e;
    out.gradient.row(i) = -residual / e;
  }
  if (!any && n > 0) {
    std::cerr << "reconstruction_loss: all-false mask, returning 0\n";
  }
  return out;
}

double reconstruction_loss(const Eigen::MatrixXd &original_positions,
                           const Eigen::MatrixXd &smoothed_positions,
                           const Eigen::MatrixXd &predicted_displacements,
                           const std::vector<bool> *mask, double eps) {
  return reconstruction_loss_with_gradient(original_positions, smoothed_positions,
                                           predicted_displacements, mask, eps)
      .value;
}

LossValue laplacian_loss_with_gradient(const Eigen::MatrixXd &output_positions,
                                       const std::vector<std::vector<int>> &neighbors,
                                       double eps) {
  if (eps <= 0.0) throw Error("laplacian_loss: eps must be > 0");
  const Eigen::Index n = output_positions.rows();
  if (static_cast<Eigen::Index>(neighbors.size()) != n || output_positions.cols() != 3) {
    throw Error("laplacian_loss: positions must be (n x 3) matching the neighbor lists");
  }

  LossValue out;
  out.gradient = Eigen::MatrixXd::Zero(n, 3);
  // unit[x] = v_x / l_x, where v_x = |N(x)| p(x) - sum of neighbors.
  Eigen::MatrixXd unit(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::RowVector3d v = static_cast<double>(neighbors[i].size()) * output_positions.row(i);
    for (int y : neighbors[i]) v -= output_positions.row(y);
    const double l = std::sqrt(v.squaredNorm() + eps);
    out.value += l;
    unit.row(i) = v / l;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::RowVector3d g = static_cast<double>(neighbors[i].size()) * unit.row(i);
    for (int y : neighbors[i]) g -= unit.row(y);
    out.gradient.row(i) = g;
  }
  return out;
}

double laplacian_loss(const Eigen::MatrixXd &output_positions,
                      const std::vector<std::vector<int>> &neighbors, double eps) {
  if (eps <= 0.0) throw Error("laplacian_loss: eps must be > 0");
  const Eigen::Index n = output_positions.rows();
  if (static_cast<Eigen::Index>(neighbors.size()) != n || output_positions.cols() != 3) {
    throw Error("laplacian_loss: positions must be (n x 3) matching the neighbor lists");
  }
  double value = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::RowVector3d v = static_cast<double>(neighbors[i].size()) * output_positions.row(i);
    for (int y : neighbors[i]) v -= output_positions.row(y);
    value += std::sqrt(v.squaredNorm() + eps);
  }
  return value;
}

double laplacian_loss(const Eigen::MatrixXd &output_positions, const Mesh &mesh, double eps) {
  return laplacian_loss(output_positions, vertex_neighbors(mesh), eps);
}

double total_loss(double recon, double lap, double lambda) {
  if (lambda < 0.0) throw Error("total_loss: lambda must be >= 0");
  return recon + lambda * lap;
}

}  // namespace meshprior
