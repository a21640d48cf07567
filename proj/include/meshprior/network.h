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

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "meshprior/graph.h"

namespace meshprior {

enum class ConvKind { kSpectral, kChebyshev };

std::string to_string(ConvKind kind);
ConvKind conv_kind_from_string(const std::string &name);

/// Architecture of the per-vertex regression network: a stack of graph
/// convolutions followed by fully connected layers, leaky-linear activations
/// everywhere except the (linear) output layer.
struct NetworkSpec {
  ConvKind conv_kind = ConvKind::kSpectral;
  int cheb_order = 3;  // K, used by Chebyshev layers only
  int conv_layers = 8;
  int hidden_width = 32;
  int fc_layers = 2;
  int input_dim = 16;
  int output_dim = 3;
  double leaky_slope = 0.2;

  int layer_count() const { return conv_layers + fc_layers; }
  bool is_conv_layer(int layer) const { return layer < conv_layers; }
  int layer_input_dim(int layer) const { return layer == 0 ? input_dim : hidden_width; }
  int layer_output_dim(int layer) const {
    return layer == layer_count() - 1 ? output_dim : hidden_width;
  }
  /// Number of weight matrices the layer holds (K for Chebyshev convs).
  int layer_weight_count(int layer) const {
    return is_conv_layer(layer) && conv_kind == ConvKind::kChebyshev ? cheb_order : 1;
  }

  /// Throws Error when counts or dimensions are out of contract.
  void validate() const;
};

struct LayerParams {
  std::vector<Eigen::MatrixXd> weights;
  Eigen::VectorXd bias;
};

/// Trainable tensors; doubles as the container for gradients and Adam
/// moment accumulators since those mirror the parameter shapes.
struct ModelParams {
  std::vector<LayerParams> layers;

  std::size_t entry_count() const;
  bool all_finite() const;
  static ModelParams zeros_like(const ModelParams &other);
};

/// Glorot-uniform weights (bounds +-sqrt(6/(fan_in+fan_out))), zero biases.
/// Deterministic given the seed.
ModelParams init_network(const NetworkSpec &spec, std::uint64_t seed);

/// Per-vertex network input: an (n x input_dim) matrix of uniform samples in
/// [0, 0.1), drawn once per training run. Deterministic given the seed.
Eigen::MatrixXd sample_noise_input(int n, int input_dim, std::uint64_t seed);

/// Intermediates retained by forward for the exact backward pass.
struct ForwardCache {
  std::vector<Eigen::MatrixXd> inputs;    // per layer: H fed to that layer
  std::vector<Eigen::MatrixXd> preacts;   // per layer: pre-activation values
  std::vector<std::vector<Eigen::MatrixXd>> cheb_bases;  // per layer: T_k(L~) H
  int vertex_count = 0;
};

/// Applies the network. A spectral conv computes act(A_hat H W + b); a
/// Chebyshev conv computes act(sum_k T_k(L~) H W_k + b) with the recurrence
/// T_0 = I, T_1 = L~, T_k = 2 L~ T_{k-1} - T_{k-2}; a fully connected layer
/// computes act(H W + b). Deterministic, no internal randomness.
Eigen::MatrixXd forward(const ModelParams &params, const NetworkSpec &spec,
                        const Eigen::MatrixXd &noise_input, const VertexGraph &graph,
                        ForwardCache *cache = nullptr);

/// Gradients of <upstream, output> with respect to every parameter, using
/// the cache of the matching forward call (A_hat's symmetry is exploited,
/// no transposes are materialized).
ModelParams backward(const ModelParams &params, const NetworkSpec &spec,
                     const VertexGraph &graph, const ForwardCache &cache,
                     const Eigen::MatrixXd &upstream);

/// Central finite differences of an arbitrary scalar function of the
/// parameters; the reference oracle for backward.
ModelParams finite_difference_gradient(
    const std::function<double(const ModelParams &)> &loss_fn, const ModelParams &params,
    double h);

}  // namespace meshprior
