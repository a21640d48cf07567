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

#include "meshprior/network.h"

#include <cmath>

#include "meshprior/error.h"
#include "meshprior/rng.h"

namespace meshprior {

std::string to_string(ConvKind kind) {
  return kind == ConvKind::kSpectral ? "spectral" : "chebyshev";
}

ConvKind conv_kind_from_string(const std::string &name) {
  if (name == "spectral") return ConvKind::kSpectral;
  if (name == "chebyshev") return ConvKind::kChebyshev;
  throw Error("unknown conv kind '" + name + "' (expected spectral or chebyshev)");
}

void NetworkSpec::validate() const {
  if (conv_layers < 1) throw Error("NetworkSpec: conv_layers must be >= 1");
  if (fc_layers < 1) throw Error("NetworkSpec: fc_layers must be >= 1");
  if (hidden_width < 1) throw Error("NetworkSpec: hidden_width must be >= 1");
  if (input_dim < 1) throw Error("NetworkSpec: input_dim must be >= 1");
  if (output_dim < 1) throw Error("NetworkSpec: output_dim must be >= 1");
  if (conv_kind == ConvKind::kChebyshev && cheb_order < 1) {
    throw Error("NetworkSpec: cheb_order must be >= 1");
  }
}

std::size_t ModelParams::entry_count() const {
  std::size_t count = 0;
  for (const auto &layer : layers) {
    for (const auto &w : layer.weights) count += static_cast<std::size_t>(w.size());
    count += static_cast<std::size_t>(layer.bias.size());
  }
  return count;
}

bool ModelParams::all_finite() const {
  for (const auto &layer : layers) {
    for (const auto &w : layer.weights) {
      if (!w.allFinite()) return false;
    }
    if (!layer.bias.allFinite()) return false;
  }
  return true;
}

ModelParams ModelParams::zeros_like(const ModelParams &other) {
  ModelParams out;
  out.layers.resize(other.layers.size());
  for (std::size_t l = 0; l < other.layers.size(); ++l) {
    out.layers[l].weights.reserve(other.layers[l].weights.size());
    for (const auto &w : other.layers[l].weights) {
      out.layers[l].weights.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    }
    out.layers[l].bias = Eigen::VectorXd::Zero(other.layers[l].bias.size());
  }
  return out;
}

ModelParams init_network(const NetworkSpec &spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  ModelParams params;
  params.layers.resize(spec.layer_count());
  for (int l = 0; l < spec.layer_count(); ++l) {
    const int fan_in = spec.layer_input_dim(l);
    const int fan_out = spec.layer_output_dim(l);
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    auto &layer = params.layers[l];
    for (int k = 0; k < spec.layer_weight_count(l); ++k) {
      Eigen::MatrixXd w(fan_in, fan_out);
      for (int r = 0; r < fan_in; ++r) {
        for (int c = 0; c < fan_out; ++c) w(r, c) = rng.uniform(-bound, bound);
      }
      layer.weights.push_back(std::move(w));
    }
    layer.bias = Eigen::VectorXd::Zero(fan_out);
  }
  return params;
}

Eigen::MatrixXd sample_noise_input(int n, int input_dim, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd noise(n, input_dim);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < input_dim; ++c) noise(r, c) = rng.uniform(0.0, 0.1);
  }
  return noise;
}

namespace {

void check_params_match_spec(const ModelParams &params, const NetworkSpec &spec) {
  if (static_cast<int>(params.layers.size()) != spec.layer_count()) {
    throw Error("parameters do not match spec: layer count");
  }
  for (int l = 0; l < spec.layer_count(); ++l) {
    const auto &layer = params.layers[l];
    if (static_cast<int>(layer.weights.size()) != spec.layer_weight_count(l)) {
      throw Error("parameters do not match spec: weight count at layer " + std::to_string(l));
    }
    for (const auto &w : layer.weights) {
      if (w.rows() != spec.layer_input_dim(l) || w.cols() != spec.layer_output_dim(l)) {
        throw Error("parameters do not match spec: weight shape at layer " + std::to_string(l));
      }
    }
    if (layer.bias.size() != spec.layer_output_dim(l)) {
      throw Error("parameters do not match spec: bias shape at layer " + std::to_string(l));
    }
  }
}

Eigen::MatrixXd leaky_apply(const Eigen::MatrixXd &preact, double slope) {
  return preact.array().max(0.0).matrix() + slope * preact.array().min(0.0).matrix();
}

Eigen::MatrixXd leaky_derivative(const Eigen::MatrixXd &preact, double slope) {
  return ((preact.array() > 0.0).cast<double>() * (1.0 - slope) + slope).matrix();
}

}  // namespace

Eigen::MatrixXd forward(const ModelParams &params, const NetworkSpec &spec,
                        const Eigen::MatrixXd &noise_input, const VertexGraph &graph,
                        ForwardCache *cache) {
  spec.validate();
  check_params_match_spec(params, spec);
  if (noise_input.rows() != graph.size() || noise_input.cols() != spec.input_dim) {
    throw Error("forward: noise input shape does not match graph size / input_dim");
  }

  if (cache) {
    cache->inputs.clear();
    cache->preacts.clear();
    cache->cheb_bases.assign(spec.layer_count(), {});
    cache->vertex_count = graph.size();
  }

  const auto &a_hat = graph.adjacency_hat();
  Eigen::MatrixXd h = noise_input;
  for (int l = 0; l < spec.layer_count(); ++l) {
    const auto &layer = params.layers[l];
    if (cache) cache->inputs.push_back(h);

    Eigen::MatrixXd preact;
    if (!spec.is_conv_layer(l)) {
      preact = h * layer.weights[0];
    } else if (spec.conv_kind == ConvKind::kSpectral) {
      preact = a_hat * (h * layer.weights[0]);
    } else {
      const auto &lap = graph.scaled_laplacian();
      std::vector<Eigen::MatrixXd> bases;
      bases.reserve(layer.weights.size());
      bases.push_back(h);
      if (layer.weights.size() > 1) bases.push_back(lap * h);
      for (std::size_t k = 2; k < layer.weights.size(); ++k) {
        bases.push_back(2.0 * (lap * bases[k - 1]) - bases[k - 2]);
      }
      preact = bases[0] * layer.weights[0];
      for (std::size_t k = 1; k < layer.weights.size(); ++k) {
        preact += bases[k] * layer.weights[k];
      }
      if (cache) cache->cheb_bases[l] = std::move(bases);
    }
    preact.rowwise() += layer.bias.transpose();

    if (l == spec.layer_count() - 1) {
      h = preact;
    } else {
      h = leaky_apply(preact, spec.leaky_slope);
    }
    if (cache) cache->preacts.push_back(std::move(preact));
  }
  return h;
}

ModelParams backward(const ModelParams &params, const NetworkSpec &spec,
                     const VertexGraph &graph, const ForwardCache &cache,
                     const Eigen::MatrixXd &upstream) {
  check_params_match_spec(params, spec);
  if (static_cast<int>(cache.inputs.size()) != spec.layer_count() ||
      static_cast<int>(cache.preacts.size()) != spec.layer_count() ||
      cache.vertex_count != graph.size()) {
    throw Error("backward: cache does not match spec/graph");
  }
  if (upstream.rows() != graph.size() || upstream.cols() != spec.output_dim) {
    throw Error("backward: upstream gradient shape mismatch");
  }

  ModelParams grads = ModelParams::zeros_like(params);
  const auto &a_hat = graph.adjacency_hat();

  Eigen::MatrixXd g = upstream;
  for (int l = spec.layer_count() - 1; l >= 0; --l) {
    const auto &layer = params.layers[l];
    const Eigen::MatrixXd &h = cache.inputs[l];

    // The output layer is linear; all other layers applied the leaky ramp.
    Eigen::MatrixXd g_pre;
    if (l == spec.layer_count() - 1) {
      g_pre = g;
    } else {
      g_pre = g.cwiseProduct(leaky_derivative(cache.preacts[l], spec.leaky_slope));
    }

    grads.layers[l].bias = g_pre.colwise().sum().transpose();

    if (!spec.is_conv_layer(l)) {
      grads.layers[l].weights[0] = h.transpose() * g_pre;
      if (l > 0) g = g_pre * layer.weights[0].transpose();
    } else if (spec.conv_kind == ConvKind::kSpectral) {
      // A_hat is symmetric: (A_hat H)^T G = H^T (A_hat G).
      const Eigen::MatrixXd s = a_hat * g_pre;
      grads.layers[l].weights[0] = h.transpose() * s;
      if (l > 0) g = s * layer.weights[0].transpose();
    } else {
      const auto &lap = graph.scaled_laplacian();
      const auto &bases = cache.cheb_bases[l];
      if (bases.size() != layer.weights.size()) {
        throw Error("backward: cached Chebyshev bases missing");
      }
      // T_k(L~) is symmetric, so the input gradient is
      // sum_k T_k(L~) g_pre W_k^T, with T_k applied by the same recurrence.
      Eigen::MatrixXd r_prev2;
      Eigen::MatrixXd r_prev = g_pre;
      Eigen::MatrixXd g_in;
      for (std::size_t k = 0; k < layer.weights.size(); ++k) {
        Eigen::MatrixXd r_k;
        if (k == 0) {
          r_k = g_pre;
        } else if (k == 1) {
          r_k = lap * g_pre;
        } else {
          r_k = 2.0 * (lap * r_prev) - r_prev2;
        }
        grads.layers[l].weights[k] = bases[k].transpose() * g_pre;
        if (l > 0) {
          if (k == 0) {
            g_in = r_k * layer.weights[k].transpose();
          } else {
            g_in += r_k * layer.weights[k].transpose();
          }
        }
        r_prev2 = std::move(r_prev);
        r_prev = std::move(r_k);
      }
      if (l > 0) g = std::move(g_in);
    }
  }
  return grads;
}

ModelParams finite_difference_gradient(
    const std::function<double(const ModelParams &)> &loss_fn, const ModelParams &params,
    double h) {
  if (h <= 0.0) throw Error("finite_difference_gradient: h must be > 0");
  ModelParams probe = params;
  ModelParams grads = ModelParams::zeros_like(params);
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    for (std::size_t k = 0; k < params.layers[l].weights.size(); ++k) {
      auto &w = probe.layers[l].weights[k];
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        const double saved = w(i);
        w(i) = saved + h;
        const double up = loss_fn(probe);
        w(i) = saved - h;
        const double down = loss_fn(probe);
        w(i) = saved;
        grads.layers[l].weights[k](i) = (up - down) / (2.0 * h);
      }
    }
    auto &b = probe.layers[l].bias;
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      const double saved = b(i);
      b(i) = saved + h;
      const double up = loss_fn(probe);
      b(i) = saved - h;
      const double down = loss_fn(probe);
      b(i) = saved;
      grads.layers[l].bias(i) = (up - down) / (2.0 * h);
    }
  }
  return grads;
}

}  // namespace meshprior
