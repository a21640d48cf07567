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

#include "meshprior/adam.h"

#include <cmath>

#include "meshprior/error.h"

namespace meshprior {

AdamState AdamState::init(const ModelParams &params, double learning_rate, double beta1,
                          double beta2, double epsilon) {
  AdamState state;
  state.learning_rate = learning_rate;
  state.beta1 = beta1;
  state.beta2 = beta2;
  state.epsilon = epsilon;
  state.t = 0;
  state.first_moment = ModelParams::zeros_like(params);
  state.second_moment = ModelParams::zeros_like(params);
  return state;
}

namespace {

void adam_update(Eigen::Ref<Eigen::MatrixXd> param, const Eigen::MatrixXd &grad,
                 Eigen::Ref<Eigen::MatrixXd> m, Eigen::Ref<Eigen::MatrixXd> v,
                 const AdamState &state, double bias1, double bias2) {
  if (!grad.allFinite()) {
    throw NumericalError("adam_step: non-finite gradient entries");
  }
  m = state.beta1 * m + (1.0 - state.beta1) * grad;
  v = state.beta2 * v + (1.0 - state.beta2) * grad.cwiseProduct(grad);
  const Eigen::MatrixXd m_hat = m / bias1;
  const Eigen::MatrixXd v_hat = v / bias2;
  param -= state.learning_rate *
           (m_hat.array() / (v_hat.array().sqrt() + state.epsilon)).matrix();
}

}  // namespace

void adam_step(ModelParams &params, const ModelParams &grads, AdamState &state) {
  if (params.layers.size() != grads.layers.size()) {
    throw Error("adam_step: parameter/gradient layer count mismatch");
  }
  ++state.t;
  const double bias1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double bias2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));

  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    auto &layer = params.layers[l];
    const auto &glayer = grads.layers[l];
    if (layer.weights.size() != glayer.weights.size() ||
        layer.bias.size() != glayer.bias.size()) {
      throw Error("adam_step: parameter/gradient shape mismatch at layer " + std::to_string(l));
    }
    for (std::size_t k = 0; k < layer.weights.size(); ++k) {
      adam_update(layer.weights[k], glayer.weights[k], state.first_moment.layers[l].weights[k],
                  state.second_moment.layers[l].weights[k], state, bias1, bias2);
    }
    Eigen::MatrixXd gb = glayer.bias;
    Eigen::Map<Eigen::MatrixXd> bias_map(layer.bias.data(), layer.bias.size(), 1);
    Eigen::Map<Eigen::MatrixXd> m_map(state.first_moment.layers[l].bias.data(),
                                      layer.bias.size(), 1);
    Eigen::Map<Eigen::MatrixXd> v_map(state.second_moment.layers[l].bias.data(),
                                      layer.bias.size(), 1);
    adam_update(bias_map, gb, m_map, v_map, state, bias1, bias2);
  }
}

}  // namespace meshprior
