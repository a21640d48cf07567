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

#include "meshprior/network.h"

namespace meshprior {

/// Adam optimizer state: first/second moment accumulators mirroring the
/// parameter shapes, a step counter, and the hyperparameters.
struct AdamState {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long t = 0;
  ModelParams first_moment;
  ModelParams second_moment;

  static AdamState init(const ModelParams &params, double learning_rate, double beta1 = 0.9,
                        double beta2 = 0.999, double epsilon = 1e-8);
};

/// Standard bias-corrected Adam update, in place; increments state.t.
/// Throws NumericalError on non-finite gradient entries.
void adam_step(ModelParams &params, const ModelParams &grads, AdamState &state);

}  // namespace meshprior
