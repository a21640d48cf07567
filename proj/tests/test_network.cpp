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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "meshprior/checkpoint.h"
#include "meshprior/network.h"
#include "meshprior/primitives.h"
#include "meshprior/rng.h"
#include "test_helpers.h"

using namespace meshprior;
using namespace meshprior::testing;

namespace {

NetworkSpec tiny_spec(ConvKind kind) {
  NetworkSpec spec;
  spec.conv_kind = kind;
  spec.cheb_order = 3;
  spec.conv_layers = 2;
  spec.hidden_width = 5;
  spec.fc_layers = 1;
  spec.input_dim = 4;
  spec.output_dim = 3;
  spec.leaky_slope = 0.2;
  return spec;
}

VertexGraph ring_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return build_normalized_adjacency(n, edges);
}

double gradcheck_error(const ModelParams &analytic, const ModelParams &fd) {
  double worst = 0.0;
  for (std::size_t l = 0; l < analytic.layers.size(); ++l) {
    auto entrywise = [&](const Eigen::MatrixXd &a, const Eigen::MatrixXd &f) {
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double denom = std::max({std::abs(a(i)), std::abs(f(i)), 1e-2});
        worst = std::max(worst, std::abs(a(i) - f(i)) / denom);
      }
    };
    for (std::size_t k = 0; k < analytic.layers[l].weights.size(); ++k) {
      entrywise(analytic.layers[l].weights[k], fd.layers[l].weights[k]);
    }
    entrywise(analytic.layers[l].bias, fd.layers[l].bias);
  }
  return worst;
}

}  // namespace

TEST_CASE("init: first conv weight shape is (input_dim x hidden)") {
  NetworkSpec spec;
  spec.input_dim = 16;
  spec.hidden_width = 32;
  const ModelParams params = init_network(spec, 1);
  CHECK(params.layers[0].weights[0].rows() == 16);
  CHECK(params.layers[0].weights[0].cols() == 32);
  CHECK(params.layers[0].bias.isZero(0.0));
}

TEST_CASE("init: same seed gives identical parameters") {
  NetworkSpec spec;
  const ModelParams a = init_network(spec, 99);
  const ModelParams b = init_network(spec, 99);
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    for (std::size_t k = 0; k < a.layers[l].weights.size(); ++k) {
      CHECK(a.layers[l].weights[k] == b.layers[l].weights[k]);
    }
  }
}

TEST_CASE("init: 1e5 samples respect glorot bounds, mean near zero") {
  NetworkSpec spec;
  spec.conv_layers = 1;
  spec.fc_layers = 1;
  spec.input_dim = 320;
  spec.hidden_width = 320;
  spec.output_dim = 320;
  const ModelParams params = init_network(spec, 4);

  const double bound = std::sqrt(6.0 / (320.0 + 320.0));
  double sum = 0.0;
  std::size_t count = 0;
  double min_v = 1e9, max_v = -1e9;
  for (const auto &layer : params.layers) {
    for (const auto &w : layer.weights) {
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        sum += w(i);
        min_v = std::min(min_v, w(i));
        max_v = std::max(max_v, w(i));
        ++count;
      }
    }
  }
  REQUIRE(count >= 100000);
  CHECK(min_v >= -bound);
  CHECK(max_v <= bound);
  // Uniform on [-b, b]: sd = b/sqrt(3); mean within 3 standard errors of 0.
  const double se = bound / std::sqrt(3.0) / std::sqrt(static_cast<double>(count));
  CHECK(std::abs(sum / static_cast<double>(count)) < 3.0 * se);
}

TEST_CASE("forward: identity weights pass the input through a 1-vertex graph") {
  NetworkSpec spec;
  spec.conv_layers = 1;
  spec.fc_layers = 1;
  spec.input_dim = 3;
  spec.hidden_width = 3;
  spec.output_dim = 3;
  spec.leaky_slope = 1.0;

  ModelParams params = init_network(spec, 0);
  params.layers[0].weights[0] = Eigen::MatrixXd::Identity(3, 3);
  params.layers[1].weights[0] = Eigen::MatrixXd::Identity(3, 3);

  const VertexGraph graph = build_normalized_adjacency(1, {});
  Eigen::MatrixXd input(1, 3);
  input << -0.3, 0.7, 2.0;
  CHECK(forward(params, spec, input, graph) == input);
}

TEST_CASE("forward: all-zero weights broadcast the final bias") {
  NetworkSpec spec = tiny_spec(ConvKind::kSpectral);
  ModelParams params = init_network(spec, 3);
  for (auto &layer : params.layers) {
    for (auto &w : layer.weights) w.setZero();
  }
  params.layers.back().bias << 1.5, -2.0, 0.25;

  const VertexGraph graph = ring_graph(6);
  const Eigen::MatrixXd out =
      forward(params, spec, sample_noise_input(6, spec.input_dim, 8), graph);
  for (int r = 0; r < 6; ++r) {
    CHECK(out.row(r) == params.layers.back().bias.transpose());
  }
}

TEST_CASE("forward: two-vertex propagation (A_hat entries 1/2)") {
  NetworkSpec spec;
  spec.conv_layers = 1;
  spec.fc_layers = 1;
  spec.input_dim = 1;
  spec.hidden_width = 1;
  spec.output_dim = 1;
  spec.leaky_slope = 1.0;

  ModelParams params = init_network(spec, 0);
  params.layers[0].weights[0](0, 0) = 1.0;
  params.layers[1].weights[0](0, 0) = 1.0;

  const VertexGraph graph = build_normalized_adjacency(2, {{0, 1}});
  Eigen::MatrixXd input(2, 1);
  input << 2.0, 0.0;
  ForwardCache cache;
  forward(params, spec, input, graph, &cache);
  CHECK(cache.preacts[0](0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cache.preacts[0](1, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("forward: chebyshev with K=1 reduces to H W0") {
  NetworkSpec spec = tiny_spec(ConvKind::kChebyshev);
  spec.cheb_order = 1;
  spec.conv_layers = 1;
  spec.fc_layers = 1;
  spec.leaky_slope = 1.0;

  ModelParams params = init_network(spec, 21);
  params.layers[1].weights[0] = Eigen::MatrixXd::Identity(spec.hidden_width, spec.output_dim);
  params.layers[1].bias.setZero();

  const VertexGraph graph = ring_graph(5);
  const Eigen::MatrixXd input = sample_noise_input(5, spec.input_dim, 13);
  const Eigen::MatrixXd out = forward(params, spec, input, graph);
  const Eigen::MatrixXd expected =
      (input * params.layers[0].weights[0]).topLeftCorner(5, spec.output_dim);
  CHECK(out.isApprox(expected, 1e-14));
}

TEST_CASE("forward: edgeless graph degenerates the spectral layer to per-vertex affine") {
  NetworkSpec spec = tiny_spec(ConvKind::kSpectral);
  spec.conv_layers = 1;
  const ModelParams params = init_network(spec, 17);
  const VertexGraph graph = build_normalized_adjacency(4, {});
  const Eigen::MatrixXd input = sample_noise_input(4, spec.input_dim, 5);

  ForwardCache cache;
  forward(params, spec, input, graph, &cache);
  const Eigen::MatrixXd expected =
      (input * params.layers[0].weights[0]).rowwise() + params.layers[0].bias.transpose();
  CHECK(cache.preacts[0].isApprox(expected, 1e-14));
}

TEST_CASE("forward: permutation equivariance") {
  for (ConvKind kind : {ConvKind::kSpectral, ConvKind::kChebyshev}) {
    const NetworkSpec spec = tiny_spec(kind);
    const ModelParams params = init_network(spec, 33);

    const int n = 12;
    std::vector<std::pair<int, int>> edges;
    Rng rng(71);
    for (int i = 1; i < n; ++i) edges.emplace_back(static_cast<int>(rng.next_u64() % i), i);
    const VertexGraph graph = build_normalized_adjacency(n, edges);
    const Eigen::MatrixXd input = sample_noise_input(n, spec.input_dim, 3);
    const Eigen::MatrixXd out = forward(params, spec, input, graph);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin(), perm.begin() + 5, perm.end());  // perm[i] = old index at new slot i

    std::vector<std::pair<int, int>> perm_edges;
    std::vector<int> where(n);  // old -> new
    for (int i = 0; i < n; ++i) where[perm[i]] = i;
    for (const auto &[a, b] : edges) perm_edges.emplace_back(where[a], where[b]);
    const VertexGraph perm_graph = build_normalized_adjacency(n, perm_edges);

    Eigen::MatrixXd perm_input(n, spec.input_dim);
    for (int i = 0; i < n; ++i) perm_input.row(i) = input.row(perm[i]);

    const Eigen::MatrixXd perm_out = forward(params, spec, perm_input, perm_graph);
    for (int i = 0; i < n; ++i) {
      CHECK((perm_out.row(i) - out.row(perm[i])).norm() < 1e-12);
    }
  }
}

TEST_CASE("backward: zero upstream and linearity in the upstream gradient") {
  const NetworkSpec spec = tiny_spec(ConvKind::kSpectral);
  const ModelParams params = init_network(spec, 2);
  const VertexGraph graph = ring_graph(7);
  const Eigen::MatrixXd input = sample_noise_input(7, spec.input_dim, 1);

  ForwardCache cache;
  forward(params, spec, input, graph, &cache);

  const ModelParams zero =
      backward(params, spec, graph, cache, Eigen::MatrixXd::Zero(7, spec.output_dim));
  for (const auto &layer : zero.layers) {
    for (const auto &w : layer.weights) CHECK(w.isZero(0.0));
    CHECK(layer.bias.isZero(0.0));
  }

  Eigen::MatrixXd upstream(7, 3);
  Rng rng(5);
  for (Eigen::Index i = 0; i < upstream.size(); ++i) upstream(i) = rng.uniform(-1.0, 1.0);
  const ModelParams g1 = backward(params, spec, graph, cache, upstream);
  const ModelParams g2 = backward(params, spec, graph, cache, 3.0 * upstream);
  for (std::size_t l = 0; l < g1.layers.size(); ++l) {
    for (std::size_t k = 0; k < g1.layers[l].weights.size(); ++k) {
      CHECK((g2.layers[l].weights[k] - 3.0 * g1.layers[l].weights[k]).norm() < 1e-12);
    }
    CHECK((g2.layers[l].bias - 3.0 * g1.layers[l].bias).norm() < 1e-12);
  }
}

TEST_CASE("finite differences: quadratic and constant losses") {
  const NetworkSpec spec = tiny_spec(ConvKind::kSpectral);
  const ModelParams params = init_network(spec, 6);

  const auto quadratic = [](const ModelParams &p) {
    double sum = 0.0;
    for (const auto &layer : p.layers) {
      for (const auto &w : layer.weights) sum += w.squaredNorm();
      sum += layer.bias.squaredNorm();
    }
    return 0.5 * sum;
  };
  const ModelParams fd = finite_difference_gradient(quadratic, params, 1e-5);
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    for (std::size_t k = 0; k < params.layers[l].weights.size(); ++k) {
      CHECK((fd.layers[l].weights[k] - params.layers[l].weights[k]).cwiseAbs().maxCoeff() <
            1e-9);
    }
  }

  const ModelParams zero =
      finite_difference_gradient([](const ModelParams &) { return 4.2; }, params, 1e-5);
  for (const auto &layer : zero.layers) {
    for (const auto &w : layer.weights) CHECK(w.isZero(0.0));
  }
}

TEST_CASE("backward matches finite differences (keystone, both conv kinds)") {
  for (ConvKind kind : {ConvKind::kSpectral, ConvKind::kChebyshev}) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
      const NetworkSpec spec = tiny_spec(kind);
      const Mesh mesh = generate_icosphere(0);  // 12 vertices
      const VertexGraph graph = build_normalized_adjacency(mesh);
      const Eigen::MatrixXd input = sample_noise_input(graph.size(), spec.input_dim, seed);
      const ModelParams params = init_network(spec, seed * 31 + 7);

      Eigen::MatrixXd upstream(graph.size(), spec.output_dim);
      Rng rng(seed + 100);
      for (Eigen::Index i = 0; i < upstream.size(); ++i) upstream(i) = rng.uniform(-1.0, 1.0);

      ForwardCache cache;
      forward(params, spec, input, graph, &cache);
      const ModelParams analytic = backward(params, spec, graph, cache, upstream);

      const auto loss = [&](const ModelParams &p) {
        return (forward(p, spec, input, graph).array() * upstream.array()).sum();
      };
      const ModelParams fd = finite_difference_gradient(loss, params, 1e-5);
      CHECK(gradcheck_error(analytic, fd) < 1e-4);
    }
  }
}

TEST_CASE("checkpoint: parameters round-trip bit-exactly") {
  const NetworkSpec spec = tiny_spec(ConvKind::kChebyshev);
  const ModelParams params = init_network(spec, 77);
  std::stringstream buffer;
  save_params(params, buffer);
  const ModelParams loaded = load_params(buffer);
  REQUIRE(loaded.layers.size() == params.layers.size());
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    REQUIRE(loaded.layers[l].weights.size() == params.layers[l].weights.size());
    for (std::size_t k = 0; k < params.layers[l].weights.size(); ++k) {
      CHECK(loaded.layers[l].weights[k] == params.layers[l].weights[k]);
    }
    CHECK(loaded.layers[l].bias == params.layers[l].bias);
  }
}
