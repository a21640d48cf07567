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

#include "meshprior/checkpoint.h"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "meshprior/error.h"

namespace meshprior {

namespace {

constexpr char kMagic[8] = {'M', 'P', 'P', 'A', 'R', 'A', 'M', 'S'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream &out, std::uint32_t value) {
  out.write(reinterpret_cast<const char *>(&value), sizeof(value));
}

std::uint32_t read_u32(std::istream &in) {
  std::uint32_t value = 0;
  in.read(reinterpret_cast<char *>(&value), sizeof(value));
  if (!in) throw IoError("parameter checkpoint: truncated stream");
  return value;
}

void write_matrix(std::ostream &out, const Eigen::MatrixXd &m) {
  write_u32(out, static_cast<std::uint32_t>(m.rows()));
  write_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      out.write(reinterpret_cast<const char *>(&v), sizeof(v));
    }
  }
}

Eigen::MatrixXd read_matrix(std::istream &in) {
  const std::uint32_t rows = read_u32(in);
  const std::uint32_t cols = read_u32(in);
  Eigen::MatrixXd m(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      double v = 0.0;
      in.read(reinterpret_cast<char *>(&v), sizeof(v));
      if (!in) throw IoError("parameter checkpoint: truncated matrix data");
      m(r, c) = v;
    }
  }
  return m;
}

}  // namespace

void save_params(const ModelParams &params, std::ostream &out) {
  out.write(kMagic, sizeof(kMagic));
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(params.layers.size()));
  for (const auto &layer : params.layers) {
    write_u32(out, static_cast<std::uint32_t>(layer.weights.size()));
    for (const auto &w : layer.weights) write_matrix(out, w);
    write_matrix(out, layer.bias);
  }
  if (!out) throw IoError("parameter checkpoint: write failed");
}

ModelParams load_params(std::istream &in) {
  char magic[8] = {};
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw IoError("parameter checkpoint: bad magic");
  }
  const std::uint32_t version = read_u32(in);
  if (version != kVersion) {
    throw IoError("parameter checkpoint: unsupported version " + std::to_string(version));
  }
  ModelParams params;
  params.layers.resize(read_u32(in));
  for (auto &layer : params.layers) {
    const std::uint32_t weight_count = read_u32(in);
    layer.weights.reserve(weight_count);
    for (std::uint32_t k = 0; k < weight_count; ++k) layer.weights.push_back(read_matrix(in));
    const Eigen::MatrixXd bias = read_matrix(in);
    if (bias.cols() != 1) throw IoError("parameter checkpoint: bias is not a column vector");
    layer.bias = bias.col(0);
  }
  return params;
}

void save_params_file(const ModelParams &params, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path);
  save_params(params, out);
}

ModelParams load_params_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint for reading: " + path);
  return load_params(in);
}

}  // namespace meshprior
