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

#include "meshprior/trainer.h"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "meshprior/adam.h"
#include "meshprior/error.h"
#include "meshprior/graph.h"
#include "meshprior/losses.h"
#include "meshprior/metrics.h"
#include "meshprior/rng.h"

namespace meshprior {

std::string to_string(TaskKind task) {
  switch (task) {
    case TaskKind::kDenoise: return "denoise";
    case TaskKind::kComplete: return "complete";
    case TaskKind::kPositionsAblation: return "positions_ablation";
  }
  return "unknown";
}

TaskKind task_from_string(const std::string &name) {
  if (name == "denoise") return TaskKind::kDenoise;
  if (name == "complete") return TaskKind::kComplete;
  if (name == "positions_ablation") return TaskKind::kPositionsAblation;
  throw Error("unknown task '" + name + "'");
}

std::string to_string(SelectPolicy policy) {
  return policy == SelectPolicy::kBestMad ? "best_mad" : "final";
}

SelectPolicy select_policy_from_string(const std::string &name) {
  if (name == "best_mad") return SelectPolicy::kBestMad;
  if (name == "final") return SelectPolicy::kFinal;
  throw Error("unknown select policy '" + name + "' (expected best_mad or final)");
}

void TrainConfig::validate() const {
  if (learning_rate <= 0.0) throw Error("TrainConfig: learning_rate must be > 0");
  if (lambda < 0.0) throw Error("TrainConfig: lambda must be >= 0");
  if (max_steps < 1) throw Error("TrainConfig: max_steps must be >= 1");
  if (log_interval < 1) throw Error("TrainConfig: log_interval must be >= 1");
  if (epsilon_norm <= 0.0) throw Error("TrainConfig: epsilon_norm must be > 0");
  if (smoothing.iterations < 0) throw Error("TrainConfig: smoothing iterations must be >= 0");
  if (stop_window < 1) throw Error("TrainConfig: stop_window must be >= 1");
  spec.validate();
}

TrainConfig TrainConfig::denoise_defaults() {
  TrainConfig config;
  config.task = TaskKind::kDenoise;
  config.learning_rate = 0.01;
  config.lambda = 0.2;
  config.max_steps = 4000;
  config.smoothing = {0.5, 30};
  return config;
}

TrainConfig TrainConfig::complete_defaults() {
  TrainConfig config;
  config.task = TaskKind::kComplete;
  config.learning_rate = 0.001;
  config.lambda = 0.03;
  config.max_steps = 8000;
  config.smoothing = {0.5, 10};
  return config;
}

RunReport train_dmp(const Mesh &mesh_in, const std::vector<bool> *mask,
                    const TrainConfig &config, const Mesh *ground_truth) {
  config.validate();
  const MeshReport mesh_report = validate_mesh(mesh_in);
  if (!is_pipeline_ready(mesh_report)) {
    throw InvalidMeshError("train_dmp: input mesh must be manifold and consistently oriented");
  }
  const int n = mesh_in.vertex_count();
  if (mask && static_cast<int>(mask->size()) != n) {
    throw Error("train_dmp: mask length does not match vertex count");
  }
  if (ground_truth && ground_truth->faces != mesh_in.faces) {
    throw InvalidMeshError("train_dmp: ground truth must share the input's face list");
  }

  const bool positions_mode = config.task == TaskKind::kPositionsAblation;

  // S_M is applied once; it stays fixed for the whole run.
  const Eigen::MatrixXd original = mesh_in.positions();
  Eigen::MatrixXd base;
  if (positions_mode) {
    base = Eigen::MatrixXd::Zero(n, 3);
  } else if (config.smoothing.iterations == 0) {
    base = original;
  } else {
    base = laplacian_smooth(mesh_in, config.smoothing).positions();
  }

  const auto neighbors = vertex_neighbors(mesh_in);
  const VertexGraph graph = build_normalized_adjacency(mesh_in);
  const Eigen::MatrixXd noise_input =
      sample_noise_input(n, config.spec.input_dim, derive_seed(config.seed, 0));
  ModelParams params = init_network(config.spec, derive_seed(config.seed, 1));
  AdamState adam = AdamState::init(params, config.learning_rate);

  const double stop_scale =
      config.stop_tol_edge_fraction > 0.0 ? mean_edge_length(mesh_in) : 0.0;

  RunReport report;
  report.config = config;

  Eigen::MatrixXd best_output;
  double best_mad = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd final_output;
  Eigen::MatrixXd window_output;

  ForwardCache cache;
  for (int step = 1; step <= config.max_steps; ++step) {
    const Eigen::MatrixXd predicted = forward(params, config.spec, noise_input, graph, &cache);

    const LossValue recon = reconstruction_loss_with_gradient(original, base, predicted, mask,
                                                              config.epsilon_norm);
    const Eigen::MatrixXd output_positions = base + predicted;
    const LossValue lap =
        laplacian_loss_with_gradient(output_positions, neighbors, config.epsilon_norm);
    const double total = total_loss(recon.value, lap.value, config.lambda);
    if (!std::isfinite(total)) {
      throw NumericalError("train_dmp: non-finite loss at step " + std::to_string(step) +
                           " (recon " + std::to_string(recon.value) + ", lap " +
                           std::to_string(lap.value) + ")");
    }

    if (step % config.log_interval == 0) {
      RunRecord record;
      record.step = step;
      record.recon_loss = recon.value;
      record.lap_loss = lap.value;
      record.total_loss = total;
      if (ground_truth) {
        const Mesh candidate = Mesh::with_positions(mesh_in, output_positions);
        record.mad = mean_angular_difference(candidate, *ground_truth).degrees;
        if (*record.mad < best_mad) {
          best_mad = *record.mad;
          report.best_step = step;
          best_output = output_positions;
        }
      }
      report.records.push_back(record);
    }

    bool stop = false;
    if (config.stop_tol_edge_fraction > 0.0) {
      if (window_output.size() == 0) {
        window_output = predicted;
      } else if (step % config.stop_window == 0) {
        const double change = (predicted - window_output).rowwise().norm().maxCoeff();
        window_output = predicted;
        if (change < config.stop_tol_edge_fraction * stop_scale) stop = true;
      }
    }

    if (step == config.max_steps || stop) {
      final_output = output_positions;
      if (stop && step != config.max_steps) {
        std::cerr << "train_dmp: displacement update stationary, stopping at step " << step
                  << "\n";
      }
      // The last step is always logged so `final` selection names a record.
      if (report.records.empty() || report.records.back().step != step) {
        RunRecord record;
        record.step = step;
        record.recon_loss = recon.value;
        record.lap_loss = lap.value;
        record.total_loss = total;
        if (ground_truth) {
          const Mesh candidate = Mesh::with_positions(mesh_in, output_positions);
          record.mad = mean_angular_difference(candidate, *ground_truth).degrees;
          if (*record.mad < best_mad) {
            best_mad = *record.mad;
            report.best_step = step;
            best_output = output_positions;
          }
        }
        report.records.push_back(record);
      }
      break;
    }

    const Eigen::MatrixXd upstream = recon.gradient + config.lambda * lap.gradient;
    const ModelParams grads = backward(params, config.spec, graph, cache, upstream);
    adam_step(params, grads, adam);
  }

  report.selected_step = select_output_step(report, config.select);
  const Eigen::MatrixXd &chosen =
      (config.select == SelectPolicy::kBestMad) ? best_output : final_output;
  report.output_mesh = Mesh::with_positions(mesh_in, chosen);
  return report;
}

int select_output_step(const RunReport &report, SelectPolicy policy) {
  if (report.records.empty()) throw Error("select_output_step: empty report");
  if (policy == SelectPolicy::kFinal) return report.records.back().step;

  int best_step = -1;
  double best = std::numeric_limits<double>::infinity();
  for (const auto &record : report.records) {
    if (!record.mad) continue;
    if (*record.mad < best) {  // strict: earliest step wins ties
      best = *record.mad;
      best_step = record.step;
    }
  }
  if (best_step < 0) {
    throw Error("select_output_step: best_mad policy requires ground-truth MAD records");
  }
  return best_step;
}

namespace {

std::string fmt_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

void write_report_csv(const RunReport &report, std::ostream &out) {
  const TrainConfig &c = report.config;
  out << "# meshprior run report\n";
  out << "# task " << to_string(c.task) << "\n";
  out << "# conv " << to_string(c.spec.conv_kind) << "\n";
  out << "# conv_layers " << c.spec.conv_layers << "\n";
  out << "# hidden_width " << c.spec.hidden_width << "\n";
  out << "# fc_layers " << c.spec.fc_layers << "\n";
  out << "# input_dim " << c.spec.input_dim << "\n";
  out << "# cheb_order " << c.spec.cheb_order << "\n";
  out << "# leaky_slope " << fmt_double(c.spec.leaky_slope) << "\n";
  out << "# learning_rate " << fmt_double(c.learning_rate) << "\n";
  out << "# lambda " << fmt_double(c.lambda) << "\n";
  out << "# max_steps " << c.max_steps << "\n";
  out << "# log_interval " << c.log_interval << "\n";
  out << "# seed " << c.seed << "\n";
  out << "# smooth_step_size " << fmt_double(c.smoothing.step_size) << "\n";
  out << "# smooth_iterations " << c.smoothing.iterations << "\n";
  out << "# epsilon_norm " << fmt_double(c.epsilon_norm) << "\n";
  out << "# select " << to_string(c.select) << "\n";
  out << "# selected_step " << report.selected_step << "\n";
  if (report.best_step) out << "# best_step " << *report.best_step << "\n";
  out << "step,recon_loss,lap_loss,total_loss,mad\n";
  for (const auto &r : report.records) {
    out << r.step << ',' << fmt_double(r.recon_loss) << ',' << fmt_double(r.lap_loss) << ','
        << fmt_double(r.total_loss) << ',';
    if (r.mad) out << fmt_double(*r.mad);
    out << '\n';
  }
}

std::string write_report_csv(const RunReport &report) {
  std::ostringstream oss;
  write_report_csv(report, oss);
  return oss.str();
}

std::vector<RunRecord> read_report_csv(std::istream &in) {
  std::vector<RunRecord> records;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "step,recon_loss,lap_loss,total_loss,mad") {
        throw IoError("report CSV: unexpected header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 5) throw IoError("report CSV: malformed row '" + line + "'");
    RunRecord r;
    r.step = std::stoi(fields[0]);
    r.recon_loss = std::stod(fields[1]);
    r.lap_loss = std::stod(fields[2]);
    r.total_loss = std::stod(fields[3]);
    if (!fields[4].empty()) r.mad = std::stod(fields[4]);
    records.push_back(r);
  }
  if (!header_seen) throw IoError("report CSV: missing header");
  return records;
}

std::vector<RunRecord> read_report_csv(const std::string &text) {
  std::istringstream iss(text);
  return read_report_csv(iss);
}

}  // namespace meshprior
