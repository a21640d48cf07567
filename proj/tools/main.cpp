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

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "meshprior/error.h"
#include "meshprior/hole_fill.h"
#include "meshprior/metrics.h"
#include "meshprior/noise.h"
#include "meshprior/obj_io.h"
#include "meshprior/primitives.h"
#include "meshprior/rng.h"
#include "meshprior/trainer.h"

namespace {

using namespace meshprior;

constexpr int kExitUsage = 1;
constexpr int kExitInvalidMesh = 2;
constexpr int kExitNumerical = 3;

// Benchmark shape used when a study has no --input.
struct SynthDefaults {
  int subdivisions = 4;
  int bumps = 30;
  double bump_height = 0.1;
  double bump_radius = 0.25;
  std::uint64_t shape_seed = 1;
  std::uint64_t noise_seed = 7;
  double sigma = 0.2;
};

struct TrainFlags {
  std::string input;
  std::string ground_truth;
  double lr = -1.0;      // <0 = task default
  double lambda = -1.0;  // <0 = task default
  int steps = -1;
  std::string conv = "spectral";
  std::uint64_t seed = 1;
  int smooth_iters = -1;
  std::string out;
  std::string report;
  std::string select;    // "", "best_mad", "final"
  std::string predict = "displacements";
};

void add_train_flags(CLI::App *cmd, TrainFlags &flags, bool input_required) {
  auto *input = cmd->add_option("--input", flags.input, "Input OBJ mesh");
  if (input_required) input->required();
  cmd->add_option("--ground-truth", flags.ground_truth, "Ground-truth OBJ (enables MAD)");
  cmd->add_option("--lr", flags.lr, "Adam learning rate");
  cmd->add_option("--lambda", flags.lambda, "Laplacian loss weight");
  cmd->add_option("--steps", flags.steps, "Training step budget");
  cmd->add_option("--conv", flags.conv, "Graph convolution kind (spectral|chebyshev)")
      ->check(CLI::IsMember({"spectral", "chebyshev"}));
  cmd->add_option("--seed", flags.seed, "RNG seed for init and network input");
  cmd->add_option("--smooth-iters", flags.smooth_iters,
                  "Laplacian smoothing iterations (0 = unprocessed)");
  cmd->add_option("--out", flags.out, "Output OBJ path");
  cmd->add_option("--report", flags.report, "Report CSV path");
  cmd->add_option("--select", flags.select, "Output step policy (best_mad|final)")
      ->check(CLI::IsMember({"best_mad", "final"}));
  cmd->add_option("--predict", flags.predict,
                  "Regression target (displacements|positions)")
      ->check(CLI::IsMember({"displacements", "positions"}));
}

TrainConfig config_from_flags(const TrainFlags &flags, TaskKind task, bool have_ground_truth) {
  TrainConfig config = task == TaskKind::kComplete ? TrainConfig::complete_defaults()
                                                   : TrainConfig::denoise_defaults();
  config.task = task;
  if (flags.predict == "positions") {
    if (task == TaskKind::kComplete) {
      throw Error("--predict positions is not available for completion");
    }
    config.task = TaskKind::kPositionsAblation;
  }
  if (flags.lr > 0.0) config.learning_rate = flags.lr;
  if (flags.lambda >= 0.0) config.lambda = flags.lambda;
  if (flags.steps > 0) config.max_steps = flags.steps;
  if (flags.smooth_iters >= 0) config.smoothing.iterations = flags.smooth_iters;
  config.spec.conv_kind = conv_kind_from_string(flags.conv);
  config.seed = flags.seed;
  if (!flags.select.empty()) {
    config.select = select_policy_from_string(flags.select);
  } else {
    config.select = have_ground_truth ? SelectPolicy::kBestMad : SelectPolicy::kFinal;
  }
  return config;
}

Mesh load_input_mesh(const std::string &path) {
  Mesh mesh;
  try {
    mesh = load_obj_file(path);
  } catch (const IoError &e) {
    throw InvalidMeshError(std::string("cannot read input mesh: ") + e.what());
  }
  const MeshReport report = validate_mesh(mesh);
  if (!is_pipeline_ready(report)) {
    throw InvalidMeshError("input mesh '" + path +
                           "' is not a manifold, consistently oriented triangle mesh");
  }
  return mesh;
}

std::string replace_extension(const std::string &path, const std::string &ext) {
  return std::filesystem::path(path).replace_extension(ext).string();
}

void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

void print_mad_lines(const RunReport &report) {
  if (report.records.empty() || !report.records.back().mad) return;
  std::printf("final MAD (step %d): %.6f deg\n", report.records.back().step,
              *report.records.back().mad);
  if (report.best_step) {
    double best = 0.0;
    for (const auto &r : report.records) {
      if (r.step == *report.best_step && r.mad) best = *r.mad;
    }
    std::printf("best MAD (step %d): %.6f deg\n", *report.best_step, best);
  }
  std::printf("selected step: %d\n", report.selected_step);
}

int run_denoise(const TrainFlags &flags) {
  const Mesh noisy = load_input_mesh(flags.input);
  std::optional<Mesh> ground_truth;
  if (!flags.ground_truth.empty()) ground_truth = load_input_mesh(flags.ground_truth);

  const TrainConfig config =
      config_from_flags(flags, TaskKind::kDenoise, ground_truth.has_value());
  if (ground_truth) {
    std::printf("input MAD: %.6f deg\n",
                mean_angular_difference(noisy, *ground_truth).degrees);
  }

  const RunReport report =
      train_dmp(noisy, nullptr, config, ground_truth ? &*ground_truth : nullptr);

  const std::string out_path = flags.out.empty() ? "denoised.obj" : flags.out;
  const std::string report_path =
      flags.report.empty() ? replace_extension(out_path, ".csv") : flags.report;
  save_obj_file(report.output_mesh, out_path);
  std::ofstream csv(report_path);
  if (!csv) throw IoError("cannot open report CSV for writing: " + report_path);
  write_report_csv(report, csv);

  print_mad_lines(report);
  std::printf("wrote %s and %s\n", out_path.c_str(), report_path.c_str());
  return 0;
}

int run_complete(const TrainFlags &flags, double refine_threshold, std::string mask_path) {
  const Mesh deficient = load_input_mesh(flags.input);
  const HoleFillResult filled = fill_holes(deficient, refine_threshold);
  if (filled.mesh.vertex_count() == deficient.vertex_count() &&
      filled.mesh.face_count() == deficient.face_count()) {
    std::cerr << "complete: no holes found, running as plain restoration\n";
  }

  std::optional<Mesh> ground_truth;
  if (!flags.ground_truth.empty()) {
    Mesh gt = load_input_mesh(flags.ground_truth);
    if (gt.faces == filled.mesh.faces) {
      ground_truth = std::move(gt);
    } else {
      std::cerr << "complete: ground truth connectivity differs from the filled mesh, "
                   "MAD tracking disabled\n";
    }
  }

  const TrainConfig config =
      config_from_flags(flags, TaskKind::kComplete, ground_truth.has_value());
  const RunReport report = train_dmp(filled.mesh, &filled.original_vertex_mask, config,
                                     ground_truth ? &*ground_truth : nullptr);

  const std::string out_path = flags.out.empty() ? "completed.obj" : flags.out;
  const std::string report_path =
      flags.report.empty() ? replace_extension(out_path, ".csv") : flags.report;
  if (mask_path.empty()) mask_path = replace_extension(out_path, ".mask.txt");

  save_obj_file(report.output_mesh, out_path);
  std::ofstream csv(report_path);
  if (!csv) throw IoError("cannot open report CSV for writing: " + report_path);
  write_report_csv(report, csv);
  {
    std::string mask_text;
    for (bool b : filled.original_vertex_mask) mask_text += b ? "1\n" : "0\n";
    write_text_file(mask_path, mask_text);
  }

  const MeshReport out_report = validate_mesh(report.output_mesh);
  std::printf("filled vertices: %d (of %d total)\n",
              filled.mesh.vertex_count() - deficient.vertex_count(),
              filled.mesh.vertex_count());
  std::printf("output boundary edges: %zu\n", out_report.boundary_edge_count);
  print_mad_lines(report);
  std::printf("wrote %s, %s and %s\n", out_path.c_str(), report_path.c_str(),
              mask_path.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct HoleSpec {
  bool enabled = false;
  double radius = 0.0;
  Vec3 center{0, 0, 1};
  bool center_given = false;
};

HoleSpec parse_hole(const std::string &text) {
  HoleSpec spec;
  if (text.empty() || text == "none") return spec;
  std::string radius_part = text;
  const auto at = text.find('@');
  if (at != std::string::npos) {
    radius_part = text.substr(0, at);
    const std::string dir = text.substr(at + 1);
    double x, y, z;
    if (std::sscanf(dir.c_str(), "%lf,%lf,%lf", &x, &y, &z) != 3) {
      throw CLI::ValidationError("--hole", "direction must be x,y,z");
    }
    spec.center = Vec3(x, y, z);
    spec.center_given = true;
  }
  // Accept a bare radius or one with a "rad" suffix.
  if (radius_part.size() > 3 && radius_part.substr(radius_part.size() - 3) == "rad") {
    radius_part.resize(radius_part.size() - 3);
  }
  try {
    spec.radius = std::stod(radius_part);
  } catch (const std::exception &) {
    throw CLI::ValidationError("--hole", "expected none, RADIUS, or RADIUS@x,y,z");
  }
  if (spec.radius <= 0.0) throw CLI::ValidationError("--hole", "radius must be > 0");
  spec.enabled = true;
  return spec;
}

int run_synth(const SynthDefaults &params, const HoleSpec &hole, int hole_at_bump,
              const std::string &out_clean, const std::string &out_corrupt,
              std::string sidecar_path) {
  const Mesh clean = generate_bumpy_sphere(params.subdivisions, params.bumps,
                                           params.bump_height, params.shape_seed,
                                           params.bump_radius);
  Mesh corrupt = clean;
  std::size_t removed_faces = 0;
  Vec3 hole_center = hole.center;
  if (hole.enabled) {
    if (hole_at_bump >= 0) {
      const BumpField field = sample_bump_field(params.bumps, params.bump_height,
                                                params.shape_seed, params.bump_radius);
      if (hole_at_bump >= static_cast<int>(field.centers.size())) {
        throw Error("--hole-at-bump index out of range");
      }
      hole_center = field.centers[hole_at_bump];
    }
    const CapCut cut = remove_cap(corrupt, hole_center, hole.radius);
    corrupt = cut.mesh;
    removed_faces = cut.removed_faces;
  }
  if (params.sigma > 0.0) {
    corrupt = add_gaussian_noise(corrupt, params.sigma, params.noise_seed);
  }

  save_obj_file(clean, out_clean);
  save_obj_file(corrupt, out_corrupt);

  std::ostringstream sidecar;
  sidecar << "subdivisions " << params.subdivisions << "\n"
          << "bumps " << params.bumps << "\n"
          << "bump_height " << params.bump_height << "\n"
          << "bump_radius " << params.bump_radius << "\n"
          << "shape_seed " << params.shape_seed << "\n"
          << "noise_sigma " << params.sigma << "\n"
          << "noise_seed " << params.noise_seed << "\n";
  if (hole.enabled) {
    sidecar << "hole_radius " << hole.radius << "\n"
            << "hole_center " << hole_center.x() << ' ' << hole_center.y() << ' '
            << hole_center.z() << "\n"
            << "removed_faces " << removed_faces << "\n";
  } else {
    sidecar << "hole none\n";
  }
  if (sidecar_path.empty()) sidecar_path = replace_extension(out_corrupt, ".params.txt");
  write_text_file(sidecar_path, sidecar.str());

  std::printf("wrote %s, %s and %s\n", out_clean.c_str(), out_corrupt.c_str(),
              sidecar_path.c_str());
  if (hole.enabled) std::printf("removed %zu faces\n", removed_faces);
  return 0;
}

// ---------------------------------------------------------------------------
// ablate

struct StudyData {
  Mesh clean;
  Mesh noisy;
};

StudyData study_input(const TrainFlags &flags, const SynthDefaults &synth, double sigma) {
  StudyData data;
  if (!flags.input.empty()) {
    data.noisy = load_input_mesh(flags.input);
    if (flags.ground_truth.empty()) {
      throw Error("ablate with --input also needs --ground-truth");
    }
    data.clean = load_input_mesh(flags.ground_truth);
  } else {
    data.clean = generate_bumpy_sphere(synth.subdivisions, synth.bumps, synth.bump_height,
                                       synth.shape_seed, synth.bump_radius);
    data.noisy = sigma > 0.0 ? add_gaussian_noise(data.clean, sigma, synth.noise_seed)
                             : data.clean;
  }
  return data;
}

double mad_of(const RunReport &report, int step) {
  for (const auto &r : report.records) {
    if (r.step == step && r.mad) return *r.mad;
  }
  throw Error("no MAD record at step " + std::to_string(step));
}

int run_ablate(const std::string &study, const TrainFlags &flags, const SynthDefaults &synth,
               const std::string &outdir, int seeds) {
  std::filesystem::create_directories(outdir);
  std::ostringstream summary;
  const auto csv_path = [&](const std::string &name) { return outdir + "/" + name + ".csv"; };

  const auto run = [&](const Mesh &noisy, const Mesh *gt, TrainConfig config,
                       const std::string &name) {
    const RunReport report = train_dmp(noisy, nullptr, config, gt);
    export_report(report, csv_path(name));
    return report;
  };

  if (study == "positions-vs-displacements") {
    const StudyData data = study_input(flags, synth, synth.sigma);
    const double input_mad = mean_angular_difference(data.noisy, data.clean).degrees;
    summary << "# positions vs displacements\n\n"
            << "| seed | input MAD | positions best MAD | displacements best MAD |\n"
            << "|---|---|---|---|\n";
    for (int s = 0; s < seeds; ++s) {
      TrainFlags f = flags;
      f.seed = flags.seed + static_cast<std::uint64_t>(s);
      f.select = "best_mad";
      TrainConfig disp = config_from_flags(f, TaskKind::kDenoise, true);
      TrainConfig pos = disp;
      pos.task = TaskKind::kPositionsAblation;
      const RunReport rd =
          run(data.noisy, &data.clean, disp, "pos_vs_disp_seed" + std::to_string(f.seed) + "_disp");
      const RunReport rp =
          run(data.noisy, &data.clean, pos, "pos_vs_disp_seed" + std::to_string(f.seed) + "_pos");
      summary << "| " << f.seed << " | " << input_mad << " | "
              << mad_of(rp, *rp.best_step) << " | " << mad_of(rd, *rd.best_step) << " |\n";
    }
  } else if (study == "smoothing") {
    const StudyData data = study_input(flags, synth, synth.sigma);
    const double input_mad = mean_angular_difference(data.noisy, data.clean).degrees;
    summary << "# input smoothing\n\n"
            << "| variant | smooth iters | input MAD | best MAD |\n|---|---|---|---|\n";
    for (const auto &[name, iters] : std::vector<std::pair<std::string, int>>{
             {"unprocessed", 0}, {"smoothed", -1}}) {
      TrainFlags f = flags;
      f.select = "best_mad";
      if (iters >= 0) f.smooth_iters = iters;
      const TrainConfig config = config_from_flags(f, TaskKind::kDenoise, true);
      const RunReport r = run(data.noisy, &data.clean, config, "smoothing_" + name);
      summary << "| " << name << " | " << config.smoothing.iterations << " | " << input_mad
              << " | " << mad_of(r, *r.best_step) << " |\n";
    }
  } else if (study == "laplacian-loss") {
    const StudyData data = study_input(flags, synth, synth.sigma);
    summary << "# laplacian loss\n\n"
            << "| seed | lambda | final MAD | best MAD | MAD std (2nd half) |\n"
            << "|---|---|---|---|---|\n";
    for (int s = 0; s < seeds; ++s) {
      for (const double lambda : {0.0, -1.0}) {  // -1 = task default
        TrainFlags f = flags;
        f.seed = flags.seed + static_cast<std::uint64_t>(s);
        f.lambda = lambda;
        f.select = "best_mad";
        const TrainConfig config = config_from_flags(f, TaskKind::kDenoise, true);
        const std::string name = "laplacian_seed" + std::to_string(f.seed) +
                                 (lambda == 0.0 ? "_lambda0" : "_lambdaDefault");
        const RunReport r = run(data.noisy, &data.clean, config, name);
        double mean = 0.0, sq = 0.0;
        int count = 0;
        for (const auto &rec : r.records) {
          if (rec.step > config.max_steps / 2 && rec.mad) {
            mean += *rec.mad;
            sq += *rec.mad * *rec.mad;
            ++count;
          }
        }
        mean /= count;
        const double stddev = std::sqrt(std::max(0.0, sq / count - mean * mean));
        summary << "| " << f.seed << " | " << config.lambda << " | "
                << r.records.back().mad.value() << " | " << mad_of(r, *r.best_step) << " | "
                << stddev << " |\n";
      }
    }
  } else if (study == "convergence") {
    summary << "# convergence vs input noise\n\n"
            << "| mode | noise sigma | initial recon | recon at end | normalized |\n"
            << "|---|---|---|---|---|\n";
    for (const std::string mode : {"displacements", "positions"}) {
      for (const double sigma : {0.0, 0.1, 0.3}) {
        const StudyData data = study_input(flags, synth, sigma);
        TrainFlags f = flags;
        f.predict = mode;
        f.lambda = 0.0;  // reconstruction-only comparison
        if (f.steps <= 0) f.steps = 500;
        TrainConfig config = config_from_flags(f, TaskKind::kDenoise, false);
        config.log_interval = 1;
        char sig[16];
        std::snprintf(sig, sizeof(sig), "%g", sigma);
        const std::string name = std::string("convergence_") + mode + "_sigma" + sig;
        const RunReport r = run(data.noisy, nullptr, config, name);
        const double initial = r.records.front().recon_loss;
        const double last = r.records.back().recon_loss;
        summary << "| " << mode << " | " << sigma << " | " << initial << " | " << last
                << " | " << last / initial << " |\n";
      }
    }
  } else {
    throw CLI::ValidationError("study", "unknown study '" + study + "'");
  }

  write_text_file(outdir + "/summary.md", summary.str());
  std::fputs(summary.str().c_str(), stdout);
  std::printf("wrote %s/summary.md\n", outdir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Unsupervised mesh restoration with graph-convolutional self-priors"};
  app.require_subcommand(1);

  TrainFlags denoise_flags;
  auto *denoise_cmd = app.add_subcommand("denoise", "Denoise a mesh against itself");
  add_train_flags(denoise_cmd, denoise_flags, true);

  TrainFlags complete_flags;
  double refine_threshold = 1.5;
  std::string mask_path;
  auto *complete_cmd = app.add_subcommand("complete", "Fill holes and restore the patches");
  add_train_flags(complete_cmd, complete_flags, true);
  complete_cmd->add_option("--refine-threshold", refine_threshold,
                           "Patch refinement threshold (times mean boundary edge length)");
  complete_cmd->add_option("--mask", mask_path, "Where to write the vertex mask listing");

  TrainFlags ablate_flags;
  std::string study, outdir;
  int seeds = 1;
  SynthDefaults ablate_synth;
  auto *ablate_cmd = app.add_subcommand("ablate", "Reproduce a study on a given or synthetic mesh");
  ablate_cmd->add_option("study", study,
                         "positions-vs-displacements | smoothing | laplacian-loss | convergence")
      ->required();
  add_train_flags(ablate_cmd, ablate_flags, false);
  ablate_cmd->add_option("--outdir", outdir, "Output directory (default ablation_<study>)");
  ablate_cmd->add_option("--seeds", seeds, "Number of seeds per variant")->check(CLI::Range(1, 64));
  ablate_cmd->add_option("--noise", ablate_synth.sigma, "Synthetic noise sigma fraction");
  ablate_cmd->add_option("--subdivisions", ablate_synth.subdivisions,
                         "Synthetic sphere subdivision level");

  SynthDefaults synth;
  std::string hole_text = "none";
  int hole_at_bump = -1;
  std::string out_clean = "clean.obj", out_corrupt = "corrupt.obj", sidecar;
  std::uint64_t synth_seed = 1;
  auto *synth_cmd = app.add_subcommand("synth", "Generate benchmark meshes");
  synth_cmd->add_option("--subdivisions", synth.subdivisions, "Icosphere subdivision level")
      ->check(CLI::Range(1, 7));
  synth_cmd->add_option("--bumps", synth.bumps, "Number of spherical-cap bumps");
  synth_cmd->add_option("--bump-height", synth.bump_height, "Radial bump height");
  synth_cmd->add_option("--bump-radius", synth.bump_radius, "Bump angular radius (radians)");
  synth_cmd->add_option("--noise", synth.sigma, "Noise sigma as a fraction of mean edge length");
  synth_cmd->add_option("--hole", hole_text, "none, RADIUS (radians), or RADIUS@x,y,z");
  synth_cmd->add_option("--hole-at-bump", hole_at_bump, "Center the hole on bump K");
  synth_cmd->add_option("--seed", synth_seed, "Seed for bump placement and noise");
  synth_cmd->add_option("--out-clean", out_clean, "Ground-truth OBJ path");
  synth_cmd->add_option("--out-corrupt", out_corrupt, "Corrupted OBJ path");
  synth_cmd->add_option("--sidecar", sidecar, "Provenance text path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (denoise_cmd->parsed()) return run_denoise(denoise_flags);
    if (complete_cmd->parsed()) return run_complete(complete_flags, refine_threshold, mask_path);
    if (ablate_cmd->parsed()) {
      if (outdir.empty()) outdir = "ablation_" + study;
      ablate_synth.shape_seed = ablate_flags.seed;
      ablate_synth.noise_seed = derive_seed(ablate_flags.seed, 17);
      return run_ablate(study, ablate_flags, ablate_synth, outdir, seeds);
    }
    if (synth_cmd->parsed()) {
      synth.shape_seed = synth_seed;
      synth.noise_seed = derive_seed(synth_seed, 17);
      return run_synth(synth, parse_hole(hole_text), hole_at_bump, out_clean, out_corrupt,
                       sidecar);
    }
  } catch (const InvalidMeshError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidMesh;
  } catch (const NumericalError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const CLI::Error &e) {
    std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
