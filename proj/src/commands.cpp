#include "rgvfm/commands.hpp"

#include <cstdlib>
#include <limits>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rgvfm/figures.hpp"
#include "rgvfm/io.hpp"
#include "rgvfm/sampler.hpp"

namespace rgvfm {

namespace fs = std::filesystem;

std::filesystem::path resolve_output_dir(const std::string& output_dir) {
  fs::path dir(output_dir);
  if (dir.is_relative()) {
    if (const char* root = std::getenv("RGVFM_OUTPUT_ROOT"); root != nullptr && *root != '\0') {
      return fs::path(root) / dir;
    }
  }
  return dir;
}

fs::path cmd_train(const RunConfig& cfg, std::ostream* log) {
  validate_config(cfg);
  fs::path dir = resolve_output_dir(cfg.output_dir);
  fs::create_directories(dir);

  {
    std::ofstream out(dir / "config.txt");
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + (dir / "config.txt").string());
    out << serialize_config(cfg);
  }

  TrainResult result = train_model(cfg, log);
  write_loss_curve(dir / "loss_curve.txt", result.epoch_losses, result.epoch_clamped);

  Checkpoint ckpt;
  ckpt.params = std::move(result.params);
  ckpt.variant = cfg.variant;
  ckpt.manifold = cfg.manifold;
  ckpt.seed = cfg.seed;
  ckpt.config_hash = config_hash(cfg);
  save_checkpoint(dir / "checkpoint.txt", ckpt);

  if (log != nullptr) {
    *log << "trained " << variant_name(cfg.variant) << ": loss " << result.epoch_losses.front()
         << " -> " << result.epoch_losses.back() << "\n";
  }
  return dir;
}

fs::path cmd_sample(const fs::path& checkpoint_path, int n, std::uint64_t seed,
                    IntegratorConfig integrator, Retract retract, std::ostream* log) {
  Checkpoint ckpt = load_checkpoint(checkpoint_path);
  fs::path dir = checkpoint_path.parent_path();
  if (dir.empty()) dir = ".";

  switch (retract) {
    case Retract::Auto: integrator.retract_each_step = variant_integrates_on_manifold(ckpt.variant); break;
    case Retract::On: integrator.retract_each_step = true; break;
    case Retract::Off: integrator.retract_each_step = false; break;
  }

  GenerateResult gen = generate(ckpt.variant, ckpt.params, ckpt.manifold, n, seed, integrator);
  fs::path samples_path = dir / "samples.txt";
  write_samples(samples_path, gen.samples);
  if (variant_is_variational(ckpt.variant)) {
    write_residuals(dir / "residuals.txt", gen.endpoint_residuals);
  }
  if (integrator.record_trajectory) {
    write_trajectories(dir / "trajectories.txt", gen.trajectories);
  }
  if (log != nullptr) {
    *log << "sampled " << gen.samples.size() << " points (" << gen.failures << " failures)\n";
  }
  return samples_path;
}

EvalReport cmd_eval(const fs::path& samples_path, const RunConfig& cfg, std::ostream* log) {
  std::vector<Vec> samples = read_samples(samples_path);
  fs::path dir = samples_path.parent_path();
  if (dir.empty()) dir = ".";

  std::vector<double> residuals;
  if (fs::exists(dir / "residuals.txt")) residuals = read_residuals(dir / "residuals.txt");

  EvalReport rep = evaluate(samples, cfg.manifold, cfg.grid, residuals);
  write_report(dir / "eval_report.txt", rep);
  write_norm_histogram(dir / "norm_histogram.txt", rep);

  if (log != nullptr) {
    *log << "n " << rep.n << " norm_mean " << rep.norm_mean << " norm_std " << rep.norm_std
         << " on_cell_fraction " << rep.on_cell_fraction << " occupancy_l1 " << rep.occupancy_l1;
    if (rep.endpoint_residual_mean) *log << " endpoint_residual_mean " << *rep.endpoint_residual_mean;
    *log << "\n";
  }
  return rep;
}

void cmd_export_figures(const fs::path& run_dir, std::ostream* log) {
  fs::path samples_path = run_dir / "samples.txt";
  fs::path config_path = run_dir / "config.txt";
  if (!fs::exists(samples_path) || !fs::exists(config_path)) {
    throw Error(ErrorCode::MissingInputs,
                "run directory needs samples.txt and config.txt: " + run_dir.string());
  }
  RunConfig cfg = parse_config_file(config_path);
  std::vector<Vec> samples = read_samples(samples_path);

  fs::path fig_dir = run_dir / "figures";
  fs::create_directories(fig_dir);

  export_unwrapped_samples(fig_dir / "samples_unwrapped.txt", samples);
  export_checkerboard_overlay(fig_dir / "checkerboard_overlay.txt", cfg.grid);
  EvalReport rep = evaluate(samples, cfg.manifold, cfg.grid);
  write_norm_histogram(fig_dir / "norm_histogram.txt", rep);

  if (fs::exists(run_dir / "trajectories.txt")) {
    auto trajs = read_trajectories(run_dir / "trajectories.txt");
    export_trajectory_snapshots(fig_dir / "trajectory_snapshots.txt", trajs);
  }
  if (log != nullptr) *log << "figure tables written to " << fig_dir.string() << "\n";
}

void cmd_run_matrix(const RunConfig& base, std::ostream* log) {
  fs::path root = resolve_output_dir(base.output_dir);
  fs::create_directories(root);
  std::ofstream table(root / "comparison_table.txt");
  if (!table) throw Error(ErrorCode::IoError, "cannot write comparison table");
  table << "variant norm_mean norm_std on_cell_fraction occupancy_l1 endpoint_residual_mean final_loss\n";

  for (Variant v : kAllVariants) {
    RunConfig cfg = base;
    cfg.variant = v;
    cfg.output_dir = (fs::path(base.output_dir) / variant_name(v)).string();
    if (log != nullptr) *log << "=== " << variant_name(v) << " ===\n";

    fs::path dir = cmd_train(cfg, log);
    double final_loss = std::numeric_limits<double>::quiet_NaN();
    {
      std::ifstream curve(dir / "loss_curve.txt");
      std::string line, last;
      std::getline(curve, line);  // header
      while (std::getline(curve, line)) {
        if (!line.empty()) last = line;
      }
      std::istringstream ls(last);
      long epoch;
      ls >> epoch >> final_loss;
    }
    fs::path samples = cmd_sample(dir / "checkpoint.txt", cfg.n_samples, cfg.seed,
                                  cfg.integrator, cfg.retract, log);
    EvalReport rep = cmd_eval(samples, cfg, log);
    cmd_export_figures(dir, log);

    table << variant_name(v) << ' ' << format_double(rep.norm_mean) << ' '
          << format_double(rep.norm_std) << ' ' << format_double(rep.on_cell_fraction) << ' '
          << format_double(rep.occupancy_l1) << ' '
          << (rep.endpoint_residual_mean ? format_double(*rep.endpoint_residual_mean)
                                         : std::string("nan"))
          << ' ' << format_double(final_loss) << '\n';
    table.flush();
  }
}

}  // namespace rgvfm
