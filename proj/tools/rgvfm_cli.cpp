#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rgvfm/commands.hpp"

namespace {

using rgvfm::RunConfig;

// Shared flag set; every flag mirrors a config key and overrides the file.
struct Overrides {
  std::optional<std::string> config_file;
  std::optional<std::string> variant;
  std::optional<int> hidden_dim, epochs, batch_size, train_samples_per_epoch;
  std::optional<int> grid_azimuth, grid_z;
  std::optional<std::string> grid_parity;
  std::optional<double> learning_rate, sigma, t_end;
  std::optional<int> steps, n_samples;
  std::optional<std::string> retract;
  std::optional<bool> record_trajectory;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_file, "config file (key = value lines)");
  cmd->add_option("--variant", o.variant, "cfm|vfm_gauss|rfm|rg_vfm_r3|rg_vfm_m");
  cmd->add_option("--hidden-dim", o.hidden_dim);
  cmd->add_option("--epochs", o.epochs);
  cmd->add_option("--batch-size", o.batch_size);
  cmd->add_option("--train-samples-per-epoch", o.train_samples_per_epoch);
  cmd->add_option("--grid-azimuth", o.grid_azimuth);
  cmd->add_option("--grid-z", o.grid_z);
  cmd->add_option("--grid-parity", o.grid_parity, "even|odd");
  cmd->add_option("--learning-rate", o.learning_rate);
  cmd->add_option("--sigma", o.sigma);
  cmd->add_option("--steps", o.steps, "RK4 step count");
  cmd->add_option("--t-end", o.t_end);
  cmd->add_option("--retract", o.retract, "auto|on|off");
  cmd->add_option("--record-trajectory", o.record_trajectory);
  cmd->add_option("--n-samples", o.n_samples);
  cmd->add_option("--seed", o.seed);
  cmd->add_option("--output-dir", o.output_dir);
}

RunConfig build_config(const Overrides& o) {
  RunConfig cfg;
  if (o.config_file) cfg = rgvfm::parse_config_file(*o.config_file);
  if (o.variant) {
    auto v = rgvfm::variant_from_name(*o.variant);
    if (!v) throw rgvfm::Error(rgvfm::ErrorCode::InvalidConfig, "unknown variant '" + *o.variant + "'");
    cfg.variant = *v;
  }
  if (o.hidden_dim) cfg.hidden_dim = *o.hidden_dim;
  if (o.epochs) cfg.epochs = *o.epochs;
  if (o.batch_size) cfg.batch_size = *o.batch_size;
  if (o.train_samples_per_epoch) cfg.train_samples_per_epoch = *o.train_samples_per_epoch;
  if (o.grid_azimuth) cfg.grid.n_azimuth = *o.grid_azimuth;
  if (o.grid_z) cfg.grid.n_z = *o.grid_z;
  if (o.grid_parity) {
    if (*o.grid_parity == "even") cfg.grid.parity = rgvfm::Parity::Even;
    else if (*o.grid_parity == "odd") cfg.grid.parity = rgvfm::Parity::Odd;
    else throw rgvfm::Error(rgvfm::ErrorCode::InvalidConfig, "grid-parity expects even|odd");
  }
  if (o.learning_rate) cfg.learning_rate = *o.learning_rate;
  if (o.sigma) cfg.sigma = *o.sigma;
  if (o.steps) cfg.integrator.steps = *o.steps;
  if (o.t_end) cfg.integrator.t_end = *o.t_end;
  if (o.retract) {
    if (*o.retract == "auto") cfg.retract = rgvfm::Retract::Auto;
    else if (*o.retract == "on") cfg.retract = rgvfm::Retract::On;
    else if (*o.retract == "off") cfg.retract = rgvfm::Retract::Off;
    else throw rgvfm::Error(rgvfm::ErrorCode::InvalidConfig, "retract expects auto|on|off");
  }
  if (o.record_trajectory) cfg.integrator.record_trajectory = *o.record_trajectory;
  if (o.n_samples) cfg.n_samples = *o.n_samples;
  if (o.seed) cfg.seed = *o.seed;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow matching on manifolds: spherical checkerboard experiments"};
  app.require_subcommand(1);

  Overrides train_o, matrix_o, sample_o, eval_o;
  std::string checkpoint_path, samples_path, run_dir;

  CLI::App* train = app.add_subcommand("train", "train a model and write a checkpoint");
  add_common_flags(train, train_o);

  CLI::App* sample = app.add_subcommand("sample", "generate samples from a checkpoint");
  sample->add_option("--checkpoint", checkpoint_path, "checkpoint file")->required();
  add_common_flags(sample, sample_o);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a samples file");
  eval->add_option("--samples", samples_path, "samples file")->required();
  add_common_flags(eval, eval_o);

  CLI::App* figures = app.add_subcommand("export-figures", "write figure tables for a run");
  figures->add_option("--run-dir", run_dir, "run directory")->required();

  CLI::App* matrix = app.add_subcommand("run-matrix", "run all five variants on one seed");
  add_common_flags(matrix, matrix_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      rgvfm::cmd_train(build_config(train_o), &std::cout);
    } else if (sample->parsed()) {
      RunConfig cfg = build_config(sample_o);
      rgvfm::cmd_sample(checkpoint_path, cfg.n_samples, cfg.seed, cfg.integrator, cfg.retract,
                        &std::cout);
    } else if (eval->parsed()) {
      RunConfig cfg = build_config(eval_o);
      rgvfm::cmd_eval(samples_path, cfg, &std::cout);
    } else if (figures->parsed()) {
      rgvfm::cmd_export_figures(run_dir, &std::cout);
    } else if (matrix->parsed()) {
      rgvfm::cmd_run_matrix(build_config(matrix_o), &std::cout);
    }
  } catch (const rgvfm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
