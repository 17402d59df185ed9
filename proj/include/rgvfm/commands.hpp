#pragma once

#include <filesystem>
#include <iosfwd>

#include "rgvfm/checkpoint.hpp"
#include "rgvfm/config.hpp"
#include "rgvfm/eval.hpp"
#include "rgvfm/train.hpp"

namespace rgvfm {

/// Output root: RGVFM_OUTPUT_ROOT (when set) prefixes relative output dirs.
std::filesystem::path resolve_output_dir(const std::string& output_dir);

/// Trains per the config and writes config.txt, checkpoint.txt and
/// loss_curve.txt into the run directory. Returns the run directory.
std::filesystem::path cmd_train(const RunConfig& cfg, std::ostream* log = nullptr);

/// Samples from a checkpoint into samples.txt (plus residuals.txt for the
/// variational variants and trajectories.txt when recording is on), in the
/// checkpoint's directory. Retract::Auto resolves against the checkpoint's
/// variant.
std::filesystem::path cmd_sample(const std::filesystem::path& checkpoint_path, int n,
                                 std::uint64_t seed, IntegratorConfig integrator,
                                 Retract retract = Retract::Auto, std::ostream* log = nullptr);

/// Evaluates a samples file against the config's grid; writes
/// eval_report.txt and norm_histogram.txt next to the samples and returns the
/// report. Reads residuals.txt when present.
EvalReport cmd_eval(const std::filesystem::path& samples_path, const RunConfig& cfg,
                    std::ostream* log = nullptr);

/// Exports the figure tables for a finished run directory.
void cmd_export_figures(const std::filesystem::path& run_dir, std::ostream* log = nullptr);

/// Trains, samples, evaluates and exports every variant with the same seed;
/// writes one comparison row per variant to comparison_table.txt under the
/// config's output_dir.
void cmd_run_matrix(const RunConfig& base, std::ostream* log = nullptr);

}  // namespace rgvfm
