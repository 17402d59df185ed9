#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rgvfm/manifold.hpp"

namespace rgvfm {

inline constexpr int kMlpLayers = 5;

/// Five affine layers with a smooth nonlinearity (silu) between them and none
/// after the last. Inputs are the ambient coordinates with the time appended,
/// so input_dim = ambient_dim + 1.
struct Mlp {
  std::vector<Mat> weights;  // weights[l] is (out x in)
  std::vector<Vec> biases;

  int input_dim() const { return static_cast<int>(weights.front().cols()); }
  int hidden_dim() const { return static_cast<int>(weights.front().rows()); }
  int output_dim() const { return static_cast<int>(weights.back().rows()); }
};

/// Gradient (or first/second moment) buffers shaped like an Mlp.
struct MlpGrads {
  std::vector<Mat> weights;
  std::vector<Vec> biases;

  void set_zero();
};

MlpGrads make_grads(const Mlp& net);

/// Fan-in-scaled uniform init, deterministic for a fixed seed.
Mlp mlp_init(std::uint64_t seed, int input_dim, int hidden_dim, int output_dim);

double silu(double z);
double silu_deriv(double z);

/// Single-input forward pass; `t` is appended to `x`.
Vec mlp_forward(const Mlp& net, const Vec& x, double t);

/// Batched forward over column-stacked inputs (input_dim x batch).
Mat mlp_forward_batch(const Mlp& net, const Mat& in);

struct ForwardCache {
  Mat input;
  std::vector<Mat> pre;   // pre-activations of the hidden layers
  std::vector<Mat> post;  // post-activations of the hidden layers
};

Mat mlp_forward_batch(const Mlp& net, const Mat& in, ForwardCache& cache);

/// Reverse-mode pass: given dL/d(output), accumulates parameter gradients.
void mlp_backward_batch(const Mlp& net, const ForwardCache& cache, const Mat& d_out,
                        MlpGrads& grads);

/// Per-sample loss head: given the network output column y, writes dL_i/dy
/// and returns L_i. Heads are built from the differentiable primitives below
/// plus the closed-form sphere maps, so the chain stays finite-difference
/// checkable end to end.
using LossHead = std::function<double(Eigen::Index col, const Vec& y, Vec& dy)>;

/// Mean head loss over the batch plus parameter gradients (overwritten).
/// Throws NonFiniteLoss if the reduction is NaN/Inf.
double loss_and_grad(const Mlp& net, const Mat& inputs, const LossHead& head, MlpGrads& grads);

/// Adaptive-moment optimizer state and hyperparameters.
struct AdamState {
  std::vector<Mat> m_w, v_w;
  std::vector<Vec> m_b, v_b;
  long step_count = 0;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

AdamState make_adam(const Mlp& net, double learning_rate);

/// In-place adaptive-moment update with bias correction.
void optimizer_step(Mlp& params, const MlpGrads& grads, AdamState& state);

// --- differentiable primitives shared with the loss heads ---

/// VJP of y = a / |a|: returns (dy - <dy, y> y) / |a|.
Vec normalize_vjp(const Vec& a, const Vec& y, const Vec& dy);

/// theta / sin(theta), Taylor-expanded below 1e-4 where the ratio is ill-conditioned.
double theta_over_sin(double theta);

}  // namespace rgvfm
