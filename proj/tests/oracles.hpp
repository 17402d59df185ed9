#pragma once

#include <cmath>
#include <functional>

#include "rgvfm/net.hpp"

namespace rgvfm::testing {

// Adaptive Simpson quadrature with Richardson refinement; serves as the
// independent 1-D oracle wherever a closed-form integral is unavailable.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate_1d(const std::function<double(double)>& f, double a, double b,
                           double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

// C(sigma) on S^2 by rotational symmetry around the mean:
// 2*pi * int_0^pi exp(-theta^2/(2 sigma^2)) sin(theta) dtheta
inline double sphere_normalizer_oracle(double sigma) {
  auto f = [sigma](double th) { return std::exp(-th * th / (2.0 * sigma * sigma)) * std::sin(th); };
  return 2.0 * 3.14159265358979323846 * integrate_1d(f, 0.0, 3.14159265358979323846, 1e-13);
}

/// Central finite differences (step h) against analytic gradients on
/// `n_probes` random parameter coordinates. Returns the worst relative error,
/// with the denominator floored at 1e-6 so near-zero coordinates compare
/// absolutely.
inline double fd_check_params(Mlp& params, const std::function<double()>& loss_fn,
                              const MlpGrads& analytic, Rng& rng, int n_probes, double h = 1e-5) {
  double worst = 0.0;
  std::uniform_int_distribution<int> pick_layer(0, static_cast<int>(params.weights.size()) - 1);
  std::uniform_int_distribution<int> pick_kind(0, 4);  // bias probed 1 in 5
  for (int probe = 0; probe < n_probes; ++probe) {
    int l = pick_layer(rng);
    bool bias = pick_kind(rng) == 0;
    double* slot;
    double g;
    if (bias) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(params.biases[l].size()) - 1);
      int i = pick(rng);
      slot = &params.biases[l][i];
      g = analytic.biases[l][i];
    } else {
      std::uniform_int_distribution<int> pr(0, static_cast<int>(params.weights[l].rows()) - 1);
      std::uniform_int_distribution<int> pc(0, static_cast<int>(params.weights[l].cols()) - 1);
      int r = pr(rng), c = pc(rng);
      slot = &params.weights[l](r, c);
      g = analytic.weights[l](r, c);
    }
    double saved = *slot;
    *slot = saved + h;
    double lp = loss_fn();
    *slot = saved - h;
    double lm = loss_fn();
    *slot = saved;
    double fd = (lp - lm) / (2.0 * h);
    double denom = std::max({std::abs(fd), std::abs(g), 1e-6});
    worst = std::max(worst, std::abs(fd - g) / denom);
  }
  return worst;
}

/// All-zero network with the last bias pinned, so the model output is the
/// constant `out` regardless of input.
inline Mlp constant_net(const Vec& out, int input_dim, int hidden_dim) {
  Mlp net = mlp_init(0, input_dim, hidden_dim, static_cast<int>(out.size()));
  for (auto& w : net.weights) w.setZero();
  for (auto& b : net.biases) b.setZero();
  net.biases.back() = out;
  return net;
}

}  // namespace rgvfm::testing
