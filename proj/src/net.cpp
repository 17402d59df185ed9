#include "rgvfm/net.hpp"

#include <cmath>

namespace rgvfm {

namespace {

// Stable logistic; large |z| saturates without overflow.
inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

inline void silu_inplace(Mat& z) {
  z = z.array() * (1.0 + (-z.array()).exp()).inverse();
}

// silu'(z) = s(z) * (1 + z * (1 - s(z)))
inline Mat silu_deriv_mat(const Mat& z) {
  Eigen::ArrayXXd s = (1.0 + (-z.array()).exp()).inverse();
  return (s * (1.0 + z.array() * (1.0 - s))).matrix();
}

}  // namespace

double silu(double z) { return z * sigmoid(z); }

double silu_deriv(double z) {
  double s = sigmoid(z);
  return s * (1.0 + z * (1.0 - s));
}

void MlpGrads::set_zero() {
  for (Mat& w : weights) w.setZero();
  for (Vec& b : biases) b.setZero();
}

MlpGrads make_grads(const Mlp& net) {
  MlpGrads g;
  for (const Mat& w : net.weights) g.weights.push_back(Mat::Zero(w.rows(), w.cols()));
  for (const Vec& b : net.biases) g.biases.push_back(Vec::Zero(b.size()));
  return g;
}

Mlp mlp_init(std::uint64_t seed, int input_dim, int hidden_dim, int output_dim) {
  if (input_dim < 1 || hidden_dim < 1 || output_dim < 1) {
    throw Error(ErrorCode::InvalidArgument, "network dimensions must be >= 1");
  }
  Rng rng(seed);
  Mlp net;
  int in = input_dim;
  for (int l = 0; l < kMlpLayers; ++l) {
    int out = (l == kMlpLayers - 1) ? output_dim : hidden_dim;
    double bound = 1.0 / std::sqrt(static_cast<double>(in));
    std::uniform_real_distribution<double> uni(-bound, bound);
    Mat w(out, in);
    for (int r = 0; r < out; ++r)
      for (int c = 0; c < in; ++c) w(r, c) = uni(rng);
    Vec b(out);
    for (int r = 0; r < out; ++r) b[r] = uni(rng);
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
    in = out;
  }
  return net;
}

Vec mlp_forward(const Mlp& net, const Vec& x, double t) {
  if (x.size() + 1 != net.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "input size does not match the network");
  }
  Vec a(net.input_dim());
  a.head(x.size()) = x;
  a[x.size()] = t;
  for (int l = 0; l < kMlpLayers; ++l) {
    Vec z = net.weights[l] * a + net.biases[l];
    if (l + 1 == kMlpLayers) return z;
    a = z.unaryExpr([](double v) { return silu(v); });
  }
  return a;  // unreachable
}

Mat mlp_forward_batch(const Mlp& net, const Mat& in) {
  if (in.rows() != net.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "input rows do not match the network");
  }
  Mat a = in;
  for (int l = 0; l < kMlpLayers; ++l) {
    Mat z = (net.weights[l] * a).colwise() + net.biases[l];
    if (l + 1 == kMlpLayers) return z;
    silu_inplace(z);
    a = std::move(z);
  }
  return a;  // unreachable
}

Mat mlp_forward_batch(const Mlp& net, const Mat& in, ForwardCache& cache) {
  if (in.rows() != net.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "input rows do not match the network");
  }
  cache.input = in;
  cache.pre.assign(kMlpLayers - 1, Mat());
  cache.post.assign(kMlpLayers - 1, Mat());
  const Mat* a = &cache.input;
  for (int l = 0; l < kMlpLayers - 1; ++l) {
    cache.pre[l] = (net.weights[l] * (*a)).colwise() + net.biases[l];
    cache.post[l] = cache.pre[l];
    silu_inplace(cache.post[l]);
    a = &cache.post[l];
  }
  return (net.weights[kMlpLayers - 1] * (*a)).colwise() + net.biases[kMlpLayers - 1];
}

void mlp_backward_batch(const Mlp& net, const ForwardCache& cache, const Mat& d_out,
                        MlpGrads& grads) {
  Mat dz = d_out;
  for (int l = kMlpLayers - 1; l >= 0; --l) {
    const Mat& a_prev = (l == 0) ? cache.input : cache.post[l - 1];
    grads.weights[l].noalias() = dz * a_prev.transpose();
    grads.biases[l] = dz.rowwise().sum();
    if (l > 0) {
      Mat da = net.weights[l].transpose() * dz;
      dz = da.cwiseProduct(silu_deriv_mat(cache.pre[l - 1]));
    }
  }
}

double loss_and_grad(const Mlp& net, const Mat& inputs, const LossHead& head, MlpGrads& grads) {
  ForwardCache cache;
  Mat y = mlp_forward_batch(net, inputs, cache);
  const Eigen::Index batch = y.cols();
  Mat dy_all(y.rows(), batch);
  double total = 0.0;
  Vec yi(y.rows()), dyi(y.rows());
  for (Eigen::Index c = 0; c < batch; ++c) {
    yi = y.col(c);
    dyi.setZero();
    total += head(c, yi, dyi);
    dy_all.col(c) = dyi;
  }
  if (!std::isfinite(total)) {
    throw Error(ErrorCode::NonFiniteLoss, "loss reduction is not finite");
  }
  dy_all *= 1.0 / static_cast<double>(batch);
  mlp_backward_batch(net, cache, dy_all, grads);
  return total / static_cast<double>(batch);
}

AdamState make_adam(const Mlp& net, double learning_rate) {
  AdamState s;
  for (const Mat& w : net.weights) {
    s.m_w.push_back(Mat::Zero(w.rows(), w.cols()));
    s.v_w.push_back(Mat::Zero(w.rows(), w.cols()));
  }
  for (const Vec& b : net.biases) {
    s.m_b.push_back(Vec::Zero(b.size()));
    s.v_b.push_back(Vec::Zero(b.size()));
  }
  s.learning_rate = learning_rate;
  return s;
}

void optimizer_step(Mlp& params, const MlpGrads& grads, AdamState& state) {
  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);
  const double scale = state.learning_rate / bc1;
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    state.m_w[l] = state.beta1 * state.m_w[l] + (1.0 - state.beta1) * grads.weights[l];
    state.v_w[l] = state.beta2 * state.v_w[l] +
                   (1.0 - state.beta2) * grads.weights[l].cwiseProduct(grads.weights[l]);
    params.weights[l].array() -=
        scale * state.m_w[l].array() / ((state.v_w[l].array() / bc2).sqrt() + state.epsilon);

    state.m_b[l] = state.beta1 * state.m_b[l] + (1.0 - state.beta1) * grads.biases[l];
    state.v_b[l] = state.beta2 * state.v_b[l] + (1.0 - state.beta2) * grads.biases[l].cwiseProduct(grads.biases[l]);
    params.biases[l].array() -=
        scale * state.m_b[l].array() / ((state.v_b[l].array() / bc2).sqrt() + state.epsilon);
  }
}

Vec normalize_vjp(const Vec& a, const Vec& y, const Vec& dy) {
  return (dy - dy.dot(y) * y) / a.norm();
}

double theta_over_sin(double theta) {
  if (theta < 1e-4) {
    double t2 = theta * theta;
    return 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0;
  }
  return theta / std::sin(theta);
}

}  // namespace rgvfm
