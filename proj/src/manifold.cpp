#include "rgvfm/manifold.hpp"

#include <algorithm>
#include <cmath>

namespace rgvfm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSmallAngle = 1e-12;
constexpr double kAntipodalTol = 1e-9;  // on 1 + <x,y>

void check_dim(const ManifoldKind& kind, const Vec& v, const char* what) {
  if (v.size() != kind.dim) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " has size " + std::to_string(v.size()) +
                    ", expected " + std::to_string(kind.dim));
  }
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

ManifoldKind ManifoldKind::euclidean(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidConfig, "Euclidean dim must be >= 1");
  return {ManifoldType::Euclidean, dim};
}

ManifoldKind ManifoldKind::sphere(int ambient_dim) {
  if (ambient_dim < 2) throw Error(ErrorCode::InvalidConfig, "Sphere ambient dim must be >= 2");
  return {ManifoldType::Sphere, ambient_dim};
}

ManifoldKind ManifoldKind::flat_torus(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidConfig, "FlatTorus dim must be >= 1");
  return {ManifoldType::FlatTorus, dim};
}

const char* manifold_type_name(ManifoldType t) {
  switch (t) {
    case ManifoldType::Euclidean: return "euclidean";
    case ManifoldType::Sphere: return "sphere";
    case ManifoldType::FlatTorus: return "flat_torus";
  }
  return "unknown";
}

double wrap_angle(double d) {
  double w = d - kTwoPi * std::round(d / kTwoPi);
  if (w <= -0.5 * kTwoPi) w += kTwoPi;  // round ties can land on -pi
  return w;
}

double wrap_to_2pi(double a) {
  double w = a - kTwoPi * std::floor(a / kTwoPi);
  if (w >= kTwoPi) w -= kTwoPi;  // guards a == -eps rounding up to 2*pi
  if (w < 0.0) w = 0.0;
  return w;
}

Point project(const ManifoldKind& kind, const Vec& ambient) {
  check_dim(kind, ambient, "ambient vector");
  switch (kind.type) {
    case ManifoldType::Euclidean:
      return {ambient};
    case ManifoldType::Sphere: {
      double n = ambient.norm();
      if (n <= 1e-12) {
        throw Error(ErrorCode::ZeroVector, "cannot project a (near-)zero vector onto the sphere");
      }
      return {ambient / n};
    }
    case ManifoldType::FlatTorus: {
      Vec out(ambient.size());
      for (Eigen::Index i = 0; i < ambient.size(); ++i) out[i] = wrap_to_2pi(ambient[i]);
      return {out};
    }
  }
  throw Error(ErrorCode::UnsupportedManifold, "unknown manifold type");
}

Tangent tangent_project(const ManifoldKind& kind, const Point& x, const Vec& ambient) {
  check_dim(kind, x.coords, "base point");
  check_dim(kind, ambient, "ambient vector");
  if (kind.type == ManifoldType::Sphere) {
    Vec v = ambient - ambient.dot(x.coords) * x.coords;
    return {x, std::move(v)};
  }
  return {x, ambient};
}

Point exp_map(const ManifoldKind& kind, const Point& x, const Tangent& v) {
  check_dim(kind, x.coords, "base point");
  check_dim(kind, v.vec, "tangent vector");
  if ((v.base.coords - x.coords).lpNorm<Eigen::Infinity>() > 0.0) {
    throw Error(ErrorCode::BaseMismatch, "tangent vector is anchored at a different point");
  }
  switch (kind.type) {
    case ManifoldType::Euclidean:
      return {x.coords + v.vec};
    case ManifoldType::Sphere: {
      double theta = v.vec.norm();
      if (theta < kSmallAngle) return x;
      Vec y = std::cos(theta) * x.coords + (std::sin(theta) / theta) * v.vec;
      return {y / y.norm()};
    }
    case ManifoldType::FlatTorus: {
      Vec out(x.coords.size());
      for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = wrap_to_2pi(x.coords[i] + v.vec[i]);
      return {out};
    }
  }
  throw Error(ErrorCode::UnsupportedManifold, "unknown manifold type");
}

Tangent log_map(const ManifoldKind& kind, const Point& x, const Point& y) {
  check_dim(kind, x.coords, "x");
  check_dim(kind, y.coords, "y");
  switch (kind.type) {
    case ManifoldType::Euclidean:
      return {x, y.coords - x.coords};
    case ManifoldType::Sphere: {
      double c = clamp_unit(x.coords.dot(y.coords));
      if (1.0 + c <= kAntipodalTol) {
        throw Error(ErrorCode::AntipodalPoints, "log map undefined at the cut locus");
      }
      double theta = std::acos(c);
      if (theta < kSmallAngle) return {x, Vec::Zero(x.coords.size())};
      Vec dir = y.coords - c * x.coords;
      double n = dir.norm();  // equals sin(theta) up to rounding
      return {x, (theta / n) * dir};
    }
    case ManifoldType::FlatTorus: {
      Vec out(x.coords.size());
      for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = wrap_angle(y.coords[i] - x.coords[i]);
      return {x, std::move(out)};
    }
  }
  throw Error(ErrorCode::UnsupportedManifold, "unknown manifold type");
}

double geodesic_distance(const ManifoldKind& kind, const Point& x, const Point& y) {
  check_dim(kind, x.coords, "x");
  check_dim(kind, y.coords, "y");
  switch (kind.type) {
    case ManifoldType::Euclidean:
      return (y.coords - x.coords).norm();
    case ManifoldType::Sphere:
      return std::acos(clamp_unit(x.coords.dot(y.coords)));
    case ManifoldType::FlatTorus: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.coords.size(); ++i) {
        double d = wrap_angle(y.coords[i] - x.coords[i]);
        s += d * d;
      }
      return std::sqrt(s);
    }
  }
  throw Error(ErrorCode::UnsupportedManifold, "unknown manifold type");
}

Point geodesic_interpolate(const ManifoldKind& kind, const Point& x0, const Point& x1, double t) {
  if (t == 0.0) return x0;
  if (t == 1.0) return x1;
  Tangent v = log_map(kind, x0, x1);
  v.vec *= t;
  return exp_map(kind, x0, v);
}

double metric_norm(const ManifoldKind& kind, const Tangent& v) {
  check_dim(kind, v.vec, "tangent vector");
  return v.vec.norm();
}

std::vector<Point> uniform_sample(const ManifoldKind& kind, Rng& rng, int n) {
  if (n < 1) throw Error(ErrorCode::EmptyInput, "sample count must be >= 1");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  switch (kind.type) {
    case ManifoldType::Sphere: {
      std::normal_distribution<double> normal(0.0, 1.0);
      while (static_cast<int>(out.size()) < n) {
        Vec v(kind.dim);
        for (int i = 0; i < kind.dim; ++i) v[i] = normal(rng);
        double norm = v.norm();
        if (norm < 1e-6) continue;
        out.push_back({v / norm});
      }
      return out;
    }
    case ManifoldType::FlatTorus: {
      std::uniform_real_distribution<double> uni(0.0, kTwoPi);
      for (int k = 0; k < n; ++k) {
        Vec v(kind.dim);
        for (int i = 0; i < kind.dim; ++i) v[i] = uni(rng);
        out.push_back({std::move(v)});
      }
      return out;
    }
    case ManifoldType::Euclidean:
      throw Error(ErrorCode::UnsupportedManifold,
                  "Euclidean space has no uniform distribution; use the cube prior");
  }
  throw Error(ErrorCode::UnsupportedManifold, "unknown manifold type");
}

}  // namespace rgvfm
