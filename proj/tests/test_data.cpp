#include <doctest.h>

#include <cmath>
#include <map>

#include "rgvfm/data.hpp"
#include "test_util.hpp"

using namespace rgvfm;
using namespace rgvfm::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;
const CheckerboardGrid kGrid{8, 4, Parity::Even};
const ManifoldKind kSphere = ManifoldKind::sphere(3);
}  // namespace

TEST_CASE("cell_index basics") {
  CellIndex a = cell_index(kGrid, Point{vec3(1, 0, 0)});
  CHECK(a.azimuth == 0);
  CHECK(a.z == 2);

  // pole clamps into the outer band
  CellIndex b = cell_index(kGrid, Point{vec3(0, 0, 1)});
  CHECK(b.azimuth == 0);
  CHECK(b.z == 3);

  CellIndex c = cell_index(kGrid, Point{vec3(0, 0, -1)});
  CHECK(c.z == 0);

  CHECK_THROWS_AS(cell_index(kGrid, Point{Vec::Zero(2)}), Error);
}

TEST_CASE("is_on_cell parity") {
  CHECK(is_on_cell(kGrid, Point{vec3(1, 0, 0)}));  // (0 + 2) even

  // neighbors across an azimuth cell edge disagree
  double edge = 2.0 * kPi / kGrid.n_azimuth;
  Point left = wrap_to_sphere(edge - 0.01, 0.3);
  Point right = wrap_to_sphere(edge + 0.01, 0.3);
  CHECK(is_on_cell(kGrid, left) != is_on_cell(kGrid, right));

  // parity is consistent across the phi = 0 seam: the last azimuth cell and
  // cell 0 differ because n_azimuth is even
  Point before_seam = wrap_to_sphere(2.0 * kPi - 0.01, 0.3);
  Point after_seam = wrap_to_sphere(0.01, 0.3);
  CHECK(is_on_cell(kGrid, before_seam) != is_on_cell(kGrid, after_seam));

  CheckerboardGrid odd = kGrid;
  odd.parity = Parity::Odd;
  CHECK(!is_on_cell(odd, Point{vec3(1, 0, 0)}));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(validate_grid(CheckerboardGrid{7, 4, Parity::Even}), Error);
  CHECK_THROWS_AS(validate_grid(CheckerboardGrid{8, 0, Parity::Even}), Error);
  CHECK_NOTHROW(validate_grid(kGrid));
}

TEST_CASE("cells have equal area under the uniform measure") {
  Rng rng(1234);
  const int n = 1000000;
  auto pts = uniform_sample(kSphere, rng, n);
  std::vector<long> counts(static_cast<std::size_t>(kGrid.n_azimuth) * kGrid.n_z, 0);
  long on = 0;
  for (const Point& p : pts) {
    CellIndex c = cell_index(kGrid, p);
    counts[static_cast<std::size_t>(c.z) * kGrid.n_azimuth + c.azimuth] += 1;
    if (is_on_cell(kGrid, p)) on += 1;
  }
  const double cells = static_cast<double>(kGrid.n_azimuth * kGrid.n_z);
  const double p_cell = 1.0 / cells;
  const double se = std::sqrt(p_cell * (1.0 - p_cell) / n);
  for (long c : counts) {
    CHECK(std::abs(static_cast<double>(c) / n - p_cell) <= 3.0 * se);
  }
  // exactly half the area is "on"
  const double se_half = std::sqrt(0.25 / n);
  CHECK(std::abs(static_cast<double>(on) / n - 0.5) <= 3.0 * se_half);
}

TEST_CASE("sample_checkerboard respects its support") {
  Rng rng(2);
  auto pts = sample_checkerboard(kGrid, rng, 20000);
  REQUIRE(pts.size() == 20000);
  for (const Point& p : pts) {
    CHECK(is_on_cell(kGrid, p));
    CHECK(std::abs(p.coords.norm() - 1.0) <= 1e-10);
  }
  Rng r1(9), r2(9);
  auto s1 = sample_checkerboard(kGrid, r1, 10);
  auto s2 = sample_checkerboard(kGrid, r2, 10);
  for (int i = 0; i < 10; ++i) CHECK((s1[i].coords - s2[i].coords).norm() == 0.0);
}

TEST_CASE("checkerboard samples are uniform across on-cells") {
  Rng rng(77);
  const int n = 100000;
  auto pts = sample_checkerboard(kGrid, rng, n);
  std::map<std::pair<int, int>, long> counts;
  for (const Point& p : pts) {
    CellIndex c = cell_index(kGrid, p);
    counts[{c.azimuth, c.z}] += 1;
  }
  const int k = on_cell_count(kGrid);
  REQUIRE(static_cast<int>(counts.size()) == k);
  const double expected = static_cast<double>(n) / k;
  double chi2 = 0.0;
  for (const auto& [cell, c] : counts) {
    double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  // chi-square critical value at 0.99 confidence, 15 dof
  CHECK(chi2 <= 30.57791416689249);
}

TEST_CASE("sample_prior") {
  Rng rng(3);
  auto cube = sample_prior(Variant::CFM, rng, 100000);
  Vec mean = Vec::Zero(3);
  for (const Vec& v : cube) {
    for (int i = 0; i < 3; ++i) {
      CHECK(v[i] >= -1.0);
      CHECK(v[i] <= 1.0);
    }
    mean += v;
  }
  mean /= static_cast<double>(cube.size());
  for (int i = 0; i < 3; ++i) CHECK(std::abs(mean[i]) < 0.01);

  auto on_sphere = sample_prior(Variant::RFM, rng, 1000);
  for (const Vec& v : on_sphere) CHECK(std::abs(v.norm() - 1.0) <= 1e-10);

  auto cube2 = sample_prior(Variant::RG_VFM_R3, rng, 10);
  for (const Vec& v : cube2) CHECK(v.lpNorm<Eigen::Infinity>() <= 1.0);
  auto sphere2 = sample_prior(Variant::RG_VFM_M, rng, 10);
  for (const Vec& v : sphere2) CHECK(std::abs(v.norm() - 1.0) <= 1e-10);
}

TEST_CASE("unwrap and its inverse") {
  auto [phi0, z0] = unwrap(Point{vec3(1, 0, 0)});
  CHECK(phi0 == 0.0);
  CHECK(z0 == 0.0);
  auto [phi1, z1] = unwrap(Point{vec3(0, 1, 0)});
  CHECK(phi1 == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(z1 == 0.0);

  Rng rng(4);
  double worst = 0.0;
  int used = 0;
  while (used < 10000) {
    Point p = random_sphere_point(rng);
    if (std::abs(p.coords[2]) > 0.9999) continue;  // poles excluded
    ++used;
    auto [phi, z] = unwrap(p);
    CHECK(phi >= 0.0);
    CHECK(phi < 2.0 * kPi);
    Point back = wrap_to_sphere(phi, z);
    worst = std::max(worst, (back.coords - p.coords).lpNorm<Eigen::Infinity>());
  }
  CHECK(worst <= 1e-12);
}
