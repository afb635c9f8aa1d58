#include "doctest.h"

#include "lab/semigroup.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace lab;

namespace {

std::vector<GeometryConfig> strict_configs() {
  return {make_config(2, 1, Sector::Rank1, 0.0), make_config(1, 1, Sector::Rank1, 0.5),
          make_config(2, 1, Sector::Rank1, 0.5), make_config(2, 3, Sector::Radial, 0.0),
          make_config(1, 3, Sector::Radial, 0.7), make_config(1, 1, Sector::Rank1, 1.5)};
}

std::vector<WeightedPoint> sample_points(const GeometryConfig& cfg, int count, double rmax) {
  std::vector<WeightedPoint> pts;
  for (int i = 0; i < count; ++i) {
    if (cfg.sector == Sector::Rank1) {
      double x = -rmax + 2 * rmax * (i + 0.5) / count;
      pts.push_back({std::abs(x), x < 0 ? -1 : 1});
    } else {
      pts.push_back({rmax * (i + 0.5) / count, 1});
    }
  }
  return pts;
}

SpectralField random_field(const GeometryConfig& cfg, int L, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  auto f = SpectralField::zero(cfg, L);
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = cplx(nd(rng), nd(rng));
  f.coeffs /= f.coeffs.norm();
  return f;
}

}  // namespace

TEST_CASE("semigroup on coefficients") {
  for (auto cfg : strict_configs()) {
    CAPTURE(cfg.describe());
    auto f = random_field(cfg, 30, 7);
    CHECK((apply_semigroup(f, 0.0).coeffs - f.coeffs).norm() == 0.0);
    for (double t : {0.3, 1.7, -2.9, 100.0}) {
      auto u = propagate(f, t);
      CHECK(std::abs(u.norm() - f.norm()) < 1e-14);
    }
    cplx z(0.4, 1.1);
    auto g = apply_semigroup(f, z);
    CHECK(g.norm() <= operator_norm_bound(cfg, z) * f.norm() * (1 + 1e-14));
    // attained on the ground state
    auto e0 = SpectralField::zero(cfg, 30);
    e0.coeffs[0] = 1.0;
    CHECK(std::abs(apply_semigroup(e0, z).norm() - operator_norm_bound(cfg, z)) < 1e-14);
    CHECK_THROWS(apply_semigroup(f, cplx(-0.1, 0.0)));
  }
}

TEST_CASE("hilbert-schmidt norms converge") {
  for (auto cfg : strict_configs()) {
    double prev = hilbert_schmidt_norm(cfg, 0.5, 12);
    for (int L : {24, 48, 96}) {
      double cur = hilbert_schmidt_norm(cfg, 0.5, L);
      CHECK(cur >= prev);
      if (L >= 48) CHECK(cur - prev < 1e-8);
      prev = cur;
    }
  }
}

TEST_CASE("closed form matches the spectral series at Re z = 0.5") {
  for (auto cfg : strict_configs()) {
    CAPTURE(cfg.describe());
    auto pts = sample_points(cfg, 20, 3.0);
    double worst = 0.0;
    for (cplx z : {cplx(0.5, 0.0), cplx(0.5, 0.9), cplx(0.5, -2.4)}) {
      std::vector<cplx> sv, cv;
      double peak = 0.0;
      for (auto& x : pts)
        for (auto& y : pts) {
          sv.push_back(kernel_spectral(cfg, x, y, z, 80).value);
          cv.push_back(kernel_closed_form(cfg, x, y, z).value);
          peak = std::max(peak, std::abs(cv.back()));
        }
      // values far below the grid peak are under the series' cancellation floor
      for (std::size_t i = 0; i < sv.size(); ++i)
        worst = std::max(worst, std::abs(sv[i] - cv[i]) / std::max(std::abs(cv[i]), 1e-8 * peak));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("mehler kernel") {
  auto cfg = make_config(2, 1, Sector::Rank1, 0.0);
  cplx z(0.7, 0.2);
  double x = 0.8, y = -1.3;
  cplx expect = std::exp(-(x * x + y * y) / 2.0 * std::cosh(z) / std::sinh(z) + x * y / std::sinh(z)) /
                std::sqrt(std::sinh(z));
  auto c = kernel_closed_form(cfg, {0.8, 1}, {1.3, -1}, z);
  CHECK(std::abs(c.value - expect) < 1e-13);
}

TEST_CASE("kernel symmetry and composition") {
  for (auto cfg : strict_configs()) {
    CAPTURE(cfg.describe());
    cplx z1(0.3, 0.4), z2(0.25, -1.0);
    auto g = make_spatial_grid(cfg, 120);
    for (auto x : sample_points(cfg, 3, 1.5))
      for (auto y : sample_points(cfg, 3, 2.0)) {
        auto a = kernel_spectral(cfg, x, y, z1, 120).value;
        auto b = kernel_spectral(cfg, y, x, z1, 120).value;
        CHECK(std::abs(a - b) < 1e-13 * (1 + std::abs(a)));
        cplx integral = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
          integral += g.w[i] * kernel_spectral(cfg, x, g.pts[i], z1, 120).value *
                      kernel_spectral(cfg, g.pts[i], y, z2, 120).value;
        cplx rhs = kernel_spectral(cfg, x, y, z1 + z2, 120).value / cfg.c_ka();
        CHECK(std::abs(integral - rhs) < 1e-7 * (1 + std::abs(rhs)));
      }
  }
}

TEST_CASE("boundary kernel bound, conjugation and periodicity") {
  for (auto cfg : strict_configs()) {
    CAPTURE(cfg.describe());
    auto pts = sample_points(cfg, 6, 2.5);
    double worst_slack = 1.0;
    for (double mu : {0.3, 0.9, 1.4, 2.2, 2.9})
      for (auto& x : pts)
        for (auto& y : pts) {
          double b = kernel_bound(cfg, mu);
          for (double eps : {0.0, 1e-3, 0.1}) {
            double v = std::abs(kernel_closed_form(cfg, x, y, cplx(eps, mu)).value);
            worst_slack = std::min(worst_slack, (b - v) / b);
          }
        }
    CHECK(worst_slack >= -1e-8);

    for (double mu : {0.7, 2.0}) {
      auto& x = pts[1];
      auto& y = pts[4];
      auto kp = kernel_spectral(cfg, x, y, cplx(0.0, mu), 0, true).value;
      auto km = kernel_spectral(cfg, x, y, cplx(0.0, -mu), 0, true).value;
      CHECK(std::abs(km - std::conj(kp)) < 1e-7 * (1 + std::abs(kp)));
      auto ks = kernel_spectral(cfg, x, y, cplx(0.0, mu + kPi), 0, true).value;
      auto kr = kernel_spectral(cfg, sigma_reflect(cfg, x), y, cplx(0.0, mu), 0, true).value;
      CHECK(std::abs(ks - kernel_shift_phase(cfg) * kr) < 1e-7 * (1 + std::abs(ks)));
      // the extrapolated boundary series agrees with the closed form on Re z = 0
      auto cf = kernel_closed_form(cfg, x, y, cplx(0.0, mu)).value;
      CHECK(std::abs(kp - cf) < 1e-5 * (1 + std::abs(cf)));
    }
  }
}

TEST_CASE("kernel preconditions") {
  auto cfg = make_config(2, 1, Sector::Rank1, 0.5);
  CHECK_THROWS(kernel_spectral(cfg, {1, 1}, {1, 1}, cplx(0.0, 1.0), 40));
  CHECK_THROWS(kernel_closed_form(cfg, {1, 1}, {1, 1}, cplx(0.0, kPi)));
  CHECK_THROWS(kernel_closed_form(cfg, {1, 1}, {1, 1}, cplx(-0.1, 1.0)));
  auto b = make_config(1, 1, Sector::Rank1, 0.0);
  CHECK_THROWS_AS(kernel_spectral(b, {1, 1}, {1, 1}, 0.5, 40), ConfigError);
}
