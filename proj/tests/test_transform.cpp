#include "doctest.h"

#include "lab/semigroup.hpp"
#include "lab/transform.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace lab;

namespace {

std::vector<GeometryConfig> configs() {
  return {make_config(2, 1, Sector::Rank1, 0.0), make_config(1, 1, Sector::Rank1, 0.5),
          make_config(2, 1, Sector::Rank1, 0.3), make_config(2, 3, Sector::Radial, 0.0),
          make_config(1, 3, Sector::Radial, 0.7)};
}

CoeffTable random_table(const GeometryConfig& cfg, int nu_min, int nu_max, int L, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CoeffTable t;
  t.nu_min = nu_min;
  t.nu_max = nu_max;
  t.idx = basis_indices(cfg, L);
  t.c.resize(nu_max - nu_min + 1, t.idx.size());
  for (Eigen::Index i = 0; i < t.c.rows(); ++i)
    for (Eigen::Index j = 0; j < t.c.cols(); ++j) t.c(i, j) = cplx(nd(rng), nd(rng));
  return t;
}

}  // namespace

TEST_CASE("surface enumeration") {
  auto a2 = make_config(2, 1, Sector::Rank1, 0.0);
  CHECK(on_surface(a2, 5, {2, 1, 0}));
  CHECK_FALSE(on_surface(a2, 4, {2, 1, 0}));
  auto s = surface_enumerate(a2, 9);
  CHECK(s.size() == 10);
  std::vector<int> seen(10, 0);
  for (auto& si : s) seen[si.nu]++;
  for (int v : seen) CHECK(v == 1);
  auto r = make_config(1, 3, Sector::Radial, 0.0);
  auto sr = surface_enumerate(r, 8);
  CHECK(sr.size() == 5);
  for (std::size_t i = 0; i < sr.size(); ++i) CHECK(sr[i].nu == 2 * sr[i].idx.l);
  auto a1 = make_config(1, 1, Sector::Rank1, 0.5);
  for (auto& si : surface_enumerate(a1, 12)) CHECK(si.nu == 2 * si.idx.l + 2 * si.idx.m);
}

TEST_CASE("single mode and plancherel on the torus") {
  for (auto cfg : configs()) {
    CAPTURE(cfg.describe());
    const int L = 10;
    auto tg = torus_grid(64);
    auto sg = make_spatial_grid(cfg, L + 6);
    auto idx = basis_indices(cfg, L);
    CoeffTable one;
    one.nu_min = -5;
    one.nu_max = 20;
    one.idx = idx;
    one.c = Eigen::MatrixXcd::Zero(26, idx.size());
    one.c(7 + 5, 3) = 1.0;
    auto F = inverse_transform(cfg, one, tg, sg);
    auto back = fourier_coefficients(cfg, F, -5, 20, L);
    CHECK((back.c - one.c).cwiseAbs().maxCoeff() < 1e-12);

    auto tab = random_table(cfg, -5, 20, L, 11);
    auto G = inverse_transform(cfg, tab, tg, sg);
    double lhs = space_time_l2_squared(G);
    double rhs = 2 * kPi * tab.c.squaredNorm();
    CHECK(std::abs(lhs - rhs) / rhs < 1e-8);
    auto rt = fourier_coefficients(cfg, G, -5, 20, L);
    CHECK((rt.c - tab.c).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("restriction, extension and adjointness") {
  for (auto cfg : configs()) {
    CAPTURE(cfg.describe());
    const int L = 10;
    auto tg = torus_grid(64);
    auto sg = make_spatial_grid(cfg, L + 6);
    auto tab = random_table(cfg, 0, 2 * L + 2, L, 5);
    auto rs = restrict_to_surface(cfg, tab);
    CHECK(rs.c.norm() <= tab.c.norm());
    // R_S E_S = identity
    auto E = extend(cfg, rs, tg, sg);
    auto back = restrict_to_surface(cfg, fourier_coefficients(cfg, E, 0, 2 * L + 2, L));
    CHECK((back.c - rs.c).norm() < 1e-10 * rs.c.norm());
    // <E_S c, F> = 2 pi <c, R_S F>
    auto F = inverse_transform(cfg, random_table(cfg, 0, 2 * L + 2, L, 9), tg, sg);
    cplx lhs = 0.0;
    for (std::size_t j = 0; j < tg.size(); ++j)
      for (std::size_t i = 0; i < sg.size(); ++i)
        lhs += tg.w[j] * sg.w[i] * E.F(j, i) * std::conj(F.F(j, i));
    auto rf = restrict_to_surface(cfg, fourier_coefficients(cfg, F, 0, 2 * L + 2, L));
    cplx rhs = 2 * kPi * rs.c.dot(rf.c);
    rhs = std::conj(rhs);  // Eigen dot conjugates the left argument
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(rhs));
    // off-surface input is rejected
    SurfaceVector bad;
    bad.idx = {{3, {1, 0, 0}}};
    bad.c = Eigen::VectorXcd::Ones(1);
    CHECK_THROWS(extend(cfg, bad, tg, sg));
  }
}

TEST_CASE("extension equals the propagator up to a unimodular factor") {
  for (auto cfg : configs()) {
    CAPTURE(cfg.describe());
    const int L = 20;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    auto f = SpectralField::zero(cfg, L);
    for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = cplx(nd(rng), nd(rng));
    auto tg = half_interval_grid();
    auto sg = make_spatial_grid(cfg, L + 8);
    auto E = extend(cfg, surface_coefficients(cfg, f), tg, sg);
    double worst = 0.0;
    cplx phase_err = 0.0;
    for (std::size_t j = 0; j < tg.size(); ++j) {
      auto u = synthesize(propagate(f, tg.t[j]), sg);
      cplx pre = std::exp(cplx(0.0, tg.t[j] * (1.0 + cfg.lambda_m(0))));
      for (std::size_t i = 0; i < sg.size(); ++i) {
        worst = std::max(worst, std::abs(std::abs(E.F(j, i)) - std::abs(u[i])));
        phase_err = std::max(std::abs(phase_err), std::abs(E.F(j, i) - pre * u[i]));
      }
    }
    CHECK(worst < 1e-9);
    CHECK(std::abs(phase_err) < 1e-9);
  }
}

TEST_CASE("mixed norms") {
  auto cfg = make_config(2, 1, Sector::Rank1, 0.5);
  auto tg = half_interval_grid();
  auto sg = make_spatial_grid(cfg, 30);
  Eigen::MatrixXd F(tg.size(), sg.size());
  std::vector<double> h(sg.size());
  for (std::size_t i = 0; i < sg.size(); ++i) h[i] = std::exp(-sg.pts[i].r * sg.pts[i].r) * (1 + sg.pts[i].x() / 3);
  std::vector<double> g(tg.size());
  for (std::size_t j = 0; j < tg.size(); ++j) {
    g[j] = std::abs(std::cos(tg.t[j]) + 0.2 * std::sin(3 * tg.t[j]));
    for (std::size_t i = 0; i < sg.size(); ++i) F(j, i) = g[j] * std::abs(h[i]);
  }
  std::vector<double> ah(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) ah[i] = std::abs(h[i]);
  for (auto [p, q] : {std::pair{2.0, 2.0}, {3.0, 1.5}, {1.25, 4.0}, {2.0, INFINITY}}) {
    double gq = 0.0;
    if (std::isinf(q)) {
      for (double v : g) gq = std::max(gq, v);
    } else {
      for (std::size_t j = 0; j < g.size(); ++j) gq += tg.w[j] * std::pow(g[j], q);
      gq = std::pow(gq, 1.0 / q);
    }
    double expect = gq * lp_norm(sg, ah.data(), p);
    CHECK(std::abs(mixed_norm(F, tg, sg, p, q) - expect) < 1e-9 * expect);
  }
  double len = 0.0;
  for (double w : tg.w) len += w;
  CHECK(len == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("coefficient csv") {
  auto cfg = make_config(2, 1, Sector::Rank1, 0.0);
  CoeffTable t;
  t.nu_min = 0;
  t.nu_max = 1;
  t.idx = basis_indices(cfg, 0);
  t.c = Eigen::MatrixXcd::Zero(2, t.idx.size());
  t.c(1, 1) = cplx(0.5, -1.0);
  std::ostringstream os;
  write_coeff_csv(os, t);
  CHECK(os.str() == "nu,l,m,j,re,im\n0,0,0,0,0,0\n0,0,1,0,0,0\n1,0,0,0,0,0\n1,0,1,0,0.5,-1\n");
}
