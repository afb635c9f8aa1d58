#include "doctest.h"

#include "lab/analytic_family.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

using namespace lab;

namespace {

struct SeriesRef {
  double zr, zi, t, re, im;
};

// Li_{-z}(e^{-it}) at 40 digits, tools/oracles/singular_series_oracle.py
const SeriesRef kSeriesRef[] = {
{-0.5, 0.0, 0.001, 38.172918479993124038, -39.633065089833712878},
{-0.5, 0.0, 0.05, 4.1446685652472753683, -5.5945967277049929619},
{-0.5, 0.0, 1.0, -0.19410893509218204974, -1.0439821028491615275},
{-0.5, 0.0, -2.0, -0.51993621129231433371, 0.45819750458641632712},
{-0.5, 0.0, 3.0, -0.60370734667240341452, -0.053861673414814715248},
{-0.3, 0.7, 0.001, -288.19173513578034776, 4.4067260477787554345},
{-0.3, 0.7, 0.05, 17.046624173488440717, 7.7465770601868503413},
{-0.3, 0.7, 1.0, -0.35523590256254178559, -1.5611342396539329125},
{-0.3, 0.7, -2.0, -0.34719154652440250207, 0.44915671747223000845},
{-0.3, 0.7, 3.0, -0.60717757644053369607, 0.095582922790738676089},
{-1.5, 0.0, 0.001, 2.5331089066764809658, -0.077806191447558167934},
{-1.5, 0.0, 0.05, 2.0521360870449344498, -0.48748192715258512678},
{-1.5, 0.0, 1.0, 0.21004942192553099467, -1.0505588471278016211},
{-1.5, 0.0, -2.0, -0.51078834603889136974, 0.65943605356728362719},
{-1.5, 0.0, 3.0, -0.7613352901859828302, -0.08559300822605201392},
{-2.2, 1.0, 0.001, 1.1550759718184154025, 0.3484619120615258997},
{-2.2, 1.0, 0.05, 1.2413501831264848872, 0.31507086097476482495},
{-2.2, 1.0, 1.0, 0.50575175295572727933, -1.128611616795553481},
{-2.2, 1.0, -2.0, -0.39040966997971715482, 0.74755544312243557058},
{-2.2, 1.0, 3.0, -0.8796803618369898227, -0.020480365399045966076},
{0.0, 1.5, 0.001, -2145.6202995037203997, 2196.0131966695312937},
{0.0, 1.5, 0.05, -56.776991596479881937, 23.20635428419871551},
{0.0, 1.5, 1.0, -0.21418605763882684048, -2.7904953498544901918},
{0.0, 1.5, -2.0, -0.15888311979149605966, 0.47906300311801898488},
{0.0, 1.5, 3.0, -0.64374443569397524263, 0.3060024543729657384},
{-1.0, 0.0, 0.001, 6.9077553206488040451, -1.5702963267948966192},
{-1.0, 0.0, 0.05, 2.9958364423908826142, -1.5457963267948966178},
{-1.0, 0.0, 1.0, 0.042019505825368961726, -1.0707963267948966192},
{-1.0, 0.0, -2.0, -0.5205434342908536309, 0.57079632679489661923},
{-1.0, 0.0, 3.0, -0.69063902436834890724, -0.070796326794896619231},
};

double sigma_max(const Eigen::MatrixXcd& M) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues()(0);
}

std::vector<GeometryConfig> configs() {
  return {make_config(2, 1, Sector::Rank1, 0.0), make_config(1, 1, Sector::Rank1, 0.5),
          make_config(2, 1, Sector::Rank1, 0.5), make_config(2, 3, Sector::Radial, 0.0),
          make_config(1, 3, Sector::Radial, 0.7)};
}

}  // namespace

TEST_CASE("singular series against reference values") {
  for (const auto& r : kSeriesRef) {
    cplx z(r.zr, r.zi), expect(r.re, r.im);
    CAPTURE(z);
    CAPTURE(r.t);
    SeriesInfo info;
    cplx v = singular_series(z, r.t, &info);
    CHECK(std::abs(v - expect) < 1e-10 * std::abs(expect));
    CHECK(info.euler_terms > 0);
    if (std::abs(r.t) >= 1.0) {
      cplx va = singular_series_abel(z, r.t);
      CHECK(std::abs(va - expect) < 1e-6 * std::abs(expect));
    }
  }
  CHECK(std::abs(singular_series(-2.0, kPi) + kPi * kPi / 12) < 1e-13);
  CHECK_THROWS(singular_series(-0.5, 0.0));
  CHECK_THROWS(singular_series(0.5, 1.0));
}

TEST_CASE("singular series leading term") {
  // (it)^{1/2} = |t|^{1/2} e^{i pi/4} for t > 0
  cplx lead = singular_series_leading(-1.5, 0.04) / gamma_complex(-0.5);
  CHECK(std::abs(lead - 0.2 * std::exp(cplx(0, kPi / 4))) < 1e-14);
  // for Re z < -1 the remainder tends to zeta(-z)
  const double zeta15 = 2.612375348685488343;
  double prev = INFINITY;
  for (double t : {1e-2, 1e-3, 1e-4}) {
    double err = std::abs(singular_series(-1.5, t) - singular_series_leading(-1.5, t) - zeta15);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-3);
  // Re z in (-1, 0]: the leading term dominates, S(t) (it)^{z+1} -> Gamma(z+1)
  for (cplx z : {cplx(-0.5, 0.0), cplx(0.0, 0.0), cplx(-0.3, 0.7)}) {
    cplx lim = singular_series(z, 1e-4) * std::exp((z + 1.0) * std::log(cplx(0, 1e-4)));
    CHECK(std::abs(lim - gamma_complex(z + 1.0)) < 0.05 * std::abs(gamma_complex(z + 1.0)));
  }
}

TEST_CASE("multiplier values") {
  auto cfg = make_config(2, 1, Sector::Rank1, 0.0);
  CHECK(g_multiplier(cfg, -1.0, 5, {2, 1, 0}) == cplx(1.0));
  CHECK(g_multiplier(cfg, -1.0, 6, {2, 1, 0}) == cplx(0.0));
  CHECK(g_multiplier(cfg, cplx(-0.4, 0.3), 3, {2, 1, 0}) == cplx(0.0));
  CHECK(std::abs(g_multiplier(cfg, 0.0, 8, {2, 1, 0}) - 1.0) < 1e-15);
  cplx z(-0.7, 1.2);
  cplx expect = rgamma_complex(z + 1.0) * std::exp(z * std::log(3.0));
  CHECK(std::abs(g_multiplier(cfg, z, 8, {2, 1, 0}) - expect) < 1e-14);
}

TEST_CASE("kernel magnitude scaling") {
  for (auto cfg : configs()) {
    CAPTURE(cfg.describe());
    WeightedPoint origin{0.0, 1};
    WeightedPoint y{0.7, 1};
    for (cplx z : {cplx(0.0, 0.0), cplx(-0.5, 0.0), cplx(-0.2, 1.0)}) {
      CAPTURE(z);
      std::vector<double> lx, ly;
      for (int i = 0; i < 25; ++i) {
        double t = std::pow(10.0, -3.0 + i * std::log10(300.0) / 24);
        lx.push_back(std::log(t));
        ly.push_back(std::log(std::abs(kz_kernel(cfg, z, t, origin, y))));
      }
      double mx = 0, my = 0;
      for (int i = 0; i < 25; ++i) {
        mx += lx[i] / 25;
        my += ly[i] / 25;
      }
      double sxy = 0, sxx = 0;
      for (int i = 0; i < 25; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
      }
      double slope = sxy / sxx;
      double predicted = -(z.real() + 1.0 + cfg.beta() / cfg.a);
      CHECK(std::abs(slope - predicted) < 0.1);
    }
  }
}

TEST_CASE("endpoint operator norms from the multiplier assembly") {
  auto cfg = make_config(2, 1, Sector::Rank1, 0.5);
  auto g = make_tz_grids(cfg, 5);
  double prev_log = 0.0;
  for (double s : {0.0, 0.5, 2.0, 5.0}) {
    auto T = assemble_tz(cfg, cplx(0.0, s), g);
    double s1 = sigma_max(T.M);
    double bound = std::abs(rgamma_complex(cplx(1.0, s)));
    CHECK(s1 <= bound + 1e-8);
    CHECK(s1 == doctest::Approx(bound).epsilon(1e-10));
    if (s > 0) CHECK(std::log(s1) - prev_log <= kPi / 2 * s + 1e-9);
    if (s == 0.0) prev_log = std::log(s1);
  }
}

TEST_CASE("T_{-1} is the surface projection") {
  for (auto cfg : configs()) {
    CAPTURE(cfg.describe());
    auto g = make_tz_grids(cfg, 5);
    auto T = assemble_tz(cfg, -1.0, g);
    auto P = assemble_surface_projection(cfg, g);
    CHECK((T.M - P.M).cwiseAbs().maxCoeff() < 1e-7);
    CHECK((T.M - T.M.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sigma_max(P.M) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(T.grid_id == P.grid_id);
  }
}

TEST_CASE("multiplier consistency and analyticity") {
  auto cfg = make_config(1, 1, Sector::Rank1, 0.5);
  auto g = make_tz_grids(cfg, 5);
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  CoeffTable tab;
  tab.nu_min = g.nu_min;
  tab.nu_max = g.nu_max;
  tab.idx = basis_indices(cfg, g.L_max);
  tab.c.resize(g.nu_max - g.nu_min + 1, tab.idx.size());
  for (Eigen::Index i = 0; i < tab.c.rows(); ++i)
    for (Eigen::Index j = 0; j < tab.c.cols(); ++j) tab.c(i, j) = cplx(nd(rng), nd(rng));
  auto F = inverse_transform(cfg, tab, g.time, g.space);
  Eigen::VectorXd sw(g.time.size() * g.space.size());
  Eigen::VectorXcd f(sw.size());
  for (std::size_t j = 0; j < g.time.size(); ++j)
    for (std::size_t i = 0; i < g.space.size(); ++i) {
      sw(j * g.space.size() + i) = std::sqrt(g.time.w[j] * g.space.w[i]);
      f(j * g.space.size() + i) = F.F(j, i);
    }
  cplx z(-0.6, 0.4);
  auto T = assemble_tz(cfg, z, g);
  Eigen::VectorXcd Tf = (T.M * sw.cast<cplx>().cwiseProduct(f)).cwiseQuotient(sw.cast<cplx>());
  CoeffTable gt = tab;
  for (Eigen::Index i = 0; i < tab.c.rows(); ++i)
    for (Eigen::Index j = 0; j < tab.c.cols(); ++j)
      gt.c(i, j) *= g_multiplier(cfg, z, g.nu_min + int(i), tab.idx[j]);
  auto ref = inverse_transform(cfg, gt, g.time, g.space);
  double err = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < g.time.size(); ++j)
    for (std::size_t i = 0; i < g.space.size(); ++i) {
      err = std::max(err, std::abs(Tf(j * g.space.size() + i) - ref.F(j, i)));
      scale = std::max(scale, std::abs(ref.F(j, i)));
    }
  CHECK(err < 1e-7 * scale);

  // z -> <f, T_z f> is analytic: Cauchy-Riemann by centered differences
  auto pairing = [&](cplx zz) {
    auto Tz = assemble_tz(cfg, zz, g);
    Eigen::VectorXcd v = sw.cast<cplx>().cwiseProduct(f);
    return v.dot(Tz.M * v);
  };
  const double h = 1e-5;
  cplx dx = (pairing(z + h) - pairing(z - h)) / (2 * h);
  cplx dy = (pairing(z + cplx(0, h)) - pairing(z - cplx(0, h))) / (2 * h);
  CHECK(std::abs(dx - dy / cplx(0, 1)) < 1e-6 * std::abs(dx));
}

TEST_CASE("kernel-path assembly and matrix dump") {
  auto cfg = make_config(2, 1, Sector::Rank1, 0.0);
  auto gl = gauss_legendre(6, -kPi / 2, kPi / 2);
  TimeGrid tg{gl.nodes, gl.weights, {}};
  auto sg = make_spatial_grid(cfg, 4);
  double off = 0.05;
  cplx z = cplx(-2.5, 0.0);  // Re z = -lambda_0 - 0.5: kernel bounded
  auto K = assemble_kz_kernel(cfg, z, tg, sg, off);
  CHECK(K.M.rows() == Eigen::Index(tg.size() * sg.size()));
  double sup = 0.0, ent = 0.0;
  for (Eigen::Index r = 0; r < K.M.rows(); ++r)
    for (Eigen::Index c = 0; c < K.M.cols(); ++c)
      ent = std::max(ent, std::abs(K.M(r, c)) / std::sqrt(K.row_w[r] * K.col_w[c]));
  for (std::size_t j = 0; j < tg.size(); ++j)
    for (std::size_t k = 0; k < tg.size(); ++k) {
      double dt = j == k ? off : tg.t[j] - tg.t[k];
      for (auto& x : sg.pts)
        for (auto& y : sg.pts) sup = std::max(sup, std::abs(kz_kernel(cfg, z, dt, x, y)));
    }
  CHECK(ent == doctest::Approx(sup).epsilon(1e-12));
  CHECK_THROWS(kz_kernel(cfg, z, kPi, sg.pts[0], sg.pts[0]));

  std::string path = "test_dump_matrix.bin";
  dump_matrix(K, path);
  std::ifstream in(path, std::ios::binary);
  std::vector<double> buf(2 * K.M.size());
  in.read(reinterpret_cast<char*>(buf.data()), buf.size() * sizeof(double));
  CHECK(in.gcount() == std::streamsize(buf.size() * sizeof(double)));
  CHECK(buf[2] == K.M(0, 1).real());
  CHECK(buf[3] == K.M(0, 1).imag());
  std::ifstream side(path + ".txt");
  std::string line;
  std::getline(side, line);
  CHECK(line == "rows=" + std::to_string(K.M.rows()));
  std::remove(path.c_str());
  std::remove((path + ".txt").c_str());
}
