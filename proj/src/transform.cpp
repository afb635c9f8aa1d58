#include "lab/transform.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace lab {

TimeGrid half_interval_grid(int levels, int per_panel, double max_width) {
  TimeGrid g;
  g.breaks = graded_breaks(-kPi / 2, kPi / 2, levels, true);
  if (max_width > 0.0) g.breaks = refine_breaks(g.breaks, max_width);
  auto q = composite_legendre(g.breaks, per_panel);
  g.t = q.nodes;
  g.w = q.weights;
  return g;
}

TimeGrid torus_grid(int M) {
  if (M < 1) throw std::invalid_argument("torus_grid: M < 1");
  TimeGrid g;
  for (int j = 0; j < M; ++j) {
    g.t.push_back(-kPi + 2 * kPi * (j + 0.5) / M);
    g.w.push_back(2 * kPi / M);
  }
  return g;
}

int surface_nu(const GeometryConfig& cfg, const SpectralIndex& idx) {
  return 2 * idx.l + (2 * idx.m) / cfg.a;
}

bool on_surface(const GeometryConfig& cfg, int nu, const SpectralIndex& idx) {
  return nu == surface_nu(cfg, idx);
}

std::vector<SurfaceIndex> surface_enumerate(const GeometryConfig& cfg, int nu_max) {
  std::vector<SurfaceIndex> out;
  for (auto& i : basis_indices(cfg, nu_max / 2 + 1)) {
    int nu = surface_nu(cfg, i);
    if (nu <= nu_max) out.push_back({nu, i});
  }
  return out;
}

namespace {

Eigen::MatrixXcd characters(const TimeGrid& time, int nu_min, int nu_max, double sign) {
  Eigen::MatrixXcd E(time.size(), nu_max - nu_min + 1);
  for (std::size_t j = 0; j < time.size(); ++j)
    for (int nu = nu_min; nu <= nu_max; ++nu)
      E(j, nu - nu_min) = std::exp(cplx(0.0, sign * time.t[j] * nu));
  return E;
}

}  // namespace

CoeffTable fourier_coefficients(const GeometryConfig& cfg, const TimeSpaceField& F, int nu_min,
                                int nu_max, int L_max) {
  if (F.F.rows() != Eigen::Index(F.time.size()) || F.F.cols() != Eigen::Index(F.space.size()))
    throw std::invalid_argument("fourier_coefficients: sample shape does not match grids");
  CoeffTable tab;
  tab.nu_min = nu_min;
  tab.nu_max = nu_max;
  tab.idx = basis_indices(cfg, L_max);
  Eigen::MatrixXd B = basis_matrix(cfg, tab.idx, F.space);
  Eigen::Map<const Eigen::VectorXd> wt(F.time.w.data(), F.time.size());
  Eigen::Map<const Eigen::VectorXd> wx(F.space.w.data(), F.space.size());
  Eigen::MatrixXcd WF = wt.cast<cplx>().asDiagonal() * F.F * wx.cast<cplx>().asDiagonal();
  Eigen::MatrixXcd E = characters(F.time, nu_min, nu_max, 1.0);
  tab.c = E.transpose() * WF * B.cast<cplx>() / (2 * kPi);
  return tab;
}

TimeSpaceField inverse_transform(const GeometryConfig& cfg, const CoeffTable& table,
                                 const TimeGrid& time, const SpatialGrid& space) {
  TimeSpaceField out;
  out.time = time;
  out.space = space;
  Eigen::MatrixXd B = basis_matrix(cfg, table.idx, space);
  Eigen::MatrixXcd E = characters(time, table.nu_min, table.nu_max, -1.0);
  out.F = E * table.c * B.transpose().cast<cplx>();
  return out;
}

double space_time_l2_squared(const TimeSpaceField& F) {
  double s = 0.0;
  for (std::size_t j = 0; j < F.time.size(); ++j)
    for (std::size_t i = 0; i < F.space.size(); ++i)
      s += F.time.w[j] * F.space.w[i] * std::norm(F.F(j, i));
  return s;
}

SurfaceVector restrict_to_surface(const GeometryConfig& cfg, const CoeffTable& table) {
  SurfaceVector v;
  std::vector<cplx> vals;
  for (std::size_t c = 0; c < table.idx.size(); ++c) {
    int nu = surface_nu(cfg, table.idx[c]);
    if (nu < table.nu_min || nu > table.nu_max) continue;
    v.idx.push_back({nu, table.idx[c]});
    vals.push_back(table.c(nu - table.nu_min, c));
  }
  v.c = Eigen::Map<Eigen::VectorXcd>(vals.data(), vals.size());
  return v;
}

SurfaceVector surface_coefficients(const GeometryConfig& cfg, const SpectralField& f) {
  SurfaceVector v;
  for (auto& i : f.idx) v.idx.push_back({surface_nu(cfg, i), i});
  v.c = f.coeffs;
  return v;
}

Eigen::MatrixXcd extension_matrix(const GeometryConfig& cfg, const std::vector<SurfaceIndex>& s,
                                  const TimeGrid& time, const SpatialGrid& space) {
  std::vector<SpectralIndex> idx;
  for (auto& si : s) {
    if (!on_surface(cfg, si.nu, si.idx)) throw std::invalid_argument("extension: off-surface index");
    idx.push_back(si.idx);
  }
  Eigen::MatrixXd B = basis_matrix(cfg, idx, space);
  const Eigen::Index nx = space.size();
  Eigen::MatrixXcd A(time.size() * nx, s.size());
  for (std::size_t j = 0; j < time.size(); ++j) {
    double swt = std::sqrt(time.w[j]);
    for (std::size_t c = 0; c < s.size(); ++c) {
      cplx e = swt * std::exp(cplx(0.0, -time.t[j] * s[c].nu));
      for (Eigen::Index i = 0; i < nx; ++i) A(j * nx + i, c) = e * std::sqrt(space.w[i]) * B(i, c);
    }
  }
  return A;
}

TimeSpaceField extend(const GeometryConfig& cfg, const SurfaceVector& c, const TimeGrid& time,
                      const SpatialGrid& space) {
  std::vector<SpectralIndex> idx;
  for (auto& si : c.idx) {
    if (!on_surface(cfg, si.nu, si.idx)) throw std::invalid_argument("extend: off-surface index");
    idx.push_back(si.idx);
  }
  TimeSpaceField out;
  out.time = time;
  out.space = space;
  Eigen::MatrixXd B = basis_matrix(cfg, idx, space);
  Eigen::MatrixXcd E(time.size(), c.idx.size());
  for (std::size_t j = 0; j < time.size(); ++j)
    for (std::size_t k = 0; k < c.idx.size(); ++k)
      E(j, k) = std::exp(cplx(0.0, -time.t[j] * c.idx[k].nu)) * c.c[k];
  out.F = E * B.transpose().cast<cplx>();
  return out;
}

double mixed_norm(const Eigen::MatrixXd& absF, const TimeGrid& time, const SpatialGrid& space,
                  double p, double q) {
  if (absF.rows() != Eigen::Index(time.size()) || absF.cols() != Eigen::Index(space.size()))
    throw std::invalid_argument("mixed_norm: sample shape does not match grids");
  double acc = 0.0;
  for (std::size_t j = 0; j < time.size(); ++j) {
    Eigen::VectorXd row = absF.row(j);
    double inner = lp_norm(space, row.data(), p);
    if (std::isinf(q))
      acc = std::max(acc, inner);
    else
      acc += time.w[j] * std::pow(inner, q);
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

void write_coeff_csv(std::ostream& os, const CoeffTable& table) {
  os << "nu,l,m,j,re,im\n";
  os.precision(17);
  for (int nu = table.nu_min; nu <= table.nu_max; ++nu)
    for (std::size_t c = 0; c < table.idx.size(); ++c) {
      cplx v = table.c(nu - table.nu_min, c);
      os << nu << ',' << table.idx[c].l << ',' << table.idx[c].m << ',' << table.idx[c].j << ','
         << v.real() << ',' << v.imag() << '\n';
    }
}

}  // namespace lab
