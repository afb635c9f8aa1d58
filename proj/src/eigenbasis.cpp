#include "lab/eigenbasis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lab {

bool index_supported(const GeometryConfig& cfg, const SpectralIndex& idx) {
  if (idx.l < 0 || idx.j != 0) return false;
  if (cfg.sector == Sector::Radial && idx.m != 0) return false;
  if (cfg.sector == Sector::Rank1 && idx.m != 0 && idx.m != 1) return false;
  if (cfg.boundary && idx.m == 0 && idx.l == 0) return false;  // psi_{0,0} vanishes there
  return true;
}

double eigenvalue(const GeometryConfig& cfg, const SpectralIndex& idx) {
  return 2.0 * idx.l + cfg.lambda_m(idx.m) + 1.0;
}

std::vector<SpectralIndex> basis_indices(const GeometryConfig& cfg, int L_max) {
  std::vector<SpectralIndex> out;
  for (int m : cfg.sectors())
    for (int l = 0; l <= L_max; ++l) {
      SpectralIndex i{l, m, 0};
      if (index_supported(cfg, i)) out.push_back(i);
    }
  std::stable_sort(out.begin(), out.end(), [&](const SpectralIndex& x, const SpectralIndex& y) {
    double ex = eigenvalue(cfg, x), ey = eigenvalue(cfg, y);
    if (ex != ey) return ex < ey;
    return x.m < y.m;
  });
  return out;
}

namespace {

void check_index(const GeometryConfig& cfg, const SpectralIndex& idx) {
  if (!index_supported(cfg, idx))
    throw std::invalid_argument("unsupported spectral index (l=" + std::to_string(idx.l) +
                                ", m=" + std::to_string(idx.m) + ")");
}

// psi_{l,m} for l = 0..L at one point, via u = (2/a) r^a
void psi_all(const GeometryConfig& cfg, int m, int L, double u, double* out) {
  const double lam = cfg.lambda_m(m);
  const double a = cfg.a;
  laguerre_orthonormal(L, lam, u, out);
  // sqrt(2^lam / a^lam) r^m e^{-u/2}, r^m = (a u / 2)^{m/a}
  double lpref = 0.5 * lam * std::log(2.0 / a) - 0.5 * u;
  if (m > 0) lpref += (m / a) * std::log(a * u / 2.0);
  double pref = (u > 0.0 || m == 0) ? std::exp(lpref) : 0.0;
  for (int l = 0; l <= L; ++l) out[l] *= pref;
}

}  // namespace

void psi_radial_all(const GeometryConfig& cfg, int m, int L, double r, double* out) {
  psi_all(cfg, m, L, (2.0 / cfg.a) * std::pow(r, cfg.a), out);
}

double psi_radial(const GeometryConfig& cfg, int l, int m, double r) {
  if (r <= 0.0) throw std::domain_error("psi_radial: r must be positive");
  if (cfg.sector == Sector::Radial && m != 0) throw std::invalid_argument("psi_radial: m != 0");
  std::vector<double> v(l + 1);
  psi_all(cfg, m, l, (2.0 / cfg.a) * std::pow(r, cfg.a), v.data());
  return v[l];
}

double angular_factor(const GeometryConfig& cfg, int m, int omega) {
  if (cfg.sector == Sector::Radial) return std::sqrt(2.0 * cfg.d_k);
  return m == 0 ? 1.0 : double(omega);
}

double phi_eigenfunction(const GeometryConfig& cfg, const SpectralIndex& idx,
                         const WeightedPoint& p) {
  check_index(cfg, idx);
  return angular_factor(cfg, idx.m, p.omega) * psi_radial(cfg, idx.l, idx.m, p.r);
}

Eigen::MatrixXd basis_matrix(const GeometryConfig& cfg, const std::vector<SpectralIndex>& idx,
                             const std::vector<WeightedPoint>& pts) {
  int L = 0;
  for (const auto& i : idx) {
    check_index(cfg, i);
    L = std::max(L, i.l);
  }
  Eigen::MatrixXd B(pts.size(), idx.size());
  std::vector<double> buf0(L + 1), buf1(L + 1);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    double u = (2.0 / cfg.a) * std::pow(pts[p].r, cfg.a);
    psi_all(cfg, 0, L, u, buf0.data());
    if (cfg.sector == Sector::Rank1) psi_all(cfg, 1, L, u, buf1.data());
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const auto& i = idx[c];
      double v = (i.m == 0 ? buf0 : buf1)[i.l];
      B(p, c) = angular_factor(cfg, i.m, pts[p].omega) * v;
    }
  }
  return B;
}

Eigen::MatrixXd basis_matrix(const GeometryConfig& cfg, const std::vector<SpectralIndex>& idx,
                             const SpatialGrid& grid) {
  // use the stored u to avoid a round trip through r
  int L = 0;
  for (const auto& i : idx) {
    check_index(cfg, i);
    L = std::max(L, i.l);
  }
  Eigen::MatrixXd B(grid.size(), idx.size());
  std::vector<double> buf0(L + 1), buf1(L + 1);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    psi_all(cfg, 0, L, grid.u[p], buf0.data());
    if (cfg.sector == Sector::Rank1) psi_all(cfg, 1, L, grid.u[p], buf1.data());
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const auto& i = idx[c];
      B(p, c) = angular_factor(cfg, i.m, grid.pts[p].omega) * (i.m == 0 ? buf0 : buf1)[i.l];
    }
  }
  return B;
}

SpectralField SpectralField::zero(const GeometryConfig& cfg, int L_max) {
  SpectralField f;
  f.cfg = cfg;
  f.L_max = L_max;
  f.idx = basis_indices(cfg, L_max);
  f.coeffs = Eigen::VectorXcd::Zero(f.idx.size());
  return f;
}

SpectralField analyze(const GeometryConfig& cfg, const SpatialGrid& grid,
                      const Eigen::VectorXcd& samples, int L_max) {
  if (samples.size() != Eigen::Index(grid.size()))
    throw std::invalid_argument("analyze: sample count does not match grid");
  SpectralField f = SpectralField::zero(cfg, L_max);
  Eigen::MatrixXd B = basis_matrix(cfg, f.idx, grid);
  Eigen::Map<const Eigen::VectorXd> w(grid.w.data(), grid.size());
  Eigen::VectorXcd ws = samples.cwiseProduct(w.cast<cplx>());
  f.coeffs = B.transpose().cast<cplx>() * ws;
  double total = 0.0;
  for (Eigen::Index i = 0; i < samples.size(); ++i) total += grid.w[i] * std::norm(samples[i]);
  f.plancherel_defect = total - f.coeffs.squaredNorm();
  f.tail_energy = std::max(0.0, f.plancherel_defect);
  return f;
}

Eigen::VectorXcd synthesize(const SpectralField& field, const SpatialGrid& grid) {
  Eigen::MatrixXd B = basis_matrix(field.cfg, field.idx, grid);
  return B.cast<cplx>() * field.coeffs;
}

Eigen::VectorXcd synthesize_at(const SpectralField& field, const std::vector<WeightedPoint>& pts) {
  Eigen::MatrixXd B = basis_matrix(field.cfg, field.idx, pts);
  return B.cast<cplx>() * field.coeffs;
}

double apply_dunkl_laplacian_rank1(const GeometryConfig& cfg, const std::function<double(double)>& f,
                                   double x, double h_rel) {
  if (cfg.sector != Sector::Rank1) throw std::invalid_argument("dunkl laplacian: rank1 only");
  if (x == 0.0) throw std::domain_error("dunkl laplacian: x = 0");
  const double h = h_rel * std::abs(x);
  double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
  double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
  double d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
  double k = cfg.gamma;
  return d2 + (2 * k / x) * d1 - (k / (x * x)) * (f0 - f(-x));
}

double apply_laguerre_operator_rank1(const GeometryConfig& cfg,
                                     const std::function<double(double)>& f, double x,
                                     double h_rel) {
  double ax = std::abs(x);
  double a = cfg.a;
  return (std::pow(ax, a) * f(x) - std::pow(ax, 2 - a) * apply_dunkl_laplacian_rank1(cfg, f, x, h_rel)) / a;
}

}  // namespace lab
