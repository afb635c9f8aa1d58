#include "lab/analytic_family.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace lab {

cplx psi_factor(cplx z) { return rgamma_complex(z + 1.0); }

cplx g_multiplier(const GeometryConfig& cfg, cplx z, int nu, const SpectralIndex& idx) {
  int d = nu - surface_nu(cfg, idx);
  if (z == cplx(-1.0, 0.0)) return d == 0 ? 1.0 : 0.0;
  if (d <= 0) return 0.0;
  return psi_factor(z) * complex_power_plus(d, z);
}

namespace {

void check_series_args(cplx z, double t) {
  if (t == 0.0 || std::abs(t) > kPi) throw std::domain_error("singular_series: t must be in [-pi,pi]\\{0}");
  if (z.real() > 0.0) throw std::domain_error("singular_series: Re z > 0");
}

}  // namespace

cplx singular_series(cplx z, double t, SeriesInfo* info) {
  check_series_args(z, t);
  const long long N = (long long)std::ceil(40.0 / std::abs(t)) + 200;
  const cplx w = std::exp(cplx(0.0, -t));
  cplx s = 0.0;
  cplx wr = 1.0;
  for (long long r = 1; r < N; ++r) {
    wr *= w;
    if ((r & 1023) == 0) wr = std::exp(cplx(0.0, -t * double(r)));
    s += std::exp(z * std::log(double(r))) * wr;
  }
  // tail: w^N/(1-w) sum_j Delta^j f(N) (w/(1-w))^j, f(r) = r^z
  // Delta^j f(N) = N^z rho-scaled sum_n V(n,j) falling(z,n), V(n,j) = T(n,j) N^{j-n}
  const int J = 80, extra = 80;
  const double Nd = double(N);
  std::vector<cplx> D(J + 1, 0.0);
  std::vector<double> V(J + 1, 0.0), Vn(J + 1, 0.0);
  V[0] = 1.0;
  cplx fall = 1.0;  // falling(z, n)
  D[0] += fall;
  for (int n = 1; n <= J + extra; ++n) {
    fall *= (z - double(n - 1));
    Vn[0] = 0.0;
    for (int j = 1; j <= std::min(n, J); ++j)
      Vn[j] = double(j) / n * (V[j] / Nd + V[j - 1]);
    std::swap(V, Vn);
    for (int j = 1; j <= std::min(n, J); ++j) D[j] += V[j] * fall;
  }
  const cplx rho = w / ((1.0 - w) * Nd);
  const cplx pre = std::exp(z * std::log(Nd) + cplx(0.0, -t * Nd)) / (1.0 - w);
  cplx tail = 0.0, rj = 1.0;
  double prev = INFINITY, last = 0.0;
  int used = 0;
  for (int j = 0; j <= J; ++j) {
    cplx term = D[j] * rj;
    double mag = std::abs(term);
    if (j > 4 && mag > prev) break;  // asymptotic regime reached
    tail += term;
    used = j + 1;
    last = mag;
    prev = mag;
    if (j > 4 && mag < 1e-18 * std::abs(tail)) break;
    rj *= rho;
  }
  if (info) {
    info->partial_terms = N - 1;
    info->euler_terms = used;
    info->last_term = last * std::abs(pre);
  }
  return s + pre * tail;
}

cplx singular_series_abel(cplx z, double t, const std::array<double, 3>& q) {
  check_series_args(z, t);
  std::array<cplx, 3> f;
  for (int i = 0; i < 3; ++i) {
    cplx s = 0.0;
    double lq = std::log(q[i]);
    long long R = (long long)std::ceil(41.0 / (1.0 - q[i]));
    for (long long r = 1; r <= R; ++r)
      s += std::exp(z * std::log(double(r)) + cplx(lq * r, -t * double(r)));
    f[i] = s;
  }
  return (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
}

cplx singular_series_leading(cplx z, double t) {
  return gamma_complex(z + 1.0) * std::exp((-z - 1.0) * std::log(cplx(0.0, t)));
}

cplx kz_kernel(const GeometryConfig& cfg, cplx z, double t, const WeightedPoint& x,
               const WeightedPoint& y) {
  double q = t / kPi;
  if (std::abs(q - std::round(q)) < 1e-14) throw std::domain_error("kz_kernel: t in pi Z");
  // reduce to (-pi, pi]; K_z is 2 pi periodic in t
  double tr = std::remainder(t, 2 * kPi);
  cplx lam = kernel_closed_form(cfg, x, y, cplx(0.0, tr)).value;
  cplx pre = std::exp(cplx(0.0, tr * (1.0 + cfg.lambda_m(0)))) * cfg.c_ka() / (2 * kPi);
  if (z == cplx(-1.0, 0.0)) return pre * lam;
  return pre * psi_factor(z) * lam * singular_series(z, tr);
}

TzGrids make_tz_grids(const GeometryConfig& cfg, int L_max) {
  TzGrids g;
  g.L_max = L_max;
  g.nu_min = 0;
  g.nu_max = 2 * L_max + 2;
  g.time = torus_grid(g.nu_max + 2);
  g.space = make_spatial_grid(cfg, L_max + 4);
  return g;
}

namespace {

std::vector<double> product_weights(const TimeGrid& time, const SpatialGrid& space) {
  std::vector<double> w;
  for (std::size_t j = 0; j < time.size(); ++j)
    for (std::size_t i = 0; i < space.size(); ++i) w.push_back(time.w[j] * space.w[i]);
  return w;
}

}  // namespace

OperatorMatrix assemble_tz(const GeometryConfig& cfg, cplx z, const TzGrids& g) {
  cfg.require_strict("assemble_tz");
  auto idx = basis_indices(cfg, g.L_max);
  Eigen::MatrixXd B = basis_matrix(cfg, idx, g.space);
  const Eigen::Index nx = g.space.size(), nt = g.time.size();
  const int nnu = g.nu_max - g.nu_min + 1;
  Eigen::MatrixXcd Q(nt * nx, nnu * idx.size());
  Eigen::VectorXcd G(nnu * idx.size());
  for (int v = 0; v < nnu; ++v)
    for (std::size_t c = 0; c < idx.size(); ++c)
      G(v * idx.size() + c) = g_multiplier(cfg, z, g.nu_min + v, idx[c]);
  for (Eigen::Index j = 0; j < nt; ++j) {
    double swt = std::sqrt(g.time.w[j] / (2 * kPi));
    for (int v = 0; v < nnu; ++v) {
      cplx e = swt * std::exp(cplx(0.0, -g.time.t[j] * (g.nu_min + v)));
      for (std::size_t c = 0; c < idx.size(); ++c)
        for (Eigen::Index i = 0; i < nx; ++i)
          Q(j * nx + i, v * idx.size() + c) = e * std::sqrt(g.space.w[i]) * B(i, c);
    }
  }
  OperatorMatrix out;
  out.M = Q * G.asDiagonal() * Q.adjoint();
  out.row_w = out.col_w = product_weights(g.time, g.space);
  out.grid_id = grid_hash(g.time, g.space);
  return out;
}

OperatorMatrix assemble_surface_projection(const GeometryConfig& cfg, const TzGrids& g) {
  cfg.require_strict("assemble_surface_projection");
  auto s = surface_enumerate(cfg, g.nu_max);
  std::vector<SurfaceIndex> keep;
  for (auto& si : s)
    if (si.idx.l <= g.L_max && si.nu >= g.nu_min) keep.push_back(si);
  Eigen::MatrixXcd E = extension_matrix(cfg, keep, g.time, g.space);
  OperatorMatrix out;
  out.M = E * E.adjoint() / (2 * kPi);
  out.row_w = out.col_w = product_weights(g.time, g.space);
  out.grid_id = grid_hash(g.time, g.space);
  return out;
}

OperatorMatrix assemble_kz_kernel(const GeometryConfig& cfg, cplx z, const TimeGrid& time,
                                  const SpatialGrid& space, double diag_offset) {
  cfg.require_strict("assemble_kz_kernel");
  const Eigen::Index nx = space.size(), nt = time.size();
  OperatorMatrix out;
  out.M.resize(nt * nx, nt * nx);
  out.row_w = out.col_w = product_weights(time, space);
  for (Eigen::Index j = 0; j < nt; ++j)
    for (Eigen::Index k = 0; k < nt; ++k) {
      double dt = time.t[j] - time.t[k];
      if (j == k || std::abs(dt) < 1e-14) dt = diag_offset;
      for (Eigen::Index i = 0; i < nx; ++i)
        for (Eigen::Index l = 0; l < nx; ++l) {
          double sw = std::sqrt(out.row_w[j * nx + i] * out.col_w[k * nx + l]);
          out.M(j * nx + i, k * nx + l) = sw * kz_kernel(cfg, z, dt, space.pts[i], space.pts[l]);
        }
    }
  out.grid_id = grid_hash(time, space);
  return out;
}

std::string grid_hash(const TimeGrid& time, const SpatialGrid& space) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](double v) {
    unsigned char b[8];
    std::memcpy(b, &v, 8);
    for (unsigned char c : b) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (std::size_t j = 0; j < time.size(); ++j) {
    mix(time.t[j]);
    mix(time.w[j]);
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    mix(space.pts[i].x());
    mix(space.w[i]);
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void dump_matrix(const OperatorMatrix& m, const std::string& path) {
  std::ofstream bin(path, std::ios::binary);
  if (!bin) throw std::runtime_error("dump_matrix: cannot open " + path);
  for (Eigen::Index r = 0; r < m.M.rows(); ++r)
    for (Eigen::Index c = 0; c < m.M.cols(); ++c) {
      double v[2] = {m.M(r, c).real(), m.M(r, c).imag()};
      bin.write(reinterpret_cast<const char*>(v), sizeof v);  // host is little-endian
    }
  std::ofstream side(path + ".txt");
  side << "rows=" << m.M.rows() << "\ncols=" << m.M.cols()
       << "\nlayout=row-major complex128 little-endian interleaved\ngrid=" << m.grid_id << "\n";
}

}  // namespace lab
