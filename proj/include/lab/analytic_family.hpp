#pragma once

#include "lab/semigroup.hpp"
#include "lab/transform.hpp"

#include <array>
#include <iosfwd>
#include <string>

namespace lab {

// psi(z) = 1/Gamma(z+1)
cplx psi_factor(cplx z);
// psi(z) (nu - 2l - 2m/a)_+^z, with the on-surface indicator at z = -1
cplx g_multiplier(const GeometryConfig& cfg, cplx z, int nu, const SpectralIndex& idx);

// sum_{r>=1} r^z e^{-irt}, Re z <= 0, t in [-pi,pi] \ {0}.
// Partial sum to N-1 plus an Euler-transformed tail; the finite differences
// of r^z are expanded in derivatives so no cancellation occurs.
struct SeriesInfo {
  long long partial_terms = 0;
  int euler_terms = 0;
  double last_term = 0.0;
};
cplx singular_series(cplx z, double t, SeriesInfo* info = nullptr);
// Abel-damped variant: q-ladder and Richardson extrapolation in 1-q
cplx singular_series_abel(cplx z, double t, const std::array<double, 3>& q = {0.99, 0.995, 0.9975});
// leading term Gamma(z+1) (it)^{-z-1}
cplx singular_series_leading(cplx z, double t);

// K_z(t,x,y) = psi(z)/(2 pi) e^{it(1+lambda_0)} c Lambda(x,y;it) sum_r r^z e^{-irt}
cplx kz_kernel(const GeometryConfig& cfg, cplx z, double t, const WeightedPoint& x,
               const WeightedPoint& y);

struct OperatorMatrix {
  Eigen::MatrixXcd M;  // weight-symmetrized: D^{1/2} K D^{1/2}
  std::vector<double> row_w;
  std::vector<double> col_w;
  std::string grid_id;
};

struct TzGrids {
  TimeGrid time;  // torus rule
  SpatialGrid space;
  int nu_min = 0;
  int nu_max = 0;
  int L_max = 0;
};
TzGrids make_tz_grids(const GeometryConfig& cfg, int L_max);

// multiplier path: Q diag(G_z) Q*, Q the weighted characters x eigenfunctions
OperatorMatrix assemble_tz(const GeometryConfig& cfg, cplx z, const TzGrids& g);
// E_S E_S^* / (2 pi) from the extension matrix
OperatorMatrix assemble_surface_projection(const GeometryConfig& cfg, const TzGrids& g);
// kernel path on arbitrary grids; diagonal time pairs use a midpoint offset
OperatorMatrix assemble_kz_kernel(const GeometryConfig& cfg, cplx z, const TimeGrid& time,
                                  const SpatialGrid& space, double diag_offset);

std::string grid_hash(const TimeGrid& time, const SpatialGrid& space);
// row-major little-endian complex128 interleaved, plus a text sidecar
void dump_matrix(const OperatorMatrix& m, const std::string& path);

}  // namespace lab
