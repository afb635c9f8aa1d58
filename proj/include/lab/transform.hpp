#pragma once

#include "lab/eigenbasis.hpp"

#include <iosfwd>
#include <vector>

namespace lab {

struct TimeGrid {
  std::vector<double> t;
  std::vector<double> w;
  std::vector<double> breaks;  // empty for the torus rule
  std::size_t size() const { return t.size(); }
};

// composite Gauss-Legendre on (-pi/2, pi/2), graded toward 0 and the endpoints,
// optionally split further so no panel is wider than max_width
TimeGrid half_interval_grid(int levels = 2, int per_panel = 16, double max_width = 0.0);
// uniform rule on (-pi, pi); exact for trigonometric polynomials of degree < M
TimeGrid torus_grid(int M);

struct TimeSpaceField {
  TimeGrid time;
  SpatialGrid space;
  Eigen::MatrixXcd F;  // rows: time nodes, cols: spatial nodes
};

struct SurfaceIndex {
  int nu = 0;
  SpectralIndex idx;
};

int surface_nu(const GeometryConfig& cfg, const SpectralIndex& idx);  // 2l + 2m/a
bool on_surface(const GeometryConfig& cfg, int nu, const SpectralIndex& idx);
std::vector<SurfaceIndex> surface_enumerate(const GeometryConfig& cfg, int nu_max);

struct CoeffTable {
  int nu_min = 0;
  int nu_max = 0;
  std::vector<SpectralIndex> idx;
  Eigen::MatrixXcd c;  // rows: nu - nu_min, cols: idx
};

struct SurfaceVector {
  std::vector<SurfaceIndex> idx;
  Eigen::VectorXcd c;
};

// (1/2pi) int int F Phi e^{i t nu} dt v dx on the field's own grids
CoeffTable fourier_coefficients(const GeometryConfig& cfg, const TimeSpaceField& F, int nu_min,
                                int nu_max, int L_max);
// inverse series sum F^ Phi e^{-i t nu} on the given grids
TimeSpaceField inverse_transform(const GeometryConfig& cfg, const CoeffTable& table,
                                 const TimeGrid& time, const SpatialGrid& space);
double space_time_l2_squared(const TimeSpaceField& F);

SurfaceVector restrict_to_surface(const GeometryConfig& cfg, const CoeffTable& table);
// surface coefficients of f: c(nu_S(idx), idx) = f^(idx)
SurfaceVector surface_coefficients(const GeometryConfig& cfg, const SpectralField& f);
TimeSpaceField extend(const GeometryConfig& cfg, const SurfaceVector& c, const TimeGrid& time,
                      const SpatialGrid& space);

// columns sqrt(w_t w_x) Phi(x) e^{-i t nu} for each surface index; rows time-major
Eigen::MatrixXcd extension_matrix(const GeometryConfig& cfg, const std::vector<SurfaceIndex>& s,
                                  const TimeGrid& time, const SpatialGrid& space);

// (int (int |F|^p v dx)^{q/p} dt)^{1/q}; p or q may be infinite
double mixed_norm(const Eigen::MatrixXd& absF, const TimeGrid& time, const SpatialGrid& space,
                  double p, double q);

void write_coeff_csv(std::ostream& os, const CoeffTable& table);

}  // namespace lab
