#pragma once

#include "lab/geometry.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace lab {

struct SpectralIndex {
  int l = 0;
  int m = 0;
  int j = 0;
  bool operator==(const SpectralIndex&) const = default;
};

// All supported indices with l <= L_max, ordered by eigenvalue (ties by m).
std::vector<SpectralIndex> basis_indices(const GeometryConfig& cfg, int L_max);
bool index_supported(const GeometryConfig& cfg, const SpectralIndex& idx);

double psi_radial(const GeometryConfig& cfg, int l, int m, double r);
// psi_{0..L, m}(r) in one recurrence pass
void psi_radial_all(const GeometryConfig& cfg, int m, int L, double r, double* out);
double angular_factor(const GeometryConfig& cfg, int m, int omega);
double phi_eigenfunction(const GeometryConfig& cfg, const SpectralIndex& idx,
                         const WeightedPoint& p);
double eigenvalue(const GeometryConfig& cfg, const SpectralIndex& idx);

// Phi_idx evaluated at arbitrary points: rows = points, cols = indices.
Eigen::MatrixXd basis_matrix(const GeometryConfig& cfg, const std::vector<SpectralIndex>& idx,
                             const std::vector<WeightedPoint>& pts);
Eigen::MatrixXd basis_matrix(const GeometryConfig& cfg, const std::vector<SpectralIndex>& idx,
                             const SpatialGrid& grid);

struct SpectralField {
  GeometryConfig cfg;
  int L_max = 0;
  std::vector<SpectralIndex> idx;
  Eigen::VectorXcd coeffs;
  double plancherel_defect = 0.0;  // |f|^2 - sum |f^|^2 from the analysis step
  double tail_energy = 0.0;

  static SpectralField zero(const GeometryConfig& cfg, int L_max);
  double norm() const { return coeffs.norm(); }
};

SpectralField analyze(const GeometryConfig& cfg, const SpatialGrid& grid,
                      const Eigen::VectorXcd& samples, int L_max);
Eigen::VectorXcd synthesize(const SpectralField& field, const SpatialGrid& grid);
Eigen::VectorXcd synthesize_at(const SpectralField& field, const std::vector<WeightedPoint>& pts);

// Rank-1 Dunkl Laplacian f'' + (2k/x) f' - (k/x^2)(f(x) - f(-x)) by a centered
// 4th-order stencil with step h_rel |x|.
double apply_dunkl_laplacian_rank1(const GeometryConfig& cfg, const std::function<double(double)>& f,
                                   double x, double h_rel = 1e-3);
// (1/a)(|x|^a f - |x|^{2-a} Delta_k f)
double apply_laguerre_operator_rank1(const GeometryConfig& cfg,
                                     const std::function<double(double)>& f, double x,
                                     double h_rel = 1e-3);

}  // namespace lab
