#pragma once

#include "lab/special_fn.hpp"

#include <boost/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lab {

using Rational = boost::rational<long long>;

enum class Sector { Rank1, Radial };

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GeometryConfig {
  int a = 2;
  int n = 1;
  Sector sector = Sector::Rank1;
  double gamma = 0.0;  // k for rank1, gamma for radial
  std::optional<Rational> gamma_exact;

  // derived
  double lambda0 = 0.0;  // 1 + (2 gamma + n + a - 2)/a
  double d_k = 0.5;
  bool boundary = false;  // a + 2 gamma + n - 2 == 0

  // 2 gamma + n + a - 2; the homogeneity of v_{k,a} dx
  double beta() const { return 2.0 * gamma + n + a - 2.0; }
  // lambda_{k,a,m} = (2m + 2 gamma + n - 2)/a
  double lambda_m(int m) const { return (2.0 * m + 2.0 * gamma + n - 2.0) / a; }
  // c_{k,a} = a^{-(2 gamma+n-2)/a} Gamma((2 gamma+n+a-2)/a)^{-1} d_k
  double c_ka() const;
  std::vector<int> sectors() const;
  // throws ConfigError for boundary geometries
  void require_strict(const char* what) const;
  std::string describe() const;
};

GeometryConfig make_config(int a, int n, Sector sector, double k_or_gamma,
                           std::optional<Rational> exact = std::nullopt);

struct WeightedPoint {
  double r = 1.0;
  int omega = 1;  // sign of x in rank1; always +1 in the radial sector
  double x() const { return omega * r; }
};

double weight_density(const GeometryConfig& cfg, const WeightedPoint& p);

// Nodes and weights realizing int f v_{k,a} dx. For rank1 every radial node appears
// twice (omega = +1, -1). u = (2/a) r^a is stored alongside r.
struct SpatialGrid {
  std::vector<WeightedPoint> pts;
  std::vector<double> u;
  std::vector<double> w;
  int order = 0;
  double mu_rule = 0.0;
  std::size_t size() const { return pts.size(); }
};

SpatialGrid make_spatial_grid(const GeometryConfig& cfg, int order);
// Same rule with every node scaled by factor (x -> factor x); weights follow the
// homogeneity of v_{k,a}, so sums still realize int f v dx.
SpatialGrid scale_grid(const GeometryConfig& cfg, const SpatialGrid& g, double factor);

// int f conj(g) v_{k,a} dx
cplx lebesgue_pairing(const GeometryConfig& cfg, const std::vector<cplx>& f,
                      const std::vector<cplx>& g, const SpatialGrid& grid);
double lp_norm(const SpatialGrid& grid, const double* abs_values, double p);

}  // namespace lab
