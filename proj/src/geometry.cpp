#include "lab/geometry.hpp"

#include <cmath>
#include <sstream>

namespace lab {

double GeometryConfig::c_ka() const {
  return std::pow(double(a), -(2.0 * gamma + n - 2.0) / a) / std::tgamma(beta() / a) * d_k;
}

std::vector<int> GeometryConfig::sectors() const {
  if (sector == Sector::Rank1) return {0, 1};
  return {0};
}

void GeometryConfig::require_strict(const char* what) const {
  if (boundary)
    throw ConfigError(std::string(what) +
                      ": requires a + 2 gamma + n - 2 > 0 (geometry is on the boundary, = 0)");
}

std::string GeometryConfig::describe() const {
  std::ostringstream os;
  os << "a=" << a << " n=" << n << (sector == Sector::Rank1 ? " rank1 k=" : " radial gamma=")
     << gamma;
  return os.str();
}

GeometryConfig make_config(int a, int n, Sector sector, double kg, std::optional<Rational> exact) {
  if (a != 1 && a != 2)
    throw ConfigError("deformation a must be 1 or 2 (a in {1,2}); got a=" + std::to_string(a));
  if (n < 1) throw ConfigError("dimension n must be >= 1");
  if (!(kg >= 0.0) || !std::isfinite(kg)) throw ConfigError("multiplicity must be finite and >= 0");
  if (sector == Sector::Rank1 && n != 1) throw ConfigError("rank1 sector requires n = 1");
  GeometryConfig c;
  c.a = a;
  c.n = n;
  c.sector = sector;
  c.gamma = kg;
  c.gamma_exact = exact;
  double s = a + 2.0 * kg + n - 2.0;
  if (s < 0.0 || (s == 0.0 && !(a == 1 && n == 1)))
    throw ConfigError("standing hypothesis a + 2 gamma + n - 2 > 0 violated (value " +
                      std::to_string(s) + ")");
  c.boundary = (s == 0.0);
  for (int m : c.sectors()) {
    double lm = c.lambda_m(m);
    if (lm < -1.0 || (lm == -1.0 && !c.boundary))
      throw ConfigError("lambda_{k,a,m} > -1 violated for m=" + std::to_string(m));
  }
  c.lambda0 = 1.0 + s / a;
  if (sector == Sector::Rank1)
    c.d_k = 0.5;
  else
    c.d_k = std::tgamma(0.5 * n) / (2.0 * std::pow(kPi, 0.5 * n));
  return c;
}

double weight_density(const GeometryConfig& cfg, const WeightedPoint& p) {
  double e = cfg.a - 2.0 + 2.0 * cfg.gamma;
  if (p.r <= 0.0) {
    if (e < 0.0) throw std::domain_error("weight_density: r = 0 with negative exponent");
    return e == 0.0 ? 1.0 : 0.0;
  }
  return std::pow(p.r, e);
}

SpatialGrid make_spatial_grid(const GeometryConfig& cfg, int order) {
  SpatialGrid g;
  g.order = order;
  const double lam0 = cfg.lambda_m(0);
  // the boundary geometry has lambda_0 = -1; its m=0 functions carry a factor u
  g.mu_rule = cfg.boundary ? lam0 + 2.0 : lam0;
  auto rule = gauss_laguerre(order, g.mu_rule);
  const double a = cfg.a;
  double cmeas = (1.0 / a) * std::pow(a / 2.0, lam0 + 1.0);
  if (cfg.sector == Sector::Radial) cmeas /= cfg.d_k;
  std::vector<int> signs = (cfg.sector == Sector::Rank1) ? std::vector<int>{1, -1}
                                                         : std::vector<int>{1};
  for (int s : signs) {
    for (int i = 0; i < order; ++i) {
      double u = rule.nodes[i];
      double r = std::pow(a * u / 2.0, 1.0 / a);
      double lw = std::log(rule.weights[i]) + u + (lam0 - g.mu_rule) * std::log(u);
      g.pts.push_back({r, s});
      g.u.push_back(u);
      g.w.push_back(cmeas * std::exp(lw));
    }
  }
  return g;
}

SpatialGrid scale_grid(const GeometryConfig& cfg, const SpatialGrid& g, double factor) {
  SpatialGrid out = g;
  double jac = std::pow(factor, cfg.beta());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.pts[i].r *= factor;
    out.u[i] = (2.0 / cfg.a) * std::pow(out.pts[i].r, cfg.a);
    out.w[i] *= jac;
  }
  return out;
}

cplx lebesgue_pairing(const GeometryConfig&, const std::vector<cplx>& f,
                      const std::vector<cplx>& g, const SpatialGrid& grid) {
  if (f.size() != grid.size() || g.size() != grid.size())
    throw std::invalid_argument("lebesgue_pairing: sample count does not match grid");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += grid.w[i] * f[i] * std::conj(g[i]);
  return s;
}

double lp_norm(const SpatialGrid& grid, const double* v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) s += grid.w[i] * std::pow(std::abs(v[i]), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace lab
