#include "lab/semigroup.hpp"

#include <cmath>
#include <stdexcept>

namespace lab {

std::string kernel_method_name(KernelMethod m) {
  return m == KernelMethod::SpectralSeries ? "spectral-series" : "closed-form-h";
}

SpectralField apply_semigroup(const SpectralField& field, cplx z) {
  if (z.real() < 0.0) throw std::domain_error("apply_semigroup: Re z < 0");
  SpectralField out = field;
  for (std::size_t i = 0; i < field.idx.size(); ++i)
    out.coeffs[i] *= std::exp(-z * eigenvalue(field.cfg, field.idx[i]));
  return out;
}

SpectralField propagate(const SpectralField& field, double t) {
  return apply_semigroup(field, cplx(0.0, t));
}

namespace {

struct SeriesTables {
  std::vector<double> x0, x1, y0, y1;
};

SeriesTables tables(const GeometryConfig& cfg, const WeightedPoint& x, const WeightedPoint& y,
                    int L) {
  SeriesTables t;
  t.x0.resize(L + 1);
  t.y0.resize(L + 1);
  psi_radial_all(cfg, 0, L, x.r, t.x0.data());
  psi_radial_all(cfg, 0, L, y.r, t.y0.data());
  if (cfg.sector == Sector::Rank1) {
    t.x1.resize(L + 1);
    t.y1.resize(L + 1);
    psi_radial_all(cfg, 1, L, x.r, t.x1.data());
    psi_radial_all(cfg, 1, L, y.r, t.y1.data());
  }
  return t;
}

cplx sum_series(const GeometryConfig& cfg, const WeightedPoint& x, const WeightedPoint& y, cplx z,
                int L, double* tail) {
  auto t = tables(cfg, x, y, L);
  cplx s = 0.0;
  double last = 0.0;
  for (int m : cfg.sectors()) {
    const auto& px = m == 0 ? t.x0 : t.x1;
    const auto& py = m == 0 ? t.y0 : t.y1;
    double ang = angular_factor(cfg, m, x.omega) * angular_factor(cfg, m, y.omega);
    cplx ph = std::exp(-z * (cfg.lambda_m(m) + 1.0));
    cplx step = std::exp(-2.0 * z);
    cplx e = ph;
    for (int l = 0; l <= L; ++l) {
      s += e * (ang * px[l] * py[l]);
      e *= step;
    }
    last = std::max(last, std::abs(std::exp(-z * (cfg.lambda_m(m) + 1.0 + 2.0 * L)) *
                                   ang * px[L] * py[L]));
  }
  if (tail) {
    double q = std::exp(-2.0 * z.real());
    *tail = q < 1.0 ? last * q / (1.0 - q) / cfg.c_ka() : INFINITY;
  }
  return s / cfg.c_ka();
}

}  // namespace

cplx kernel_spectral_damped(const GeometryConfig& cfg, const WeightedPoint& x,
                            const WeightedPoint& y, double mu, double eps, int L) {
  cfg.require_strict("kernel_spectral");
  return sum_series(cfg, x, y, cplx(eps, mu), L, nullptr);
}

KernelValue kernel_spectral(const GeometryConfig& cfg, const WeightedPoint& x,
                            const WeightedPoint& y, cplx z, int L_max, bool abel,
                            const AbelLadder& ladder) {
  cfg.require_strict("kernel_spectral");
  if (z.real() < 0.0) throw std::domain_error("kernel_spectral: Re z < 0");
  KernelValue kv;
  kv.method = KernelMethod::SpectralSeries;
  if (z.real() > 0.0) {
    kv.value = sum_series(cfg, x, y, z, L_max, &kv.tail_bound);
    kv.terms = L_max + 1;
    return kv;
  }
  if (!abel)
    throw std::domain_error("kernel_spectral: Re z = 0 needs Abel regularization (series not absolutely convergent)");
  // f(eps) is analytic in eps; eliminate the O(eps) and O(eps^2) terms
  std::array<cplx, 3> f;
  int Lmax = L_max;
  for (int i = 0; i < 3; ++i) {
    int L = std::max(L_max, int(std::ceil(ladder.cutoff / (2.0 * ladder.eps[i]))));
    Lmax = std::max(Lmax, L);
    f[i] = sum_series(cfg, x, y, cplx(ladder.eps[i], z.imag()), L, nullptr);
  }
  kv.value = (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
  kv.terms = Lmax + 1;
  kv.tail_bound = std::abs(kv.value - f[2]);
  return kv;
}

cplx log_sinh(cplx z) {
  if (z.real() < 0.0) throw std::domain_error("log_sinh: Re z < 0");
  return z + std::log(1.0 - std::exp(-2.0 * z)) - std::log(2.0);
}

namespace {

bool on_excluded_set(cplx z) {
  if (z.real() != 0.0) return false;
  double q = z.imag() / kPi;
  return std::abs(q - std::round(q)) < 1e-14;
}

}  // namespace

cplx h_kernel(const GeometryConfig& cfg, double r, double s, cplx z, double zeta) {
  if (on_excluded_set(z)) throw std::domain_error("h_kernel: z in i pi Z");
  const double a = cfg.a;
  cplx ls = log_sinh(z);
  cplx sh = std::exp(ls);
  cplx coth = std::cosh(z) / sh;
  cplx lv = -(std::pow(r, a) + std::pow(s, a)) / a * coth - (cfg.beta() / a) * ls;
  if (cfg.a == 2) return std::exp(lv + r * s * zeta / sh);
  double nu = cfg.gamma + (cfg.n - 3) / 2.0;
  cplx w = std::sqrt(2.0) * std::sqrt(r * s * (1.0 + zeta)) / sh;
  return std::exp(lv) * std::tgamma(nu + 1.0) * bessel_i_normalized(nu, w);
}

KernelValue kernel_closed_form(const GeometryConfig& cfg, const WeightedPoint& x,
                               const WeightedPoint& y, cplx z, int zeta_order) {
  cfg.require_strict("kernel_closed_form");
  if (z.real() < 0.0) throw std::domain_error("kernel_closed_form: Re z < 0");
  if (on_excluded_set(z)) throw std::domain_error("kernel_closed_form: z in i pi Z");
  KernelValue kv;
  kv.method = KernelMethod::ClosedForm;
  cplx v = 0.0;
  if (cfg.sector == Sector::Rank1) {
    double sg = double(x.omega * y.omega);
    if (cfg.gamma == 0.0) {
      v = h_kernel(cfg, x.r, y.r, z, sg);
    } else {
      auto q = gauss_jacobi(zeta_order, cfg.gamma - 1.0, cfg.gamma);
      double mass = q.mass();
      for (int i = 0; i < zeta_order; ++i)
        v += q.weights[i] / mass * h_kernel(cfg, x.r, y.r, z, sg * q.nodes[i]);
      kv.terms = zeta_order;
    }
  } else {
    double e = cfg.gamma + (cfg.n - 3) / 2.0;
    if (e <= -1.0) {
      v = 0.5 * (h_kernel(cfg, x.r, y.r, z, 1.0) + h_kernel(cfg, x.r, y.r, z, -1.0));
    } else {
      auto q = gauss_jacobi(zeta_order, e, e);
      double mass = q.mass();
      for (int i = 0; i < zeta_order; ++i)
        v += q.weights[i] / mass * h_kernel(cfg, x.r, y.r, z, q.nodes[i]);
      kv.terms = zeta_order;
    }
  }
  kv.value = v;
  return kv;
}

double kernel_bound(const GeometryConfig& cfg, double mu) {
  return std::pow(std::abs(std::sin(mu)), -cfg.beta() / cfg.a);
}

cplx kernel_shift_phase(const GeometryConfig& cfg) {
  return std::exp(cplx(0.0, -kPi * (cfg.lambda_m(0) + 1.0)));
}

WeightedPoint sigma_reflect(const GeometryConfig& cfg, const WeightedPoint& x) {
  // e^{-i pi 2m/a} = (-1)^{2m/a}: sign flip on the odd sector when a = 2
  if (cfg.sector == Sector::Rank1 && cfg.a == 2) return {x.r, -x.omega};
  return x;
}

double hilbert_schmidt_norm(const GeometryConfig& cfg, cplx z, int L_max) {
  double s = 0.0;
  for (auto& i : basis_indices(cfg, L_max)) s += std::exp(-2.0 * z.real() * eigenvalue(cfg, i));
  return std::sqrt(s);
}

double operator_norm_bound(const GeometryConfig& cfg, cplx z) {
  return std::exp(-cfg.beta() * z.real() / cfg.a);
}

}  // namespace lab
