#include "lab/special_fn.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lab {

namespace {

// Lanczos g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};

cplx lanczos_log(cplx z) {
  // log Gamma(z) for Re z >= 1/2
  cplx zm = z - 1.0;
  cplx acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (zm + double(i));
  cplx t = zm + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) - t + std::log(acc);
}

// sin(pi z) with argument reduction so that zeros at integers are exact.
cplx sin_pi(cplx z) {
  double re = z.real();
  double n = std::round(re);
  double f = re - n;
  cplx s = std::sin(kPi * cplx(f, z.imag()));
  if (std::fmod(std::abs(n), 2.0) == 1.0) s = -s;
  return s;
}

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

}  // namespace

cplx gamma_complex(cplx z) {
  if (is_pole(z)) throw std::domain_error("gamma_complex: pole at non-positive integer");
  if (z.real() < 0.5) return kPi / (sin_pi(z) * gamma_complex(1.0 - z));
  return std::exp(lanczos_log(z));
}

cplx rgamma_complex(cplx z) {
  if (is_pole(z)) return 0.0;
  if (z.real() < 0.5) return sin_pi(z) * gamma_complex(1.0 - z) / kPi;
  return std::exp(-lanczos_log(z));
}

cplx lgamma_complex(cplx z) {
  if (is_pole(z)) throw std::domain_error("lgamma_complex: pole at non-positive integer");
  if (z.real() < 0.5) return std::log(kPi) - std::log(sin_pi(z)) - lanczos_log(1.0 - z);
  return lanczos_log(z);
}

double laguerre_poly(const LaguerreParams& params, double t) {
  if (params.order <= -1.0) throw std::domain_error("laguerre_poly: order must exceed -1");
  if (params.degree < 0) throw std::domain_error("laguerre_poly: negative degree");
  const double mu = params.order;
  double prev = 1.0;
  if (params.degree == 0) return prev;
  double cur = mu + 1.0 - t;
  for (int l = 1; l < params.degree; ++l) {
    double next = ((2.0 * l + 1.0 + mu - t) * cur - (l + mu) * prev) / (l + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void laguerre_orthonormal(int L, double mu, double t, double* out) {
  // p_0 = 1/sqrt(Gamma(mu+1)); boundary order mu = -1 gives p_0 = 0 and
  // p_1 = (mu+1-t)/sqrt(Gamma(mu+2)) = -t.
  double p_prev = 0.0;
  double p = (mu > -1.0) ? std::exp(-0.5 * std::lgamma(mu + 1.0)) : 0.0;
  out[0] = p;
  if (L == 0) return;
  double p1 = (mu + 1.0 - t) * std::exp(-0.5 * std::lgamma(mu + 2.0));
  if (mu <= -1.0) p1 = -t;
  out[1] = p1;
  p_prev = p;
  p = p1;
  for (int l = 1; l < L; ++l) {
    double a = 2.0 * l + 1.0 + mu - t;
    double b = std::sqrt(l * (l + mu));
    double c = std::sqrt((l + 1.0) * (l + mu + 1.0));
    double next = (a * p - b * p_prev) / c;
    p_prev = p;
    p = next;
    out[l + 1] = p;
  }
}

cplx bessel_i_normalized_series(double lambda, cplx w) {
  cplx q = 0.25 * w * w;
  cplx term = rgamma_complex(lambda + 1.0);
  cplx sum = term;
  for (int j = 1; j < 2000; ++j) {
    term *= q / (double(j) * (j + lambda));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum) && j > std::abs(w)) break;
  }
  return sum;
}

cplx bessel_i_normalized_asymptotic(double lambda, cplx w) {
  if (w.real() < 0.0) w = -w;
  const double nu = lambda;
  const double mu4 = 4.0 * nu * nu;
  cplx s_plus = 1.0, s_minus = 1.0;
  cplx term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 400; ++k) {
    double f = (mu4 - double((2 * k - 1) * (2 * k - 1))) / (8.0 * k);
    term *= f / w;
    double mag = std::abs(term);
    if (mag > last && k > 2) break;
    last = mag;
    s_plus += (k % 2 ? -term : term);
    s_minus += term;
    if (mag < 1e-18) break;
  }
  // log((w/2)^{-nu} / sqrt(2 pi w))
  cplx lw = std::log(w);
  cplx pref = std::exp(-nu * (lw - std::log(2.0)) - 0.5 * (std::log(2.0 * kPi) + lw));
  cplx rot = (w.imag() >= 0.0) ? cplx(0.0, 1.0) * std::exp(cplx(0.0, kPi * nu))
                                : cplx(0.0, -1.0) * std::exp(cplx(0.0, -kPi * nu));
  return pref * (std::exp(w) * s_plus + rot * std::exp(-w) * s_minus);
}

namespace {

// g_mu = Gamma(mu+1) I~_mu(w) by its ascending series; safe once mu >> |w|^2/4.
cplx scaled_series(double mu, cplx w) {
  cplx q = 0.25 * w * w;
  cplx term = 1.0, sum = 1.0;
  for (int j = 1; j < 5000; ++j) {
    term *= q / (double(j) * (mu + j));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

cplx bessel_i_normalized_miller(double lambda, cplx w) {
  if (w.real() < 0.0) w = -w;
  // downward recurrence g_{mu-1} = g_mu + (w^2/4) g_{mu+1}/(mu(mu+1)), started from exact
  // high-order values; the recurrence is stable in this direction.
  const double aw = std::abs(w);
  const int K = int(std::ceil(0.25 * aw * aw)) + 30;
  const double top = lambda + K;
  cplx q = 0.25 * w * w;
  cplx g_hi = scaled_series(top + 1.0, w);
  cplx g = scaled_series(top, w);
  for (int k = K; k >= 1; --k) {
    double mu = lambda + k;
    cplx g_lo = g + q * g_hi / (mu * (mu + 1.0));
    g_hi = g;
    g = g_lo;
  }
  return g * rgamma_complex(lambda + 1.0);
}

cplx bessel_i_normalized(double lambda, cplx w) {
  if (lambda <= -1.0) throw std::domain_error("bessel_i_normalized: order must exceed -1");
  if (w.real() < 0.0) w = -w;
  const double aw = std::abs(w);
  if (aw > 30.0) return bessel_i_normalized_asymptotic(lambda, w);
  // cancellation in the ascending series grows like exp(|w| - Re w)
  if (aw <= 8.0 || aw - w.real() <= 11.0) return bessel_i_normalized_series(lambda, w);
  return bessel_i_normalized_miller(lambda, w);
}

cplx complex_power_plus(long long r, cplx z) {
  if (r <= 0) return 0.0;
  if (r == 1) return 1.0;
  return std::exp(z * std::log(double(r)));
}

// ---------------------------------------------------------------- quadrature

namespace {

struct Recurrence {
  std::vector<double> alpha;  // alpha_0..alpha_{N-1}
  std::vector<double> beta;   // beta_0 unused, beta_1..beta_N
  double mu0 = 1.0;
};

Recurrence laguerre_rec(int N, double mu) {
  Recurrence r;
  r.alpha.resize(N);
  r.beta.resize(N + 1, 0.0);
  for (int k = 0; k < N; ++k) r.alpha[k] = 2.0 * k + mu + 1.0;
  for (int k = 1; k <= N; ++k) r.beta[k] = k * (k + mu);
  r.mu0 = std::tgamma(mu + 1.0);
  return r;
}

Recurrence jacobi_rec(int N, double a, double b) {
  Recurrence r;
  r.alpha.resize(N);
  r.beta.resize(N + 1, 0.0);
  const double ab = a + b;
  for (int k = 0; k < N; ++k) {
    if (k == 0) {
      r.alpha[k] = (b - a) / (ab + 2.0);
    } else {
      double d = 2.0 * k + ab;
      r.alpha[k] = (b * b - a * a) / (d * (d + 2.0));
    }
  }
  for (int k = 1; k <= N; ++k) {
    double d = 2.0 * k + ab;
    if (k == 1) {
      r.beta[k] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      r.beta[k] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (d * d * (d + 1.0) * (d - 1.0));
    }
  }
  r.mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                   std::lgamma(ab + 2.0));
  return r;
}

// orthonormal p_0..p_N at x; returns p_N and p_N', and sum_{k<N} p_k^2
void orthonormal_eval(const Recurrence& r, int N, double x, double& pN, double& dpN, double& s) {
  double pm = 0.0, p = 1.0 / std::sqrt(r.mu0);
  double dm = 0.0, d = 0.0;
  s = 0.0;
  for (int k = 0; k < N; ++k) {
    s += p * p;
    double sb1 = std::sqrt(r.beta[k + 1]);
    double sbk = (k > 0) ? std::sqrt(r.beta[k]) : 0.0;
    double pn = ((x - r.alpha[k]) * p - sbk * pm) / sb1;
    double dn = (p + (x - r.alpha[k]) * d - sbk * dm) / sb1;
    pm = p;
    p = pn;
    dm = d;
    d = dn;
  }
  pN = p;
  dpN = d;
}

void golub_welsch(const Recurrence& r, int N, std::vector<double>& x, std::vector<double>& w) {
  Eigen::VectorXd diag(N), sub(std::max(N - 1, 1));
  for (int k = 0; k < N; ++k) diag[k] = r.alpha[k];
  for (int k = 1; k < N; ++k) sub[k - 1] = std::sqrt(r.beta[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (N == 1) {
    x = {r.alpha[0]};
  } else {
    es.computeFromTridiagonal(diag, sub.head(N - 1), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("build_quadrature: tridiagonal eigen-solve did not converge (N=" +
                               std::to_string(N) + ")");
    x.assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
  }
  std::sort(x.begin(), x.end());
  w.resize(N);
  for (int i = 0; i < N; ++i) {
    double pN, dpN, s;
    for (int it = 0; it < 3; ++it) {
      orthonormal_eval(r, N, x[i], pN, dpN, s);
      if (dpN == 0.0) break;
      double dx = pN / dpN;
      x[i] -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x[i]))) break;
    }
    orthonormal_eval(r, N, x[i], pN, dpN, s);
    w[i] = 1.0 / s;
  }
}

}  // namespace

double QuadratureScheme::mass() const {
  switch (spec.kind) {
    case QuadKind::GaussGeneralizedLaguerre:
      return std::tgamma(spec.mu + 1.0);
    case QuadKind::GaussLegendre:
      return spec.hi - spec.lo;
    case QuadKind::GaussJacobi:
      return std::exp((spec.alpha + spec.beta + 1.0) * std::log(2.0) +
                      std::lgamma(spec.alpha + 1.0) + std::lgamma(spec.beta + 1.0) -
                      std::lgamma(spec.alpha + spec.beta + 2.0));
    case QuadKind::GradedComposite:
      return spec.breaks.back() - spec.breaks.front();
  }
  return 0.0;
}

QuadratureScheme build_quadrature(const QuadratureSpec& spec, int order) {
  if (order < 1) throw std::invalid_argument("build_quadrature: order must be >= 1");
  QuadratureScheme q;
  q.spec = spec;
  switch (spec.kind) {
    case QuadKind::GaussGeneralizedLaguerre: {
      if (spec.mu <= -1.0) throw std::invalid_argument("gauss-laguerre: mu must exceed -1");
      golub_welsch(laguerre_rec(order, spec.mu), order, q.nodes, q.weights);
      break;
    }
    case QuadKind::GaussJacobi: {
      if (spec.alpha <= -1.0 || spec.beta <= -1.0)
        throw std::invalid_argument("gauss-jacobi: alpha, beta must exceed -1");
      golub_welsch(jacobi_rec(order, spec.alpha, spec.beta), order, q.nodes, q.weights);
      break;
    }
    case QuadKind::GaussLegendre: {
      if (!(spec.hi > spec.lo)) throw std::invalid_argument("gauss-legendre: empty interval");
      std::vector<double> x, w;
      golub_welsch(jacobi_rec(order, 0.0, 0.0), order, x, w);
      double h = 0.5 * (spec.hi - spec.lo), c = 0.5 * (spec.hi + spec.lo);
      for (int i = 0; i < order; ++i) {
        q.nodes.push_back(c + h * x[i]);
        q.weights.push_back(h * w[i]);
      }
      break;
    }
    case QuadKind::GradedComposite: {
      if (spec.breaks.size() < 2) throw std::invalid_argument("composite: need >= 2 breakpoints");
      std::vector<double> x, w;
      golub_welsch(jacobi_rec(order, 0.0, 0.0), order, x, w);
      for (std::size_t p = 0; p + 1 < spec.breaks.size(); ++p) {
        double a = spec.breaks[p], b = spec.breaks[p + 1];
        if (!(b > a)) throw std::invalid_argument("composite: breakpoints must increase");
        double h = 0.5 * (b - a), c = 0.5 * (b + a);
        for (int i = 0; i < order; ++i) {
          q.nodes.push_back(c + h * x[i]);
          q.weights.push_back(h * w[i]);
        }
      }
      q.spec.lo = spec.breaks.front();
      q.spec.hi = spec.breaks.back();
      break;
    }
  }
  return q;
}

QuadratureScheme gauss_legendre(int order, double lo, double hi) {
  QuadratureSpec s;
  s.kind = QuadKind::GaussLegendre;
  s.lo = lo;
  s.hi = hi;
  return build_quadrature(s, order);
}

QuadratureScheme gauss_laguerre(int order, double mu) {
  QuadratureSpec s;
  s.kind = QuadKind::GaussGeneralizedLaguerre;
  s.mu = mu;
  return build_quadrature(s, order);
}

QuadratureScheme gauss_jacobi(int order, double alpha, double beta) {
  QuadratureSpec s;
  s.kind = QuadKind::GaussJacobi;
  s.alpha = alpha;
  s.beta = beta;
  return build_quadrature(s, order);
}

QuadratureScheme composite_legendre(const std::vector<double>& breaks, int per_panel) {
  QuadratureSpec s;
  s.kind = QuadKind::GradedComposite;
  s.breaks = breaks;
  return build_quadrature(s, per_panel);
}

std::vector<double> graded_breaks(double lo, double hi, int levels, bool center) {
  // one graded side from a to b, refined toward a
  auto side = [&](double a, double b, std::vector<double>& out) {
    double len = b - a;
    for (int j = levels; j >= 1; --j) out.push_back(a + len * std::ldexp(1.0, -j));
  };
  std::vector<double> br{lo};
  if (center) {
    double mid = 0.5 * (lo + hi);
    double q1 = 0.5 * (lo + mid), q3 = 0.5 * (mid + hi);
    // lo -> q1 graded toward lo, q1 -> mid graded toward mid, etc.
    side(lo, q1, br);
    br.push_back(q1);
    std::vector<double> tmp;
    side(mid, q1, tmp);  // points between q1 and mid, graded toward mid
    std::sort(tmp.begin(), tmp.end());
    for (double v : tmp)
      if (v > q1 && v < mid) br.push_back(v);
    br.push_back(mid);
    side(mid, q3, br);
    br.push_back(q3);
    tmp.clear();
    side(hi, q3, tmp);
    std::sort(tmp.begin(), tmp.end());
    for (double v : tmp)
      if (v > q3 && v < hi) br.push_back(v);
  } else {
    side(lo, hi, br);
  }
  br.push_back(hi);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

std::vector<double> refine_breaks(const std::vector<double>& breaks, double max_width) {
  std::vector<double> out{breaks.front()};
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    double a = breaks[p], b = breaks[p + 1];
    int pieces = std::max(1, int(std::ceil((b - a) / max_width - 1e-12)));
    for (int j = 1; j <= pieces; ++j) out.push_back(a + (b - a) * j / pieces);
  }
  return out;
}

std::string quad_kind_name(QuadKind k) {
  switch (k) {
    case QuadKind::GaussGeneralizedLaguerre: return "gauss-generalized-laguerre";
    case QuadKind::GaussLegendre: return "gauss-legendre";
    case QuadKind::GaussJacobi: return "gauss-jacobi";
    case QuadKind::GradedComposite: return "graded-composite";
  }
  return "?";
}

}  // namespace lab
