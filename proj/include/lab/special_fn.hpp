#pragma once

#include <complex>
#include <string>
#include <vector>

namespace lab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Gamma on the complex plane. Throws std::domain_error at non-positive integers.
cplx gamma_complex(cplx z);
// 1/Gamma, entire; exactly zero at the poles of Gamma.
cplx rgamma_complex(cplx z);
cplx lgamma_complex(cplx z);

struct LaguerreParams {
  int degree = 0;
  double order = 0.0;
};

// L^{(mu)}_l(t) by the three-term recurrence.
double laguerre_poly(const LaguerreParams& params, double t);

// p_l(t) = sqrt(l!/Gamma(l+mu+1)) L^{(mu)}_l(t) for l = 0..L, written to out[0..L].
// Orthonormal against t^mu e^{-t} on (0, inf).
void laguerre_orthonormal(int L, double mu, double t, double* out);

// Normalized modified Bessel function (w/2)^{-lambda} I_lambda(w), lambda > -1.
cplx bessel_i_normalized(double lambda, cplx w);

// Branch-specific evaluators, exposed for the switchover checks.
cplx bessel_i_normalized_series(double lambda, cplx w);
cplx bessel_i_normalized_asymptotic(double lambda, cplx w);
cplx bessel_i_normalized_miller(double lambda, cplx w);

// r_+^z with the convention 0_+^z = 0.
cplx complex_power_plus(long long r, cplx z);

enum class QuadKind { GaussGeneralizedLaguerre, GaussLegendre, GaussJacobi, GradedComposite };

struct QuadratureSpec {
  QuadKind kind = QuadKind::GaussLegendre;
  double mu = 0.0;                 // Laguerre order
  double alpha = 0.0, beta = 0.0;  // Jacobi (1-t)^alpha (1+t)^beta
  double lo = -1.0, hi = 1.0;      // Legendre / composite interval
  std::vector<double> breaks;      // composite panel breakpoints (absolute), includes lo and hi
};

struct QuadratureScheme {
  QuadratureSpec spec;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  // Zeroth moment of the weight measure in closed form.
  double mass() const;
};

// order = nodes per rule (per panel for the composite kind).
QuadratureScheme build_quadrature(const QuadratureSpec& spec, int order);

QuadratureScheme gauss_legendre(int order, double lo = -1.0, double hi = 1.0);
QuadratureScheme gauss_laguerre(int order, double mu);
QuadratureScheme gauss_jacobi(int order, double alpha, double beta);
QuadratureScheme composite_legendre(const std::vector<double>& breaks, int per_panel);

// Breakpoints on (lo, hi) graded dyadically toward `focus` points: both ends and the midpoint
// when `center` is set. `levels` dyadic levels per graded side.
std::vector<double> graded_breaks(double lo, double hi, int levels, bool center);

// Subdivide panels so none is wider than max_width.
std::vector<double> refine_breaks(const std::vector<double>& breaks, double max_width);

std::string quad_kind_name(QuadKind k);

}  // namespace lab
