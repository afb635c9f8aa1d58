#pragma once

#include "lab/analytic_family.hpp"

#include "json.hpp"

#include <cstdint>

namespace lab {

struct SingularSpectrum {
  Eigen::VectorXd s;  // non-increasing
};

SingularSpectrum singular_values(const Eigen::MatrixXcd& M);
// singular values of scale * A1 A2^* through thin QR of both tall factors
SingularSpectrum singular_values_product(const Eigen::MatrixXcd& A1, const Eigen::MatrixXcd& A2,
                                         double scale = 1.0);
// (sum s^r)^{1/r}; r = inf gives s_1. A quasi-norm for r < 1.
double schatten_norm(const SingularSpectrum& sp, double r);

// diag(W1) M diag(W2) on the weight-symmetrized matrix
OperatorMatrix weighted_sandwich(const Eigen::VectorXcd& W1, const OperatorMatrix& M,
                                 const Eigen::VectorXcd& W2);

// random trigonometric polynomial in t times e^{-alpha |x|^a}(c0 + c1 x)
struct SmoothWeight {
  std::vector<cplx> trig;  // coefficients of e^{ikt}, k = -K..K
  double alpha = 1.0;
  double c0 = 1.0;
  double c1 = 0.0;
  cplx operator()(double t, const WeightedPoint& p, int a) const;
};
SmoothWeight random_smooth_weight(std::uint64_t seed, int K = 3);
// samples in time-major order, matching extension_matrix rows
Eigen::VectorXcd sample_weight(const SmoothWeight& W, const GeometryConfig& cfg, const TimeGrid& time,
                               const SpatialGrid& space);
double weight_mixed_norm(const Eigen::VectorXcd& samples, const TimeGrid& time,
                         const SpatialGrid& space, double p, double q);

struct SandwichGrid {
  TimeGrid time;
  SpatialGrid space;
  std::vector<SurfaceIndex> surface;
  Eigen::MatrixXcd E;  // weighted extension matrix on the half interval
};
// time: per_panel nodes on the graded half-interval partition; spatial order
SandwichGrid make_sandwich_grid(const GeometryConfig& cfg, int nu_max, int per_panel, int space_order);

struct SandwichResult {
  double schatten = 0.0;
  double w1_norm = 0.0;
  double w2_norm = 0.0;
  double ratio = 0.0;
  double sigma1 = 0.0;
};
// ||W1 T_S W2||_{G^r} / (||W1|| ||W2||) with T_S = E_S E_S^*/(2 pi) on (-pi/2, pi/2),
// norms in L^r(L^r_{k,a}), r = 2 lambda_0 by default
SandwichResult sandwich_ratio(const GeometryConfig& cfg, const SandwichGrid& g,
                             const SmoothWeight& W1, const SmoothWeight& W2, double r = 0.0);

struct DualityInstance {
  int N = 0;
  double lhs = 0.0;     // sum n_i ||W A f_i||^2
  double holder = 0.0;  // ||n||_{lambda'} ||W A A^* conj W||_{G^lambda}
  double slack = 0.0;   // (holder - lhs) / holder
  double rho = 0.0;     // ||sum n_i |A f_i|^2||_{L^{q'/2} L^{p'/2}} / ||n||_{lambda'}
};
struct DualityReport {
  double lambda = 1.0;
  double C1 = 0.0;  // ||W A A^* conj W||_{G^lambda} / ||W||^2
  double min_slack = 1.0;
  double max_rho = 0.0;
  std::vector<DualityInstance> instances;
};
// A: weighted extension matrix; systems: columns orthonormal in l2(S_trunc)
DualityReport duality_check(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& W,
                            double W_norm_sq, const std::vector<Eigen::MatrixXcd>& systems,
                            const std::vector<Eigen::VectorXd>& weights, double lambda,
                            const TimeGrid& time, const SpatialGrid& space, double p_prime,
                            double q_prime);

Eigen::MatrixXcd haar_unitary(int n, std::uint64_t seed);

nlohmann::json to_json(const SandwichResult& r);
nlohmann::json to_json(const DualityReport& r);

}  // namespace lab
