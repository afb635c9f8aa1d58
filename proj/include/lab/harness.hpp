#pragma once

#include "lab/schatten.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace lab {

// Exponents are handled through reciprocals so p = inf is 1/p = 0.
struct ExponentPair {
  double inv_p = 0.5;
  double inv_q = 0.5;
  std::optional<Rational> inv_p_exact, inv_q_exact;
  bool exact = false;
  bool admissible = false;     // single-function trapezoid
  bool diagonal = false;       // p = q = 1 + a/beta
  bool general_range = false;  // 1 <= p < (2beta+a)/(2beta-a) with the orthonormal scaling
  bool degenerate_range = false;
  bool orthonormal_scaling = false;  // 1/q + beta/(p a) = beta/a
  bool dunkl_scaling = false;        // (1/2 - 1/p) beta/a - 1/q = 0
  double p() const { return inv_p == 0.0 ? INFINITY : 1.0 / inv_p; }
  double q() const { return inv_q == 0.0 ? INFINITY : 1.0 / inv_q; }
  std::string describe() const;
};

ExponentPair classify_exponents(const GeometryConfig& cfg, double inv_p, double inv_q);
// exact path; needs cfg.gamma_exact
ExponentPair classify_exponents(const GeometryConfig& cfg, Rational inv_p, Rational inv_q);

std::optional<Rational> beta_exact(const GeometryConfig& cfg);
// diagonal Lebesgue exponent 1 + a/beta and its l-exponent 2p/(p+1)
double diagonal_exponent(const GeometryConfig& cfg);
double ell_exponent(double p);
// upper end of the general range; +inf when degenerate
double general_range_cap(const GeometryConfig& cfg);
// q from the orthonormal scaling given p; inf when 1/q = 0
double orthonormal_q(const GeometryConfig& cfg, double p);

struct MixedNormReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double p = 2.0;
  double q = 2.0;
  int N = 1;
  std::uint64_t seed = 0;
  std::string geometry;
  std::string grid_id;
  bool skipped = false;
  std::string note;
};
nlohmann::json to_json(const MixedNormReport& r);
void write_ratio_csv_header(std::ostream& os);
void write_ratio_csv_row(std::ostream& os, const GeometryConfig& cfg, const MixedNormReport& r);

struct HarnessGrid {
  int L_max = 48;
  TimeGrid time;
  SpatialGrid space;
  std::vector<SpectralIndex> idx;
  Eigen::MatrixXd B;       // basis on the spatial grid
  Eigen::VectorXd eig;     // eigenvalues of idx
  std::string grid_id;
};
// time panels refined so each is at most width_factor / bandwidth wide
HarnessGrid make_harness_grid(const GeometryConfig& cfg, int L_max, double bandwidth,
                              int per_panel = 16, int space_extra = 8, double width_factor = 6.0);

// coefficient columns over grid.idx, orthonormal
struct OrthonormalSystem {
  Eigen::MatrixXcd C;
  double gram_defect = 0.0;
  std::uint64_t seed = 0;
  bool mixed = false;
};
OrthonormalSystem generate_orthonormal_system(const GeometryConfig& cfg, const HarnessGrid& g, int N,
                                              std::uint64_t seed, bool mixing);

// |e^{-itDelta} f|^2 summed with weights n: rows time nodes, cols spatial nodes
Eigen::MatrixXd density(const HarnessGrid& g, const Eigen::MatrixXcd& C, const Eigen::VectorXd& n);
// e^{-itDelta} f samples for a single coefficient vector
Eigen::MatrixXcd evolve_samples(const HarnessGrid& g, const Eigen::VectorXcd& c);

MixedNormReport strichartz_single(const GeometryConfig& cfg, const HarnessGrid& g,
                                  const Eigen::VectorXcd& c, double p, double q);
MixedNormReport strichartz_orthonormal(const GeometryConfig& cfg, const HarnessGrid& g,
                                       const OrthonormalSystem& sys, const Eigen::VectorXd& n,
                                       double p, double q);
// systems in l2(S_trunc), surface ordered as g.idx
MixedNormReport restriction_orthonormal(const GeometryConfig& cfg, const HarnessGrid& g,
                                        const Eigen::MatrixXcd& F, const Eigen::VectorXd& n,
                                        double p, double q);

struct RhlsReport {
  double lambda = 0.0;
  double p = 1.0, q = 1.0;
  double I1 = 0.0, I2 = 0.0, I3 = 0.0;
  double I2_shifted = 0.0;  // B2 through s = tau + pi
  double I1_classical = 0.0;
  double total = 0.0;
  double norm_g = 0.0, norm_h = 0.0;
  double ratio = 0.0;
  double holder_bound = 0.0;  // lambda = 0 only
};
// I = int int g(t) h(tau) |sin(t - tau)|^{-lambda} over (-pi/2, pi/2)^2
RhlsReport rhls_check(double lambda, double p, double q, const std::function<double(double)>& g,
                      const std::function<double(double)>& h, int order = 32);
nlohmann::json to_json(const RhlsReport& r);

// Dunkl-Schroedinger propagator at s from the Laguerre propagator at arctan s,
// sampled on the base grid scaled by (1+s^2)^{1/a}
Eigen::VectorXcd dunkl_propagate(const GeometryConfig& cfg, const HarnessGrid& g,
                                 const Eigen::VectorXcd& c, double s);
// same at arbitrary points y; c indexes idx
Eigen::VectorXcd dunkl_propagate_at(const GeometryConfig& cfg, const std::vector<SpectralIndex>& idx,
                                    const Eigen::VectorXcd& c, double s,
                                    const std::vector<WeightedPoint>& y);
struct TransferReport {
  double dunkl_pos = 0.0, dunkl_neg = 0.0;      // ||.||_{L^q((0,inf)) L^p}, ((-inf,0))
  double laguerre_pos = 0.0, laguerre_neg = 0.0;  // ||.||_{L^q((0,pi/2)) L^p}, ((-pi/2,0))
  double defect = 0.0;                           // max relative mismatch
};
TransferReport dunkl_transfer(const GeometryConfig& cfg, const HarnessGrid& g,
                              const Eigen::VectorXcd& c, double p, double q);
// orthonormal version: densities sum n |.|^2, exponents under the orthonormal scaling
TransferReport dunkl_transfer_orthonormal(const GeometryConfig& cfg, const HarnessGrid& g,
                                          const Eigen::MatrixXcd& C, const Eigen::VectorXd& n,
                                          double p, double q);

struct SweepExponent {
  std::string label;  // "diagonal" or "general-<i>"
  double p = 1.0;
  double q = 1.0;
};
// diagonal pair plus three general-range pairs at 1/4, 1/2, 3/4 of [1, min(cap, p_cap)]
std::vector<SweepExponent> sweep_exponents(const GeometryConfig& cfg, double p_cap = 8.0);

struct SweepSettings {
  std::vector<int> Ns{1, 2, 4, 8, 16, 32, 64};
  int seeds = 8;
  std::uint64_t seed_base = 1;
  bool mixing = true;
  int per_panel = 16;
  int space_extra = 16;
  double p_cap = 8.0;
  // evaluated on the base run only and left out of the drift statistics
  std::vector<SweepExponent> record_only;
};
// smallest truncation whose basis holds N functions
int truncation_for(const GeometryConfig& cfg, int N);
HarnessGrid sweep_grid(const GeometryConfig& cfg, const SweepSettings& s, int refine = 1);
Eigen::VectorXd random_weights(int N, std::uint64_t seed);

struct SweepResult {
  std::vector<SweepExponent> exponents;
  std::vector<MixedNormReport> rows;  // exponent-major, then N, then seed
  std::vector<double> C;              // max ratio per exponent
  std::vector<std::vector<double>> C_by_N;  // [exponent][position in Ns], max over seeds
  double endpoint_min_slack = 1.0;    // L^inf L^1 bound, (sum|n| - lhs)/sum|n|
};
SweepResult run_orthonormal_sweep(const GeometryConfig& cfg, const HarnessGrid& g,
                                  const std::vector<SweepExponent>& exps, const SweepSettings& s);

struct SweepStability {
  SweepResult base, more_seeds, fine;
  // relative change of the per-N maxima, worst over N, per exponent
  std::vector<double> seed_drift, grid_drift;
  double max_drift = 0.0;
  double max_growth = 0.0;  // worst C_by_N(2N) / C_by_N(N)
  double n1_defect = 0.0;  // N = 1 against the single-function path
};
SweepStability sweep_stability(const GeometryConfig& cfg, const SweepSettings& s);

}  // namespace lab
