#include "lab/schatten.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <stdexcept>

namespace lab {

SingularSpectrum singular_values(const Eigen::MatrixXcd& M) {
  if (!M.allFinite()) throw std::domain_error("singular_values: non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
  return {svd.singularValues()};
}

namespace {

Eigen::MatrixXcd r_factor(const Eigen::MatrixXcd& A) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd R = qr.matrixQR().topRows(A.cols()).triangularView<Eigen::Upper>();
  return R;
}

}  // namespace

SingularSpectrum singular_values_product(const Eigen::MatrixXcd& A1, const Eigen::MatrixXcd& A2,
                                         double scale) {
  if (A1.cols() != A2.cols()) throw std::invalid_argument("singular_values_product: inner dims");
  if (!A1.allFinite() || !A2.allFinite())
    throw std::domain_error("singular_values_product: non-finite entries");
  if (A1.rows() < A1.cols() || A2.rows() < A2.cols())
    return singular_values(scale * A1 * A2.adjoint());
  Eigen::MatrixXcd core = scale * r_factor(A1) * r_factor(A2).adjoint();
  return singular_values(core);
}

double schatten_norm(const SingularSpectrum& sp, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("schatten_norm: r must be positive");
  if (sp.s.size() == 0) return 0.0;
  if (std::isinf(r)) return sp.s(0);
  double s1 = sp.s(0);
  if (s1 == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sp.s.size(); ++i) acc += std::pow(sp.s(i) / s1, r);
  return s1 * std::pow(acc, 1.0 / r);
}

OperatorMatrix weighted_sandwich(const Eigen::VectorXcd& W1, const OperatorMatrix& M,
                                 const Eigen::VectorXcd& W2) {
  if (W1.size() != M.M.rows() || W2.size() != M.M.cols())
    throw std::invalid_argument("weighted_sandwich: grid mismatch");
  OperatorMatrix out = M;
  out.M = W1.asDiagonal() * M.M * W2.asDiagonal();
  return out;
}

cplx SmoothWeight::operator()(double t, const WeightedPoint& p, int a) const {
  int K = int(trig.size() / 2);
  cplx s = 0.0;
  for (int k = -K; k <= K; ++k) s += trig[k + K] * std::exp(cplx(0.0, k * t));
  return s * std::exp(-alpha * std::pow(p.r, a)) * (c0 + c1 * p.x());
}

SmoothWeight random_smooth_weight(std::uint64_t seed, int K) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  SmoothWeight W;
  for (int k = -K; k <= K; ++k) W.trig.push_back(cplx(nd(rng), nd(rng)) / (1.0 + k * k));
  W.alpha = 0.5 + ud(rng);
  W.c0 = 1.0 + ud(rng);
  W.c1 = ud(rng) - 0.5;
  return W;
}

Eigen::VectorXcd sample_weight(const SmoothWeight& W, const GeometryConfig& cfg, const TimeGrid& time,
                               const SpatialGrid& space) {
  Eigen::VectorXcd v(time.size() * space.size());
  for (std::size_t j = 0; j < time.size(); ++j)
    for (std::size_t i = 0; i < space.size(); ++i)
      v(j * space.size() + i) = W(time.t[j], space.pts[i], cfg.a);
  return v;
}

double weight_mixed_norm(const Eigen::VectorXcd& samples, const TimeGrid& time,
                         const SpatialGrid& space, double p, double q) {
  Eigen::MatrixXd absF(time.size(), space.size());
  for (std::size_t j = 0; j < time.size(); ++j)
    for (std::size_t i = 0; i < space.size(); ++i)
      absF(j, i) = std::abs(samples(j * space.size() + i));
  return mixed_norm(absF, time, space, p, q);
}

SandwichGrid make_sandwich_grid(const GeometryConfig& cfg, int nu_max, int per_panel, int space_order) {
  cfg.require_strict("schatten");
  SandwichGrid g;
  g.time = half_interval_grid(2, per_panel);
  g.space = make_spatial_grid(cfg, space_order);
  g.surface = surface_enumerate(cfg, nu_max);
  g.E = extension_matrix(cfg, g.surface, g.time, g.space);
  return g;
}

SandwichResult sandwich_ratio(const GeometryConfig& cfg, const SandwichGrid& g,
                             const SmoothWeight& W1, const SmoothWeight& W2, double r) {
  if (r <= 0.0) r = 2.0 * cfg.lambda0;
  Eigen::VectorXcd w1 = sample_weight(W1, cfg, g.time, g.space);
  Eigen::VectorXcd w2 = sample_weight(W2, cfg, g.time, g.space);
  Eigen::MatrixXcd A1 = w1.asDiagonal() * g.E;
  Eigen::MatrixXcd A2 = w2.conjugate().asDiagonal() * g.E;
  auto sp = singular_values_product(A1, A2, 1.0 / (2 * kPi));
  SandwichResult res;
  res.schatten = schatten_norm(sp, r);
  res.sigma1 = sp.s.size() ? sp.s(0) : 0.0;
  res.w1_norm = weight_mixed_norm(w1, g.time, g.space, r, r);
  res.w2_norm = weight_mixed_norm(w2, g.time, g.space, r, r);
  res.ratio = res.schatten / (res.w1_norm * res.w2_norm);
  return res;
}

namespace {

double lp_seq(const Eigen::VectorXd& n, double p) {
  if (std::isinf(p)) return n.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < n.size(); ++i) s += std::pow(std::abs(n(i)), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

DualityReport duality_check(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& W,
                            double W_norm_sq, const std::vector<Eigen::MatrixXcd>& systems,
                            const std::vector<Eigen::VectorXd>& weights, double lambda,
                            const TimeGrid& time, const SpatialGrid& space, double p_prime,
                            double q_prime) {
  if (systems.size() != weights.size()) throw std::invalid_argument("duality_check: size mismatch");
  if (W.size() != A.rows()) throw std::invalid_argument("duality_check: grid mismatch");
  DualityReport rep;
  rep.lambda = lambda;
  Eigen::MatrixXcd WA = W.asDiagonal() * A;
  // singular values of W A A^* conj(W) are the squares of those of W A
  auto sp = singular_values(WA);
  SingularSpectrum sq{sp.s.cwiseProduct(sp.s)};
  double sch = schatten_norm(sq, lambda);
  rep.C1 = sch / W_norm_sq;
  double lam_dual = lambda == 1.0 ? INFINITY : lambda / (lambda - 1.0);
  const Eigen::Index nx = space.size();
  for (std::size_t k = 0; k < systems.size(); ++k) {
    const auto& F = systems[k];
    const auto& n = weights[k];
    if (F.cols() != n.size()) throw std::invalid_argument("duality_check: weight count");
    Eigen::MatrixXcd gram = F.adjoint() * F;
    double defect = (gram - Eigen::MatrixXcd::Identity(F.cols(), F.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-10) throw std::invalid_argument("duality_check: system is not orthonormal");
    DualityInstance inst;
    inst.N = int(F.cols());
    Eigen::MatrixXcd WAF = WA * F;
    for (Eigen::Index i = 0; i < F.cols(); ++i) inst.lhs += n(i) * WAF.col(i).squaredNorm();
    double nn = lp_seq(n, lam_dual);
    inst.holder = nn * sch;
    inst.slack = inst.holder > 0 ? (inst.holder - inst.lhs) / inst.holder : 0.0;
    Eigen::MatrixXcd AF = A * F;
    Eigen::MatrixXd dens(time.size(), nx);
    for (std::size_t j = 0; j < time.size(); ++j)
      for (Eigen::Index i = 0; i < nx; ++i) {
        double wr = time.w[j] * space.w[i];
        double s = 0.0;
        for (Eigen::Index c = 0; c < F.cols(); ++c) s += n(c) * std::norm(AF(j * nx + i, c));
        dens(j, i) = std::abs(s) / wr;
      }
    inst.rho = mixed_norm(dens, time, space, p_prime / 2, q_prime / 2) / nn;
    rep.min_slack = std::min(rep.min_slack, inst.slack);
    rep.max_rho = std::max(rep.max_rho, inst.rho);
    rep.instances.push_back(inst);
  }
  return rep;
}

Eigen::MatrixXcd haar_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd Z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Z(i, j) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd R = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    cplx d = R(j, j);
    Q.col(j) *= d / std::abs(d);
  }
  return Q;
}

nlohmann::json to_json(const SandwichResult& r) {
  return {{"schatten", r.schatten}, {"w1_norm", r.w1_norm}, {"w2_norm", r.w2_norm},
          {"ratio", r.ratio}, {"sigma1", r.sigma1}};
}

nlohmann::json to_json(const DualityReport& r) {
  nlohmann::json inst = nlohmann::json::array();
  for (auto& i : r.instances)
    inst.push_back({{"N", i.N}, {"lhs", i.lhs}, {"holder", i.holder}, {"slack", i.slack}, {"rho", i.rho}});
  return {{"lambda", r.lambda}, {"C1", r.C1}, {"min_slack", r.min_slack}, {"max_rho", r.max_rho},
          {"instances", inst}};
}

}  // namespace lab
