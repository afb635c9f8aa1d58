#include "lab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lab {

namespace {

constexpr double kTol = 1e-12;

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  char b[32];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

// shared decision logic; T is double or Rational
template <class T, class Lt, class Le, class Eq>
void decide(ExponentPair& e, const T& ip, const T& iq, const T& beta, const T& a, const T& cap_den,
            Lt lt, Le le, Eq eq) {
  const T zero(0), one(1), half = T(1) / T(2);
  const T lower = (beta - a) / (T(2) * beta);  // (2gamma+n-2) / (2 beta)
  bool in_box = le(zero, ip) && le(ip, one) && le(zero, iq) && le(iq, one);
  bool b1 = lt(lower, ip) && le(ip, half) && le(half, iq) && le(iq, one);
  bool b2 = le(zero, iq) && lt(iq, half) && le(zero, ip) && le(ip, half) &&
            le((beta / a) * (half - ip), iq);
  e.admissible = in_box && (b1 || b2);
  e.dunkl_scaling = in_box && eq((half - ip) * beta / a, iq);
  e.orthonormal_scaling = in_box && eq(iq + beta * ip / a, beta / a);
  const T diag_inv = beta / (beta + a);
  e.diagonal = eq(ip, diag_inv) && eq(iq, diag_inv);
  e.degenerate_range = le(cap_den, zero);
  // p < (2beta+a)/(2beta-a)  <=>  1/p > (2beta-a)/(2beta+a)
  bool below_cap = e.degenerate_range ? lt(zero, ip) : lt(cap_den / (T(2) * beta + a), ip);
  e.general_range = e.orthonormal_scaling && le(ip, one) && below_cap;
}

}  // namespace

std::string ExponentPair::describe() const {
  std::ostringstream os;
  os << "p=" << fmt(p()) << " q=" << fmt(q());
  if (admissible) os << " admissible";
  if (diagonal) os << " diagonal";
  if (general_range) os << " general-range";
  if (degenerate_range) os << " degenerate-range";
  if (dunkl_scaling) os << " dunkl-scaling";
  if (!admissible && !general_range && !diagonal) os << " inadmissible";
  return os.str();
}

std::optional<Rational> beta_exact(const GeometryConfig& cfg) {
  if (!cfg.gamma_exact) return std::nullopt;
  return Rational(2) * *cfg.gamma_exact + Rational(cfg.n + cfg.a - 2);
}

ExponentPair classify_exponents(const GeometryConfig& cfg, double inv_p, double inv_q) {
  ExponentPair e;
  e.inv_p = inv_p;
  e.inv_q = inv_q;
  const double beta = cfg.beta(), a = cfg.a;
  auto lt = [](double x, double y) { return x < y - kTol; };
  auto le = [](double x, double y) { return x <= y + kTol; };
  auto eq = [](double x, double y) { return std::abs(x - y) <= kTol; };
  decide<double>(e, inv_p, inv_q, beta, a, 2 * beta - a, lt, le, eq);
  return e;
}

ExponentPair classify_exponents(const GeometryConfig& cfg, Rational inv_p, Rational inv_q) {
  auto beta = beta_exact(cfg);
  if (!beta) throw std::invalid_argument("classify_exponents: exact path needs a rational gamma");
  ExponentPair e;
  e.exact = true;
  e.inv_p_exact = inv_p;
  e.inv_q_exact = inv_q;
  e.inv_p = boost::rational_cast<double>(inv_p);
  e.inv_q = boost::rational_cast<double>(inv_q);
  const Rational a(cfg.a);
  auto lt = [](const Rational& x, const Rational& y) { return x < y; };
  auto le = [](const Rational& x, const Rational& y) { return x <= y; };
  auto eq = [](const Rational& x, const Rational& y) { return x == y; };
  decide<Rational>(e, inv_p, inv_q, *beta, a, Rational(2) * *beta - a, lt, le, eq);
  return e;
}

double diagonal_exponent(const GeometryConfig& cfg) { return 1.0 + cfg.a / cfg.beta(); }

double ell_exponent(double p) { return std::isinf(p) ? 2.0 : 2.0 * p / (p + 1.0); }

double general_range_cap(const GeometryConfig& cfg) {
  double den = 2 * cfg.beta() - cfg.a;
  return den <= 0.0 ? INFINITY : (2 * cfg.beta() + cfg.a) / den;
}

double orthonormal_q(const GeometryConfig& cfg, double p) {
  double b = cfg.beta() / cfg.a;
  double iq = b - b / p;
  return iq <= kTol ? INFINITY : 1.0 / iq;
}

nlohmann::json to_json(const MixedNormReport& r) {
  nlohmann::json j = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio},
                      {"p", std::isinf(r.p) ? nlohmann::json("inf") : nlohmann::json(r.p)},
                      {"q", std::isinf(r.q) ? nlohmann::json("inf") : nlohmann::json(r.q)},
                      {"N", r.N}, {"seed", r.seed}, {"geometry", r.geometry}, {"grid_id", r.grid_id},
                      {"skipped", r.skipped}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

void write_ratio_csv_header(std::ostream& os) { os << "a,n,gamma,p,q,N,seed,lhs,rhs,ratio,grid_id\n"; }

void write_ratio_csv_row(std::ostream& os, const GeometryConfig& cfg, const MixedNormReport& r) {
  auto num = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return std::string(b);
  };
  os << cfg.a << ',' << cfg.n << ',' << num(cfg.gamma) << ',' << num(r.p) << ',' << num(r.q) << ','
     << r.N << ',' << r.seed << ',' << num(r.lhs) << ',' << num(r.rhs) << ',' << num(r.ratio) << ','
     << r.grid_id << '\n';
}

HarnessGrid make_harness_grid(const GeometryConfig& cfg, int L_max, double bandwidth, int per_panel,
                              int space_extra, double width_factor) {
  cfg.require_strict("harness");
  HarnessGrid g;
  g.L_max = L_max;
  g.idx = basis_indices(cfg, L_max);
  g.eig.resize(g.idx.size());
  for (std::size_t i = 0; i < g.idx.size(); ++i) g.eig(i) = eigenvalue(cfg, g.idx[i]);
  double width = bandwidth > 0.0 ? width_factor / bandwidth : 0.0;
  g.time = half_interval_grid(2, per_panel, width);
  g.space = make_spatial_grid(cfg, L_max + space_extra);
  g.B = basis_matrix(cfg, g.idx, g.space);
  g.grid_id = grid_hash(g.time, g.space);
  return g;
}

OrthonormalSystem generate_orthonormal_system(const GeometryConfig&, const HarnessGrid& g, int N,
                                              std::uint64_t seed, bool mixing) {
  const int nb = int(g.idx.size());
  if (N < 1 || N > nb)
    throw std::invalid_argument("generate_orthonormal_system: N=" + std::to_string(N) +
                                " exceeds basis size " + std::to_string(nb));
  OrthonormalSystem s;
  s.seed = seed;
  s.mixed = mixing;
  s.C = Eigen::MatrixXcd::Zero(nb, N);
  if (mixing)
    s.C.topRows(N) = haar_unitary(N, seed);
  else
    s.C.topRows(N).setIdentity();
  s.gram_defect = (s.C.adjoint() * s.C - Eigen::MatrixXcd::Identity(N, N)).cwiseAbs().maxCoeff();
  return s;
}

namespace {

Eigen::Index active_rows(const Eigen::MatrixXcd& C) {
  Eigen::Index K = C.rows();
  while (K > 0 && C.row(K - 1).cwiseAbs().maxCoeff() == 0.0) --K;
  return std::max<Eigen::Index>(K, 1);
}

template <class F>
void for_each_time(const HarnessGrid& g, const Eigen::MatrixXcd& C, F&& f) {
  if (C.rows() != Eigen::Index(g.idx.size())) throw std::invalid_argument("harness: coefficient size");
  const Eigen::Index K = active_rows(C);
  Eigen::MatrixXcd Bk = g.B.leftCols(K).cast<cplx>();
  Eigen::MatrixXcd tmp(K, C.cols());
  for (std::size_t j = 0; j < g.time.size(); ++j) {
    for (Eigen::Index b = 0; b < K; ++b)
      tmp.row(b) = std::exp(cplx(0.0, -g.time.t[j] * g.eig(b))) * C.row(b);
    Eigen::MatrixXcd V = Bk * tmp;
    f(j, V);
  }
}

double lp_seq(const Eigen::VectorXd& n, double p) {
  if (std::isinf(p)) return n.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < n.size(); ++i) s += std::pow(std::abs(n(i)), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

Eigen::MatrixXd density(const HarnessGrid& g, const Eigen::MatrixXcd& C, const Eigen::VectorXd& n) {
  if (n.size() != C.cols()) throw std::invalid_argument("density: weight count");
  Eigen::MatrixXd rho(g.time.size(), g.space.size());
  for_each_time(g, C, [&](std::size_t j, const Eigen::MatrixXcd& V) {
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
      double s = 0.0;
      for (Eigen::Index c = 0; c < V.cols(); ++c) s += n(c) * std::norm(V(i, c));
      rho(j, i) = std::abs(s);
    }
  });
  return rho;
}

Eigen::MatrixXcd evolve_samples(const HarnessGrid& g, const Eigen::VectorXcd& c) {
  Eigen::MatrixXcd U(g.time.size(), g.space.size());
  for_each_time(g, c, [&](std::size_t j, const Eigen::MatrixXcd& V) { U.row(j) = V.col(0).transpose(); });
  return U;
}

MixedNormReport strichartz_single(const GeometryConfig& cfg, const HarnessGrid& g,
                                  const Eigen::VectorXcd& c, double p, double q) {
  MixedNormReport r;
  r.p = p;
  r.q = q;
  r.geometry = cfg.describe();
  r.grid_id = g.grid_id;
  auto e = classify_exponents(cfg, std::isinf(p) ? 0.0 : 1.0 / p, std::isinf(q) ? 0.0 : 1.0 / q);
  if (!e.admissible) {
    r.skipped = true;
    r.note = "refused: " + e.describe();
    return r;
  }
  Eigen::MatrixXd absu = evolve_samples(g, c).cwiseAbs();
  r.lhs = mixed_norm(absu, g.time, g.space, p, q);
  r.rhs = c.norm();
  r.ratio = r.lhs / r.rhs;
  return r;
}

namespace {

MixedNormReport orthonormal_ratio(const GeometryConfig& cfg, const HarnessGrid& g,
                                  const Eigen::MatrixXcd& C, const Eigen::VectorXd& n, double p,
                                  double q, const char* what) {
  MixedNormReport r;
  r.p = p;
  r.q = q;
  r.N = int(C.cols());
  r.geometry = cfg.describe();
  r.grid_id = g.grid_id;
  double defect = (C.adjoint() * C - Eigen::MatrixXcd::Identity(C.cols(), C.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw std::invalid_argument(std::string(what) + ": Gram defect " + fmt(defect) + " > 1e-10");
  auto e = classify_exponents(cfg, std::isinf(p) ? 0.0 : 1.0 / p, std::isinf(q) ? 0.0 : 1.0 / q);
  if (!e.general_range && !e.diagonal) r.note = "outside window: " + e.describe();
  r.lhs = mixed_norm(density(g, C, n), g.time, g.space, p, q);
  r.rhs = lp_seq(n, ell_exponent(p));
  r.ratio = r.lhs / r.rhs;
  return r;
}

}  // namespace

MixedNormReport strichartz_orthonormal(const GeometryConfig& cfg, const HarnessGrid& g,
                                       const OrthonormalSystem& sys, const Eigen::VectorXd& n,
                                       double p, double q) {
  auto r = orthonormal_ratio(cfg, g, sys.C, n, p, q, "strichartz_orthonormal");
  r.seed = sys.seed;
  return r;
}

MixedNormReport restriction_orthonormal(const GeometryConfig& cfg, const HarnessGrid& g,
                                        const Eigen::MatrixXcd& F, const Eigen::VectorXd& n,
                                        double p, double q) {
  // E_S F evaluated directly with the surface frequencies nu = 2l + 2m/a
  if (F.rows() != Eigen::Index(g.idx.size())) throw std::invalid_argument("restriction_orthonormal: size");
  double defect = (F.adjoint() * F - Eigen::MatrixXcd::Identity(F.cols(), F.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw std::invalid_argument("restriction_orthonormal: Gram defect " + fmt(defect) + " > 1e-10");
  HarnessGrid gs = g;
  for (std::size_t i = 0; i < g.idx.size(); ++i) gs.eig(i) = surface_nu(cfg, g.idx[i]);
  MixedNormReport r;
  r.p = p;
  r.q = q;
  r.N = int(F.cols());
  r.geometry = cfg.describe();
  r.grid_id = g.grid_id;
  r.lhs = mixed_norm(density(gs, F, n), g.time, g.space, p, q);
  r.rhs = lp_seq(n, ell_exponent(p));
  r.ratio = r.lhs / r.rhs;
  return r;
}

namespace {

// composite Gauss-Legendre on breaks geometrically graded toward hi
QuadratureScheme graded_toward(double lo, double hi, int levels, int per_panel, double ratio = 0.5) {
  std::vector<double> br{lo};
  double w = hi - lo;
  double x = lo;
  for (int k = 0; k < levels; ++k) {
    x = hi - w * std::pow(ratio, k + 1);
    br.push_back(x);
  }
  br.push_back(hi);
  return composite_legendre(br, per_panel);
}

// composite Gauss-Legendre on (lo, hi) with panels growing geometrically away from lo
QuadratureScheme graded_from(double lo, double hi, double h0, int per_panel) {
  std::vector<double> br{lo};
  double h = h0;
  while (br.back() + h < hi - 0.25 * h) {
    br.push_back(br.back() + h);
    h *= 2.0;
  }
  br.push_back(hi);
  return composite_legendre(br, per_panel);
}

// int_0^D d^{-lambda} f(d) dd by Gauss-Jacobi
template <class F>
double jacobi_origin(double D, double lambda, int order, F&& f) {
  auto q = gauss_jacobi(order, 0.0, -lambda);
  double s = 0.0, scale = std::pow(D / 2.0, 1.0 - lambda);
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f(D * (1.0 + q.nodes[i]) / 2.0);
  return s * scale;
}

double sinc_power(double e, double lambda) {
  return e == 0.0 ? 1.0 : std::pow(e / std::sin(e), lambda);
}

double lp_interval(const std::function<double(double)>& g, double p, int order) {
  auto q = composite_legendre({-kPi / 2, -kPi / 4, 0.0, kPi / 4, kPi / 2}, order);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(std::abs(g(q.nodes[i])), p);
  return std::pow(s, 1.0 / p);
}

// K(d) = int g(tau + d) h(tau) dtau over the admissible tau range
double lag_product(const std::function<double(double)>& g, const std::function<double(double)>& h,
                   double d, int order) {
  double lo = std::max(-kPi / 2, -kPi / 2 - d), hi = std::min(kPi / 2, kPi / 2 - d);
  if (hi <= lo) return 0.0;
  auto q = gauss_legendre(order, lo, hi);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * g(q.nodes[i] + d) * h(q.nodes[i]);
  return s;
}

// B2 (t - tau in (pi/2, pi)) through e = pi - (t - tau), outer in e
double b2_lag(const std::function<double(double)>& g, const std::function<double(double)>& h,
              double lambda, int order) {
  return jacobi_origin(kPi / 2, lambda, order, [&](double e) {
    return sinc_power(e, lambda) * lag_product(g, h, kPi - e, order);
  });
}

// B2 through s = tau + pi: outer in t, inner kernel |s - t|^{-lambda} |(s-t)/sin(s-t)|^lambda
double b2_shifted(const std::function<double(double)>& g, const std::function<double(double)>& h,
                  double lambda, int order) {
  int per = std::max(8, order / 2);
  auto outer = graded_toward(0.0, kPi / 2, 40, per);
  double total = 0.0;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    double t = outer.nodes[i];
    double A = kPi / 2 - t;  // s - t >= A keeps tau = s - pi >= -pi/2
    auto inner = graded_from(A, kPi / 2, std::max(A, 1e-300) * 0.5, per);
    double s = 0.0;
    for (std::size_t k = 0; k < inner.size(); ++k) {
      double e = inner.nodes[k];
      s += inner.weights[k] * h(t + e - kPi) * std::pow(std::sin(e), -lambda);
    }
    total += outer.weights[i] * g(t) * s;
  }
  return total;
}

}  // namespace

RhlsReport rhls_check(double lambda, double p, double q, const std::function<double(double)>& g,
                      const std::function<double(double)>& h, int order) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw std::invalid_argument("rhls_check: need 0 <= lambda < 1");
  if (!(p >= 1.0 && q >= 1.0)) throw std::invalid_argument("rhls_check: need p, q >= 1");
  if (std::abs(1.0 / p + 1.0 / q + lambda - 2.0) > 1e-12)
    throw std::invalid_argument("rhls_check: scaling 1/p + 1/q + lambda = 2 violated");
  RhlsReport r;
  r.lambda = lambda;
  r.p = p;
  r.q = q;
  // B1: |t - tau| < pi/2, split at the diagonal
  auto b1 = [&](double kernel_sinc) {
    auto side = [&](double sign) {
      return jacobi_origin(kPi / 2, lambda, order, [&](double d) {
        double k = kernel_sinc > 0 ? sinc_power(d, lambda) : 1.0;
        return k * lag_product(g, h, sign * d, order);
      });
    };
    return side(1.0) + side(-1.0);
  };
  r.I1 = b1(1.0);
  r.I1_classical = b1(0.0);
  r.I2 = b2_lag(g, h, lambda, order);
  r.I3 = b2_lag(h, g, lambda, order);
  r.I2_shifted = b2_shifted(g, h, lambda, order);
  r.total = r.I1 + r.I2 + r.I3;
  r.norm_g = lp_interval(g, p, order);
  r.norm_h = lp_interval(h, q, order);
  r.ratio = r.total / (r.norm_g * r.norm_h);
  if (lambda == 0.0) {
    double ip = 1.0 - 1.0 / p, iq = 1.0 - 1.0 / q;
    r.holder_bound = r.norm_g * r.norm_h * std::pow(kPi, ip + iq);
  }
  return r;
}

nlohmann::json to_json(const RhlsReport& r) {
  nlohmann::json j = {{"lambda", r.lambda}, {"p", r.p}, {"q", r.q}, {"I1", r.I1}, {"I2", r.I2},
                      {"I3", r.I3}, {"I2_shifted", r.I2_shifted}, {"I1_classical", r.I1_classical},
                      {"total", r.total}, {"norm_g", r.norm_g}, {"norm_h", r.norm_h}, {"ratio", r.ratio}};
  if (r.lambda == 0.0) j["holder_bound"] = r.holder_bound;
  return j;
}

namespace {

// Laguerre samples at t = arctan s on the base grid, mapped to the Dunkl side
Eigen::MatrixXcd dunkl_from_laguerre(const GeometryConfig& cfg, const HarnessGrid& g,
                                     const Eigen::MatrixXcd& V, double s) {
  const double a = cfg.a, one_s2 = 1.0 + s * s;
  Eigen::MatrixXcd W = V;
  double amp = std::pow(one_s2, -cfg.beta() / (2 * a));
  for (std::size_t i = 0; i < g.space.size(); ++i) {
    double ra = std::pow(g.space.pts[i].r, a);
    W.row(i) *= amp * std::exp(cplx(0.0, s * ra / a));
  }
  return W;
}

Eigen::MatrixXcd laguerre_at(const HarnessGrid& g, const Eigen::MatrixXcd& C, double t) {
  const Eigen::Index K = active_rows(C);
  Eigen::MatrixXcd tmp(K, C.cols());
  for (Eigen::Index b = 0; b < K; ++b) tmp.row(b) = std::exp(cplx(0.0, -t * g.eig(b))) * C.row(b);
  return g.B.leftCols(K).cast<cplx>() * tmp;
}

struct HalfNorms {
  double pos = 0.0, neg = 0.0;
};

void accumulate(HalfNorms& h, double t, double w, double inner, double q) {
  double& acc = t > 0 ? h.pos : h.neg;
  if (std::isinf(q))
    acc = std::max(acc, inner);
  else
    acc += w * std::pow(inner, q);
}

void finish(HalfNorms& h, double q) {
  if (std::isinf(q)) return;
  h.pos = std::pow(h.pos, 1.0 / q);
  h.neg = std::pow(h.neg, 1.0 / q);
}

TransferReport transfer(const GeometryConfig& cfg, const HarnessGrid& g, const Eigen::MatrixXcd& C,
                        const Eigen::VectorXd& n, double p, double q, bool squared) {
  HalfNorms lag, dk;
  for (std::size_t j = 0; j < g.time.size(); ++j) {
    double t = g.time.t[j];
    double s = std::tan(t), one_s2 = 1.0 + s * s;
    Eigen::MatrixXcd V = laguerre_at(g, C, t);
    Eigen::MatrixXcd W = dunkl_from_laguerre(cfg, g, V, s);
    SpatialGrid scaled = scale_grid(cfg, g.space, std::pow(one_s2, 1.0 / cfg.a));
    Eigen::VectorXd fv(g.space.size()), fw(g.space.size());
    for (std::size_t i = 0; i < g.space.size(); ++i) {
      double sv = 0.0, sw = 0.0;
      for (Eigen::Index c = 0; c < C.cols(); ++c) {
        sv += n(c) * std::norm(V(i, c));
        sw += n(c) * std::norm(W(i, c));
      }
      fv(i) = squared ? std::abs(sv) : std::sqrt(sv);
      fw(i) = squared ? std::abs(sw) : std::sqrt(sw);
    }
    accumulate(lag, t, g.time.w[j], lp_norm(g.space, fv.data(), p), q);
    accumulate(dk, t, g.time.w[j] * one_s2, lp_norm(scaled, fw.data(), p), q);
  }
  finish(lag, q);
  finish(dk, q);
  TransferReport r;
  r.laguerre_pos = lag.pos;
  r.laguerre_neg = lag.neg;
  r.dunkl_pos = dk.pos;
  r.dunkl_neg = dk.neg;
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
  r.defect = std::max(rel(dk.pos, lag.pos), rel(dk.neg, lag.neg));
  return r;
}

}  // namespace

Eigen::VectorXcd dunkl_propagate(const GeometryConfig& cfg, const HarnessGrid& g,
                                 const Eigen::VectorXcd& c, double s) {
  Eigen::MatrixXcd V = laguerre_at(g, c, std::atan(s));
  return dunkl_from_laguerre(cfg, g, V, s).col(0);
}

Eigen::VectorXcd dunkl_propagate_at(const GeometryConfig& cfg, const std::vector<SpectralIndex>& idx,
                                    const Eigen::VectorXcd& c, double s,
                                    const std::vector<WeightedPoint>& y) {
  const double a = cfg.a, t = std::atan(s), one_s2 = 1.0 + s * s;
  std::vector<WeightedPoint> x = y;
  for (auto& p : x) p.r /= std::pow(one_s2, 1.0 / a);
  Eigen::MatrixXd B = basis_matrix(cfg, idx, x);
  Eigen::VectorXcd ph(idx.size());
  for (std::size_t b = 0; b < idx.size(); ++b) ph(b) = std::exp(cplx(0.0, -t * eigenvalue(cfg, idx[b]))) * c(b);
  Eigen::VectorXcd u = B.cast<cplx>() * ph;
  double amp = std::pow(one_s2, -cfg.beta() / (2 * a));
  for (std::size_t i = 0; i < x.size(); ++i) u(i) *= amp * std::exp(cplx(0.0, s * std::pow(x[i].r, a) / a));
  return u;
}

TransferReport dunkl_transfer(const GeometryConfig& cfg, const HarnessGrid& g,
                              const Eigen::VectorXcd& c, double p, double q) {
  auto e = classify_exponents(cfg, std::isinf(p) ? 0.0 : 1.0 / p, std::isinf(q) ? 0.0 : 1.0 / q);
  if (!e.dunkl_scaling) throw std::invalid_argument("dunkl_transfer: scaling violated, " + e.describe());
  return transfer(cfg, g, c, Eigen::VectorXd::Ones(1), p, q, false);
}

TransferReport dunkl_transfer_orthonormal(const GeometryConfig& cfg, const HarnessGrid& g,
                                          const Eigen::MatrixXcd& C, const Eigen::VectorXd& n,
                                          double p, double q) {
  auto e = classify_exponents(cfg, std::isinf(p) ? 0.0 : 1.0 / p, std::isinf(q) ? 0.0 : 1.0 / q);
  if (!e.orthonormal_scaling)
    throw std::invalid_argument("dunkl_transfer_orthonormal: scaling violated, " + e.describe());
  if (n.size() != C.cols()) throw std::invalid_argument("dunkl_transfer_orthonormal: weight count");
  return transfer(cfg, g, C, n, p, q, true);
}

}  // namespace lab

namespace lab {

std::vector<SweepExponent> sweep_exponents(const GeometryConfig& cfg, double p_cap) {
  std::vector<SweepExponent> out;
  double pd = diagonal_exponent(cfg);
  out.push_back({"diagonal", pd, pd});
  double top = std::min(general_range_cap(cfg), p_cap);
  int i = 1;
  for (double f : {0.25, 0.5, 0.75}) {
    double p = 1.0 + f * (top - 1.0);
    out.push_back({"general-" + std::to_string(i++), p, orthonormal_q(cfg, p)});
  }
  return out;
}

int truncation_for(const GeometryConfig& cfg, int N) {
  int L = 0;
  while (int(basis_indices(cfg, L).size()) < N) ++L;
  return L;
}

HarnessGrid sweep_grid(const GeometryConfig& cfg, const SweepSettings& s, int refine) {
  int Nmax = *std::max_element(s.Ns.begin(), s.Ns.end());
  int L = truncation_for(cfg, Nmax);
  auto idx = basis_indices(cfg, L);
  double band = eigenvalue(cfg, idx[Nmax - 1]) - eigenvalue(cfg, idx[0]);
  // |f|^p of a degree-2L density needs roughly twice the Gram order
  return make_harness_grid(cfg, L, std::max(band, 1.0), s.per_panel * refine,
                           (2 * L + s.space_extra) * refine - L);
}

Eigen::VectorXd random_weights(int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  std::uniform_real_distribution<double> ud(0.1, 1.0);
  Eigen::VectorXd n(N);
  for (int i = 0; i < N; ++i) n(i) = ud(rng);
  return n;
}

SweepResult run_orthonormal_sweep(const GeometryConfig& cfg, const HarnessGrid& g,
                                  const std::vector<SweepExponent>& exps, const SweepSettings& s) {
  SweepResult res;
  res.exponents = exps;
  res.C.assign(exps.size(), 0.0);
  res.C_by_N.assign(exps.size(), std::vector<double>(s.Ns.size(), 0.0));
  std::vector<std::vector<MixedNormReport>> by_exp(exps.size());
  for (std::size_t iN = 0; iN < s.Ns.size(); ++iN)
    for (int k = 0; k < s.seeds; ++k) {
      const int N = s.Ns[iN];
      std::uint64_t seed = s.seed_base + std::uint64_t(k);
      auto sys = generate_orthonormal_system(cfg, g, N, seed * 1000 + std::uint64_t(N), s.mixing);
      auto n = random_weights(N, seed * 1000 + std::uint64_t(N));
      Eigen::MatrixXd rho = density(g, sys.C, n);
      double bound = n.cwiseAbs().sum();
      double l1 = mixed_norm(rho, g.time, g.space, 1.0, INFINITY);
      res.endpoint_min_slack = std::min(res.endpoint_min_slack, (bound - l1) / bound);
      for (std::size_t e = 0; e < exps.size(); ++e) {
        MixedNormReport r;
        r.p = exps[e].p;
        r.q = exps[e].q;
        r.N = N;
        r.seed = seed;
        r.geometry = cfg.describe();
        r.grid_id = g.grid_id;
        r.note = exps[e].label;
        r.lhs = mixed_norm(rho, g.time, g.space, r.p, r.q);
        r.rhs = lp_seq(n, ell_exponent(r.p));
        r.ratio = r.lhs / r.rhs;
        res.C[e] = std::max(res.C[e], r.ratio);
        res.C_by_N[e][iN] = std::max(res.C_by_N[e][iN], r.ratio);
        by_exp[e].push_back(r);
      }
    }
  for (auto& v : by_exp) res.rows.insert(res.rows.end(), v.begin(), v.end());
  return res;
}

SweepStability sweep_stability(const GeometryConfig& cfg, const SweepSettings& s) {
  SweepStability st;
  auto exps = sweep_exponents(cfg, s.p_cap);
  auto g = sweep_grid(cfg, s);
  auto with_extra = exps;
  with_extra.insert(with_extra.end(), s.record_only.begin(), s.record_only.end());
  st.base = run_orthonormal_sweep(cfg, g, with_extra, s);
  SweepSettings more = s;
  more.seeds = 2 * s.seeds;
  st.more_seeds = run_orthonormal_sweep(cfg, g, exps, more);
  auto gf = sweep_grid(cfg, s, 2);
  st.fine = run_orthonormal_sweep(cfg, gf, exps, s);
  for (std::size_t e = 0; e < exps.size(); ++e) {
    double ds = 0.0, dg = 0.0;
    const auto& b = st.base.C_by_N[e];
    for (std::size_t i = 0; i < b.size(); ++i) {
      ds = std::max(ds, std::abs(st.more_seeds.C_by_N[e][i] - b[i]) / b[i]);
      dg = std::max(dg, std::abs(st.fine.C_by_N[e][i] - b[i]) / b[i]);
      if (i > 0 && s.Ns[i] == 2 * s.Ns[i - 1]) st.max_growth = std::max(st.max_growth, b[i] / b[i - 1]);
    }
    st.seed_drift.push_back(ds);
    st.grid_drift.push_back(dg);
    st.max_drift = std::max({st.max_drift, ds, dg});
  }
  // N = 1 rows against the single-function path at (2p, 2q)
  for (auto& r : st.base.rows) {
    if (r.N != 1 || r.note.rfind("record", 0) == 0) continue;
    auto sys = generate_orthonormal_system(cfg, g, 1, r.seed * 1000 + 1, s.mixing);
    auto n = random_weights(1, r.seed * 1000 + 1);
    auto single = strichartz_single(cfg, g, sys.C.col(0), 2 * r.p, 2 * r.q);
    if (single.skipped) {
      st.n1_defect = INFINITY;
      continue;
    }
    double expect = n(0) * single.ratio * single.ratio / n(0);
    st.n1_defect = std::max(st.n1_defect, std::abs(r.ratio - expect) / expect);
  }
  return st;
}

}  // namespace lab
